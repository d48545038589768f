//! Small dense exact linear algebra helpers: Gaussian elimination for
//! solving square systems and computing ranks over the rationals.

use num_traits::{One, Zero};

use crate::ratio::Rational;

/// Solves `a x = b` for square `a`. Returns `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "rhs length must match matrix size");
    for row in a {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    // Augmented elimination with partial (first nonzero) pivoting.
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        let inv = Rational::one() / m[col][col].clone();
        for j in col..=n {
            if !m[col][j].is_zero() {
                m[col][j] = &m[col][j] * &inv;
            }
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..=n {
                if !m[col][j].is_zero() {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[row.len() - 1].clone()).collect())
}

/// Solves a rectangular system `a x = b` that is expected to determine `x`
/// uniquely. Returns `None` when the system is inconsistent or when the
/// columns of `a` are linearly dependent.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let nrows = a.len();
    assert_eq!(b.len(), nrows, "rhs length must match row count");
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            return None; // dependent columns: no unique solution
        };
        m.swap(r, pivot);
        let inv = Rational::one() / m[r][col].clone();
        for j in col..=ncols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..nrows {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..=ncols {
                if !m[r][j].is_zero() {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        r += 1;
    }
    // Rows below the pivots must have vanished entirely, rhs included.
    if m.iter().skip(r).any(|row| !row[ncols].is_zero()) {
        return None;
    }
    Some((0..ncols).map(|j| m[j][ncols].clone()).collect())
}

/// Rank of an arbitrary rectangular matrix.
pub fn rank(a: &[Vec<Rational>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let ncols = a[0].len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = Rational::one() / m[r][col].clone();
        for j in col..ncols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..ncols {
                if !m[r][j].is_zero() {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
