//! Certificates convert down the chain of cones without leaving exact
//! arithmetic: a scaled-dominant gram splits into weighted binomial
//! squares, each square folds into a boundary circuit, and over the 0/1
//! cube every circuit tabulates into junta form with explicit
//! cube-generator corrections. The verifier signs off at every stage.

use certlab::hierarchy::{
    convert_sdsos_to_sonc, convert_sonc_to_sa, gram_expansion, verify, CertEntry, CertKind,
    Certificate, ConstraintSystem, GroundElement, Shape,
};
use certlab::matrixkit::SymmetricMatrix;
use certlab::polycore::Exponent;
use certlab::ratio::{rat, Rational};
use num_traits::Zero;

fn main() {
    let n = 2;
    // z^T G z over z = (x0, x1) with G scaled-dominant under d = (1, 1).
    let monomials = vec![Exponent::unit(n, 0), Exponent::unit(n, 1)];
    let gram =
        SymmetricMatrix::from_rows(vec![vec![rat(3), rat(-2)], vec![rat(-2), rat(2)]]).unwrap();
    let f = gram_expansion(n, &monomials, &gram);
    let sdsos = Certificate {
        kind: CertKind::Sdsos,
        shape: Shape::Putinar,
        degree: 2,
        entries: vec![CertEntry {
            ground: GroundElement::SdsosGram {
                monomials,
                gram,
                scaling: vec![rat(1), rat(1)],
            },
            product: Vec::new(),
        }],
    };

    let empty = ConstraintSystem::new(n);
    let report = verify(&f, &Rational::zero(), &empty, &sdsos);
    println!("scaled-dominant gram certificate verified: {}", report.accepted);

    let sonc = convert_sdsos_to_sonc(&sdsos).unwrap();
    println!(
        "as circuits: {} entries at degree {}",
        sonc.entries.len(),
        sonc.degree
    );
    let report = verify(&f, &Rational::zero(), &empty, &sonc);
    println!("circuit certificate verified: {}", report.accepted);

    let cube = ConstraintSystem::new(n).with_hypercube();
    let sa = convert_sonc_to_sa(&sonc, &cube).unwrap();
    println!(
        "as juntas over the cube: {} entries at degree {} ({})",
        sa.entries.len(),
        sa.degree,
        sa.shape
    );
    let corrections = sa.entries.iter().filter(|e| !e.product.is_empty()).count();
    println!("  of which {corrections} multiply cube generators");
    let report = verify(&f, &Rational::zero(), &cube, &sa);
    println!("junta certificate verified: {}", report.accepted);
}
