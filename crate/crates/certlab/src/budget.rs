//! Work budgets for the enumeration-heavy operations.
//!
//! Lattice-point enumeration, preprime product generation, and LP column
//! generation all refuse to start unbounded work. A `Budget` carries a single
//! cap on the number of enumerated objects; operations that would exceed it
//! stop early and report how much they needed.

/// Cap on enumerated objects (lattice candidates, LP columns, products).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 1_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    /// Checks that `needed` objects fit under the cap.
    pub fn check(&self, needed: u64) -> Result<(), BudgetExceeded> {
        if needed > self.limit {
            Err(BudgetExceeded {
                needed,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: Self::DEFAULT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("work budget exceeded: needed {needed} objects, limit {limit}")]
pub struct BudgetExceeded {
    pub needed: u64,
    pub limit: u64,
}
