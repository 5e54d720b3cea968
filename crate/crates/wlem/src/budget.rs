//! Evaluation budget shared by the search routines.
//!
//! A "forcing evaluation" is one (world, subformula) pair on the Kripke side,
//! or one (assignment, subformula) pair on the algebra side. Searches charge
//! the budget as they go and abort with [`Error::BudgetExhausted`] once the
//! limit is crossed, which keeps worst-case runtime predictable.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Shared, thread-safe evaluation counter with a hard limit.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    /// Default limit: 10^8 forcing evaluations.
    pub const DEFAULT_LIMIT: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// A budget that never runs out.
    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Record `amount` more evaluations, failing once the limit is exceeded.
    pub fn charge(&self, amount: u64) -> Result<()> {
        let prev = self.used.fetch_add(amount, Ordering::Relaxed);
        if prev.saturating_add(amount) > self.limit {
            Err(Error::BudgetExhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
