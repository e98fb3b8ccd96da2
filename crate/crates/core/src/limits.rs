//! Enumeration budgets shared by every exponential search in the crate.

use std::fmt;

/// Default cap on candidate maps for hom / automorphism / factor-system search.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 100_000_000;
/// Default cap on the number of morphisms of a finite category for exhaustive checks.
pub const DEFAULT_MAX_MORPHISMS: usize = 200;
/// Default cap on cochain lattice dimension times coefficient generators.
pub const DEFAULT_MATRIX_BUDGET: u64 = 2_000_000;

/// Environment variable that overrides [`Limits::candidates`].
pub const BUDGET_ENV: &str = "OBSTRUKT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub candidates: u64,
    pub max_morphisms: usize,
    pub matrix: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            candidates: DEFAULT_CANDIDATE_BUDGET,
            max_morphisms: DEFAULT_MAX_MORPHISMS,
            matrix: DEFAULT_MATRIX_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults, with the candidate budget taken from `OBSTRUKT_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(b) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.candidates = b;
        }
        limits
    }

    pub fn with_candidates(mut self, candidates: u64) -> Self {
        self.candidates = candidates;
        self
    }

    pub(crate) fn charge(&self, needed: u128) -> Result<(), BudgetExceeded> {
        if needed > self.candidates as u128 {
            Err(BudgetExceeded { needed, budget: self.candidates })
        } else {
            Ok(())
        }
    }
}

/// An exponential search would exceed its configured budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub needed: u128,
    pub budget: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search needs {} candidates, budget is {}", self.needed, self.budget)
    }
}

impl std::error::Error for BudgetExceeded {}

/// Saturating product used to size search spaces without overflow.
pub(crate) fn space(factors: impl IntoIterator<Item = usize>) -> u128 {
    factors
        .into_iter()
        .fold(1u128, |acc, f| acc.saturating_mul(f as u128))
}

pub(crate) fn power(base: usize, exp: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
