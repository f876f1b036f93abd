//! Size caps and the random seed used by the randomised algorithms.
//!
//! Both are thread-local so concurrent runs (for example the test harness)
//! can use different seeds without interfering.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

/// Seed for the meataxe, endomorphism splitting and polynomial factoring.
pub const DEFAULT_SEED: u64 = 0x5C077;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest group whose elements are enumerated.
    pub max_group_order: usize,
    /// Largest group for which centralisers and normalisers are found by
    /// filtering the element list.
    pub max_filter_order: usize,
    /// Largest module handled by chop, decomposition and audits.
    pub max_module_dim: usize,
    /// Largest group given to the Dixon–Schneider routine.
    pub max_dixon_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 1_000_000,
            max_filter_order: 10_000,
            max_module_dim: 10_000,
            max_dixon_order: 5_000,
        }
    }
}

thread_local! {
    static SEED: Cell<u64> = const { Cell::new(DEFAULT_SEED) };
    static LIMITS: Cell<Option<Limits>> = const { Cell::new(None) };
}

pub fn seed() -> u64 {
    SEED.with(|s| s.get())
}

pub fn set_seed(seed: u64) {
    SEED.with(|s| s.set(seed));
}

/// Run `f` with a temporary seed, restoring the previous one afterwards.
pub fn with_seed<R>(seed: u64, f: impl FnOnce() -> R) -> R {
    let old = SEED.with(|s| s.replace(seed));
    let out = f();
    SEED.with(|s| s.set(old));
    out
}

pub fn limits() -> Limits {
    LIMITS.with(|l| l.get()).unwrap_or_default()
}

pub fn with_limits<R>(limits: Limits, f: impl FnOnce() -> R) -> R {
    let old = LIMITS.with(|l| l.replace(Some(limits)));
    let out = f();
    LIMITS.with(|l| l.set(old));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_seed_restores() {
        let before = seed();
        with_seed(7, || assert_eq!(seed(), 7));
        assert_eq!(seed(), before);
    }
}
