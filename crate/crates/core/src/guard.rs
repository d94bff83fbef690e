//! Caps on exhaustive enumeration.

use crate::error::{Error, Result};

/// Environment variable overriding both caps with one integer.
pub const SCALE_GUARD_ENV: &str = "DELCODE_SCALE_GUARD";

pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;
/// 8!, so permutation scans stop at length 8 unless overridden.
pub const DEFAULT_PERMUTATION_CAP: u128 = 40_320;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleGuard {
    /// Largest number of constant-weight words or codewords to enumerate.
    pub enumeration: u128,
    /// Largest `n!` a permutation scan may walk.
    pub permutations: u128,
}

impl Default for ScaleGuard {
    fn default() -> Self {
        ScaleGuard {
            enumeration: DEFAULT_ENUMERATION_CAP,
            permutations: DEFAULT_PERMUTATION_CAP,
        }
    }
}

impl ScaleGuard {
    /// Defaults, unless `DELCODE_SCALE_GUARD` holds an integer, in which case
    /// it replaces both caps.
    pub fn from_env() -> Self {
        match std::env::var(SCALE_GUARD_ENV).ok().and_then(|v| v.trim().parse::<u128>().ok()) {
            Some(cap) => ScaleGuard { enumeration: cap, permutations: cap },
            None => ScaleGuard::default(),
        }
    }

    pub fn unlimited() -> Self {
        ScaleGuard { enumeration: u128::MAX, permutations: u128::MAX }
    }

    pub fn check_enumeration(&self, required: u128) -> Result<()> {
        check(required, self.enumeration)
    }

    pub fn check_permutations(&self, n: usize) -> Result<()> {
        check(factorial(n).unwrap_or(u128::MAX), self.permutations)
    }
}

fn check(required: u128, limit: u128) -> Result<()> {
    if required > limit {
        Err(Error::ScaleGuardExceeded { required, limit })
    } else {
        Ok(())
    }
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}
