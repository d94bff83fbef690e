//! Seeded deletion channel.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::DeletionPattern;

/// Draws a deletion count uniformly from `0..=t_max`, then a uniform subset
/// of `[n]` of that size. Deterministic for a fixed seed.
pub fn sample_deletion_pattern(n: usize, t_max: usize, seed: u64) -> Result<DeletionPattern> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_deletion_pattern_with(n, t_max, &mut rng)
}

pub fn sample_deletion_pattern_with<R: Rng + ?Sized>(
    n: usize,
    t_max: usize,
    rng: &mut R,
) -> Result<DeletionPattern> {
    if t_max > n {
        return Err(Error::InvalidParameter(format!(
            "cannot delete up to {t_max} positions from a word of length {n}"
        )));
    }
    let count = rng.gen_range(0..=t_max);
    let positions = index::sample(rng, n, count).into_iter().map(|i| i + 1).collect();
    DeletionPattern::new(n, positions)
}
