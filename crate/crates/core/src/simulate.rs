//! Monte-Carlo deletion channel over a materialized code.
//!
//! Trials are cut into fixed-size shards. Shard `k` draws from a ChaCha8
//! stream seeded by `seed` with stream id `k`, so the tally depends only on
//! `(seed, trials, t_max)` and not on how many threads run the shards.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::sample_deletion_pattern_with;
use crate::error::{Error, Result};
use crate::model::delete_positions;
use crate::multfree::MultFreeCode;

const SHARD_TRIALS: u64 = 256;

/// Outcomes for one deletion count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WeightTally {
    pub deletions: usize,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationStats {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub t_max: usize,
    pub seed: u64,
    /// True when `t_max` is within the code's correction budget, so every trial must succeed.
    pub guaranteed: bool,
    pub by_weight: Vec<WeightTally>,
}

impl SimulationStats {
    /// False only when a trial inside the guarantee regime failed.
    pub fn guarantee_holds(&self) -> bool {
        !self.guaranteed || self.failures == 0
    }

    fn empty(t_max: usize, seed: u64, guaranteed: bool) -> Self {
        SimulationStats {
            trials: 0,
            successes: 0,
            failures: 0,
            t_max,
            seed,
            guaranteed,
            by_weight: (0..=t_max)
                .map(|deletions| WeightTally { deletions, ..Default::default() })
                .collect(),
        }
    }

    fn record(&mut self, deletions: usize, ok: bool) {
        let slot = &mut self.by_weight[deletions];
        self.trials += 1;
        slot.trials += 1;
        if ok {
            self.successes += 1;
            slot.successes += 1;
        } else {
            self.failures += 1;
            slot.failures += 1;
        }
    }

    fn merge(mut self, other: SimulationStats) -> Self {
        self.trials += other.trials;
        self.successes += other.successes;
        self.failures += other.failures;
        for (a, b) in self.by_weight.iter_mut().zip(other.by_weight) {
            a.trials += b.trials;
            a.successes += b.successes;
            a.failures += b.failures;
        }
        self
    }
}

/// Sends uniformly chosen codewords through the deletion channel and decodes them.
pub fn simulate(code: &MultFreeCode, trials: u64, t_max: usize, seed: u64) -> Result<SimulationStats> {
    let n = code.spec().n;
    if t_max > n {
        return Err(Error::InvalidParameter(format!("t_max {t_max} exceeds code length {n}")));
    }
    if code.is_empty() {
        return Err(Error::InvalidParameter("code has no codewords".into()));
    }
    let guaranteed = t_max <= code.spec().t;
    let shards = trials.div_ceil(SHARD_TRIALS);
    let stats = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_TRIALS.min(trials - shard * SHARD_TRIALS);
            let mut local = SimulationStats::empty(t_max, seed, guaranteed);
            for _ in 0..count {
                let index = rng.gen_range(0..code.len());
                let x = code.encode_index(index)?;
                let pattern = sample_deletion_pattern_with(n, t_max, &mut rng)?;
                let y = delete_positions(&x, &pattern)?;
                let ok = code.decode(&y).is_ok_and(|decoded| decoded == x);
                local.record(pattern.len(), ok);
            }
            Ok(local)
        })
        .try_reduce(
            || SimulationStats::empty(t_max, seed, guaranteed),
            |a, b| Ok(a.merge(b)),
        )?;
    Ok(stats)
}
