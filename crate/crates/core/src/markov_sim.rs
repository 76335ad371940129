//! Monte Carlo estimate of `A_n` by flipping channel bits directly.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded from the
//! 64-bit seed. Starting weight `w` draws from stream `w`, and trial `t` of
//! that stream starts at word position `2 · n · t` (one `u64`, two 32-bit
//! words, per channel). Any trial can be replayed on its own, so the counts
//! do not depend on how trials are split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::build_matrix;
use crate::params::ChannelParams;

/// Trials handed to one worker at a time.
const CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    params: ChannelParams,
    trials_per_state: u64,
    seed: u64,
}

impl SimConfig {
    pub fn new(params: ChannelParams, trials_per_state: u64, seed: u64) -> Result<Self> {
        if trials_per_state == 0 {
            return Err(Error::Config("trials_per_state must be at least 1".into()));
        }
        Ok(Self { params, trials_per_state, seed })
    }

    pub fn params(&self) -> ChannelParams {
        self.params
    }

    pub fn trials_per_state(&self) -> u64 {
        self.trials_per_state
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimEstimate {
    pub empirical: DenseMatrix,
    /// Raw landing counts, `counts[w_from][w_to]`.
    pub counts: Vec<Vec<u64>>,
    pub trials_per_state: u64,
    /// Largest entrywise gap to the closed-form `A_n`.
    pub max_abs_deviation: f64,
}

/// Bit-string of weight `w` used as the starting state: `w` ones in the
/// lowest positions.
pub fn representative(w: usize) -> u32 {
    if w == 0 {
        0
    } else {
        u32::MAX >> (32 - w)
    }
}

fn run_trials(n: usize, alpha: f64, start: u32, seed: u64, stream: u64, trials: std::ops::Range<u64>) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(trials.start) * 2 * n as u128);
    let mut counts = vec![0u64; n + 1];
    for _ in trials {
        let mut flips = 0u32;
        for bit in 0..n {
            if rng.gen::<f64>() < alpha {
                flips |= 1 << bit;
            }
        }
        counts[(start ^ flips).count_ones() as usize] += 1;
    }
    counts
}

/// Landing-weight counts from an arbitrary starting bit-string.
///
/// Panics if `start` has bits set above position `n`.
pub fn simulate_from(params: ChannelParams, start: u32, trials: u64, seed: u64, stream: u64) -> Vec<u64> {
    let n = params.n();
    assert!(start >> n == 0, "start state has bits beyond n");
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK_TRIALS;
            let hi = (lo + CHUNK_TRIALS).min(trials);
            run_trials(n, params.alpha(), start, seed, stream, lo..hi)
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                acc
            },
        )
}

pub fn counts_to_frequencies(counts: &[u64], trials: u64) -> Vec<f64> {
    counts.iter().map(|&c| c as f64 / trials as f64).collect()
}

pub fn simulate_transitions(config: &SimConfig) -> SimEstimate {
    let params = config.params;
    let n = params.n();
    let counts: Vec<Vec<u64>> = (0..=n)
        .into_par_iter()
        .map(|w| simulate_from(params, representative(w), config.trials_per_state, config.seed, w as u64))
        .collect();
    let rows: Vec<Vec<f64>> = counts
        .iter()
        .map(|row| counts_to_frequencies(row, config.trials_per_state))
        .collect();
    let empirical = DenseMatrix::from_rows(&rows).expect("square by construction");
    let max_abs_deviation = empirical.max_abs_diff(build_matrix(params).as_dense());
    SimEstimate { empirical, counts, trials_per_state: config.trials_per_state, max_abs_deviation }
}
