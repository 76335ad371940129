//! Blahut–Arimoto capacity iteration, used as the numerical ground truth for
//! the closed-form solver.
//!
//! Each step computes `c_i = Σ_j A_ij log2(A_ij / q_j)` for the current input
//! `p`, then reweights `p_i ∝ p_i 2^{c_i}`. Capacity is bracketed by
//! `log2 Σ_i p_i 2^{c_i} ≤ C ≤ max_i c_i`.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::TransitionMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BAConfig {
    tolerance_bits: f64,
    max_iterations: usize,
}

impl BAConfig {
    pub const MIN_TOLERANCE: f64 = 1e-14;
    pub const MAX_ITERATIONS: usize = 1_000_000;

    pub fn new(tolerance_bits: f64, max_iterations: usize) -> Result<Self> {
        if tolerance_bits.is_nan() || tolerance_bits < Self::MIN_TOLERANCE {
            return Err(Error::Config(format!(
                "tolerance_bits = {tolerance_bits} must be at least {:e}",
                Self::MIN_TOLERANCE
            )));
        }
        if max_iterations == 0 || max_iterations > Self::MAX_ITERATIONS {
            return Err(Error::Config(format!(
                "max_iterations = {max_iterations} must be in [1, {}]",
                Self::MAX_ITERATIONS
            )));
        }
        Ok(Self { tolerance_bits, max_iterations })
    }

    pub fn tolerance_bits(&self) -> f64 {
        self.tolerance_bits
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }
}

impl Default for BAConfig {
    fn default() -> Self {
        Self { tolerance_bits: 1e-10, max_iterations: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BAResult {
    /// Lower end of the final bracket; never exceeds the true capacity.
    pub capacity_bits: f64,
    pub upper_bound_bits: f64,
    pub p_opt: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Snapshot handed to the observer of [`blahut_arimoto_observed`].
#[derive(Debug, Clone, Copy)]
pub struct BAIterate<'a> {
    pub iteration: usize,
    pub lower_bits: f64,
    pub upper_bits: f64,
    /// Input distribution the bracket was evaluated at.
    pub p: &'a [f64],
}

pub fn blahut_arimoto(matrix: &TransitionMatrix, config: &BAConfig) -> BAResult {
    blahut_arimoto_observed(matrix.as_dense(), config, |_| {})
}

/// Runs the iteration on any row-stochastic square matrix, calling `observe`
/// once per iteration.
pub fn blahut_arimoto_observed(
    matrix: &DenseMatrix,
    config: &BAConfig,
    mut observe: impl FnMut(BAIterate<'_>),
) -> BAResult {
    let m = matrix.dim();
    let mut p = vec![1.0 / m as f64; m];
    let mut c = vec![0.0; m];
    let mut best = (f64::NEG_INFINITY, f64::INFINITY);

    for iteration in 1..=config.max_iterations {
        let q = matrix.left_mul_vec(&p);
        for (ci, row) in c.iter_mut().zip(matrix.rows()) {
            // A_ij > 0 implies q_j > 0, so zero columns never reach the log.
            *ci = row
                .iter()
                .zip(&q)
                .filter(|(a, _)| **a > 0.0)
                .map(|(a, qj)| a * (a / qj).log2())
                .sum();
        }
        let c_max = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weighted: Vec<f64> = p.iter().zip(&c).map(|(pi, ci)| pi * (ci - c_max).exp2()).collect();
        let total: f64 = weighted.iter().sum();
        let lower = c_max + total.log2();
        let upper = c_max;

        observe(BAIterate { iteration, lower_bits: lower, upper_bits: upper, p: &p });
        best = (lower, upper);

        if upper - lower <= config.tolerance_bits {
            return BAResult {
                capacity_bits: lower,
                upper_bound_bits: upper,
                p_opt: p,
                iterations: iteration,
                converged: true,
            };
        }
        p = weighted.into_iter().map(|w| w / total).collect();
    }

    BAResult {
        capacity_bits: best.0,
        upper_bound_bits: best.1,
        p_opt: p,
        iterations: config.max_iterations,
        converged: false,
    }
}
