//! Weight-state transition matrix `A_n` and its closed-form inverse.
//!
//! Entry `(a, b)` of `A_n` is the probability that a channel vector with `a`
//! good channels has `b` good channels after one slot. If `s` of the `a` good
//! channels go bad, exactly `b - a + s` of the `n - a` bad ones must recover:
//!
//! ```text
//! A[a][b] = Σ_s C(a, s) · C(n - a, b - a + s) · α^(b - a + 2s) · (1 - α)^(n - (b - a + 2s))
//! ```
//!
//! with `s` running over `max(a - b, 0) ..= min(n - b, a)`.
//!
//! The inverse needs no elimination: with the signed companion
//! `A*[i][j] = (-1)^(i+j) A[i][j]` one has `A · A* = (1 - 2α)^n · I`, hence
//! `A^{-1} = A* / (1 - 2α)^n` whenever `α ≠ 1/2`.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::params::{ChannelParams, WeightState};

/// Lower bound on `|1 - 2α|` accepted by [`build_inverse`].
pub const SINGULARITY_GUARD: f64 = 1e-9;

/// Smallest pivot magnitude accepted by [`numeric_inverse_oracle`].
pub const PIVOT_FLOOR: f64 = 1e-13;

/// Row-stochastic `(n+1)×(n+1)` matrix `A_n`, indexed `[w_from][w_to]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    params: ChannelParams,
    entries: DenseMatrix,
}

impl TransitionMatrix {
    pub fn params(&self) -> ChannelParams {
        self.params
    }

    pub fn get(&self, w_from: usize, w_to: usize) -> f64 {
        self.entries[(w_from, w_to)]
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    /// Largest deviation of any row sum from 1.
    pub fn row_sum_error(&self) -> f64 {
        self.entries
            .row_sums()
            .into_iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `A[i][j] == A[n-i][n-j]` for every pair, compared bit for bit.
    pub fn is_centrally_symmetric(&self) -> bool {
        let n = self.params.n();
        (0..=n).all(|i| (0..=n).all(|j| self.get(i, j) == self.get(n - i, n - j)))
    }
}

/// Closed-form `A_n^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseMatrix {
    params: ChannelParams,
    entries: DenseMatrix,
}

impl InverseMatrix {
    pub fn params(&self) -> ChannelParams {
        self.params
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }
}

/// Exact binomial coefficient by the multiplicative formula. Every
/// intermediate `c · (n - k + i) / i` is itself a binomial, so the division
/// is exact.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1u64, |c, i| c * (n - k + i) / i)
}

/// `[x^0, x^1, ..., x^max]` by repeated multiplication.
fn powers(x: f64, max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 1.0;
    for _ in 0..=max {
        out.push(acc);
        acc *= x;
    }
    out
}

fn entry_with_powers(n: usize, from: usize, to: usize, flip: &[f64], keep: &[f64]) -> f64 {
    let s_min = from.saturating_sub(to);
    let s_max = (n - to).min(from);
    let mut total = 0.0;
    for s in s_min..=s_max {
        // b - a + s good channels recovered, s lost
        let recovered = to + s - from;
        let flips = recovered + s;
        let ways = binomial(from as u64, s as u64) * binomial((n - from) as u64, recovered as u64);
        total += ways as f64 * flip[flips] * keep[n - flips];
    }
    total
}

/// Probability of moving from `w_from` good channels to `w_to` good channels.
pub fn entry(params: ChannelParams, w_from: WeightState, w_to: WeightState) -> f64 {
    let n = params.n();
    let flip = powers(params.alpha(), n);
    let keep = powers(1.0 - params.alpha(), n);
    entry_with_powers(n, w_from.get(), w_to.get(), &flip, &keep)
}

pub fn build_matrix(params: ChannelParams) -> TransitionMatrix {
    let n = params.n();
    let flip = powers(params.alpha(), n);
    let keep = powers(1.0 - params.alpha(), n);
    let entries = DenseMatrix::from_fn(n + 1, |i, j| entry_with_powers(n, i, j, &flip, &keep));
    TransitionMatrix { params, entries }
}

fn checkerboard(i: usize, j: usize) -> f64 {
    if (i + j).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `A*[i][j] = (-1)^(i+j) A[i][j]`, satisfying `A · A* = (1 - 2α)^n · I`.
pub fn signed_companion(matrix: &TransitionMatrix) -> DenseMatrix {
    matrix.entries.map(|i, j, v| if v == 0.0 { 0.0 } else { checkerboard(i, j) * v })
}

/// `A_n^{-1}[i][j] = (-1)^(i+j) A_n[i][j] / (1 - 2α)^n`.
pub fn build_inverse(params: ChannelParams) -> Result<InverseMatrix> {
    let gap = params.contraction();
    if gap.abs() < SINGULARITY_GUARD {
        return Err(Error::SingularAlpha { alpha: params.alpha(), gap: gap.abs() });
    }
    let det_scale = powers(gap, params.n())[params.n()];
    let matrix = build_matrix(params);
    // v == 0 stays +0 rather than picking up the checkerboard sign
    let entries = matrix
        .entries
        .map(|i, j, v| if v == 0.0 { 0.0 } else { checkerboard(i, j) * v / det_scale });
    Ok(InverseMatrix { params, entries })
}

/// Inverse by Gauss–Jordan elimination with partial pivoting. Shares nothing
/// with the closed form and is meant as a cross-check.
pub fn numeric_inverse_oracle(matrix: &DenseMatrix) -> Result<DenseMatrix> {
    let n = matrix.dim();
    let mut work = matrix.clone();
    let mut inv = DenseMatrix::identity(n);

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, work[(r, col)]))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("non-empty pivot range");
        if pivot.abs() < PIVOT_FLOOR {
            return Err(Error::NumericallySingular { column: col, pivot });
        }
        if pivot_row != col {
            for j in 0..n {
                let (a, b) = (work[(col, j)], work[(pivot_row, j)]);
                work[(col, j)] = b;
                work[(pivot_row, j)] = a;
                let (a, b) = (inv[(col, j)], inv[(pivot_row, j)]);
                inv[(col, j)] = b;
                inv[(pivot_row, j)] = a;
            }
        }
        for j in 0..n {
            work[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                work[(r, j)] -= factor * work[(col, j)];
                inv[(r, j)] -= factor * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}
