//! Closed-form capacity of a square, invertible channel.
//!
//! Writing the mutual information in terms of the output distribution
//! `q = A^T p` (so `p = A^{-T} q`) turns the capacity problem into
//!
//! ```text
//! maximize  -Σ_j q_j log2 q_j + Σ_j q_j K_j      subject to  Σ_j q_j = 1
//! ```
//!
//! with `K_j = Σ_i (A^{-1})_{ji} h_i` and `h_i = Σ_k A_ik log2 A_ik` (minus the
//! row entropy). Every output probability is positive whenever the channel
//! matrix is, so the nonnegativity multipliers vanish and stationarity gives
//!
//! ```text
//! ν* = log2 Σ_j 2^(K_j - 1),   q*_j = 2^(K_j - ν* - 1),   p* = A^{-T} q*
//! ```
//!
//! The stationary value is `ν* + 1`. It is the capacity only when `p*` lies on
//! the simplex; otherwise it maximizes over a strictly larger set and is an
//! upper bound.
//!
//! All logarithms are base 2 and `0 · log 0 = 0`.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::{build_inverse, build_matrix, InverseMatrix, TransitionMatrix};
use crate::params::ChannelParams;

/// Half-width of the band around `[0, 1]` inside which `p*` entries are
/// still accepted (and clamped).
pub const VALIDITY_GUARD: f64 = 1e-9;

/// Entries below this are treated as exact zeros in entropy sums.
const ENTROPY_FLOOR: f64 = 1e-300;

const DISTRIBUTION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    Valid,
    InvalidInput,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::Valid => "Valid",
            Validity::InvalidInput => "InvalidInput",
        }
    }
}

impl std::fmt::Display for Validity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether the reported capacity is the capacity or only bounds it above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapacityRole {
    Exact,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformationBreakdown {
    /// Output entropy `H(Y)`.
    pub h_y: f64,
    /// Conditional entropy `H(Y|X)`.
    pub h_y_given_x: f64,
    pub i_xy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacitySolution {
    pub params: ChannelParams,
    pub k_vector: Vec<f64>,
    pub nu_star: f64,
    pub q_star: Vec<f64>,
    /// Raw `A^{-T} q*`; may leave the simplex.
    pub p_star: Vec<f64>,
    pub capacity_bits: f64,
    pub validity: Validity,
    pub capacity_role: CapacityRole,
}

impl CapacitySolution {
    pub fn min_p_star(&self) -> f64 {
        self.p_star.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_p_star(&self) -> f64 {
        self.p_star.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Outcome of [`classify_validity`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityCheck {
    pub validity: Validity,
    /// `p*` clamped to `[0, 1]` and renormalized. Only meaningful when valid.
    pub clamped: Vec<f64>,
}

fn plogp(x: f64) -> f64 {
    if x < ENTROPY_FLOOR {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits.
pub fn entropy_bits(dist: &[f64]) -> f64 {
    -dist.iter().map(|&x| plogp(x)).sum::<f64>()
}

/// `H_b(α) = -α log2 α - (1 - α) log2 (1 - α)`.
pub fn binary_entropy(alpha: f64) -> f64 {
    -(plogp(alpha) + plogp(1.0 - alpha))
}

/// Compensated sum over the terms in sorted order. The result depends only
/// on the multiset of terms, so mirrored rows of a centrally symmetric matrix
/// give bit-identical sums.
fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for t in terms {
        let next = sum + t;
        carry += if sum.abs() >= t.abs() { (sum - next) + t } else { (t - next) + sum };
        sum = next;
    }
    sum + carry
}

fn dot_sorted(a: impl Iterator<Item = f64>, b: impl Iterator<Item = f64>) -> f64 {
    sorted_sum(a.zip(b).map(|(x, y)| x * y).collect())
}

/// `h_i = Σ_k A_ik log2 A_ik`, i.e. minus the entropy of each row.
pub fn row_log_sums(matrix: &DenseMatrix) -> Vec<f64> {
    matrix.rows().map(|row| sorted_sum(row.iter().map(|&a| plogp(a)).collect())).collect()
}

/// `inverse · h`.
fn k_from_log_sums(inverse: &DenseMatrix, h: &[f64]) -> Vec<f64> {
    inverse.rows().map(|row| dot_sorted(row.iter().copied(), h.iter().copied())).collect()
}

fn check_distribution(p: &[f64], dim: usize) -> Result<()> {
    if p.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: p.len() });
    }
    if let Some(bad) = p.iter().find(|v| v.is_nan() || **v < 0.0) {
        return Err(Error::InvalidDistribution(format!("entry {bad} is negative")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > DISTRIBUTION_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// `I(X;Y) = H(Y) - H(Y|X)` for input distribution `p` and channel `matrix`.
pub fn mutual_information(matrix: &TransitionMatrix, p: &[f64]) -> Result<MutualInformationBreakdown> {
    mutual_information_dense(matrix.as_dense(), p)
}

pub fn mutual_information_dense(matrix: &DenseMatrix, p: &[f64]) -> Result<MutualInformationBreakdown> {
    check_distribution(p, matrix.dim())?;
    let q = matrix.left_mul_vec(p);
    let h_y = entropy_bits(&q);
    let h_y_given_x = -p.iter().zip(row_log_sums(matrix)).map(|(pi, hi)| pi * hi).sum::<f64>();
    Ok(MutualInformationBreakdown { h_y, h_y_given_x, i_xy: h_y - h_y_given_x })
}

/// `K_j = Σ_i inverse[j][i] · h_i`.
pub fn k_vector(matrix: &TransitionMatrix, inverse: &InverseMatrix) -> Vec<f64> {
    k_from_log_sums(inverse.as_dense(), &row_log_sums(matrix.as_dense()))
}

/// Valid iff every entry is within [`VALIDITY_GUARD`] of `[0, 1]`.
pub fn classify_validity(p_star: &[f64]) -> ValidityCheck {
    let inside = p_star
        .iter()
        .all(|v| (-VALIDITY_GUARD..=1.0 + VALIDITY_GUARD).contains(v));
    let clamped: Vec<f64> = p_star.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let total: f64 = clamped.iter().sum();
    let clamped = if total > 0.0 {
        clamped.into_iter().map(|v| v / total).collect()
    } else {
        clamped
    };
    let validity = if inside { Validity::Valid } else { Validity::InvalidInput };
    ValidityCheck { validity, clamped }
}

fn log2_sum_exp2(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let peak = values.clone().fold(f64::NEG_INFINITY, f64::max);
    peak + values.map(|v| (v - peak).exp2()).sum::<f64>().log2()
}

pub fn solve_closed_form(matrix: &TransitionMatrix, inverse: &InverseMatrix) -> Result<CapacitySolution> {
    if matrix.dim() != inverse.dim() {
        return Err(Error::DimensionMismatch { expected: matrix.dim(), actual: inverse.dim() });
    }
    let h = row_log_sums(matrix.as_dense());
    let k = k_from_log_sums(inverse.as_dense(), &h);

    let nu_star = log2_sum_exp2(k.iter().map(|kj| kj - 1.0));
    let q_star: Vec<f64> = k.iter().map(|kj| (kj - nu_star - 1.0).exp2()).collect();
    let p_star = k_from_log_sums(&inverse.as_dense().transpose(), &q_star);

    // -Σ q log q + Σ p h; equals I(X;Y) at p* when p* is a distribution.
    let capacity_bits = entropy_bits(&q_star) + dot_sorted(p_star.iter().copied(), h.iter().copied());

    let validity = classify_validity(&p_star).validity;
    let capacity_role = match validity {
        Validity::Valid => CapacityRole::Exact,
        Validity::InvalidInput => CapacityRole::UpperBound,
    };
    Ok(CapacitySolution {
        params: matrix.params(),
        k_vector: k,
        nu_star,
        q_star,
        p_star,
        capacity_bits,
        validity,
        capacity_role,
    })
}

/// Builds `A_n`, its inverse and the closed-form solution in one go.
pub fn solve(params: ChannelParams) -> Result<CapacitySolution> {
    let inverse = build_inverse(params)?;
    solve_closed_form(&build_matrix(params), &inverse)
}

/// `max_j |K_j - (1 + log2 q_j) - ν|`, the KKT stationarity gap in bits.
pub fn stationarity_residual_at(k: &[f64], q: &[f64], nu: f64) -> f64 {
    k.iter()
        .zip(q)
        .map(|(kj, qj)| (kj - (1.0 + qj.log2()) - nu).abs())
        .fold(0.0, f64::max)
}

pub fn stationarity_residual(
    matrix: &TransitionMatrix,
    inverse: &InverseMatrix,
    solution: &CapacitySolution,
) -> f64 {
    stationarity_residual_at(&k_vector(matrix, inverse), &solution.q_star, solution.nu_star)
}
