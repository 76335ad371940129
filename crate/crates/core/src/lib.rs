//! Transition matrices of `n` parallel binary channels whose states flip
//! independently with probability `alpha`, their closed-form inverse, and the
//! closed-form KKT capacity solver built on that inverse.
//!
//! The receiver only observes the *weight* of the channel vector (how many
//! channels are "good"), so the channel matrix is the `(n+1)×(n+1)` weight
//! transition matrix `A_n`:
//!
//! ```
//! use wchan::{build_matrix, build_inverse, ChannelParams};
//!
//! let params = ChannelParams::new(2, 0.1).unwrap();
//! let a = build_matrix(params);
//! assert!((a.get(1, 1) - 0.82).abs() < 1e-12);
//!
//! let inv = build_inverse(params).unwrap();
//! let eye = a.as_dense().matmul(inv.as_dense());
//! assert!(eye.max_abs_diff_identity() < 1e-12);
//! ```
//!
//! Independent oracles live next to the closed forms: pivoted Gaussian
//! elimination ([`numeric_inverse_oracle`]), Blahut–Arimoto
//! ([`blahut_arimoto`]) and a seeded Monte Carlo flip simulation
//! ([`simulate_transitions`]).

pub mod blahut_arimoto;
pub mod capacity;
mod dense;
mod error;
pub mod markov_sim;
pub mod matrix;
mod params;

pub use blahut_arimoto::{blahut_arimoto, BAConfig, BAResult};
pub use capacity::{
    binary_entropy, classify_validity, k_vector, mutual_information, solve, solve_closed_form,
    stationarity_residual, CapacityRole, CapacitySolution, MutualInformationBreakdown, Validity,
    ValidityCheck,
};
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use markov_sim::{simulate_transitions, SimConfig, SimEstimate};
pub use matrix::{
    build_inverse, build_matrix, entry, numeric_inverse_oracle, signed_companion, InverseMatrix,
    TransitionMatrix,
};
pub use params::{ChannelParams, WeightState, MAX_CHANNELS};
