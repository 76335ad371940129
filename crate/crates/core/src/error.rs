use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("channel count n = {0} out of range [1, {max}]", max = crate::MAX_CHANNELS)]
    ChannelCount(usize),

    #[error("flip probability alpha = {0} is not in [0, 1]")]
    FlipProbability(f64),

    #[error("weight state {w} out of range [0, {n}]")]
    WeightOutOfRange { w: usize, n: usize },

    /// `|1 - 2 alpha|` is below the singularity guard; `A_n` is not invertible.
    #[error("alpha = {alpha} is too close to 1/2: |1 - 2 alpha| = {gap:e} is below the singularity guard")]
    SingularAlpha { alpha: f64, gap: f64 },

    #[error("matrix is numerically singular (pivot {pivot:e} in column {column})")]
    NumericallySingular { column: usize, pivot: f64 },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}
