use crate::error::{Error, Result};

/// Largest supported channel count. `C(30, 15)` and products of two such
/// binomials still fit exactly in a `u64`.
pub const MAX_CHANNELS: usize = 30;

/// `n` parallel binary channels, each flipping good↔bad with probability
/// `alpha` during one transmission slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    n: usize,
    alpha: f64,
}

impl ChannelParams {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 || n > MAX_CHANNELS {
            return Err(Error::ChannelCount(n));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::FlipProbability(alpha));
        }
        Ok(Self { n, alpha })
    }

    /// Number of binary channels.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-channel flip probability.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Number of weight states, `n + 1`.
    pub fn states(&self) -> usize {
        self.n + 1
    }

    /// `1 - 2 alpha`, the per-channel eigenvalue of the flip kernel.
    pub fn contraction(&self) -> f64 {
        1.0 - 2.0 * self.alpha
    }
}

/// Number of "good" channels, `0 ..= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightState(usize);

impl WeightState {
    pub fn new(w: usize, params: ChannelParams) -> Result<Self> {
        if w > params.n() {
            return Err(Error::WeightOutOfRange { w, n: params.n() });
        }
        Ok(Self(w))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The state obtained by relabelling every channel (good↔bad).
    pub fn mirrored(self, params: ChannelParams) -> Self {
        Self(params.n() - self.0)
    }
}
