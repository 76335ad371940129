//! Oracles shared by the integration tests. Nothing here calls into the
//! closed-form code paths it is used to check.

#![allow(dead_code)]

use wchan::{ChannelParams, DenseMatrix};

/// Landing-weight distribution from a fixed bit-string of weight `w_from`,
/// by enumerating all `2^n` flip patterns.
pub fn enumerate_row(n: usize, alpha: f64, w_from: usize) -> Vec<f64> {
    let start: u32 = (0..w_from).map(|b| 1u32 << b).sum();
    let mut row = vec![0.0; n + 1];
    for mask in 0u32..(1 << n) {
        let flips = mask.count_ones() as i32;
        let weight = alpha.powi(flips) * (1.0 - alpha).powi(n as i32 - flips);
        row[(start ^ mask).count_ones() as usize] += weight;
    }
    row
}

pub fn enumerate_matrix(n: usize, alpha: f64) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = (0..=n).map(|w| enumerate_row(n, alpha, w)).collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

/// `A_2` with the symbolic entries as printed.
pub fn printed_a2(a: f64) -> [[f64; 3]; 3] {
    let b = 1.0 - a;
    [
        [b * b, 2.0 * a * b, a * a],
        [a * b, b * b + a * a, a * b],
        [a * a, 2.0 * a * b, b * b],
    ]
}

/// `A_3` with the symbolic entries as printed.
pub fn printed_a3(a: f64) -> [[f64; 4]; 4] {
    let b = 1.0 - a;
    [
        [b.powi(3), 3.0 * b * b * a, 3.0 * a * a * b, a.powi(3)],
        [b * b * a, 2.0 * b * a * a + b.powi(3), 2.0 * b * b * a + a.powi(3), b * a * a],
        [b * a * a, 2.0 * b * b * a + a.powi(3), 2.0 * b * a * a + b.powi(3), b * b * a],
        [a.powi(3), 3.0 * a * a * b, 3.0 * b * b * a, b.powi(3)],
    ]
}

pub fn reference_binary_entropy(a: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(a) + term(1.0 - a)
}

pub fn params(n: usize, alpha: f64) -> ChannelParams {
    ChannelParams::new(n, alpha).unwrap()
}

/// `lo, lo + step, ...` up to `hi` inclusive, snapped to 1e-12.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect()
}

pub fn is_palindrome(v: &[f64], tol: f64) -> bool {
    let n = v.len();
    (0..n).all(|i| (v[i] - v[n - 1 - i]).abs() <= tol * v[i].abs().max(1.0))
}
