use std::io::{self, Write};

use rayon::prelude::*;
use wchan::matrix::SINGULARITY_GUARD;
use wchan::{
    blahut_arimoto, build_inverse, build_matrix, solve_closed_form, stationarity_residual, BAConfig,
    ChannelParams, Validity, MAX_CHANNELS,
};

use crate::render::exact;

pub const CSV_HEADER: &str = "n,alpha,capacity_closed_bits,capacity_ba_bits,validity,min_p_star,stationarity_residual";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    n_max: usize,
    alphas: Vec<f64>,
}

impl SweepGrid {
    pub fn new(n_max: usize, alpha_min: f64, alpha_max: f64, alpha_step: f64) -> Result<Self, String> {
        if n_max == 0 || n_max > MAX_CHANNELS {
            return Err(format!("n_max = {n_max} must be in [1, {MAX_CHANNELS}]"));
        }
        if !(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max < 0.5) {
            return Err(format!("need 0 < alpha_min <= alpha_max < 0.5, got [{alpha_min}, {alpha_max}]"));
        }
        if 1.0 - 2.0 * alpha_max < SINGULARITY_GUARD {
            return Err(format!("alpha_max = {alpha_max} is within the singularity guard of 0.5"));
        }
        if alpha_step.is_nan() || alpha_step <= 0.0 {
            return Err(format!("alpha_step = {alpha_step} must be positive"));
        }
        let count = ((alpha_max - alpha_min) / alpha_step + 1e-9).floor() as usize + 1;
        // snapping to 12 decimals keeps 0.01 * 7 from printing as 0.07000000000000001
        let alphas = (0..count)
            .map(|k| ((alpha_min + k as f64 * alpha_step) * 1e12).round() / 1e12)
            .filter(|&a| a <= alpha_max)
            .collect();
        Ok(Self { n_max, alphas })
    }

    pub fn points(&self) -> Vec<(usize, f64)> {
        (1..=self.n_max)
            .flat_map(|n| self.alphas.iter().map(move |&a| (n, a)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub alpha: f64,
    pub capacity_closed_bits: f64,
    pub capacity_ba_bits: f64,
    pub validity: Validity,
    pub min_p_star: f64,
    pub stationarity_residual: f64,
}

fn evaluate(n: usize, alpha: f64, config: &BAConfig) -> SweepRecord {
    // the grid guarantees valid parameters and a non-singular inverse
    let params = ChannelParams::new(n, alpha).expect("grid point in range");
    let matrix = build_matrix(params);
    let inverse = build_inverse(params).expect("grid avoids alpha = 1/2");
    let solution = solve_closed_form(&matrix, &inverse).expect("matching dimensions");
    let ba = blahut_arimoto(&matrix, config);
    SweepRecord {
        n,
        alpha,
        capacity_closed_bits: solution.capacity_bits,
        capacity_ba_bits: ba.capacity_bits,
        validity: solution.validity,
        min_p_star: solution.min_p_star(),
        stationarity_residual: stationarity_residual(&matrix, &inverse, &solution),
    }
}

/// Evaluates every grid point in parallel; rows come back n-major, alpha-minor.
pub fn run(grid: &SweepGrid) -> Vec<SweepRecord> {
    let config = BAConfig::default();
    grid.points()
        .into_par_iter()
        .map(|(n, alpha)| evaluate(n, alpha, &config))
        .collect()
}

pub fn write_csv(out: &mut impl Write, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            exact(r.alpha),
            exact(r.capacity_closed_bits),
            exact(r.capacity_ba_bits),
            r.validity,
            exact(r.min_p_star),
            exact(r.stationarity_residual)
        )?;
    }
    Ok(())
}
