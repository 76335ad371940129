//! Human tables use 6 significant figures; CSV and JSON use the shortest
//! representation that parses back to the same `f64`.

use std::io::{self, Write};

use serde::Serialize;
use wchan::markov_sim::SimEstimate;
use wchan::{BAResult, CapacitySolution, ChannelParams, DenseMatrix, SimConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Serialize)]
struct MatrixJson {
    n: usize,
    alpha: f64,
    entries: Vec<Vec<f64>>,
}

/// Six significant digits, switching to exponent form outside `[1e-5, 1e6)`.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

/// Shortest string that parses back to the same `f64`.
pub fn exact(v: f64) -> String {
    let mag = v.abs();
    if mag != 0.0 && !(1e-5..1e16).contains(&mag) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn table(out: &mut impl Write, m: &DenseMatrix) -> io::Result<()> {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>12}", sig6(*v))).collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    Ok(())
}

fn vector(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| sig6(*x)).collect();
    format!("[{}]", cells.join(", "))
}

pub fn write_matrix(out: &mut impl Write, params: ChannelParams, m: &DenseMatrix, format: Format) -> io::Result<()> {
    match format {
        Format::Table => table(out, m),
        Format::Csv => {
            writeln!(out, "w_from,w_to,value")?;
            for (i, row) in m.rows().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    writeln!(out, "{i},{j},{}", exact(*v))?;
                }
            }
            Ok(())
        }
        Format::Json => {
            let doc = MatrixJson { n: params.n(), alpha: params.alpha(), entries: m.to_rows() };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
    }
}

pub fn write_capacity(out: &mut impl Write, sol: &CapacitySolution, ba: &BAResult, residual: f64) -> io::Result<()> {
    let p = sol.params;
    writeln!(out, "n = {}, alpha = {}", p.n(), p.alpha())?;
    writeln!(out, "K          = {}", vector(&sol.k_vector))?;
    writeln!(out, "nu*        = {}", sig6(sol.nu_star))?;
    writeln!(out, "q*         = {}", vector(&sol.q_star))?;
    writeln!(out, "p*         = {}", vector(&sol.p_star))?;
    writeln!(out, "capacity (closed form)    = {} bits ({:?})", sig6(sol.capacity_bits), sol.capacity_role)?;
    writeln!(
        out,
        "capacity (Blahut-Arimoto) = {} bits ({} iterations{})",
        sig6(ba.capacity_bits),
        ba.iterations,
        if ba.converged { "" } else { ", not converged" }
    )?;
    writeln!(out, "validity   = {}", sol.validity)?;
    writeln!(out, "residual   = {residual:.3e}")
}

pub fn write_simulation(out: &mut impl Write, config: &SimConfig, est: &SimEstimate) -> io::Result<()> {
    let p = config.params();
    writeln!(
        out,
        "n = {}, alpha = {}, trials per state = {}, seed = {}",
        p.n(),
        p.alpha(),
        config.trials_per_state(),
        config.seed()
    )?;
    table(out, &est.empirical)?;
    writeln!(out, "max_abs_deviation = {}", exact(est.max_abs_deviation))
}
