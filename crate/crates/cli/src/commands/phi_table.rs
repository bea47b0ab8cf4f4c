use anyhow::{bail, Context};
use rayon::prelude::*;

use radharm_core::harmonic::{closed_form, laplacian_parts, laplacian_parts_numeric};
use radharm_core::{phi0_numeric, phi1, RadialFunction};

use super::parse_model;
use crate::format::{num, CsvDoc};
use crate::{Report, RunConfig, EXIT_OK};

pub const HEADER: [&str; 6] = [
    "r",
    "theta",
    "phi1",
    "phi0_closed",
    "phi0_numeric_diff",
    "laplacian_residual",
];

/// `n` evenly spaced radii from `r_min` to `r_max` inclusive.
pub fn grid(r_min: f64, r_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![r_min],
        _ => (0..n)
            .map(|i| r_min + (r_max - r_min) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn run(
    config: &RunConfig,
    model_id: &str,
    r_min: f64,
    r_max: f64,
    n: usize,
    r_ref: f64,
    numeric_only: bool,
) -> anyhow::Result<Report> {
    let model = parse_model(model_id)?;
    if n == 0 {
        bail!("n must be at least 1");
    }
    if !(r_min <= r_max) {
        bail!("r_min must not exceed r_max");
    }
    let domain = model.domain();
    for (name, r) in [("r_min", r_min), ("r_max", r_max), ("r_ref", r_ref)] {
        if !domain.contains(r) {
            bail!("{name}={r} lies outside the open domain (0, {}) of {model}", model.domain_end());
        }
    }
    let closed = closed_form(model);
    if closed.is_none() && !numeric_only {
        bail!("{model} has no closed form; numeric only with --numeric-only");
    }
    let use_closed = closed.is_some() && !numeric_only;

    let rows: Vec<anyhow::Result<[String; 6]>> = grid(r_min, r_max, n)
        .into_par_iter()
        .map(|r| {
            let p = config.precision;
            let theta = model.theta(r)?;
            let phi1 = phi1(model, r)?;
            let numeric = phi0_numeric(model, r, r_ref).with_context(|| format!("quadrature at r={r}"))?;
            let (closed_cell, residual) = if use_closed {
                let f = RadialFunction::phi0_closed(model)?;
                let value = f.eval(r)?;
                (num(value, p), laplacian_parts(model, &f, r)?.value().abs())
            } else {
                (String::new(), laplacian_parts_numeric(model, r)?.value().abs())
            };
            Ok([
                num(r, p),
                num(theta, p),
                num(phi1, p),
                closed_cell,
                num(numeric, p),
                num(residual, p),
            ])
        })
        .collect();

    let mut doc = CsvDoc::new(config, &HEADER)?;
    for row in rows {
        doc.row(row?)?;
    }
    Ok(Report {
        text: doc.finish()?,
        exit_code: EXIT_OK,
    })
}
