//! Command-line front end for `radharm-core`.
//!
//! Every command renders its whole output into a [`Report`] before anything is
//! written, so identical arguments give byte-identical files. The first line of
//! each CSV (and a `<metadata>` element of each SVG, and the `config` field of
//! each JSON report) records the resolved configuration.

pub mod commands;
pub mod config;
pub mod format;
pub mod svg;

use clap::{Parser, Subcommand};

pub use config::RunConfig;

/// Exit code for a completed run.
pub const EXIT_OK: i32 = 0;
/// Exit code when `verify` found a failing check.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for invalid arguments, unknown models and IO problems.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "radharm", version, about = "Radial harmonic functions on rank-one symmetric spaces")]
pub struct Cli {
    /// Boundary band for quotient rasters (default: twice the grid spacing).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for the randomized checks and Monte Carlo estimates.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Significant digits after the point in CSV numbers (6 to 17).
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Tabulate Θ, φ₁ and φ₀ on an even grid.
    PhiTable {
        model: String,
        #[arg(allow_negative_numbers = true)]
        r_min: f64,
        #[arg(allow_negative_numbers = true)]
        r_max: f64,
        n: usize,
        #[arg(allow_negative_numbers = true)]
        r_ref: f64,
        /// Allow models without a tabulated φ₀ (quadrature only).
        #[arg(long)]
        numeric_only: bool,
    },
    /// Check tabulated φ₀ rows, boundary behavior, group actions and bound notes.
    Verify {
        /// `all`, a model id such as `S3` or `hCP2`, or a group id.
        #[arg(default_value = "all")]
        scope: String,
    },
    /// Injectivity radius and cut locus of a quotient.
    Quotient {
        /// torus, klein, rp[m], lens[k] or cpq[k]
        group: String,
        /// Comma-separated coordinates (default: the origin or e₁).
        #[arg(allow_hyphen_values = true)]
        basepoint: Option<String>,
        /// Raster cells per side.
        #[arg(default_value_t = 200)]
        resolution: usize,
        /// Emit an SVG figure instead of CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Volume lower bounds for compact quotients of a negatively curved model.
    Bounds {
        model: String,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        orientable: bool,
    },
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    let config = RunConfig::resolve(cli)?;
    match &cli.command {
        Command::PhiTable {
            model,
            r_min,
            r_max,
            n,
            r_ref,
            numeric_only,
        } => commands::phi_table::run(&config, model, *r_min, *r_max, *n, *r_ref, *numeric_only),
        Command::Verify { scope } => commands::verify::run(&config, scope),
        Command::Quotient {
            group,
            basepoint,
            resolution,
            svg,
        } => commands::quotient::run(&config, group, basepoint.as_deref(), *resolution, *svg),
        Command::Bounds { model, orientable } => commands::bounds::run(&config, model, *orientable),
    }
}
