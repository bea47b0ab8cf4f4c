use std::fmt;
use std::path::PathBuf;

use anyhow::bail;

use crate::{Cli, Command};

/// The resolved configuration of one run, echoed at the top of every output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: Option<f64>,
    pub seed: u64,
    pub precision: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> anyhow::Result<Self> {
        if !(6..=17).contains(&cli.precision) {
            bail!("--precision must lie in 6..=17, got {}", cli.precision);
        }
        if let Some(tol) = cli.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                bail!("--tol must be positive and finite, got {tol}");
            }
        }
        Ok(RunConfig {
            command: cli.command.clone(),
            tol: cli.tol,
            seed: cli.seed,
            precision: cli.precision,
            out: cli.out.clone(),
        })
    }

    /// `key=value` pairs in a fixed order.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        match &self.command {
            Command::PhiTable {
                model,
                r_min,
                r_max,
                n,
                r_ref,
                numeric_only,
            } => {
                v.push(("command", "phi-table".to_string()));
                v.push(("model", model.clone()));
                v.push(("r_min", r_min.to_string()));
                v.push(("r_max", r_max.to_string()));
                v.push(("n", n.to_string()));
                v.push(("r_ref", r_ref.to_string()));
                v.push(("numeric_only", numeric_only.to_string()));
            }
            Command::Verify { scope } => {
                v.push(("command", "verify".to_string()));
                v.push(("scope", scope.clone()));
            }
            Command::Quotient {
                group,
                basepoint,
                resolution,
                svg,
            } => {
                v.push(("command", "quotient".to_string()));
                v.push(("group", group.clone()));
                v.push(("basepoint", basepoint.clone().unwrap_or_else(|| "default".into())));
                v.push(("resolution", resolution.to_string()));
                v.push(("svg", svg.to_string()));
            }
            Command::Bounds { model, orientable } => {
                v.push(("command", "bounds".to_string()));
                v.push(("model", model.clone()));
                v.push(("orientable", orientable.to_string()));
            }
        }
        v.push(("tol", self.tol.map_or_else(|| "default".into(), |t| t.to_string())));
        v.push(("seed", self.seed.to_string()));
        v.push(("precision", self.precision.to_string()));
        let out = self.out.as_ref().map_or_else(|| "-".into(), |p| p.display().to_string());
        v.push(("out", out));
        v
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("radharm")?;
        for (k, v) in self.pairs() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
