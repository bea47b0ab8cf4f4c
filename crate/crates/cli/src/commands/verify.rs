use std::fmt::Write as _;

use rayon::prelude::*;

use radharm_core::harmonic::{classify_boundary, closed_form, verify_table_entry, EndBehavior, TableStatus};
use radharm_core::quotient::{group_action_selfcheck, DISPLACEMENT_FLOOR};
use radharm_core::space::Family;
use radharm_core::topology::volume_bounds;
use radharm_core::{CurvatureSign, DeckGroup, SpaceModel};

use super::{parse_group, parse_model};
use crate::{Report, RunConfig, EXIT_FAIL, EXIT_OK};

/// Models with a tabulated `φ₀`.
pub const TABLE_MODELS: [&str; 26] = [
    "S2", "S3", "S4", "S5", "CP2", "CP3", "CP4", "HP2", "HP3", "HP4", "OP2", "hS2", "hS3", "hS4",
    "hS5", "hCP2", "hCP3", "hCP4", "hHP2", "hHP3", "hHP4", "hOP2", "E2", "E3", "E4", "E5",
];

/// Groups covered by `verify all`.
pub const GROUPS: [&str; 8] = ["torus", "klein", "rp2", "rp5", "lens", "lens2", "cpq", "cpq2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Pass,
    Warn,
    Fail,
}

impl Level {
    fn as_str(self) -> &'static str {
        match self {
            Level::Pass => "PASS",
            Level::Warn => "WARN",
            Level::Fail => "FAIL",
        }
    }
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub level: Level,
    pub kind: &'static str,
    pub subject: String,
    pub detail: String,
}

impl Check {
    fn new(level: Level, kind: &'static str, subject: impl ToString, detail: impl Into<String>) -> Self {
        Check {
            level,
            kind,
            subject: subject.to_string(),
            detail: detail.into(),
        }
    }
}

fn table_check(model: SpaceModel) -> Check {
    let v = match verify_table_entry(model) {
        Ok(v) => v,
        Err(e) => return Check::new(Level::Fail, "table", model, e.to_string()),
    };
    let residuals = format!(
        "ode_rel={:.2e} match_rel={:.2e} laplacian_rel={:.2e}",
        v.max_ode_residual, v.max_match_residual, v.max_laplacian_residual
    );
    match v.status {
        TableStatus::Pass => Check::new(Level::Pass, "table", model, residuals),
        TableStatus::Warn { corrected } => Check::new(
            Level::Warn,
            "table",
            model,
            format!("{residuals} tabulated row fails; quadrature supports {corrected}"),
        ),
        TableStatus::Fail => Check::new(Level::Fail, "table", model, format!("{residuals} no repair found")),
    }
}

fn boundary_check(model: SpaceModel) -> Check {
    let c = classify_boundary(model);
    let expected = if model.curvature_sign() == CurvatureSign::Positive {
        EndBehavior::Divergent
    } else {
        EndBehavior::NoBoundary
    };
    let level = if c.at_far_end == expected { Level::Pass } else { Level::Fail };
    let evidence = c.far_end_evidence.map(|e| format!(" ({e})")).unwrap_or_default();
    Check::new(level, "boundary", model, format!("far_end={:?}{evidence}", c.at_far_end))
}

fn bounds_checks(model: SpaceModel) -> Vec<Check> {
    let Some(dual) = model.dual() else { return Vec::new() };
    if model.curvature_sign() != CurvatureSign::Negative || dual.family() != Family::OctonionPlane {
        return Vec::new();
    }
    match volume_bounds(model, true) {
        Ok(r) => r
            .notes
            .iter()
            .map(|n| Check::new(Level::Warn, "bounds", model, format!("{}: {}", n.code, n.message)))
            .collect(),
        Err(e) => vec![Check::new(Level::Fail, "bounds", model, e.to_string())],
    }
}

fn selfcheck(id: &str, g: &DeckGroup, seed: u64) -> Check {
    match group_action_selfcheck(g, seed) {
        Ok(r) if r.min_displacement > DISPLACEMENT_FLOOR => Check::new(
            Level::Pass,
            "group",
            id,
            format!(
                "relations={} samples={} min_displacement={:.6} isometry_defect={:.2e}",
                r.relations_checked, r.samples, r.min_displacement, r.max_isometry_defect
            ),
        ),
        Ok(r) => Check::new(Level::Fail, "group", id, format!("min_displacement={:.6}", r.min_displacement)),
        Err(e) => Check::new(Level::Fail, "group", id, e.to_string()),
    }
}

fn model_checks(model: SpaceModel) -> Vec<Check> {
    let mut out = Vec::new();
    if closed_form(model).is_some() {
        out.push(table_check(model));
    }
    out.push(boundary_check(model));
    out.extend(bounds_checks(model));
    out
}

/// All checks in `scope`, in report order.
pub fn collect(scope: &str, seed: u64) -> anyhow::Result<Vec<Check>> {
    if scope == "all" {
        let mut models: Vec<SpaceModel> = TABLE_MODELS.iter().map(|id| parse_model(id)).collect::<Result<_, _>>()?;
        // Compact models without a tabulated row still get a boundary check.
        for id in ["S9", "CP1", "CP5", "HP1"] {
            models.push(parse_model(id)?);
        }
        let per_model: Vec<Vec<Check>> = models.par_iter().map(|&m| model_checks(m)).collect();
        let mut out: Vec<Check> = per_model.into_iter().flatten().collect();
        let groups: Vec<Check> = GROUPS
            .par_iter()
            .map(|id| match parse_group(id) {
                Ok(g) => selfcheck(id, &g, seed),
                Err(e) => Check::new(Level::Fail, "group", id, e.to_string()),
            })
            .collect();
        out.extend(groups);
        return Ok(out);
    }
    if let Ok(g) = parse_group(scope) {
        return Ok(vec![selfcheck(scope, &g, seed)]);
    }
    Ok(model_checks(parse_model(scope)?))
}

pub fn run(config: &RunConfig, scope: &str) -> anyhow::Result<Report> {
    let checks = collect(scope, config.seed)?;
    let mut text = format!("# {config}\n");
    let mut counts = [0usize; 3];
    for c in &checks {
        counts[c.level as usize] += 1;
        writeln!(text, "{} {} {} {}", c.level.as_str(), c.kind, c.subject, c.detail)?;
    }
    let tables = checks.iter().filter(|c| c.kind == "table").count();
    writeln!(
        text,
        "# summary checks={} table_rows={tables} pass={} warn={} fail={}",
        checks.len(),
        counts[0],
        counts[1],
        counts[2]
    )?;
    Ok(Report {
        text,
        exit_code: if counts[2] == 0 { EXIT_OK } else { EXIT_FAIL },
    })
}
