use anyhow::bail;
use serde::Serialize;

use radharm_core::topology::{volume_bounds, Note};
use radharm_core::{CurvatureSign, Signature, VolumeBoundReport};

use super::parse_model;
use crate::{Report, RunConfig, EXIT_OK};

#[derive(Debug, Serialize)]
struct NoteJson {
    code: &'static str,
    message: &'static str,
}

impl From<&Note> for NoteJson {
    fn from(n: &Note) -> Self {
        NoteJson {
            code: n.code,
            message: n.message,
        }
    }
}

/// The serialized report. `signature` is `null` where it is not defined.
#[derive(Debug, Serialize)]
pub struct BoundsJson {
    config: String,
    model: String,
    dual: String,
    dual_volume: f64,
    euler: i64,
    signature: Option<i32>,
    gb_bound: f64,
    sig_bound: Option<f64>,
    epsilon: f64,
    notes: Vec<NoteJson>,
}

impl BoundsJson {
    fn new(config: &RunConfig, r: &VolumeBoundReport) -> Self {
        BoundsJson {
            config: config.to_string(),
            model: r.negative_model.to_string(),
            dual: r.dual.to_string(),
            dual_volume: r.dual_volume,
            euler: r.euler,
            signature: match r.signature {
                Signature::Value(v) => Some(v),
                Signature::NotApplicable => None,
            },
            gb_bound: r.gb_bound,
            sig_bound: r.sig_bound,
            epsilon: r.epsilon,
            notes: r.notes.iter().map(NoteJson::from).collect(),
        }
    }
}

pub fn run(config: &RunConfig, model_id: &str, orientable: bool) -> anyhow::Result<Report> {
    let model = parse_model(model_id)?;
    if model.curvature_sign() != CurvatureSign::Negative {
        bail!("bounds need a negatively curved model such as hCP2, got {model}");
    }
    let report = volume_bounds(model, orientable)?;
    let mut text = serde_json::to_string_pretty(&BoundsJson::new(config, &report))?;
    text.push('\n');
    Ok(Report {
        text,
        exit_code: EXIT_OK,
    })
}
