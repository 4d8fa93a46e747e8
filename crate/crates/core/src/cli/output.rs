use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Command, Mode, RunConfig, StateKind};
use crate::error::Result;
use crate::numerics::GridSpec;
use crate::observables::DensityProfile;
use crate::states::{PhysicalParams, WaveFunction};
use crate::wigner::{FieldSource, WignerField};

/// Resolved parameter set embedded in every output.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<StateKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<PhysicalParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<WaveFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<WaveFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<FieldSource>,
}

impl Provenance {
    pub fn from_config(config: &RunConfig) -> Self {
        let has_state = config.psi.is_some();
        Provenance {
            command: config.command,
            state: config.state,
            mode: has_state.then_some(config.mode),
            params: has_state.then_some(config.params),
            psi: config.psi,
            target: config.target,
            grid: has_state.then_some(config.grid),
            source: None,
        }
    }

    pub fn with_source(&self, source: &FieldSource) -> Self {
        Provenance { source: Some(source.clone()), ..self.clone() }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn params_line(sink: &mut dyn Write, provenance: &Provenance) -> Result<()> {
    writeln!(sink, "# params: {}", serde_json::to_string(provenance)?)?;
    Ok(())
}

pub(super) fn write_field(
    sink: &mut dyn Write,
    provenance: &Provenance,
    field: &WignerField,
    format: super::Format,
) -> Result<()> {
    let (xs, ks) = (field.xs(), field.ks());
    match format {
        super::Format::Csv => {
            params_line(sink, provenance)?;
            writeln!(sink, "x,k,re_w,im_w,abs_w")?;
            for (i, x) in xs.iter().enumerate() {
                for (j, k) in ks.iter().enumerate() {
                    let w = field.values[[i, j]];
                    writeln!(sink, "{},{},{},{},{}", num(*x), num(*k), num(w.re), num(w.im), num(w.norm()))?;
                }
            }
        }
        super::Format::Json => {
            let grid_of = |f: &dyn Fn(crate::numerics::C64) -> f64| -> Vec<Vec<f64>> {
                field.values.rows().into_iter().map(|r| r.iter().map(|v| f(*v)).collect()).collect()
            };
            let doc = json!({
                "params": provenance,
                "x": xs,
                "k": ks,
                "re_w": grid_of(&|v| v.re),
                "im_w": grid_of(&|v| v.im),
                "abs_w": grid_of(&|v| v.norm()),
            });
            serde_json::to_writer(&mut *sink, &doc)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

pub(super) fn write_profile(
    sink: &mut dyn Write,
    provenance: &Provenance,
    profile: &DensityProfile,
    format: super::Format,
) -> Result<()> {
    let reported = profile.reported();
    match format {
        super::Format::Csv => {
            params_line(sink, provenance)?;
            writeln!(sink, "x,value")?;
            for (x, v) in profile.x.iter().zip(&reported) {
                writeln!(sink, "{},{}", num(*x), num(*v))?;
            }
        }
        super::Format::Json => {
            let doc = json!({
                "params": provenance,
                "kind": profile.kind,
                "modulus_first": profile.modulus_first,
                "x": profile.x,
                "value": reported,
                "re": profile.values.iter().map(|v| v.re).collect::<Vec<_>>(),
                "im": profile.values.iter().map(|v| v.im).collect::<Vec<_>>(),
            });
            serde_json::to_writer(&mut *sink, &doc)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

pub(super) fn write_scalar(
    sink: &mut dyn Write,
    provenance: &Provenance,
    name: &str,
    value: f64,
    details: Value,
) -> Result<()> {
    let mut doc = serde_json::Map::new();
    doc.insert("command".into(), serde_json::to_value(provenance.command)?);
    doc.insert(name.into(), json!(value));
    doc.insert("details".into(), details);
    doc.insert("params".into(), serde_json::to_value(provenance)?);
    serde_json::to_writer(&mut *sink, &Value::Object(doc))?;
    writeln!(sink)?;
    Ok(())
}
