use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::GridSpec;
use crate::observables::QslInputs;
use crate::states::{PhysicalParams, WaveFunction, MAX_HO_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Wigner,
    Charge,
    Current,
    Fidelity,
    Qsl,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Sg,
    Kink,
    Gaussian,
    Ho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ClosedForm,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Settings that may come from flags or from a JSON config file. Every field
/// is optional; unset fields fall back to the documented defaults.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    /// State to transform
    #[arg(long, value_enum)]
    pub state: Option<StateKind>,
    /// closed-form (Sine-Gordon only) or numeric transform
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub n_k: Option<u32>,
    #[arg(long)]
    pub n_minus_k: Option<u32>,
    #[arg(long)]
    pub n_bo: Option<u32>,
    #[arg(long)]
    pub n_k2: Option<u32>,
    #[arg(long)]
    pub n_minus_k2: Option<u32>,

    /// Harmonic-oscillator order
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub center: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub width: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub boost: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub k_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k_max: Option<f64>,
    #[arg(long)]
    pub nk: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_cutoff: Option<f64>,
    #[arg(long)]
    pub ny: Option<usize>,

    /// Second state for `fidelity`; defaults to the first
    #[arg(long, value_enum)]
    pub target: Option<StateKind>,
    #[arg(long)]
    pub target_n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub target_center: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub target_width: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub target_boost: Option<f64>,

    /// Fidelity F for `qsl`
    #[arg(long, allow_negative_numbers = true)]
    pub fidelity: Option<f64>,
    /// Energy spread ΔE for `qsl`
    #[arg(long, allow_negative_numbers = true)]
    pub delta_e: Option<f64>,
}

macro_rules! layer {
    ($base:expr, $top:expr; $($field:ident),* $(,)?) => {
        Overrides { $($field: $top.$field.or($base.$field)),* }
    };
}

impl Overrides {
    /// `top` wins wherever it sets a value.
    pub fn layered_under(self, top: Overrides) -> Overrides {
        layer!(self, top;
            state, mode, format, out, m, lambda, hbar, k0, beta, n_k, n_minus_k, n_bo, n_k2,
            n_minus_k2, n, center, width, boost, x_min, x_max, nx, k_min, k_max, nk, y_cutoff,
            ny, target, target_n, target_center, target_width, target_boost, fidelity, delta_e,
        )
    }

    pub fn from_json_file(path: &Path) -> Result<Overrides> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "soliton-wigner",
    version,
    about = "Wigner distributions and phase-space observables for soliton states"
)]
struct CliArgs {
    #[arg(value_enum)]
    command: Command,
    /// JSON file with the same keys as the long flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub state: Option<StateKind>,
    pub psi: Option<WaveFunction>,
    pub target: Option<WaveFunction>,
    pub params: PhysicalParams,
    pub grid: GridSpec,
    pub mode: Mode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub qsl: Option<QslInputs>,
}

/// Parse `argv` (including the program name) and an optional `--config` file.
///
/// Flags override file values, which override defaults.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = CliArgs::try_parse_from(argv)?;
    let file = match &args.config {
        Some(path) => Overrides::from_json_file(path)?,
        None => Overrides::default(),
    };
    resolve(args.command, file.layered_under(args.overrides))
}

fn usage(e: Error) -> Error {
    match e {
        Error::InvalidInput(msg) | Error::Unsupported(msg) => Error::Usage(msg),
        other => other,
    }
}

fn default_grid(command: Command, state: StateKind) -> ((f64, f64, usize), (f64, f64, usize)) {
    use Command::*;
    use StateKind::*;
    match (command, state) {
        (Wigner, Gaussian | Ho) => ((-4.0, 4.0, 81), (-4.0, 4.0, 81)),
        (Wigner, Sg) => ((-4.0, 4.0, 81), (-2.0, 2.0, 41)),
        (Wigner, Kink) => ((-5.0, 5.0, 101), (-3.0, 3.0, 61)),
        (Charge | Current, Gaussian | Ho) => ((-4.0, 4.0, 81), (-12.0, 12.0, 241)),
        (Charge | Current, Sg) => ((-15.0, 15.0, 201), (-2.0, 2.0, 41)),
        (Charge | Current, Kink) => ((-8.0, 4.0, 121), (-20.0, 20.0, 401)),
        (Fidelity, Gaussian | Ho) => ((-6.0, 6.0, 121), (-6.0, 6.0, 121)),
        (Fidelity, Sg) => ((-4.0, 4.0, 81), (-2.0, 2.0, 41)),
        (Fidelity, Kink) => ((-5.0, 5.0, 101), (-3.0, 3.0, 61)),
        (Qsl | Validate, _) => ((-4.0, 4.0, 81), (-4.0, 4.0, 81)),
    }
}

fn build_state(
    kind: StateKind,
    params: PhysicalParams,
    n: u32,
    center: f64,
    width: f64,
    boost: f64,
) -> Result<WaveFunction> {
    let psi = match kind {
        StateKind::Sg => WaveFunction::SineGordon(params),
        StateKind::Kink => WaveFunction::Kink(params),
        StateKind::Gaussian => WaveFunction::GaussianPacket { center, width, boost, hbar: params.hbar },
        StateKind::Ho => {
            if n > MAX_HO_ORDER {
                return Err(Error::Usage(format!("--n must be in 0..={MAX_HO_ORDER}, got {n}")));
            }
            WaveFunction::HarmonicOscillator { n }
        }
    };
    psi.validate().map_err(usage)?;
    Ok(psi)
}

pub fn resolve(command: Command, o: Overrides) -> Result<RunConfig> {
    let format = o.format.unwrap_or(Format::Csv);
    let figure = PhysicalParams::figure_defaults();

    if matches!(command, Command::Qsl | Command::Validate) {
        let (x, k) = default_grid(command, StateKind::Gaussian);
        let grid = GridSpec::new(x, k, GridSpec::DEFAULT_Y_CUTOFF, GridSpec::DEFAULT_NY)?;
        let qsl = if command == Command::Qsl {
            let fidelity = o.fidelity.ok_or_else(|| Error::Usage("qsl requires --fidelity".into()))?;
            let delta_e = o.delta_e.ok_or_else(|| Error::Usage("qsl requires --delta-e".into()))?;
            Some(QslInputs::new(fidelity, delta_e, o.hbar.unwrap_or(1.0)).map_err(usage)?)
        } else {
            None
        };
        return Ok(RunConfig {
            command,
            state: None,
            psi: None,
            target: None,
            params: figure,
            grid,
            mode: Mode::Numeric,
            format,
            out: o.out,
            qsl,
        });
    }

    let state = o.state.ok_or_else(|| Error::Usage("--state is required".into()))?;
    // The Sine-Gordon charge plot uses a lighter soliton.
    let default_m = if command == Command::Charge && state == StateKind::Sg { 0.3 } else { figure.m };
    let params = PhysicalParams {
        m: o.m.unwrap_or(default_m),
        lambda: o.lambda.unwrap_or(figure.lambda),
        hbar: o.hbar.unwrap_or(figure.hbar),
        k0: o.k0.unwrap_or(figure.k0),
        beta: o.beta.unwrap_or(figure.beta),
        n_k: o.n_k.unwrap_or(0),
        n_minus_k: o.n_minus_k.unwrap_or(0),
        n_bo: o.n_bo.unwrap_or(0),
        n_k2: o.n_k2.unwrap_or(0),
        n_minus_k2: o.n_minus_k2.unwrap_or(0),
    };
    params.validate().map_err(usage)?;

    let mode = o.mode.unwrap_or(if state == StateKind::Sg { Mode::ClosedForm } else { Mode::Numeric });
    if mode == Mode::ClosedForm && state != StateKind::Sg {
        return Err(Error::Usage("closed-form mode is only available for --state sg".into()));
    }
    if state == StateKind::Sg && mode == Mode::Numeric && o.y_cutoff.is_none() {
        return Err(Error::Usage(
            "numeric Sine-Gordon transforms diverge without a window; pass --y-cutoff explicitly".into(),
        ));
    }

    let (x, k) = default_grid(command, state);
    let grid = GridSpec {
        x_min: o.x_min.unwrap_or(x.0),
        x_max: o.x_max.unwrap_or(x.1),
        nx: o.nx.unwrap_or(x.2),
        k_min: o.k_min.unwrap_or(k.0),
        k_max: o.k_max.unwrap_or(k.1),
        nk: o.nk.unwrap_or(k.2),
        y_cutoff: o.y_cutoff.unwrap_or(GridSpec::DEFAULT_Y_CUTOFF),
        ny: o.ny.unwrap_or(GridSpec::DEFAULT_NY),
    };
    grid.validate().map_err(usage)?;

    let n = o.n.unwrap_or(0);
    let center = o.center.unwrap_or(0.0);
    let width = o.width.unwrap_or(1.0);
    let boost = o.boost.unwrap_or(0.0);
    let psi = build_state(state, params, n, center, width, boost)?;

    let target = if command == Command::Fidelity {
        let kind = o.target.unwrap_or(state);
        if kind == StateKind::Sg && mode == Mode::Numeric && o.y_cutoff.is_none() {
            return Err(Error::Usage(
                "numeric Sine-Gordon target diverges without a window; pass --y-cutoff explicitly".into(),
            ));
        }
        Some(build_state(
            kind,
            params,
            o.target_n.unwrap_or(n),
            o.target_center.unwrap_or(center),
            o.target_width.unwrap_or(width),
            o.target_boost.unwrap_or(boost),
        )?)
    } else {
        None
    };

    Ok(RunConfig {
        command,
        state: Some(state),
        psi: Some(psi),
        target,
        params,
        grid,
        mode,
        format,
        out: o.out,
        qsl: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig> {
        parse_config(std::iter::once("soliton-wigner").chain(args.split_whitespace()))
    }

    #[test]
    fn kink_defaults_match_figure_bundle() {
        let c = parse("wigner --state kink").unwrap();
        assert_eq!(c.params, PhysicalParams::figure_defaults());
        assert_eq!(c.grid.y_cutoff, 10.0);
        assert_eq!(c.grid.ny, 2001);
        assert_eq!(c.mode, Mode::Numeric);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn sg_charge_defaults_to_light_soliton() {
        let explicit = parse("charge --state sg --m 0.3").unwrap();
        let implicit = parse("charge --state sg").unwrap();
        assert_eq!(explicit, implicit);
        assert_eq!(explicit.params.m, 0.3);
        assert_eq!(explicit.mode, Mode::ClosedForm);
        assert_eq!(parse("wigner --state sg").unwrap().params.m, 1.0);
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        for bad in [
            "wigner --state kink --nx 0",
            "wigner --state kink --ny 2000",
            "wigner --state ho --n 11",
            "wigner --state sg --mode numeric",
            "wigner --state kink --mode closed-form",
            "wigner --state gaussian --width -1",
            "wigner --state kink --m 0",
            "wigner",
            "qsl --fidelity 0.5",
            "qsl --fidelity 0.5 --delta-e 0",
        ] {
            match parse(bad) {
                Err(e) => assert_eq!(e.exit_code(), 1, "{bad}: {e}"),
                Ok(c) => panic!("{bad} accepted: {c:?}"),
            }
        }
        assert!(matches!(parse("wigner --state kink --bogus 1"), Err(Error::Cli(_))));
    }

    #[test]
    fn sg_numeric_accepts_explicit_window() {
        let c = parse("wigner --state sg --mode numeric --y-cutoff 3").unwrap();
        assert_eq!(c.grid.y_cutoff, 3.0);
    }

    #[test]
    fn negative_bounds_parse() {
        let c = parse("wigner --state gaussian --x-min -2 --x-max 3 --boost -0.5").unwrap();
        assert_eq!(c.grid.x_min, -2.0);
        assert!(matches!(c.psi, Some(WaveFunction::GaussianPacket { boost, .. }) if boost == -0.5));
    }

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"state": "kink", "nx": 11, "k0": 2.0, "beta": 0.5}"#).unwrap();
        let c = parse(&format!("wigner --config {} --nx 21", path.display())).unwrap();
        assert_eq!(c.grid.nx, 21);
        assert_eq!(c.params.k0, 2.0);
        assert_eq!(c.params.beta, 0.5);
        assert_eq!(c.state, Some(StateKind::Kink));
    }

    #[test]
    fn unknown_file_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"state": "kink", "resolution": 3}"#).unwrap();
        let err = parse(&format!("wigner --config {}", path.display())).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn qsl_inputs_resolved() {
        let c = parse("qsl --fidelity 0 --delta-e 1 --hbar 1").unwrap();
        assert_eq!(c.qsl, Some(QslInputs { fidelity: 0.0, delta_e: 1.0, hbar: 1.0 }));
    }

    #[test]
    fn fidelity_target_inherits_state() {
        let c = parse("fidelity --state ho --n 2").unwrap();
        assert_eq!(c.target, Some(WaveFunction::HarmonicOscillator { n: 2 }));
        let c = parse("fidelity --state ho --target-n 1").unwrap();
        assert_eq!(c.target, Some(WaveFunction::HarmonicOscillator { n: 1 }));
    }
}
