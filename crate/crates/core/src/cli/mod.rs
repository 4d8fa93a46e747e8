//! Command-line front end.
//!
//! `wigner` writes a field, `charge`/`current` a density profile, `fidelity`
//! and `qsl` a single JSON object, and `validate` runs the built-in oracle
//! suite. Exit statuses: 0 success, 1 usage error, 2 numerical failure,
//! 3 validation failure.

mod config;
mod output;
pub mod validate;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;

pub use config::{parse_config, resolve, Command, Format, Mode, Overrides, RunConfig, StateKind};
pub use output::Provenance;

use crate::error::{Error, Result};
use crate::numerics::GridSpec;
use crate::observables::{charge_density, current_density, fidelity, qsl_time, sg_charge_profile, DensityProfile};
use crate::states::WaveFunction;
use crate::wigner::{kink_wigner_field, sg_wigner_field, wigner_transform, WignerField};

/// Field for one state under the configured mode.
pub fn field_for(psi: &WaveFunction, mode: Mode, grid: &GridSpec) -> Result<WignerField> {
    match (psi, mode) {
        (WaveFunction::SineGordon(p), Mode::ClosedForm) => sg_wigner_field(p, grid),
        (WaveFunction::Kink(p), _) => kink_wigner_field(p, grid),
        _ => wigner_transform(psi, grid),
    }
}

fn state_of(config: &RunConfig) -> Result<&WaveFunction> {
    config.psi.as_ref().ok_or_else(|| Error::Usage("--state is required".into()))
}

fn profile_for(config: &RunConfig) -> Result<DensityProfile> {
    let psi = state_of(config)?;
    match (config.command, psi, config.mode) {
        (Command::Charge, WaveFunction::SineGordon(p), Mode::ClosedForm) => sg_charge_profile(&config.grid.xs(), p),
        (Command::Charge, _, _) => charge_density(&field_for(psi, config.mode, &config.grid)?),
        _ => current_density(&field_for(psi, config.mode, &config.grid)?),
    }
}

/// Execute a resolved configuration, writing its artifact to `sink`.
pub fn run_to(config: &RunConfig, sink: &mut dyn Write) -> Result<()> {
    let provenance = Provenance::from_config(config);
    match config.command {
        Command::Wigner => {
            let field = field_for(state_of(config)?, config.mode, &config.grid)?;
            output::write_field(sink, &provenance.with_source(&field.source), &field, config.format)
        }
        Command::Charge | Command::Current => {
            let profile = profile_for(config)?;
            output::write_profile(sink, &provenance, &profile, config.format)
        }
        Command::Fidelity => {
            let psi = state_of(config)?;
            let target = config.target.as_ref().unwrap_or(psi);
            let w0 = field_for(psi, config.mode, &config.grid)?;
            let wt = field_for(target, config.mode, &config.grid)?;
            let f = fidelity(&w0, &wt)?;
            output::write_scalar(sink, &provenance, "fidelity", f.value, serde_json::to_value(f)?)
        }
        Command::Qsl => {
            let inputs = config.qsl.ok_or_else(|| Error::Usage("qsl requires --fidelity and --delta-e".into()))?;
            let tau = qsl_time(&inputs)?;
            output::write_scalar(sink, &provenance, "tau_qsl", tau, serde_json::to_value(inputs)?)
        }
        Command::Validate => {
            let checks = validate::run_all();
            validate::write_report(sink, &checks, config.format)?;
            match checks.iter().filter(|c| !c.passed).count() {
                0 => Ok(()),
                n => Err(Error::ValidationFailed(n)),
            }
        }
    }
}

/// Execute and write to `--out` or stdout.
pub fn run(config: &RunConfig) -> Result<()> {
    match &config.out {
        Some(path) => {
            let mut sink = BufWriter::new(File::create(path)?);
            let result = run_to(config, &mut sink);
            sink.flush()?;
            result
        }
        None => {
            let stdout = io::stdout();
            let mut sink = stdout.lock();
            run_to(config, &mut sink)
        }
    }
}

/// Parse, run and map the outcome to a process exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(Error::Cli(e)) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(Error::Cli(e)) => {
            let _ = e.print();
            return 1;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match run(&config) {
        Ok(()) => 0,
        // reader went away (e.g. `| head`)
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
