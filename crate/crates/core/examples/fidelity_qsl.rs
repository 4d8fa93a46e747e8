//! Phase-space fidelity between states and the resulting speed-limit time.

use soliton_wigner::{fidelity, qsl_time, wigner_transform, GridSpec, QslInputs, WaveFunction};

fn main() -> soliton_wigner::Result<()> {
    let grid = GridSpec::new((-6.0, 6.0, 121), (-6.0, 6.0, 121), 10.0, 2001)?;
    let ground = wigner_transform(&WaveFunction::harmonic(0)?, &grid)?;
    let delta_e = 1.0;
    for target in [WaveFunction::harmonic(0)?, WaveFunction::gaussian(0.5, 1.0, 0.0)?, WaveFunction::harmonic(1)?] {
        let f = fidelity(&ground, &wigner_transform(&target, &grid)?)?;
        let tau = qsl_time(&QslInputs::new(f.value, delta_e, 1.0)?)?;
        println!("{:<40} F = {:.8}  Im = {:.1e}  tau_qsl = {tau:.8}", target.label(), f.value, f.raw_imag);
    }
    Ok(())
}
