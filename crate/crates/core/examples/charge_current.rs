//! Charge and current densities from momentum integrals of the Wigner field.

use std::f64::consts::PI;

use soliton_wigner::{
    charge_density, current_density, kink_wavefunction, kink_wigner_field, wigner_transform, GridSpec, PhysicalParams,
    WaveFunction,
};

fn main() -> soliton_wigner::Result<()> {
    let boost = 0.7;
    let grid = GridSpec::new((-4.0, 4.0, 9), (-12.0, 12.0, 241), 10.0, 2001)?;
    let w = wigner_transform(&WaveFunction::gaussian(0.0, 1.0, boost)?, &grid)?;
    let (q, j) = (charge_density(&w)?, current_density(&w)?);
    println!("boosted Gaussian, p0 = {boost}");
    for ((x, qv), jv) in q.x.iter().zip(&q.values).zip(&j.values) {
        let rho = (-x * x).exp() / PI.sqrt();
        println!(
            "x = {x:+.1}: Q = {:.8} (|psi|^2 = {rho:.8}), J = {:.8} (p0|psi|^2 = {:.8})",
            qv.re,
            jv.re,
            boost * rho
        );
    }

    let p = PhysicalParams::figure_defaults();
    let grid = GridSpec::new((-8.0, 4.0, 13), (-20.0, 20.0, 401), 10.0, 2001)?;
    let w = kink_wigner_field(&p, &grid)?;
    let (q, j) = (charge_density(&w)?, current_density(&w)?);
    println!("kink, max |J| = {:.3e}", j.max_abs());
    for (x, qv) in q.x.iter().zip(&q.values) {
        println!("x = {x:+.1}: Q = {:.6e}, psi^2 = {:.6e}", qv.re, kink_wavefunction(*x, &p).powi(2));
    }
    Ok(())
}
