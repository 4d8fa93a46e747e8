//! Numeric transform of a boosted Gaussian against its exact Wigner function.

use std::f64::consts::PI;

use soliton_wigner::{wigner_transform, GridSpec, WaveFunction};

fn main() -> soliton_wigner::Result<()> {
    let (center, width, boost) = (0.5, 0.8, 1.2);
    let psi = WaveFunction::gaussian(center, width, boost)?;
    let grid = GridSpec::new((-4.0, 4.0, 41), (-3.0, 5.0, 41), 10.0, 2001)?;
    let field = wigner_transform(&psi, &grid)?;

    let mut worst: f64 = 0.0;
    for (i, x) in grid.xs().iter().enumerate() {
        for (j, k) in grid.ks().iter().enumerate() {
            let dx = (x - center) / width;
            let dk = (k - boost) * width;
            let exact = (-dx * dx - dk * dk).exp() / PI;
            worst = worst.max((field.values[[i, j]].re - exact).abs());
        }
    }
    println!("grid {}x{}, max |W - exact| = {worst:.3e}", grid.nx, grid.nk);
    Ok(())
}
