//! Kink Wigner function by quadrature, with a convergence check in ny.

use soliton_wigner::{kink_constants, kink_wavefunction, kink_wigner_field, GridSpec, PhysicalParams};

fn main() -> soliton_wigner::Result<()> {
    let p = PhysicalParams::figure_defaults();
    println!("D = {:.12}, psi_K(0) = {:.10}", kink_constants(&p).d, kink_wavefunction(0.0, &p));

    let grid = GridSpec::new((-5.0, 5.0, 21), (-3.0, 3.0, 13), 10.0, 2001)?;
    let coarse = kink_wigner_field(&p, &grid)?;
    let fine = kink_wigner_field(&p, &GridSpec { ny: 4001, ..grid })?;
    let drift = coarse.values.iter().zip(fine.values.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("max |W| = {:.6e}, max |Im W| = {:.3e}, ny drift = {drift:.3e}", coarse.max_abs(), coarse.max_abs_imag());

    let mid = coarse.values.row(grid.nx / 2);
    for (k, w) in grid.ks().iter().zip(mid.iter()) {
        println!("W(0, {k:+.2}) = {:.8e}", w.re);
    }
    Ok(())
}
