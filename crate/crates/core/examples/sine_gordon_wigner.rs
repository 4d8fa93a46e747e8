//! Closed-form Sine-Gordon Wigner function and its charge density.

use std::f64::consts::PI;

use soliton_wigner::{sg_charge_closed, sg_constants, sg_wavefunction, sg_wigner_field, GridSpec, PhysicalParams};

fn main() -> soliton_wigner::Result<()> {
    let p = PhysicalParams::figure_defaults();
    let c = sg_constants(&p);
    println!("A = {:.12}  B = {:.12}  C = {:.12}", c.a, c.b, c.c);

    let grid = GridSpec::new((-4.0, 4.0, 9), (-2.0, 2.0, 5), 10.0, 2001)?;
    let field = sg_wigner_field(&p, &grid)?;
    println!("{:>6} {:>8} {:>14} {:>14}", "x", "k", "Re W", "Im W");
    for (i, x) in grid.xs().iter().enumerate() {
        for (j, k) in grid.ks().iter().enumerate() {
            let w = field.values[[i, j]];
            println!("{x:>6.2} {k:>8.2} {:>14.6e} {:>14.6e}", w.re, w.im);
        }
    }

    // |Q| is a fixed multiple of psi^2
    let x_min = -PI / (2.0 * p.m);
    for x in [x_min, 0.0, 2.0] {
        let q = sg_charge_closed(x, &p);
        println!("x = {x:+.4}: |Q| = {:.10}, |Q|/psi^2 = {:.10}", q.norm(), q.norm() / sg_wavefunction(x, &p).powi(2));
    }
    Ok(())
}
