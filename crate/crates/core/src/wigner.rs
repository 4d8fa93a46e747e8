//! Wigner transform on a phase-space grid.
//!
//! `W(x, k) = (1/πħ) ∫ ψ*(x+y) ψ(x−y) e^{2iky/ħ} dy`, with the y-integral taken
//! over `[-y_cutoff, y_cutoff]` by composite Simpson. Rows are evaluated in
//! parallel; each node depends only on its own coordinates, so the assembled
//! field does not depend on scheduling.

use std::f64::consts::PI;

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{GridSpec, QuadraticExponent, C64};
use crate::states::{kink_wavefunction, sg_constants, PhysicalParams, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// Where a field came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSource {
    pub label: String,
    pub method: Method,
    /// Set for states whose transform only exists on the chosen y-window.
    pub window_truncated: bool,
    /// The generating wavefunction is real, so the field should be too.
    pub real_state: bool,
}

/// Complex Wigner values on an `nx × nk` grid, indexed `[x, k]`.
#[derive(Debug, Clone)]
pub struct WignerField {
    pub grid: GridSpec,
    pub hbar: f64,
    pub values: Array2<C64>,
    pub source: FieldSource,
}

impl WignerField {
    pub fn new(grid: GridSpec, hbar: f64, values: Array2<C64>, source: FieldSource) -> Result<Self> {
        grid.validate()?;
        if values.dim() != (grid.nx, grid.nk) {
            return Err(Error::invalid(format!(
                "field shape {:?} does not match grid ({}, {})",
                values.dim(),
                grid.nx,
                grid.nk
            )));
        }
        if let Some(((i, j), _)) = values.indexed_iter().find(|(_, v)| !v.is_finite()) {
            let (xs, ks) = (grid.xs(), grid.ks());
            return Err(Error::invalid(format!("non-finite Wigner value at x = {}, k = {}", xs[i], ks[j])));
        }
        if !(hbar > 0.0) {
            return Err(Error::invalid(format!("hbar must be positive, got {hbar}")));
        }
        Ok(WignerField { grid, hbar, values, source })
    }

    pub fn zeros(grid: GridSpec, hbar: f64) -> Result<Self> {
        let source =
            FieldSource { label: "zero".into(), method: Method::ClosedForm, window_truncated: false, real_state: true };
        Self::new(grid, hbar, Array2::zeros((grid.nx, grid.nk)), source)
    }

    pub fn xs(&self) -> Vec<f64> {
        self.grid.xs()
    }

    pub fn ks(&self) -> Vec<f64> {
        self.grid.ks()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.im.abs()))
    }
}

/// Sample `ψ*(x+y) ψ(x−y)` over the window, failing on the first overflow.
fn correlation_samples(x: f64, ys: &[f64], product: &(impl Fn(f64, f64) -> C64 + Sync)) -> Result<Vec<C64>> {
    ys.iter()
        .map(|&y| {
            let v = product(x, y);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Overflow { x, y })
            }
        })
        .collect()
}

/// Simpson weights times `e^{2iky/ħ}` for one momentum, scaled by `1/πħ`.
fn weighted_phases(ys: &[f64], k: f64, hbar: f64, step: f64) -> Vec<C64> {
    let n = ys.len();
    let scale = step / (3.0 * PI * hbar);
    ys.iter()
        .enumerate()
        .map(|(i, &y)| {
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            C64::from_polar(w * scale, 2.0 * k * y / hbar)
        })
        .collect()
}

fn dot(samples: &[C64], phases: &[C64]) -> C64 {
    samples.iter().zip(phases).fold(C64::new(0.0, 0.0), |acc, (s, p)| acc + s * p)
}

fn transform_grid(grid: &GridSpec, hbar: f64, product: impl Fn(f64, f64) -> C64 + Sync) -> Result<Array2<C64>> {
    grid.validate()?;
    let (xs, ks, ys) = (grid.xs(), grid.ks(), grid.ys());
    let step = grid.y_step();
    let table: Vec<Vec<C64>> = ks.iter().map(|&k| weighted_phases(&ys, k, hbar, step)).collect();
    let rows: Vec<Result<Vec<C64>>> = xs
        .par_iter()
        .map(|&x| {
            let samples = correlation_samples(x, &ys, &product)?;
            Ok(table.iter().map(|phases| dot(&samples, phases)).collect())
        })
        .collect();
    let mut values = Array2::zeros((grid.nx, grid.nk));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row?.into_iter().enumerate() {
            values[[i, j]] = v;
        }
    }
    Ok(values)
}

/// Numerical Wigner transform of an arbitrary amplitude function.
pub fn wigner_transform_fn(
    psi: impl Fn(f64) -> C64 + Sync,
    hbar: f64,
    grid: &GridSpec,
    source: FieldSource,
) -> Result<WignerField> {
    if !(hbar > 0.0) {
        return Err(Error::invalid(format!("hbar must be positive, got {hbar}")));
    }
    let values = transform_grid(grid, hbar, |x, y| psi(x + y).conj() * psi(x - y))?;
    WignerField::new(*grid, hbar, values, source)
}

pub fn wigner_transform(psi: &WaveFunction, grid: &GridSpec) -> Result<WignerField> {
    psi.validate()?;
    let source = FieldSource {
        label: psi.label(),
        method: Method::Numeric,
        window_truncated: !psi.is_normalizable(),
        real_state: psi.is_real(),
    };
    wigner_transform_fn(|x| psi.eval(x), psi.hbar(), grid, source)
}

/// Exponent of the Sine-Gordon closed form as a Gaussian in `k` at fixed `x`.
///
/// The prefactor carries `sqrt(k0 / −m²)` on the principal branch, `+i·√k0/m`.
pub fn sg_wigner_exponent(x: f64, params: &PhysicalParams) -> QuadraticExponent {
    let consts = sg_constants(params);
    let PhysicalParams { m, k0, .. } = *params;
    let shifted = m * x + 0.5 * PI;
    let constant = (consts.a + shifted * shifted / (2.0 * k0)) / (2.0 * PI);
    QuadraticExponent {
        amplitude: C64::new(0.0, 2.0 * PI * k0.sqrt() / m),
        a: C64::new(consts.b, 0.0),
        b: C64::new(0.0, 0.0),
        c: C64::new(constant, 0.0),
    }
}

/// Closed-form Sine-Gordon Wigner value. Purely imaginary; use the modulus
/// when comparing against plots.
pub fn sg_wigner_closed(x: f64, k: f64, params: &PhysicalParams) -> C64 {
    sg_wigner_exponent(x, params).eval(k)
}

pub fn sg_wigner_field(params: &PhysicalParams, grid: &GridSpec) -> Result<WignerField> {
    params.validate()?;
    grid.validate()?;
    let (xs, ks) = (grid.xs(), grid.ks());
    let values = Array2::from_shape_fn((grid.nx, grid.nk), |(i, j)| sg_wigner_closed(xs[i], ks[j], params));
    let source = FieldSource {
        label: "sine-gordon".into(),
        method: Method::ClosedForm,
        window_truncated: false,
        real_state: false,
    };
    WignerField::new(*grid, params.hbar, values, source)
}

/// `f(x, y) = ψ_K(x + y)`, the shifted kink amplitude in the transform.
pub fn kink_integrand_f(x: f64, y: f64, params: &PhysicalParams) -> f64 {
    kink_wavefunction(x + y, params)
}

fn kink_product(x: f64, y: f64, params: &PhysicalParams) -> C64 {
    C64::new(kink_integrand_f(x, y, params) * kink_integrand_f(x, -y, params), 0.0)
}

/// Kink Wigner value at a single node.
pub fn kink_wigner_numeric(x: f64, k: f64, params: &PhysicalParams, y_cutoff: f64, ny: usize) -> Result<C64> {
    params.validate()?;
    let grid = GridSpec::new((x - 1.0, x + 1.0, 2), (k - 1.0, k + 1.0, 2), y_cutoff, ny)?;
    let ys = grid.ys();
    let samples = correlation_samples(x, &ys, &|x, y| kink_product(x, y, params))?;
    Ok(dot(&samples, &weighted_phases(&ys, k, params.hbar, grid.y_step())))
}

pub fn kink_wigner_field(params: &PhysicalParams, grid: &GridSpec) -> Result<WignerField> {
    params.validate()?;
    let values = transform_grid(grid, params.hbar, |x, y| kink_product(x, y, params))?;
    let source =
        FieldSource { label: "kink".into(), method: Method::Numeric, window_truncated: true, real_state: true };
    WignerField::new(*grid, params.hbar, values, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linspace;
    use crate::states::kink_wavefunction;
    use approx::assert_abs_diff_eq;

    fn grid(x: (f64, f64, usize), k: (f64, f64, usize)) -> GridSpec {
        GridSpec::new(x, k, 10.0, 2001).unwrap()
    }

    #[test]
    fn gaussian_origin_value() {
        let psi = WaveFunction::gaussian(0.0, 1.0, 0.0).unwrap();
        let w = wigner_transform(&psi, &grid((-1.0, 1.0, 3), (-1.0, 1.0, 3))).unwrap();
        assert_abs_diff_eq!(w.values[[1, 1]].re, 1.0 / PI, epsilon = 1e-8);
        assert!(w.max_abs_imag() <= 1e-10 * w.max_abs());
        assert!(!w.source.window_truncated);
    }

    #[test]
    fn first_excited_state_is_negative_at_origin() {
        let psi = WaveFunction::harmonic(1).unwrap();
        let w = wigner_transform(&psi, &grid((-1.0, 1.0, 3), (-1.0, 1.0, 3))).unwrap();
        assert_abs_diff_eq!(w.values[[1, 1]].re, -1.0 / PI, epsilon = 1e-6);
    }

    #[test]
    fn zero_state_gives_zero_field() {
        let g = grid((-2.0, 2.0, 5), (-2.0, 2.0, 5));
        let source =
            FieldSource { label: "zero".into(), method: Method::Numeric, window_truncated: false, real_state: true };
        let w = wigner_transform_fn(|_| C64::new(0.0, 0.0), 1.0, &g, source).unwrap();
        assert!(w.values.iter().all(|v| *v == C64::new(0.0, 0.0)));
    }

    #[test]
    fn overflow_names_coordinate() {
        let p = PhysicalParams::figure_defaults();
        let g = GridSpec::new((0.0, 1.0, 2), (-1.0, 1.0, 3), 200.0, 401).unwrap();
        match wigner_transform(&WaveFunction::SineGordon(p), &g) {
            Err(Error::Overflow { x, y }) => {
                assert_eq!(x, 0.0);
                assert!(y.abs() > 50.0);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn sg_numeric_transform_is_tagged_truncated() {
        let p = PhysicalParams::figure_defaults();
        let g = GridSpec::new((-1.0, 1.0, 3), (-1.0, 1.0, 3), 5.0, 501).unwrap();
        let w = wigner_transform(&WaveFunction::SineGordon(p), &g).unwrap();
        assert!(w.source.window_truncated);
        assert_eq!(w.source.method, Method::Numeric);
    }

    #[test]
    fn sg_closed_form_modulus_and_symmetries() {
        let p = PhysicalParams::figure_defaults();
        let x0 = -PI / 2.0;
        assert_abs_diff_eq!(sg_wigner_closed(x0, 0.0, &p).norm(), 5.227_461_172_845_188, epsilon = 1e-12);
        // principal branch: +i times a positive real
        let w = sg_wigner_closed(0.3, 0.2, &p);
        assert_eq!(w.re, 0.0);
        assert!(w.im > 0.0);
        for &(d, k) in &[(0.4, 0.3), (1.5, 1.1), (3.0, 0.0)] {
            let a = sg_wigner_closed(x0 + d, k, &p).norm();
            assert!((a - sg_wigner_closed(x0 - d, k, &p).norm()).abs() <= 1e-13 * a);
            assert!((a - sg_wigner_closed(x0 + d, -k, &p).norm()).abs() <= 1e-13 * a);
        }
    }

    #[test]
    fn kink_f_reduces_to_wavefunction() {
        let p = PhysicalParams::figure_defaults();
        for x in linspace(-5.0, 5.0, 11) {
            assert_eq!(kink_integrand_f(x, 0.0, &p), kink_wavefunction(x, &p));
        }
        assert_eq!(kink_integrand_f(0.3, -0.7, &p), kink_wavefunction(0.3 - 0.7, &p));
        for y in linspace(-10.0, 10.0, 201) {
            let a = kink_integrand_f(0.0, y, &p) * kink_integrand_f(0.0, -y, &p);
            let b = kink_integrand_f(0.0, -y, &p) * kink_integrand_f(0.0, y, &p);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn kink_point_matches_field_node() {
        let p = PhysicalParams::figure_defaults();
        let g = grid((-1.0, 1.0, 3), (-1.5, 1.5, 3));
        let field = kink_wigner_field(&p, &g).unwrap();
        let point = kink_wigner_numeric(1.0, 1.5, &p, 10.0, 2001).unwrap();
        assert_eq!(point, field.values[[2, 2]]);
        assert!(point.im.abs() <= 1e-10 * point.re.abs());
        assert!(kink_wigner_numeric(0.0, 0.0, &p, 10.0, 2000).is_err());
    }

    #[test]
    fn field_rejects_wrong_shape() {
        let g = grid((-1.0, 1.0, 3), (-1.0, 1.0, 3));
        let source =
            FieldSource { label: "x".into(), method: Method::Numeric, window_truncated: false, real_state: true };
        assert!(WignerField::new(g, 1.0, Array2::zeros((2, 3)), source.clone()).is_err());
        let mut bad = Array2::zeros((3, 3));
        bad[[0, 0]] = C64::new(f64::NAN, 0.0);
        assert!(WignerField::new(g, 1.0, bad, source).is_err());
    }
}
