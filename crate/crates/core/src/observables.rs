//! Phase-space functionals of a [`WignerField`]: densities, fidelity and the
//! Mandelstam-Tamm speed-limit time.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate_uniform, simpson_unchecked, C64};
use crate::states::{sg_constants, PhysicalParams};
use crate::wigner::WignerField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    Charge,
    Current,
}

/// A density sampled on the x-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub x: Vec<f64>,
    pub values: Vec<C64>,
    pub kind: DensityKind,
    /// Values carry the principal-branch phase of a formal closed form; the
    /// physical density is their modulus rather than their real part.
    pub modulus_first: bool,
}

impl DensityProfile {
    /// The physical density: the real part, or the modulus for closed forms.
    pub fn reported(&self) -> Vec<f64> {
        if self.modulus_first {
            self.values.iter().map(|v| v.norm()).collect()
        } else {
            self.values.iter().map(|v| v.re).collect()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

fn require_odd_k(field: &WignerField) -> Result<()> {
    if field.grid.nk < 3 || field.grid.nk.is_multiple_of(2) {
        return Err(Error::invalid(format!("momentum integration needs an odd nk >= 3, got {}", field.grid.nk)));
    }
    Ok(())
}

fn k_moment(field: &WignerField, kind: DensityKind, weight: impl Fn(f64) -> f64) -> Result<DensityProfile> {
    require_odd_k(field)?;
    let ks = field.ks();
    let step = field.grid.k_step();
    let values = field
        .values
        .rows()
        .into_iter()
        .map(|row| {
            let samples: Vec<C64> = row.iter().zip(&ks).map(|(w, &k)| w * weight(k)).collect();
            integrate_uniform(&samples, step)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityProfile { x: field.xs(), values, kind, modulus_first: false })
}

/// `Q(x) = ∫ W(x, k) dk` over the field's momentum grid.
pub fn charge_density(field: &WignerField) -> Result<DensityProfile> {
    k_moment(field, DensityKind::Charge, |_| 1.0)
}

/// `J(x) = ∫ k W(x, k) dk`. Only defined on momentum grids symmetric about 0.
pub fn current_density(field: &WignerField) -> Result<DensityProfile> {
    if !field.grid.k_symmetric() {
        return Err(Error::invalid(format!(
            "current density requires a symmetric momentum grid, got [{}, {}]",
            field.grid.k_min, field.grid.k_max
        )));
    }
    k_moment(field, DensityKind::Current, |k| k)
}

/// Sign the closed-form charge picks up from the principal branch: the
/// prefactor `+i` times `sqrt(π/−B) = +i·sqrt(π/B)`.
pub const SG_CHARGE_BRANCH_SIGN: f64 = -1.0;

/// Closed-form Sine-Gordon charge, `−2 exp{(A + [mx + π/2]²/2k0) / 2π}`.
pub fn sg_charge_closed(x: f64, params: &PhysicalParams) -> C64 {
    let a = sg_constants(params).a;
    let shifted = params.m * x + 0.5 * PI;
    let magnitude = 2.0 * ((a + shifted * shifted / (2.0 * params.k0)) / (2.0 * PI)).exp();
    C64::new(SG_CHARGE_BRANCH_SIGN * magnitude, 0.0)
}

pub fn sg_charge_profile(xs: &[f64], params: &PhysicalParams) -> Result<DensityProfile> {
    params.validate()?;
    Ok(DensityProfile {
        x: xs.to_vec(),
        values: xs.iter().map(|&x| sg_charge_closed(x, params)).collect(),
        kind: DensityKind::Charge,
        modulus_first: true,
    })
}

/// Deviation beyond `[0, 1]` that marks a fidelity as clamped.
pub const FIDELITY_RANGE_SLACK: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelity {
    /// `raw` clamped into `[0, 1]`.
    pub value: f64,
    /// Real part of `2πħ ∬ W₀ W_t` as integrated.
    pub raw: f64,
    /// Imaginary part of the overlap integral.
    pub raw_imag: f64,
    /// `raw` fell outside `[0, 1]` by more than [`FIDELITY_RANGE_SLACK`].
    pub clamped: bool,
    /// Either field only exists on its y-window.
    pub window_truncated: bool,
}

/// `F = 2πħ ∬ W₀ W_t dx dk` by nested Simpson on the shared grid.
pub fn fidelity(w0: &WignerField, wt: &WignerField) -> Result<Fidelity> {
    if w0.grid != wt.grid {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", w0.grid, wt.grid)));
    }
    if w0.hbar != wt.hbar {
        return Err(Error::GridMismatch(format!("hbar {} vs {}", w0.hbar, wt.hbar)));
    }
    let grid = &w0.grid;
    if grid.nx.is_multiple_of(2) || grid.nk.is_multiple_of(2) {
        return Err(Error::invalid(format!("double Simpson needs odd nx and nk, got {} x {}", grid.nx, grid.nk)));
    }
    let mut row = Vec::with_capacity(grid.nk);
    let per_x: Vec<C64> = w0
        .values
        .rows()
        .into_iter()
        .zip(wt.values.rows())
        .map(|(a, b)| {
            row.clear();
            row.extend(a.iter().zip(b.iter()).map(|(u, v)| u * v));
            simpson_unchecked(&row, grid.k_step())
        })
        .collect();
    let overlap = simpson_unchecked(&per_x, grid.x_step()) * (2.0 * PI * w0.hbar);
    let raw = overlap.re;
    Ok(Fidelity {
        value: raw.clamp(0.0, 1.0),
        raw,
        raw_imag: overlap.im,
        clamped: !(-FIDELITY_RANGE_SLACK..=1.0 + FIDELITY_RANGE_SLACK).contains(&raw),
        window_truncated: w0.source.window_truncated || wt.source.window_truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QslInputs {
    pub fidelity: f64,
    pub delta_e: f64,
    pub hbar: f64,
}

impl QslInputs {
    pub fn new(fidelity: f64, delta_e: f64, hbar: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::invalid(format!("fidelity must lie in [0, 1], got {fidelity}")));
        }
        if !(delta_e > 0.0) || !delta_e.is_finite() {
            return Err(Error::invalid(format!("energy spread must be positive, got {delta_e}")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::invalid(format!("hbar must be positive, got {hbar}")));
        }
        Ok(QslInputs { fidelity, delta_e, hbar })
    }
}

/// Mandelstam-Tamm time `τ = (1 − F) ħ / (√2 ΔE)`.
pub fn qsl_time(inputs: &QslInputs) -> Result<f64> {
    let QslInputs { fidelity, delta_e, hbar } = QslInputs::new(inputs.fidelity, inputs.delta_e, inputs.hbar)?;
    Ok((1.0 - fidelity) / SQRT_2 * hbar / delta_e)
}
