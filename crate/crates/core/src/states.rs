//! Evaluable wavefunctions.
//!
//! The two soliton states are closed-form exponentials of real polynomials
//! and special functions in `x`. They are returned unnormalized, as they are
//! not square-integrable. The Gaussian packet and harmonic-oscillator
//! eigenstates are normalized reference states used to check the transform.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::C64;

/// Highest harmonic-oscillator order served by [`WaveFunction::HarmonicOscillator`].
pub const MAX_HO_ORDER: u32 = 10;

/// Soliton parameters and quantum numbers.
///
/// `n_k`/`n_minus_k` are the Sine-Gordon continuum occupations; `n_bo` is the
/// kink bound-mode number and `n_k2`/`n_minus_k2` the kink continuum
/// occupations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub m: f64,
    pub lambda: f64,
    pub hbar: f64,
    pub k0: f64,
    pub beta: f64,
    pub n_k: u32,
    pub n_minus_k: u32,
    pub n_bo: u32,
    pub n_k2: u32,
    pub n_minus_k2: u32,
}

impl PhysicalParams {
    /// Ground-state parameters with the kink width `beta = m / 2`.
    pub fn new(m: f64, lambda: f64, hbar: f64, k0: f64) -> Result<Self> {
        let params = PhysicalParams {
            m,
            lambda,
            hbar,
            k0,
            beta: m / 2.0,
            n_k: 0,
            n_minus_k: 0,
            n_bo: 0,
            n_k2: 0,
            n_minus_k2: 0,
        };
        params.validate()?;
        Ok(params)
    }

    /// `k0 = ħ = m = β = λ = 1`, all quantum numbers zero.
    ///
    /// These are the values used for the published surface and density
    /// plots. Note that `β = 1` with `m = 1` departs from `β = m / 2`.
    pub fn figure_defaults() -> Self {
        PhysicalParams {
            m: 1.0,
            lambda: 1.0,
            hbar: 1.0,
            k0: 1.0,
            beta: 1.0,
            n_k: 0,
            n_minus_k: 0,
            n_bo: 0,
            n_k2: 0,
            n_minus_k2: 0,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in
            [("m", self.m), ("lambda", self.lambda), ("hbar", self.hbar), ("k0", self.k0), ("beta", self.beta)]
        {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::figure_defaults()
    }
}

/// Constants of the Sine-Gordon wavefunction and Wigner exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgConstants {
    /// Constant term of the Wigner exponent (before the `1/2π` factor).
    pub a: f64,
    /// Coefficient of `k²` in the Wigner exponent.
    pub b: f64,
    /// Constant term of the wavefunction exponent.
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinkConstants {
    pub d: f64,
}

fn sg_occupation(params: &PhysicalParams) -> f64 {
    (params.n_k + params.n_minus_k + 1) as f64
}

pub fn sg_constants(params: &PhysicalParams) -> SgConstants {
    let PhysicalParams { m, k0, hbar, .. } = *params;
    let m2 = m * m;
    let occupation = sg_occupation(params);
    // The Wigner constant carries k0⁴ in its first term where the
    // wavefunction constant carries k0³; both are kept as printed.
    let a = m2 / (6.0 * k0.powi(4)) - PI * PI * m2 / (12.0 * k0.powi(3)) - 0.5 * k0 * occupation;
    let b = PI * k0 / (m2 * hbar * hbar);
    let c = (m2 / (12.0 * k0.powi(3)) - PI * PI * m2 / (24.0 * k0.powi(3))) / (2.0 * PI) - k0 / (4.0 * PI) * occupation;
    SgConstants { a, b, c }
}

/// `exp{C + (π/2 + m x)² / (8π k0)}`.
pub fn sg_wavefunction(x: f64, params: &PhysicalParams) -> f64 {
    let SgConstants { c, .. } = sg_constants(params);
    let shifted = 0.5 * PI + params.m * x;
    (c + shifted * shifted / (8.0 * PI * params.k0)).exp()
}

pub fn kink_constants(params: &PhysicalParams) -> KinkConstants {
    let bound = 0.25 * (2 * params.n_bo + 1) as f64;
    let continuum = params.k0 / (4.0 * PI) * (params.n_k2 + params.n_minus_k2 + 1) as f64;
    KinkConstants { d: -bound - continuum }
}

/// `sech t` without overflow for large `|t|`.
pub(crate) fn sech(t: f64) -> f64 {
    let e = (-t.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `tanh t` via `exp(-2|t|)`.
pub(crate) fn tanh(t: f64) -> f64 {
    let e = (-2.0 * t.abs()).exp();
    ((1.0 - e) / (1.0 + e)).copysign(t)
}

/// `arctan(sinh t)`, the Gudermannian, via `2 arctan(tanh(t/2))`.
pub(crate) fn arctan_sinh(t: f64) -> f64 {
    2.0 * tanh(0.5 * t).atan()
}

/// Exponent of the kink wavefunction, split so the `ln k0` term can be
/// checked separately.
pub(crate) fn kink_exponent(x: f64, params: &PhysicalParams) -> f64 {
    let PhysicalParams { beta, lambda, k0, .. } = *params;
    let t = beta * x;
    let profile = arctan_sinh(t) - sech(t) * tanh(t) - 2.0 * sech(t);
    let ln_k0 = k0.ln();
    // exactly zero at k0 = 1, also where t² has overflowed
    let quadratic = if ln_k0 == 0.0 { 0.0 } else { ln_k0 * (1.0 + 2.0 * t + t * t) };
    let log_term = quadratic + beta * beta / (k0 * k0);
    kink_constants(params).d
        - 3.0 * 3f64.sqrt() * beta.powi(3) / (4.0 * lambda) * profile
        - beta * beta / (2.0 * PI * lambda) * log_term
}

pub fn kink_wavefunction(x: f64, params: &PhysicalParams) -> f64 {
    kink_exponent(x, params).exp()
}

/// A one-dimensional state that can be sampled at any position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum WaveFunction {
    SineGordon(PhysicalParams),
    Kink(PhysicalParams),
    /// `(π w²)^{-1/4} exp(−(x−c)²/2w²) exp(i p0 x/ħ)`.
    GaussianPacket {
        center: f64,
        width: f64,
        boost: f64,
        hbar: f64,
    },
    /// Unit-frequency eigenstate of order `n` with `ħ = 1`.
    HarmonicOscillator {
        n: u32,
    },
}

impl WaveFunction {
    pub fn gaussian(center: f64, width: f64, boost: f64) -> Result<Self> {
        let psi = WaveFunction::GaussianPacket { center, width, boost, hbar: 1.0 };
        psi.validate()?;
        Ok(psi)
    }

    pub fn harmonic(n: u32) -> Result<Self> {
        let psi = WaveFunction::HarmonicOscillator { n };
        psi.validate()?;
        Ok(psi)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WaveFunction::SineGordon(p) | WaveFunction::Kink(p) => p.validate(),
            WaveFunction::GaussianPacket { center, width, boost, hbar } => {
                if !(width > 0.0) || !width.is_finite() {
                    return Err(Error::invalid(format!("packet width must be positive, got {width}")));
                }
                if !(hbar > 0.0) || !hbar.is_finite() {
                    return Err(Error::invalid(format!("hbar must be positive, got {hbar}")));
                }
                if !center.is_finite() || !boost.is_finite() {
                    return Err(Error::invalid("packet center and boost must be finite"));
                }
                Ok(())
            }
            WaveFunction::HarmonicOscillator { n } if n > MAX_HO_ORDER => {
                Err(Error::Unsupported(format!("harmonic-oscillator order {n} exceeds {MAX_HO_ORDER}")))
            }
            WaveFunction::HarmonicOscillator { .. } => Ok(()),
        }
    }

    pub fn hbar(&self) -> f64 {
        match *self {
            WaveFunction::SineGordon(p) | WaveFunction::Kink(p) => p.hbar,
            WaveFunction::GaussianPacket { hbar, .. } => hbar,
            WaveFunction::HarmonicOscillator { .. } => 1.0,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(*self, WaveFunction::GaussianPacket { boost, .. } if boost != 0.0)
    }

    /// Soliton states are not square-integrable; any integral of them is
    /// specific to the window it was taken on.
    pub fn is_normalizable(&self) -> bool {
        matches!(self, WaveFunction::GaussianPacket { .. } | WaveFunction::HarmonicOscillator { .. })
    }

    pub fn label(&self) -> String {
        match *self {
            WaveFunction::SineGordon(_) => "sine-gordon".to_string(),
            WaveFunction::Kink(_) => "kink".to_string(),
            WaveFunction::GaussianPacket { center, width, boost, .. } => {
                format!("gaussian(center={center}, width={width}, boost={boost})")
            }
            WaveFunction::HarmonicOscillator { n } => format!("harmonic-oscillator(n={n})"),
        }
    }

    /// Amplitude at `x`. Reference states with an unsupported order yield NaN;
    /// use [`eval_reference_state`] for a checked call.
    pub fn eval(&self, x: f64) -> C64 {
        match *self {
            WaveFunction::SineGordon(ref p) => C64::new(sg_wavefunction(x, p), 0.0),
            WaveFunction::Kink(ref p) => C64::new(kink_wavefunction(x, p), 0.0),
            WaveFunction::GaussianPacket { center, width, boost, hbar } => {
                let norm = (PI * width * width).powf(-0.25);
                let u = (x - center) / width;
                C64::from_polar(norm * (-0.5 * u * u).exp(), boost * x / hbar)
            }
            WaveFunction::HarmonicOscillator { n } => {
                if n > MAX_HO_ORDER {
                    C64::new(f64::NAN, 0.0)
                } else {
                    C64::new(hermite_function(n, x), 0.0)
                }
            }
        }
    }
}

/// Checked evaluation of the reference (normalizable) states.
pub fn eval_reference_state(psi: &WaveFunction, x: f64) -> Result<C64> {
    if !psi.is_normalizable() {
        return Err(Error::invalid(format!("{} is not a reference state", psi.label())));
    }
    psi.validate()?;
    Ok(psi.eval(x))
}

/// Normalized Hermite function `ψ_n(x)` by the three-term recurrence.
fn hermite_function(n: u32, x: f64) -> f64 {
    let mut prev = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return prev;
    }
    let mut cur = 2f64.sqrt() * x * prev;
    for j in 1..n {
        let j = j as f64;
        let next = (2.0 / (j + 1.0)).sqrt() * x * cur - (j / (j + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
