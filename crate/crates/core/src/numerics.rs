//! Uniform-grid quadrature and the formal Gaussian integral.
//!
//! Every integral in the crate goes through [`integrate_uniform`] (composite
//! Simpson) so that results are reproducible bit for bit across runs.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Rectangular phase-space grid plus the window used for the y-integral of
/// the Wigner transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub nk: usize,
    /// Half-width of the y window, `[-y_cutoff, y_cutoff]`.
    pub y_cutoff: f64,
    /// Sample count for the y-integral; odd.
    pub ny: usize,
}

impl GridSpec {
    pub const DEFAULT_Y_CUTOFF: f64 = 10.0;
    pub const DEFAULT_NY: usize = 2001;

    pub fn new(x: (f64, f64, usize), k: (f64, f64, usize), y_cutoff: f64, ny: usize) -> Result<Self> {
        let grid = GridSpec { x_min: x.0, x_max: x.1, nx: x.2, k_min: k.0, k_max: k.1, nk: k.2, y_cutoff, ny };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.k_min, self.k_max, self.y_cutoff].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if !(self.x_max > self.x_min) {
            return Err(Error::invalid(format!("x_max ({}) must exceed x_min ({})", self.x_max, self.x_min)));
        }
        if !(self.k_max > self.k_min) {
            return Err(Error::invalid(format!("k_max ({}) must exceed k_min ({})", self.k_max, self.k_min)));
        }
        if !(self.y_cutoff > 0.0) {
            return Err(Error::invalid(format!("y_cutoff must be positive, got {}", self.y_cutoff)));
        }
        if self.nx < 2 || self.nk < 2 {
            return Err(Error::invalid(format!(
                "nx and nk must be at least 2, got nx = {}, nk = {}",
                self.nx, self.nk
            )));
        }
        if self.ny < 3 || self.ny.is_multiple_of(2) {
            return Err(Error::invalid(format!("ny must be odd and at least 3, got {}", self.ny)));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ks(&self) -> Vec<f64> {
        linspace(self.k_min, self.k_max, self.nk)
    }

    pub fn ys(&self) -> Vec<f64> {
        linspace(-self.y_cutoff, self.y_cutoff, self.ny)
    }

    pub fn x_step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn k_step(&self) -> f64 {
        (self.k_max - self.k_min) / (self.nk - 1) as f64
    }

    pub fn y_step(&self) -> f64 {
        2.0 * self.y_cutoff / (self.ny - 1) as f64
    }

    /// True when `k_min == -k_max` up to rounding.
    pub fn k_symmetric(&self) -> bool {
        (self.k_min + self.k_max).abs() <= 1e-12 * self.k_max.abs().max(1.0)
    }
}

/// `n` evenly spaced points from `min` to `max`.
///
/// Points are placed about the midpoint so that a symmetric interval yields
/// nodes that are exact negatives of each other.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (min + max)],
        _ => {
            let mid = 0.5 * (min + max);
            let half = 0.5 * (max - min);
            let last = (n - 1) as f64;
            (0..n)
                .map(|j| {
                    let t = (2 * j) as f64 - last;
                    mid + half * (t / last)
                })
                .collect()
        }
    }
}

/// Composite Simpson rule over uniformly spaced samples.
pub fn integrate_uniform(samples: &[C64], step: f64) -> Result<C64> {
    let n = samples.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("Simpson rule needs an odd sample count >= 3, got {n}")));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::invalid(format!("step must be positive and finite, got {step}")));
    }
    if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
        return Err(Error::invalid(format!("non-finite sample at index {i}")));
    }
    Ok(simpson_unchecked(samples, step))
}

/// Real-valued convenience wrapper around [`integrate_uniform`].
pub fn integrate_uniform_real(samples: &[f64], step: f64) -> Result<f64> {
    let complex: Vec<C64> = samples.iter().map(|&s| C64::new(s, 0.0)).collect();
    integrate_uniform(&complex, step).map(|v| v.re)
}

// Callers guarantee odd length >= 3, finite samples and a valid step.
pub(crate) fn simpson_unchecked(samples: &[C64], step: f64) -> C64 {
    let n = samples.len();
    let mut odd = C64::new(0.0, 0.0);
    let mut even = C64::new(0.0, 0.0);
    for (i, s) in samples.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += s;
        } else {
            even += s;
        }
    }
    (samples[0] + samples[n - 1] + odd * 4.0 + even * 2.0) * (step / 3.0)
}

/// `amplitude · exp(a k² + b k + c)`, the integrand shape behind every closed
/// form in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticExponent {
    pub amplitude: C64,
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl QuadraticExponent {
    pub fn new(amplitude: C64, a: C64, b: C64, c: C64) -> Result<Self> {
        let q = QuadraticExponent { amplitude, a, b, c };
        if ![amplitude, a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("quadratic exponent fields must be finite"));
        }
        Ok(q)
    }

    pub fn eval(&self, k: f64) -> C64 {
        self.amplitude * (self.a * k * k + self.b * k + self.c).exp()
    }
}

/// `amplitude · sqrt(π / (−a)) · exp(c − b² / (4a))` on the principal branch.
///
/// For `Re(a) < 0` this is the convergent integral over the real line. For
/// other `a` it is the analytic continuation of that value, which is how the
/// soliton closed forms are obtained even though their integrals diverge.
pub fn formal_gaussian_integral(q: &QuadraticExponent) -> Result<C64> {
    if q.a == C64::new(0.0, 0.0) {
        return Err(Error::DegenerateExponent);
    }
    let root = (C64::new(PI, 0.0) / -q.a).sqrt();
    Ok(q.amplitude * root * (q.c - q.b * q.b / (q.a * 4.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample(f: impl Fn(f64) -> f64, min: f64, max: f64, n: usize) -> (Vec<C64>, f64) {
        let xs = linspace(min, max, n);
        let step = (max - min) / (n - 1) as f64;
        (xs.into_iter().map(|x| C64::new(f(x), 0.0)).collect(), step)
    }

    #[test]
    fn constant_integrand_is_exact() {
        let (s, h) = sample(|_| 1.0, 0.0, 1.0, 101);
        let v = integrate_uniform(&s, h).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let (s, h) = sample(|y| y, -1.0, 1.0, 101);
        assert_abs_diff_eq!(integrate_uniform(&s, h).unwrap().re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_matches_sqrt_pi() {
        // e^{-y²} beyond |y| = 10 is below 1e-43, so √π is the exact window value.
        let (s, h) = sample(|y| (-y * y).exp(), -10.0, 10.0, 2001);
        assert_abs_diff_eq!(integrate_uniform(&s, h).unwrap().re, PI.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn rejects_even_count_and_non_finite() {
        let s = vec![C64::new(1.0, 0.0); 4];
        assert!(matches!(integrate_uniform(&s, 0.1), Err(Error::InvalidInput(_))));
        let mut s = vec![C64::new(1.0, 0.0); 5];
        s[2] = C64::new(f64::NAN, 0.0);
        assert!(integrate_uniform(&s, 0.1).is_err());
        s[2] = C64::new(f64::INFINITY, 0.0);
        assert!(integrate_uniform(&s, 0.1).is_err());
        let s = vec![C64::new(1.0, 0.0); 1];
        assert!(integrate_uniform(&s, 0.1).is_err());
        let s = vec![C64::new(1.0, 0.0); 5];
        assert!(integrate_uniform(&s, 0.0).is_err());
    }

    #[test]
    fn formal_standard_gaussian() {
        let q = QuadraticExponent::new(C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
            .unwrap();
        let v = formal_gaussian_integral(&q).unwrap();
        assert_abs_diff_eq!(v.re, 1.772_453_850_905_516, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn formal_shifted_gaussian_matches_quadrature() {
        let q = QuadraticExponent::new(C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0))
            .unwrap();
        let formal = formal_gaussian_integral(&q).unwrap();
        let ks = linspace(-12.0, 12.0, 4001);
        let s: Vec<C64> = ks.iter().map(|&k| q.eval(k)).collect();
        let numeric = integrate_uniform(&s, 24.0 / 4000.0).unwrap();
        // √π·e
        assert_abs_diff_eq!(formal.re, 4.818_029_094_698_722, epsilon = 1e-12);
        assert!((formal - numeric).norm() <= 1e-9);
    }

    #[test]
    fn formal_growing_gaussian_takes_principal_branch() {
        let q = QuadraticExponent::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
            .unwrap();
        let v = formal_gaussian_integral(&q).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, PI.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn zero_quadratic_coefficient_is_degenerate() {
        let z = C64::new(0.0, 0.0);
        let q = QuadraticExponent::new(C64::new(1.0, 0.0), z, C64::new(1.0, 0.0), z).unwrap();
        assert!(matches!(formal_gaussian_integral(&q), Err(Error::DegenerateExponent)));
    }

    #[test]
    fn non_finite_exponent_rejected() {
        let z = C64::new(0.0, 0.0);
        assert!(QuadraticExponent::new(C64::new(f64::NAN, 0.0), z, z, z).is_err());
    }

    #[test]
    fn symmetric_linspace_is_exactly_antisymmetric() {
        let ks = linspace(-3.7, 3.7, 61);
        for (a, b) in ks.iter().zip(ks.iter().rev()) {
            assert_eq!(*a, -*b);
        }
        assert_eq!(ks[30], 0.0);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new((-1.0, 1.0, 0), (-1.0, 1.0, 3), 1.0, 3).is_err());
        assert!(GridSpec::new((1.0, -1.0, 3), (-1.0, 1.0, 3), 1.0, 3).is_err());
        assert!(GridSpec::new((-1.0, 1.0, 3), (-1.0, 1.0, 3), 0.0, 3).is_err());
        assert!(GridSpec::new((-1.0, 1.0, 3), (-1.0, 1.0, 3), 1.0, 4).is_err());
        assert!(GridSpec::new((-1.0, 1.0, 3), (-1.0, 1.0, 3), 1.0, 1).is_err());
        let g = GridSpec::new((-1.0, 1.0, 3), (-2.0, 2.0, 5), 1.0, 3).unwrap();
        assert!(g.k_symmetric());
        assert_eq!(g.k_step(), 1.0);
    }
}
