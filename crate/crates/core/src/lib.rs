//! Wigner distributions, charge and current densities, fidelity and
//! quantum-speed-limit times for Sine-Gordon and kink soliton wavefunctions.
//!
//! The numerical transform is checked against exact reference states
//! (Gaussian packets and harmonic-oscillator eigenstates) whose Wigner
//! functions are known in closed form.

// `!(x > 0.0)` style checks are meant to reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod numerics;
pub mod observables;
pub mod states;
pub mod wigner;

pub use error::{Error, Result};
pub use numerics::{formal_gaussian_integral, integrate_uniform, GridSpec, QuadraticExponent, C64};
pub use observables::{
    charge_density, current_density, fidelity, qsl_time, sg_charge_closed, sg_charge_profile, DensityKind,
    DensityProfile, Fidelity, QslInputs,
};
pub use states::{
    eval_reference_state, kink_constants, kink_wavefunction, sg_constants, sg_wavefunction, KinkConstants,
    PhysicalParams, SgConstants, WaveFunction,
};
pub use wigner::{
    kink_integrand_f, kink_wigner_field, kink_wigner_numeric, sg_wigner_closed, sg_wigner_field, wigner_transform,
    wigner_transform_fn, FieldSource, Method, WignerField,
};
