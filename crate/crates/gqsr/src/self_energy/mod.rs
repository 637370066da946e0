//! Gravitational self-energy E_G of the difference between a mass
//! distribution and its displaced copy,
//!
//! ```text
//! E_G = ∫ φ (ρ′ − ρ) d³x
//! ```
//!
//! with φ the potential of ρ. All values assume γ = 1/(8π); other choices of
//! γ scale E_G by 8πγ through [`SelfEnergyResult::scaled`].

mod closed;
mod limits;
mod numeric;

pub use closed::{
    eg_gaussian_sphere, eg_infinite_separation, eg_tf_sphere, eg_uniform_sphere, gaussian_sphere_curve,
    tf_sphere_curve, uniform_sphere_curve,
};
pub use limits::{
    eg_tf_prolate_limit, eg_uniform_spheroid_limit, oblate_a_far, oblate_a_near, tf_prolate_b_far,
    tf_prolate_b_near, uniform_prolate_b_far, uniform_prolate_b_near, SERIES_FROM,
};
pub use numeric::{eg_gaussian_pair, eg_numeric, NumericOptions};

use serde::Serialize;

use crate::constants::{GammaParameter, G};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Series,
    Quadrature,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfEnergyResult {
    /// E_G (J).
    pub value: f64,
    pub method: Method,
    /// Relative error estimate (0 for exact closed forms).
    pub rel_error: f64,
    /// E_G / (GM²/L).
    pub dimensionless: f64,
    /// Reference length L (m).
    pub length: f64,
}

impl SelfEnergyResult {
    /// Builds a result from its dimensionless value in units of GM²/L.
    pub fn from_dimensionless(dimensionless: f64, mass: f64, length: f64, method: Method, rel_error: f64) -> Self {
        Self { value: dimensionless * G * mass * mass / length, method, rel_error, dimensionless, length }
    }

    /// Rescales from the default γ = 1/(8π) to `gamma`.
    pub fn scaled(self, gamma: GammaParameter) -> Self {
        let f = gamma.factor();
        Self { value: self.value * f, dimensionless: self.dimensionless * f, ..self }
    }

    /// Mean collapse lifetime ħ/E_G (s); infinite for E_G = 0.
    pub fn lifetime(&self) -> f64 {
        crate::constants::HBAR / self.value
    }
}
