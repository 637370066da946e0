//! Gravitational potentials φ (J/kg) of the implemented mass distributions.
//!
//! Points are given in cylindrical coordinates (r, z) about the body's
//! centre, z along the symmetry axis.

pub mod gaussian;
pub mod legendre;
pub mod sphere;
pub mod spheroid;

use serde::Serialize;

pub use gaussian::{phi_gaussian_exact, phi_gaussian_spheroid_small_e, SmallEPotential};
pub use sphere::{phi_gaussian_sphere, phi_tf_sphere, phi_uniform_sphere};
pub use spheroid::{phi_tf_spheroid, phi_uniform_spheroid, SpheroidMethod, TfMethod};

use crate::density::{DensityProfile, Regime};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialMethod {
    ClosedForm,
    Series { order: u32 },
    SmallE { order: u32 },
}

/// A density together with the way its potential is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialField {
    pub source: DensityProfile,
    pub method: PotentialMethod,
}

impl PotentialField {
    /// Exact evaluation for every profile.
    pub fn exact(source: DensityProfile) -> Self {
        Self { source, method: PotentialMethod::ClosedForm }
    }

    pub fn eval(&self, r: f64, z: f64) -> Result<f64> {
        let p = &self.source;
        match (self.method, p.regime) {
            (PotentialMethod::SmallE { order }, Regime::Gaussian) => {
                Ok(phi_gaussian_spheroid_small_e(r, z, &p.shape, p.mass, order).value)
            }
            (PotentialMethod::SmallE { .. }, Regime::Uniform) => {
                Ok(spheroid::phi_uniform_small_e(r, z, &p.shape, p.mass))
            }
            (PotentialMethod::Series { .. }, Regime::ThomasFermi) if p.shape.kind() != crate::geometry::ShapeKind::Sphere => {
                phi_tf_spheroid(r, z, &p.shape, p.mass, TfMethod::Legendre)
            }
            _ => potential(p, r, z),
        }
    }
}

/// Exact potential of any implemented profile at (r, z).
pub fn potential(p: &DensityProfile, r: f64, z: f64) -> Result<f64> {
    Ok(match p.regime {
        Regime::Uniform => spheroid::phi_uniform_any(r, z, &p.shape, p.mass),
        Regime::ThomasFermi => spheroid::phi_tf_any(r, z, &p.shape, p.mass),
        Regime::Gaussian => gaussian::phi_gaussian_any(r, z, &p.shape, p.mass)?,
    })
}
