//! Gravitational self-energy of displaced mass distributions, the collapse
//! lifetimes it implies, and the environmental decoherence budget of
//! Bose-Einstein condensates prepared in two-mode superpositions.
//!
//! Units are SI throughout. Energies are quoted for the default collapse
//! parameter γ = 1/(8π); see [`constants::GammaParameter`] for other choices.
//!
//! ```
//! use gqsr::self_energy::eg_uniform_sphere;
//!
//! let r = eg_uniform_sphere(1.0, 1.0, 1.0).unwrap();
//! assert!((r.value / gqsr::constants::G - 0.7).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is how NaN is rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod collapse;
pub mod constants;
pub mod decoherence;
pub mod density;
pub mod error;
pub mod feasibility;
pub mod geometry;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod self_energy;
pub mod twomode;

pub use error::{Error, Result};
