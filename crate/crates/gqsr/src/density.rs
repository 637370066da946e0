//! Mass-density profiles: uniform bodies and condensates in the Gaussian and
//! Thomas-Fermi regimes, with the trap-derived sizes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{Species, HBAR};
use crate::error::{invalid, non_negative, positive, Error, Result};
use crate::geometry::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Uniform,
    ThomasFermi,
    Gaussian,
}

impl Regime {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(Regime::Uniform),
            "tf" | "thomas_fermi" | "thomas-fermi" => Ok(Regime::ThomasFermi),
            "gaussian" | "gauss" => Ok(Regime::Gaussian),
            other => Err(invalid(format!("unknown profile `{other}` (expected uniform, tf or gaussian)"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Uniform => "uniform",
            Regime::ThomasFermi => "tf",
            Regime::Gaussian => "gaussian",
        }
    }
}

/// A body of total mass `mass` (kg).
///
/// For uniform and TF profiles the shape is the body's surface. For Gaussian
/// profiles the axes are the 1/e widths a₀′, c₀′ of ρ ∝ exp(−r²/a₀′² − z²/c₀′²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityProfile {
    pub regime: Regime,
    pub shape: Shape,
    pub mass: f64,
}

impl DensityProfile {
    pub fn new(regime: Regime, shape: Shape, mass: f64) -> Result<Self> {
        Ok(Self { regime, shape, mass: positive("mass", mass)? })
    }

    pub fn uniform(shape: Shape, mass: f64) -> Result<Self> {
        Self::new(Regime::Uniform, shape, mass)
    }

    pub fn thomas_fermi(shape: Shape, mass: f64) -> Result<Self> {
        Self::new(Regime::ThomasFermi, shape, mass)
    }

    pub fn gaussian(widths: Shape, mass: f64) -> Result<Self> {
        Self::new(Regime::Gaussian, widths, mass)
    }

    /// M over (4/3)πa²c.
    pub fn rho0(&self) -> f64 {
        self.mass / self.shape.volume()
    }

    /// Largest density anywhere in the body.
    pub fn peak_density(&self) -> f64 {
        self.rho0() * peak_factor(self.regime)
    }

    /// Mass density at the cylindrical point (r, z) relative to the centre.
    pub fn density(&self, r: f64, z: f64) -> f64 {
        let s = self.shape;
        let q = (r / s.a()).powi(2) + (z / s.c()).powi(2);
        match self.regime {
            Regime::Uniform => {
                if q <= 1.0 {
                    self.rho0()
                } else {
                    0.0
                }
            }
            Regime::ThomasFermi => 2.5 * self.rho0() * (1.0 - q).max(0.0),
            Regime::Gaussian => peak_factor(Regime::Gaussian) * self.rho0() * (-q).exp(),
        }
    }

    /// Radius beyond which the density is zero (or negligible, for Gaussians).
    pub fn extent(&self) -> f64 {
        match self.regime {
            Regime::Gaussian => 6.5 * self.shape.major(),
            _ => self.shape.major(),
        }
    }
}

fn peak_factor(regime: Regime) -> f64 {
    match regime {
        Regime::Uniform => 1.0,
        Regime::ThomasFermi => 2.5,
        Regime::Gaussian => 4.0 / (3.0 * PI.sqrt()),
    }
}

/// Free-function form of [`DensityProfile::density`].
pub fn evaluate_density(profile: &DensityProfile, r: f64, z: f64) -> f64 {
    profile.density(r, z)
}

/// A trapped condensate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondensateSpec {
    pub species: Species,
    pub n_atoms: f64,
    /// Radial trap angular frequency (rad/s).
    pub omega_r: f64,
    /// Axial trap angular frequency (rad/s).
    pub omega_z: f64,
    /// s-wave scattering length (m).
    pub a_s: f64,
    pub alpha_a: f64,
    pub alpha_c: f64,
    /// Temperature (K).
    pub temperature: f64,
    /// Vacuum pressure (Pa).
    pub pressure: f64,
}

impl CondensateSpec {
    /// Spherical trap with the species' stock scattering length, α = 1, T = P = 0.
    pub fn spherical(species: Species, n_atoms: f64, omega: f64) -> Result<Self> {
        let a_s = species.default_scattering_length();
        Self::new(species, n_atoms, omega, omega, a_s)
    }

    pub fn new(species: Species, n_atoms: f64, omega_r: f64, omega_z: f64, a_s: f64) -> Result<Self> {
        let s = Self {
            species,
            n_atoms,
            omega_r,
            omega_z,
            a_s,
            alpha_a: 1.0,
            alpha_c: 1.0,
            temperature: 0.0,
            pressure: 0.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_atoms >= 1.0 && self.n_atoms.is_finite()) {
            return Err(invalid(format!("atom number must be >= 1, got {}", self.n_atoms)));
        }
        positive("omega_r", self.omega_r)?;
        positive("omega_z", self.omega_z)?;
        positive("alpha_a", self.alpha_a)?;
        positive("alpha_c", self.alpha_c)?;
        non_negative("temperature", self.temperature)?;
        non_negative("pressure", self.pressure)?;
        if !self.a_s.is_finite() {
            return Err(invalid("scattering length must be finite"));
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        self.species.mass() * self.n_atoms
    }

    /// Geometric-mean trap frequency (ω_r²ω_z)^{1/3}.
    pub fn omega0(&self) -> f64 {
        (self.omega_r * self.omega_r * self.omega_z).cbrt()
    }

    /// ω_z/ω_r; below 1 the cloud is prolate.
    pub fn lambda_omega(&self) -> f64 {
        self.omega_z / self.omega_r
    }

    /// Oscillator length √(ħ/(mω₀)).
    pub fn s0(&self) -> f64 {
        oscillator_length(self.species.mass(), self.omega0())
    }
}

pub fn oscillator_length(m: f64, omega: f64) -> f64 {
    (HBAR / (m * omega)).sqrt()
}

/// Gaussian density widths (a₀′, c₀′) = (α_a√(ħ/mω_r), α_c√(ħ/mω_z)).
///
/// A spherical trap with α_a = α_c gives a sphere of radius R₀′ = α R₀.
pub fn gaussian_width(spec: &CondensateSpec) -> Result<Shape> {
    spec.validate()?;
    let m = spec.species.mass();
    let a = spec.alpha_a * oscillator_length(m, spec.omega_r);
    let c = spec.alpha_c * oscillator_length(m, spec.omega_z);
    if spec.omega_r == spec.omega_z && spec.alpha_a == spec.alpha_c {
        Shape::sphere(a)
    } else {
        Shape::spheroid(a, c)
    }
}

/// Thomas-Fermi radii a = (15 N a_s a₀⁴ λ_ω)^{1/5}, c = a/λ_ω.
pub fn tf_size(spec: &CondensateSpec) -> Result<Shape> {
    spec.validate()?;
    if !(spec.a_s > 0.0) {
        return Err(Error::NotApplicable(format!(
            "Thomas-Fermi profile needs a repulsive gas (a_s > 0), got a_s = {}",
            spec.a_s
        )));
    }
    let a0 = oscillator_length(spec.species.mass(), spec.omega_r);
    let lw = spec.lambda_omega();
    let a = (15.0 * spec.n_atoms * spec.a_s * a0.powi(4) * lw).powf(0.2);
    if lw == 1.0 {
        Shape::sphere(a)
    } else {
        Shape::spheroid(a, a / lw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TfValidity {
    pub valid: bool,
    /// N a_s / s₀; the approximation is accepted above 100.
    pub margin: f64,
}

pub const TF_MARGIN: f64 = 100.0;

pub fn tf_valid(spec: &CondensateSpec) -> TfValidity {
    let margin = spec.n_atoms * spec.a_s / spec.s0();
    TfValidity { valid: margin > TF_MARGIN, margin }
}

pub const DEFAULT_KC: f64 = 0.6;

/// Critical atom number k_c s₀/|a_s| of an attractive gas.
pub fn critical_number(spec: &CondensateSpec, k_c: f64) -> Result<f64> {
    positive("k_c", k_c)?;
    if !(spec.a_s < 0.0) {
        return Err(Error::NotApplicable(format!(
            "critical number applies to attractive gases (a_s < 0), got a_s = {}",
            spec.a_s
        )));
    }
    Ok(k_c * spec.s0() / spec.a_s.abs())
}

/// Profile of the condensate in the requested regime.
pub fn condensate_profile(spec: &CondensateSpec, regime: Regime) -> Result<DensityProfile> {
    let shape = match regime {
        Regime::Gaussian => gaussian_width(spec)?,
        Regime::ThomasFermi => tf_size(spec)?,
        Regime::Uniform => return Err(invalid("a condensate is either Gaussian or Thomas-Fermi")),
    };
    DensityProfile::new(regime, shape, spec.mass())
}
