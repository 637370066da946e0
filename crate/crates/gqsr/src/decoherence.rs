//! Environmental decoherence of a two-well NOON state: three-body
//! recombination, scattering off the thermal cloud and collisions with
//! background gas.
//!
//! Each channel multiplies the N-particle correlation ⟨a_L†ᴺ a_Rᴺ⟩ by
//! exp(−Γt), with Γ = γ₃N, γ_tN² and γ_fN respectively.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{Species, HBAR, KB};
use crate::density::{CondensateSpec, DensityProfile};
use crate::error::{invalid, non_negative, positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    ThreeBody,
    Thermal,
    Foreign,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::ThreeBody, Channel::Thermal, Channel::Foreign];

    pub fn as_str(self) -> &'static str {
        match self {
            Channel::ThreeBody => "three_body",
            Channel::Thermal => "thermal",
            Channel::Foreign => "foreign",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "three_body" | "three-body" => Ok(Channel::ThreeBody),
            "thermal" => Ok(Channel::Thermal),
            "foreign" => Ok(Channel::Foreign),
            _ => Err(invalid(format!("unknown channel `{s}` (three_body, thermal, foreign)"))),
        }
    }

    /// Power of N in the NOON decay exponent.
    pub fn n_power(self) -> i32 {
        match self {
            Channel::Thermal => 2,
            _ => 1,
        }
    }
}

/// Which density enters γ₃ = (K₃/72)n².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityScale {
    Peak,
    /// N over the volume of the profile's shape.
    Mean,
}

impl DensityScale {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "peak" => Ok(DensityScale::Peak),
            "mean" => Ok(DensityScale::Mean),
            _ => Err(invalid(format!("unknown density scale `{s}` (peak, mean)"))),
        }
    }
}

/// Recombination event rate K₃ = 23 ħ a_s⁴ / m (m⁶/s).
pub fn k3(a_s: f64, atom_mass: f64) -> f64 {
    23.0 * HBAR * a_s.powi(4) / atom_mass
}

/// Number density (m⁻³) of `profile` on the chosen scale.
pub fn number_density(profile: &DensityProfile, atom_mass: f64, scale: DensityScale) -> f64 {
    match scale {
        DensityScale::Peak => profile.peak_density() / atom_mass,
        DensityScale::Mean => profile.rho0() / atom_mass,
    }
}

/// γ₃ = (K₃/72) n² (s⁻¹).
pub fn three_body_rate(spec: &CondensateSpec, profile: &DensityProfile, scale: DensityScale) -> f64 {
    let m = spec.species.mass();
    let n = number_density(profile, m, scale);
    k3(spec.a_s, m) / 72.0 * n * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThermalModel {
    /// Ideal-gas cloud in the harmonic trap.
    GaussianCloud,
    /// Scattering off a Thomas-Fermi condensate.
    TfCloud,
}

impl ThermalModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "gaussian_cloud" | "gaussian" => Ok(ThermalModel::GaussianCloud),
            "tf_cloud" | "tf" => Ok(ThermalModel::TfCloud),
            _ => Err(invalid(format!("unknown thermal model `{s}` (gaussian_cloud, tf_cloud)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalRate {
    pub gamma: f64,
    /// Set when the model does not apply, e.g. at T = 0.
    pub note: Option<String>,
}

/// v_t = √(2k_BT/m).
pub fn thermal_velocity(t: f64, atom_mass: f64) -> f64 {
    (2.0 * KB * t / atom_mass).sqrt()
}

/// Thermal-cloud density e^{−μ/k_BT}(k_BT/ħω)³ / ((4/3)πR_th³), with
/// R_th = √(2k_BT/(mω²)).
pub fn thermal_density(t: f64, omega: f64, atom_mass: f64, mu: f64) -> f64 {
    let r_th = (2.0 * KB * t / (atom_mass * omega * omega)).sqrt();
    let v_th = 4.0 / 3.0 * PI * r_th.powi(3);
    (-mu / (KB * t)).exp() * (KB * t / (HBAR * omega)).powi(3) / v_th
}

/// μ_TF = ½ħω(15 N a_s / R₀)^{2/5} for a spherical trap of frequency ω₀.
pub fn mu_tf(spec: &CondensateSpec) -> f64 {
    0.5 * HBAR * spec.omega0() * (15.0 * spec.n_atoms * spec.a_s / spec.s0()).powf(0.4)
}

/// γ_t (s⁻¹). `mu` is the chemical potential of the non-condensed cloud;
/// 0 bounds the fugacity at 1.
pub fn thermal_rate(spec: &CondensateSpec, model: ThermalModel, mu: f64) -> Result<ThermalRate> {
    let t = non_negative("temperature", spec.temperature)?;
    if t == 0.0 {
        return Ok(ThermalRate { gamma: 0.0, note: Some("T = 0: no thermal cloud".into()) });
    }
    let m = spec.species.mass();
    let w = spec.omega0();
    let gamma = match model {
        ThermalModel::GaussianCloud => {
            64.0 * PI.powi(4) * spec.a_s * spec.a_s * thermal_density(t, w, m, mu) * thermal_velocity(t, m)
        }
        ThermalModel::TfCloud => {
            if !(spec.a_s > 0.0) {
                return Err(Error::NotApplicable("TF cloud model needs a_s > 0".into()));
            }
            let n = spec.n_atoms;
            4.0 * KB * t * mu_tf(spec).powi(4) / (9.0 * PI.powi(4) * HBAR.powi(5) * w.powi(4) * n * n)
                * (mu / (KB * t)).exp()
        }
    };
    Ok(ThermalRate { gamma, note: None })
}

/// Background gas at pressure P and temperature T.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Background {
    pub species: Species,
    /// Pa.
    pub pressure: f64,
    /// K.
    pub temperature: f64,
    /// Overrides the species' C₆ (J m⁶).
    pub c6: Option<f64>,
}

impl Background {
    pub const ROOM_TEMPERATURE: f64 = 293.0;

    pub fn new(species: Species, pressure: f64) -> Self {
        Self { species, pressure, temperature: Self::ROOM_TEMPERATURE, c6: None }
    }
}

/// Cross-section 7.57·1.033²·(C₆/(ħu))^{2/5} (m²).
pub fn foreign_cross_section(c6: f64, u: f64) -> f64 {
    7.57 * 1.033f64.powi(2) * (c6 / (HBAR * u)).powf(0.4)
}

/// γ_f = σ(u_f) n_f u_f / √6 with u_f = √(2k_BT/m_f), n_f = P/(k_BT).
pub fn foreign_atom_rate(bg: &Background) -> Result<f64> {
    let p = non_negative("pressure", bg.pressure)?;
    let t = positive("background temperature", bg.temperature)?;
    let c6 = bg.c6.or_else(|| bg.species.c6()).ok_or_else(|| {
        invalid(format!("C6 coefficient needed for background species {}", bg.species.name))
    })?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let u = thermal_velocity(t, bg.species.mass());
    let n = p / (KB * t);
    Ok(foreign_cross_section(c6, u) * n * u / 6f64.sqrt())
}

/// NOON decay exponent Γ of a channel with single-particle rate `rate`.
pub fn channel_exponent(channel: Channel, n: f64, rate: f64) -> f64 {
    rate * n.powi(channel.n_power())
}

/// exp(−Γt), the factor on ⟨a_L†ᴺ a_Rᴺ⟩.
pub fn correlation_decay(channel: Channel, n: f64, rate: f64, t: f64) -> f64 {
    log_correlation_decay(channel, n, rate, t).exp()
}

pub fn log_correlation_decay(channel: Channel, n: f64, rate: f64, t: f64) -> f64 {
    -channel_exponent(channel, n, rate) * t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelRates {
    pub gamma3: f64,
    pub gamma_t: f64,
    pub gamma_f: f64,
    pub n_atoms: f64,
}

impl ChannelRates {
    pub fn rate(&self, c: Channel) -> f64 {
        match c {
            Channel::ThreeBody => self.gamma3,
            Channel::Thermal => self.gamma_t,
            Channel::Foreign => self.gamma_f,
        }
    }

    pub fn exponent(&self, c: Channel) -> f64 {
        channel_exponent(c, self.n_atoms, self.rate(c))
    }

    /// Sum of the three NOON exponents (s⁻¹).
    pub fn total_exponent(&self) -> f64 {
        Channel::ALL.iter().map(|&c| self.exponent(c)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CollapseDominated,
    Marginal,
    DecoherenceDominated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CollapseDominated => "collapse-dominated",
            Verdict::Marginal => "marginal",
            Verdict::DecoherenceDominated => "decoherence-dominated",
        }
    }
}

/// Default factor by which collapse must beat decoherence.
pub const DEFAULT_THRESHOLD: f64 = 10.0;

/// Compares the collapse rate E_G/ħ against a decoherence exponent.
pub fn verdict(collapse_rate: f64, decoherence: f64, threshold: f64) -> Verdict {
    if collapse_rate > threshold * decoherence {
        Verdict::CollapseDominated
    } else if collapse_rate > decoherence {
        Verdict::Marginal
    } else {
        Verdict::DecoherenceDominated
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::lookup_species;
    use crate::density::{condensate_profile, Regime};

    fn cs() -> CondensateSpec {
        CondensateSpec::spherical(lookup_species("Cs133").unwrap(), 1e6, 100.0).unwrap()
    }

    #[test]
    fn three_body_scaling() {
        let mut s = cs();
        let p = condensate_profile(&s, Regime::Gaussian).unwrap();
        let g = three_body_rate(&s, &p, DensityScale::Peak);
        s.a_s *= 0.5;
        assert!((three_body_rate(&s, &p, DensityScale::Peak) / g - 1.0 / 16.0).abs() < 1e-14);
        s.a_s = 0.0;
        assert_eq!(three_body_rate(&s, &p, DensityScale::Peak), 0.0);
        let mean = three_body_rate(&cs(), &p, DensityScale::Mean);
        assert!((g / mean - (4.0 / (3.0 * PI.sqrt())).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn thermal_velocity_of_cs() {
        let v = thermal_velocity(1e-9, lookup_species("Cs133").unwrap().mass());
        assert!((v / 3.54e-4 - 1.0).abs() < 2e-3, "{v}");
    }

    #[test]
    fn thermal_rate_laws() {
        let mut s = cs();
        s.temperature = 1e-9;
        let g = thermal_rate(&s, ThermalModel::GaussianCloud, 0.0).unwrap().gamma;
        s.a_s *= 2.0;
        assert!((thermal_rate(&s, ThermalModel::GaussianCloud, 0.0).unwrap().gamma / g - 4.0).abs() < 1e-12);
        // n_th v_t does not depend on ω: γ_t ∝ T²
        s.omega_r *= 3.0;
        s.omega_z *= 3.0;
        s.temperature = 2e-9;
        assert!((thermal_rate(&s, ThermalModel::GaussianCloud, 0.0).unwrap().gamma / g - 16.0).abs() < 1e-10);
        s.temperature = 0.0;
        let z = thermal_rate(&s, ThermalModel::TfCloud, 0.0).unwrap();
        assert_eq!(z.gamma, 0.0);
        assert!(z.note.is_some());
    }

    #[test]
    fn foreign_rate_laws() {
        let h = lookup_species("H1").unwrap();
        let mut bg = Background::new(h.clone(), 0.0);
        assert_eq!(foreign_atom_rate(&bg).unwrap(), 0.0);
        bg.pressure = 1e-11;
        let g = foreign_atom_rate(&bg).unwrap();
        bg.pressure = 2e-11;
        assert!((foreign_atom_rate(&bg).unwrap() / g - 2.0).abs() < 1e-14);
        assert!(g > 0.0 && g < 1.0, "{g}");
        let mut no_c6 = h;
        no_c6.c6_au = None;
        assert!(foreign_atom_rate(&Background::new(no_c6, 1e-11)).is_err());
    }

    #[test]
    fn exponent_laws() {
        for c in Channel::ALL {
            let e1 = channel_exponent(c, 10.0, 0.3);
            let e2 = channel_exponent(c, 20.0, 0.3);
            assert_eq!(e2 / e1, if c == Channel::Thermal { 4.0 } else { 2.0 });
            assert_eq!(correlation_decay(c, 10.0, 0.3, 0.0), 1.0);
        }
        assert_eq!(verdict(100.0, 1.0, 10.0), Verdict::CollapseDominated);
        assert_eq!(verdict(5.0, 1.0, 10.0), Verdict::Marginal);
        assert_eq!(verdict(0.5, 1.0, 10.0), Verdict::DecoherenceDominated);
    }
}
