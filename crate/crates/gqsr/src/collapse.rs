//! Collapse statistics: lifetimes τ = ħ/E_G, survival probabilities, Poisson
//! sampling and the decay of the NOON correlation.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp};
use serde::Serialize;

use crate::constants::{GammaParameter, G, HBAR};
use crate::density::{condensate_profile, CondensateSpec, Regime};
use crate::error::{invalid, non_negative, positive, Error, Result};
use crate::geometry::ShapeKind;
use crate::self_energy::{eg_gaussian_sphere, eg_tf_sphere, eg_uniform_sphere};
use crate::twomode::{factorial, ln_factorial};

/// Name of the generator behind [`sample_collapse_times`].
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha), seed_from_u64, stream = partition";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapseLaw {
    /// E_G (J).
    pub e_g: f64,
    /// Mean lifetime (s).
    pub tau: f64,
    /// E_G/ħ (s⁻¹).
    pub gamma_collapse: f64,
}

impl CollapseLaw {
    pub fn new(e_g: f64) -> Result<Self> {
        positive("E_G", e_g)?;
        Ok(Self { e_g, tau: HBAR / e_g, gamma_collapse: e_g / HBAR })
    }

    pub fn survival(&self, t: f64) -> Result<Survival> {
        survival_probability(self.e_g, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Survival {
    /// ln P_s = −E_G t/ħ.
    pub log_survival: f64,
    pub survival: f64,
    pub decay: f64,
}

pub fn survival_probability(e_g: f64, t: f64) -> Result<Survival> {
    non_negative("E_G", e_g)?;
    non_negative("t", t)?;
    let log_survival = -e_g * t / HBAR;
    // −expm1 keeps P_d accurate when P_s ≈ 1
    Ok(Survival { log_survival, survival: log_survival.exp(), decay: -log_survival.exp_m1() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Separation {
    /// b ≫ R.
    Far,
    /// Centre-of-mass displacement b (m).
    Distance(f64),
}

/// Lifetime of a uniform sphere of mass `m` (kg) and radius `r` (m).
pub fn sphere_lifetime(m: f64, r: f64, sep: Separation) -> Result<f64> {
    positive("mass", m)?;
    positive("radius", r)?;
    match sep {
        Separation::Far => Ok(5.0 * HBAR * r / (6.0 * G * m * m)),
        Separation::Distance(b) => {
            non_negative("b", b)?;
            if b == 0.0 {
                return Err(Error::NotApplicable("no displacement, no collapse".into()));
            }
            Ok(eg_uniform_sphere(b / (2.0 * r), m, r)?.lifetime())
        }
    }
}

/// Touching Thomas-Fermi spheres of radius `r`: τ = ħ/[(13/14)Gm²N²/R].
pub fn tf_touching_lifetime(total_mass: f64, r: f64, gamma: GammaParameter) -> Result<f64> {
    Ok(eg_tf_sphere(1.0, total_mass, r)?.scaled(gamma).lifetime())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TouchingLifetime {
    pub regime: Regime,
    /// TF radius or Gaussian width R₀′ (m).
    pub radius: f64,
    pub e_g: f64,
    pub tau: f64,
}

/// Lifetime of a condensate displaced by one diameter (b = 2R), with R the
/// TF radius or the Gaussian width set by the trap.
pub fn bec_touching_lifetime(spec: &CondensateSpec, regime: Regime, gamma: GammaParameter) -> Result<TouchingLifetime> {
    let p = condensate_profile(spec, regime)?;
    if p.shape.kind() != ShapeKind::Sphere {
        return Err(Error::NotApplicable("touching lifetime is defined for spherical traps".into()));
    }
    let radius = p.shape.a();
    let e = match regime {
        Regime::ThomasFermi => eg_tf_sphere(1.0, p.mass, radius)?,
        Regime::Gaussian => eg_gaussian_sphere(1.0, p.mass, radius)?,
        Regime::Uniform => return Err(invalid("uniform bodies are not condensates")),
    }
    .scaled(gamma);
    Ok(TouchingLifetime { regime, radius, e_g: e.value, tau: e.lifetime() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoonCorrelation {
    /// e^{−E_G t/ħ} N!/2; overflows to ∞ for very large N.
    pub value: f64,
    /// Natural log of the same.
    pub log_value: f64,
}

/// ⟨a_L†ᴺ a_Rᴺ⟩ under collapse: e^{−E_G t/ħ} N!/2.
pub fn noon_correlation_collapse(n: u32, e_g: f64, t: f64) -> Result<NoonCorrelation> {
    if n == 0 {
        return Err(invalid("N must be >= 1"));
    }
    let s = survival_probability(e_g, t)?;
    let log_value = ln_factorial(n) - std::f64::consts::LN_2 + s.log_survival;
    let value = if n <= 20 {
        // integer N!/2 so that t = 0 is exact
        let half = factorial(n) as f64 / 2.0;
        if t == 0.0 {
            half
        } else {
            half * s.survival
        }
    } else {
        log_value.exp()
    };
    Ok(NoonCorrelation { value, log_value })
}

/// `count` collapse times (s) drawn from Exp(E_G/ħ).
pub fn sample_collapse_times(e_g: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    sample_partition(e_g, count, seed, 0)
}

/// Independent stream `partition` of the same seed, for splitting work.
pub fn sample_partition(e_g: f64, count: usize, seed: u64, partition: u64) -> Result<Vec<f64>> {
    non_negative("E_G", e_g)?;
    if e_g == 0.0 {
        return Err(Error::NotApplicable("E_G = 0: the superposition never decays".into()));
    }
    let law = CollapseLaw::new(e_g)?;
    let exp = Exp::new(law.gamma_collapse).map_err(|e| Error::Numerical(e.to_string()))?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(partition);
    Ok((0..count).map(|_| exp.sample(&mut rng)).collect())
}

/// Kolmogorov-Smirnov distance between the samples and 1 − e^{−t/τ}.
pub fn ks_statistic(samples: &[f64], tau: f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = -(-x / tau).exp_m1();
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::lookup_species;

    #[test]
    fn law_identities() {
        let l = CollapseLaw::new(3.3e-34).unwrap();
        assert!((l.tau * l.gamma_collapse - 1.0).abs() < 1e-15);
        let s = l.survival(l.tau * std::f64::consts::LN_2).unwrap();
        assert!((s.survival - 0.5).abs() < 1e-15);
        assert_eq!(survival_probability(0.0, 5.0).unwrap().survival, 1.0);
        assert!(survival_probability(1.0, -1.0).is_err());
    }

    #[test]
    fn feynman_sphere() {
        let tau = sphere_lifetime(1e-14, 1e-6, Separation::Far).unwrap();
        assert!((tau / 0.0132 - 1.0).abs() < 0.01, "{tau}");
        let s = survival_probability(HBAR / tau, 2.5).unwrap();
        assert!((s.survival.log10() + 82.5).abs() < 1.0, "{}", s.survival);
        assert!((s.log_survival / (-2.5 / tau) - 1.0).abs() < 1e-12);
        let touch = sphere_lifetime(1e-14, 1e-6, Separation::Distance(2e-6)).unwrap();
        assert!((touch / tau - 12.0 / 7.0).abs() < 1e-12);
        let heavy = sphere_lifetime(2e-14, 1e-6, Separation::Far).unwrap();
        assert!((tau / heavy - 4.0).abs() < 1e-12);
    }

    #[test]
    fn cs_touching() {
        let m = 4e9 * lookup_species("Cs133").unwrap().mass();
        let tau = tf_touching_lifetime(m, 1e-6, GammaParameter::default()).unwrap();
        assert!((tau / 2.18 - 1.0).abs() < 0.01, "{tau}");
        let boosted = tf_touching_lifetime(m, 1e-6, GammaParameter::eight_pi()).unwrap();
        assert!((tau / boosted / (64.0 * std::f64::consts::PI.powi(2)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noon_decay() {
        let c = noon_correlation_collapse(4, 1e-34, 0.0).unwrap();
        assert_eq!(c.value, 12.0);
        let tau = HBAR / 1e-34;
        let c = noon_correlation_collapse(4, 1e-34, tau).unwrap();
        assert!((c.value * std::f64::consts::E / 12.0 - 1.0).abs() < 1e-14);
        let big = noon_correlation_collapse(200, 1e-34, 1.0).unwrap();
        assert!(big.log_value.is_finite() && big.value.is_infinite());
    }

    #[test]
    fn sampler_is_deterministic_and_exponential() {
        let e = 1e-34;
        let a = sample_collapse_times(e, 100_000, 42).unwrap();
        assert_eq!(a, sample_collapse_times(e, 100_000, 42).unwrap());
        assert_ne!(a[..10], sample_partition(e, 10, 42, 1).unwrap()[..]);
        let tau = HBAR / e;
        let mean = a.iter().sum::<f64>() / a.len() as f64;
        assert!((mean / tau - 1.0).abs() < 0.01);
        assert!(ks_statistic(&a, tau) < 0.01);
        assert!(sample_collapse_times(0.0, 3, 1).is_err());
    }
}
