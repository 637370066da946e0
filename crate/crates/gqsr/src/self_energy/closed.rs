//! Closed forms for spheres and for infinitely separated bodies.

use std::f64::consts::PI;

use super::{Method, SelfEnergyResult};
use crate::density::{DensityProfile, Regime};
use crate::error::{non_negative, positive, Result};
use crate::geometry::ShapeKind;
use crate::potential::sphere::erf_over_x;

/// Uniform ball, E_G/(GM²/R) at λ = b/(2R).
pub fn uniform_sphere_curve(lambda: f64) -> f64 {
    let l = lambda;
    if l <= 1.0 {
        1.2 * l * l * (5.0 / 3.0 - 1.25 * l + l.powi(3) / 6.0)
    } else {
        1.2 * (1.0 - 5.0 / (12.0 * l))
    }
}

/// Thomas-Fermi sphere, E_G/(GM²/R) at λ = b/(2R).
pub fn tf_sphere_curve(lambda: f64) -> f64 {
    let l = lambda;
    if l <= 1.0 {
        let l2 = l * l;
        10.0 / 7.0 * l2 * (2.0 - 4.2 * l2 + 3.5 * l2 * l - 0.75 * l2 * l2 * l + l2 * l2 * l2 * l / 10.0)
    } else {
        10.0 / 7.0 * (1.0 - 7.0 / (20.0 * l))
    }
}

/// Gaussian sphere, E_G/(GM²/R₀′) at λ₀ = b/(2R₀′).
pub fn gaussian_sphere_curve(lambda0: f64) -> f64 {
    let x = 2f64.sqrt() * lambda0;
    let k = (2.0 / PI).sqrt();
    if x < 0.1 {
        // the closed form cancels to O(λ₀²)
        let x2 = x * x;
        k * x2 * (1.0 / 3.0 - x2 * (1.0 / 10.0 - x2 * (1.0 / 42.0 - x2 * (1.0 / 216.0 - x2 / 1320.0))))
    } else {
        k - erf_over_x(x) / 2f64.sqrt()
    }
}

pub fn eg_uniform_sphere(lambda: f64, m: f64, r: f64) -> Result<SelfEnergyResult> {
    sphere(uniform_sphere_curve, lambda, m, r)
}

pub fn eg_tf_sphere(lambda: f64, m: f64, r: f64) -> Result<SelfEnergyResult> {
    sphere(tf_sphere_curve, lambda, m, r)
}

/// `lambda0` is b/(2R₀′) with R₀′ the Gaussian width.
pub fn eg_gaussian_sphere(lambda0: f64, m: f64, r0: f64) -> Result<SelfEnergyResult> {
    sphere(gaussian_sphere_curve, lambda0, m, r0)
}

fn sphere(f: fn(f64) -> f64, lambda: f64, m: f64, r: f64) -> Result<SelfEnergyResult> {
    non_negative("lambda", lambda)?;
    positive("mass", m)?;
    positive("radius", r)?;
    Ok(SelfEnergyResult::from_dimensionless(f(lambda), m, r, Method::ClosedForm, 0.0))
}

/// E_G for b → ∞, i.e. twice the self-energy of one body. The reference
/// length is the largest semi-axis (or width).
pub fn eg_infinite_separation(p: &DensityProfile) -> SelfEnergyResult {
    let s = p.shape;
    let big = s.major();
    let e = s.ellipticity();
    let d = match p.regime {
        Regime::Uniform | Regime::ThomasFermi => {
            // 6/(5l)·atanh(e) or 6/(5l)·asin(e), with l = e·major
            let shape_factor = match s.kind() {
                ShapeKind::Sphere => 1.0,
                ShapeKind::Prolate => atanh_over_x(e),
                ShapeKind::Oblate => asin_over_x(e),
            };
            let uniform = 1.2 * shape_factor;
            if p.regime == Regime::ThomasFermi {
                uniform * 25.0 / 21.0
            } else {
                uniform
            }
        }
        Regime::Gaussian => {
            // (2/√π)∫₀^∞ dt/((1+αt²)√(1+γt²)), α = 2a′², γ = 2c′², in units of 1/major
            let (al, ga) = (2.0 * (s.a() / big).powi(2), 2.0 * (s.c() / big).powi(2));
            let i = match s.kind() {
                ShapeKind::Sphere => 1.0 / al.sqrt(),
                ShapeKind::Oblate => atan_ratio(al, ga),
                ShapeKind::Prolate => atanh_ratio(al, ga),
            };
            2.0 / PI.sqrt() * i
        }
    };
    SelfEnergyResult::from_dimensionless(d, p.mass, big, Method::ClosedForm, 0.0)
}

// ∫₀^∞ dt/((1+αt²)√(1+γt²)) for α > γ
fn atan_ratio(al: f64, ga: f64) -> f64 {
    let u = (al / ga - 1.0).sqrt();
    if u < 1e-4 {
        (1.0 - u * u / 3.0) / ga.sqrt()
    } else {
        u.atan() / (al - ga).sqrt()
    }
}

// same for α < γ
fn atanh_ratio(al: f64, ga: f64) -> f64 {
    let u = (1.0 - al / ga).sqrt();
    if u < 1e-4 {
        (1.0 + u * u / 3.0) / ga.sqrt()
    } else {
        u.atanh() / (ga - al).sqrt()
    }
}

fn atanh_over_x(x: f64) -> f64 {
    if x < 1e-4 {
        1.0 + x * x / 3.0
    } else {
        x.atanh() / x
    }
}

fn asin_over_x(x: f64) -> f64 {
    if x < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.asin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::G;
    use crate::geometry::{equivalent_spheroid, Shape};

    #[test]
    fn sphere_values() {
        assert_eq!(uniform_sphere_curve(0.0), 0.0);
        assert!((uniform_sphere_curve(1.0) - 0.7).abs() < 1e-15);
        assert!((uniform_sphere_curve(1e9) - 1.2).abs() < 1e-9);
        assert!((tf_sphere_curve(1.0) - 13.0 / 14.0).abs() < 1e-15);
        assert!((gaussian_sphere_curve(1.0) - 0.320_634_9).abs() < 1e-6);
        assert!((gaussian_sphere_curve(1e6) - (2.0 / PI).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn gaussian_series_matches_closed_form() {
        let x = 0.1 / 2f64.sqrt();
        let direct = (2.0 / PI).sqrt() - libm::erf(0.1) / (2.0 * x);
        assert!((gaussian_sphere_curve(x * 0.999_999_999) / direct - 1.0).abs() < 1e-8);
    }

    #[test]
    fn infinite_separation() {
        let s = Shape::sphere(2.0).unwrap();
        let u = eg_infinite_separation(&DensityProfile::uniform(s, 3.0).unwrap());
        assert!((u.value / (1.2 * G * 9.0 / 2.0) - 1.0).abs() < 1e-14);
        let t = eg_infinite_separation(&DensityProfile::thomas_fermi(s, 3.0).unwrap());
        assert!((t.value / u.value - 25.0 / 21.0).abs() < 1e-14);
        let g = eg_infinite_separation(&DensityProfile::gaussian(s, 1.0).unwrap());
        assert!((g.dimensionless - (2.0 / PI).sqrt()).abs() < 1e-14);
        // oblate e = 0.6
        let o = Shape::spheroid(1.0, 0.8).unwrap();
        let v = eg_infinite_separation(&DensityProfile::uniform(o, 1.0).unwrap());
        assert!((v.dimensionless - 1.2 / 0.6 * 0.6f64.asin()).abs() < 1e-14);
    }

    #[test]
    fn low_ellipticity_expansion() {
        // 1 − e⁴/45 − 64e⁶/2835 relative to the equal-volume sphere
        let e: f64 = 0.05;
        let p = equivalent_spheroid(1.0, (1.0 - e * e).sqrt(), ShapeKind::Prolate).unwrap();
        let v = eg_infinite_separation(&DensityProfile::uniform(p, 1.0).unwrap());
        let want = 1.2 * (1.0 - e.powi(4) / 45.0 - 64.0 * e.powi(6) / 2835.0);
        assert!((v.value / G - want).abs() < 1e-11);
    }
}
