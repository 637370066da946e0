//! Potentials of Gaussian spheroids ρ ∝ exp(−r²/a′² − z²/c′²).

use std::f64::consts::PI;

use serde::Serialize;

use super::legendre::{p2, p4};
use super::sphere::phi_gaussian_sphere;
use crate::constants::G;
use crate::error::Result;
use crate::geometry::{Shape, ShapeKind};
use crate::quadrature::{integrate_to_infinity, QuadOptions};

/// Exact potential as a one-dimensional integral,
/// −(2GM/√π) ∫₀^∞ exp(−r²t²/(1+a′²t²) − z²t²/(1+c′²t²)) / ((1+a′²t²)√(1+c′²t²)) dt.
pub fn phi_gaussian_exact(r: f64, z: f64, widths: &Shape, m: f64) -> Result<f64> {
    let (a2, c2) = (widths.a().powi(2), widths.c().powi(2));
    // scale t by the largest width so the integrand is O(1) over O(1) ranges
    let s = widths.major();
    let f = |u: f64| {
        let t2 = (u / s).powi(2);
        let (ta, tc) = (1.0 + a2 * t2, 1.0 + c2 * t2);
        (-(r * r * t2 / ta) - z * z * t2 / tc).exp() / (ta * tc.sqrt())
    };
    let opts = QuadOptions::rel(1e-12);
    let i = integrate_to_infinity(f, 0.0, &opts).require(opts.rel)?;
    Ok(-2.0 * G * m / PI.sqrt() * i.value / s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallEPotential {
    pub value: f64,
    /// Set when e exceeds 0.3, where the fourth-order truncation is no longer
    /// reliable.
    pub accuracy_warning: bool,
}

/// Expansion to O(e⁴) about the Gaussian sphere of equal volume
/// (R = (a′²c′)^{1/3}), in spherical coordinates with θ from the symmetry axis.
/// `order` is 2 or 4.
pub fn phi_gaussian_spheroid_small_e(r: f64, z: f64, widths: &Shape, m: f64, order: u32) -> SmallEPotential {
    let big_r = widths.equivalent_radius();
    let e = widths.ellipticity();
    let rho = r.hypot(z);
    let x = rho / big_r;
    let mu = if rho > 0.0 { z / rho } else { 0.0 };
    let mut v = phi_gaussian_sphere(rho, big_r, m);
    let (sign, beta) = match widths.kind() {
        ShapeKind::Oblate => (-1.0, 2.0),
        _ => (1.0, 1.0),
    };
    if widths.kind() != ShapeKind::Sphere {
        let gm = G * m / big_r;
        v += sign * gm * e * e / 6.0 * b_over(x, &[0.0, 3.0, 0.0, 2.0], 3.0, 3) * p2(mu);
        if order >= 4 {
            let e4 = e.powi(4);
            let ex = 2.0 / PI.sqrt() * (-x * x).exp();
            let b4 = b_over(x, &[0.0, 21.0, 0.0, 14.0, 0.0, sign * 2.0 * beta], 21.0, 3);
            let c4 = b_over(x, &[0.0, 105.0, 0.0, 70.0, 0.0, 28.0, 0.0, 8.0], 105.0, 5);
            v += gm * e4 * (ex * (x * x + 1.0) / 45.0 + sign * b4 / (63.0 * beta) * p2(mu) + c4 / 140.0 * p4(mu));
        }
    }
    SmallEPotential { value: v, accuracy_warning: e > 0.3 }
}

/// [(2/√π) e^{−x²} P(x) − K erf(x)] / x^k, with P given by its coefficients
/// in ascending powers. The bracket vanishes to high order at x = 0, so small
/// x uses its power series instead of the cancelling closed form.
fn b_over(x: f64, poly: &[f64], kk: f64, k: i32) -> f64 {
    if x >= 0.5 {
        let direct = 2.0 / PI.sqrt() * (-x * x).exp() * horner(poly, x) - kk * libm::erf(x);
        return direct / x.powi(k);
    }
    // coefficient of x^{2n+1} in e^{−x²}P(x) − K Σ (−1)^n x^{2n+1}/(n!(2n+1)), P odd
    let mut sum = 0.0;
    let x2 = x * x;
    let mut fact = [1.0f64; 40];
    for i in 1..40 {
        fact[i] = fact[i - 1] * i as f64;
    }
    for n in 0..30usize {
        let mut c = 0.0;
        for (j, &p) in poly.iter().enumerate() {
            if p == 0.0 || j > 2 * n + 1 {
                continue;
            }
            let i = (2 * n + 1 - j) / 2;
            let s = if i % 2 == 0 { 1.0 } else { -1.0 };
            c += p * s / fact[i];
        }
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        c -= kk * s / (fact[n] * (2 * n + 1) as f64);
        let pow = 2 * n as i32 + 1 - k;
        if c != 0.0 {
            // terms with pow < 0 cancel exactly; drop their rounding residue
            if pow >= 0 {
                sum += c * x2.powi(pow / 2) * if pow % 2 == 1 { x } else { 1.0 };
            }
        }
    }
    2.0 / PI.sqrt() * sum
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// Gaussian potential of any widths: erf form for spheres, 1-D integral otherwise.
pub fn phi_gaussian_any(r: f64, z: f64, widths: &Shape, m: f64) -> Result<f64> {
    if widths.kind() == ShapeKind::Sphere {
        Ok(phi_gaussian_sphere(r.hypot(z), widths.a(), m))
    } else {
        phi_gaussian_exact(r, z, widths, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::equivalent_spheroid;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn exact_reduces_to_sphere() {
        let s = Shape::spheroid(1.2, 1.2 * (1.0 + 1e-15)).unwrap();
        for &(r, z) in &[(0.0, 0.0), (0.5, 0.5), (3.0, 1.0), (20.0, 0.0)] {
            let want = phi_gaussian_sphere(f64::hypot(r, z), 1.2, 1.0);
            assert!(rel(phi_gaussian_exact(r, z, &s, 1.0).unwrap(), want) < 1e-11);
        }
    }

    #[test]
    fn series_brackets_vanish_at_origin() {
        let b2 = |x| b_over(x, &[0.0, 3.0, 0.0, 2.0], 3.0, 3);
        assert!((b2(0.4999999) / b2(0.5000001) - 1.0).abs() < 1e-6);
        assert!(b2(0.0).abs() < 1e-15);
        let c4 = |x| b_over(x, &[0.0, 105.0, 0.0, 70.0, 0.0, 28.0, 0.0, 8.0], 105.0, 5);
        assert!((c4(0.4999999) / c4(0.5000001) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn e_zero_is_sphere() {
        let s = Shape::sphere(1.0).unwrap();
        let v = phi_gaussian_spheroid_small_e(0.3, 0.2, &s, 1.0, 4);
        assert_eq!(v.value, phi_gaussian_sphere(f64::hypot(0.3, 0.2), 1.0, 1.0));
        assert!(!v.accuracy_warning);
    }

    #[test]
    fn small_e_against_exact() {
        for kind in [ShapeKind::Prolate, ShapeKind::Oblate] {
            let e: f64 = 0.1;
            let w = equivalent_spheroid(1.0, (1.0 - e * e).sqrt(), kind).unwrap();
            for &(r, z) in &[(0.0, 0.0), (0.2, 0.1), (0.5, 0.9), (1.3, 0.2), (0.0, 2.0), (3.0, 3.0)] {
                let ex = phi_gaussian_exact(r, z, &w, 1.0).unwrap();
                let s2 = phi_gaussian_spheroid_small_e(r, z, &w, 1.0, 2).value;
                let s4 = phi_gaussian_spheroid_small_e(r, z, &w, 1.0, 4).value;
                assert!(rel(s2, ex) < 1e-4, "{kind:?} ({r},{z}) o2 {}", rel(s2, ex));
                assert!(rel(s4, ex) < 1e-6, "{kind:?} ({r},{z}) o4 {}", rel(s4, ex));
            }
        }
        let w = equivalent_spheroid(1.0, 0.5, ShapeKind::Oblate).unwrap();
        assert!(phi_gaussian_spheroid_small_e(0.1, 0.1, &w, 1.0, 4).accuracy_warning);
    }

    #[test]
    fn far_field() {
        let w = Shape::spheroid(0.5, 1.0).unwrap();
        let d = 1e3;
        assert!(rel(phi_gaussian_exact(0.0, d, &w, 1.0).unwrap(), -G / d) < 1e-6);
    }
}
