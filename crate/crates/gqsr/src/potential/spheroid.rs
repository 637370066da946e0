//! Potentials of uniform and Thomas-Fermi spheroids.
//!
//! The reference evaluation integrates the potential of nested similar
//! shells (homoeoids),
//!
//! ```text
//! uniform: φ = −(3GM/4)  ∫_λ^∞ (1 − r²/A − z²/C)  du / (A√C)
//! TF:      φ = −(15GM/16) ∫_λ^∞ (1 − r²/A − z²/C)² du / (A√C)
//! ```
//!
//! with A = a²+u, C = c²+u and λ the ellipsoidal coordinate of the point
//! (0 inside). Expanding the bracket leaves integrals with closed forms, so
//! the whole thing costs a handful of flops and is exact inside and outside.
//! The cylindrical, spheroidal-coordinate and small-e forms are independent
//! alternatives used for cross-checks.

use serde::{Deserialize, Serialize};

use super::legendre::{p2, p4, q0, q0_oblate, q2, q2_oblate, q4, q4_oblate};
use super::sphere::{phi_tf_sphere, phi_uniform_sphere};
use crate::constants::G;
use crate::error::{Error, Result};
use crate::geometry::{oblate_coords, prolate_coords, Shape, ShapeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpheroidMethod {
    /// Shell integral in closed form; valid everywhere.
    Homoeoid,
    /// Closed forms in cylindrical coordinates.
    Cylindrical,
    /// Closed forms in spheroidal coordinates (Legendre functions).
    Spheroidal,
    /// Second-order expansion in the ellipticity about the equal-volume sphere.
    SmallE,
}

/// Ellipsoidal coordinate λ ≥ 0: the largest root of r²/(a²+λ) + z²/(c²+λ) = 1,
/// or 0 for points inside.
pub fn ellipsoidal_lambda(shape: &Shape, r: f64, z: f64) -> f64 {
    if shape.contains(r, z) {
        return 0.0;
    }
    let (a2, c2) = (shape.a() * shape.a(), shape.c() * shape.c());
    let (r2, z2) = (r * r, z * z);
    let b = a2 + c2 - r2 - z2;
    let cq = a2 * c2 - r2 * c2 - z2 * a2;
    let d = (b * b - 4.0 * cq).max(0.0).sqrt();
    let l = if b < 0.0 { 0.5 * (d - b) } else { -2.0 * cq / (b + d) };
    l.max(0.0)
}

/// K(p,q) = ∫_S^∞ s^{−2q} (s²+κ)^{−p} ds for p+q ≤ 3, p ≥ 1.
struct ShellIntegrals {
    k: [[f64; 3]; 4],
}

impl ShellIntegrals {
    fn new(s: f64, kappa: f64) -> Self {
        let mut k = [[0.0; 3]; 4];
        if kappa.abs() < 0.25 * s * s {
            for (p, row) in k.iter_mut().enumerate().skip(1) {
                for (q, v) in row.iter_mut().enumerate() {
                    if p + q <= 3 {
                        *v = series(p as i32, q as i32, s, kappa);
                    }
                }
            }
            return Self { k };
        }
        // K(0,q) for q = 1, 2
        let k0 = [0.0, 1.0 / s, 1.0 / (3.0 * s * s * s)];
        let sk = kappa.abs().sqrt();
        k[1][0] = if kappa > 0.0 { (sk / s).atan() / sk } else { (sk / s).atanh() / sk };
        let t = s * s + kappa;
        k[2][0] = (-s / t + k[1][0]) / (2.0 * kappa);
        k[3][0] = (-s / (t * t) + 3.0 * k[2][0]) / (4.0 * kappa);
        k[1][1] = (k0[1] - k[1][0]) / kappa;
        k[1][2] = (k0[2] - k[1][1]) / kappa;
        k[2][1] = (k[1][1] - k[2][0]) / kappa;
        Self { k }
    }

    /// J(p,q) = ∫ du/(A^p C^{q+1/2}) = 2K(p,q).
    fn j(&self, p: usize, q: usize) -> f64 {
        2.0 * self.k[p][q]
    }
}

fn series(p: i32, q: i32, s: f64, kappa: f64) -> f64 {
    let x = kappa / (s * s);
    let mut binom = 1.0; // C(−p, k)
    let mut xk = 1.0;
    let mut sum = 0.0;
    for k in 0..200 {
        let n = 2 * (p + q + k) - 1;
        let term = binom * xk / n as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        binom *= -(p + k) as f64 / (k + 1) as f64;
        xk *= x;
    }
    sum * s.powi(1 - 2 * p - 2 * q)
}

fn shells(shape: &Shape, r: f64, z: f64) -> ShellIntegrals {
    let lam = ellipsoidal_lambda(shape, r, z);
    let c2 = shape.c() * shape.c();
    let s = (c2 + lam).sqrt();
    let kappa = (shape.a() - shape.c()) * (shape.a() + shape.c());
    ShellIntegrals::new(s, kappa)
}

/// Uniform spheroid by the shell integral; also correct for a sphere.
pub fn phi_uniform_homoeoid(r: f64, z: f64, shape: &Shape, m: f64) -> f64 {
    let k = shells(shape, r, z);
    let (r2, z2) = (r * r, z * z);
    -0.75 * G * m * (k.j(1, 0) - r2 * k.j(2, 0) - z2 * k.j(1, 1))
}

/// Thomas-Fermi spheroid by the shell integral; also correct for a sphere.
pub fn phi_tf_homoeoid(r: f64, z: f64, shape: &Shape, m: f64) -> f64 {
    let k = shells(shape, r, z);
    let (r2, z2) = (r * r, z * z);
    let v = k.j(1, 0) - 2.0 * r2 * k.j(2, 0) - 2.0 * z2 * k.j(1, 1)
        + r2 * r2 * k.j(3, 0)
        + 2.0 * r2 * z2 * k.j(2, 1)
        + z2 * z2 * k.j(1, 2);
    -15.0 / 16.0 * G * m * v
}

fn not_sphere(shape: &Shape) -> Result<()> {
    if shape.kind() == ShapeKind::Sphere {
        return Err(Error::NotApplicable(
            "shape is a sphere (l = 0); use the spherical potentials".into(),
        ));
    }
    Ok(())
}

/// Cylindrical closed forms for a uniform spheroid.
pub fn phi_uniform_cylindrical(r: f64, z: f64, shape: &Shape, m: f64) -> Result<f64> {
    not_sphere(shape)?;
    let (a, c) = (shape.a(), shape.c());
    let l = shape.focal();
    let (r2, z2, l2) = (r * r, z * z, l * l);
    let cc = r2 + 2.0 * z2;
    let dd = r2 - 2.0 * z2;
    let pre = -0.75 * G * m / (l2 * l);
    let inside = shape.contains(r, z);
    let sq2 = std::f64::consts::SQRT_2;
    let v = match (shape.kind(), inside) {
        (ShapeKind::Prolate, true) => {
            (2.0 * l2 + dd) * (l / a).asinh() - l * (c * c * r2 - 2.0 * a * a * z2) / (a * a * c)
        }
        (ShapeKind::Prolate, false) => {
            let ap = r2 + z2 + (l2 * l2 + 2.0 * l2 * (r2 - z2) + (z2 + r2).powi(2)).sqrt();
            let bp = (ap - l2).sqrt();
            let ep = (ap + l2).sqrt();
            (2.0 * l2 + dd) * (sq2 * l / bp).asinh() - sq2 * l * (ap * dd + l2 * cc) / (ep * bp * bp)
        }
        (ShapeKind::Oblate, true) => {
            (2.0 * l2 - dd) * (l / a).asin() + l * (c * c * r2 - 2.0 * a * a * z2) / (a * a * c)
        }
        (ShapeKind::Oblate, false) => {
            let ao = r2 + z2 + (z2 * z2 + 2.0 * z2 * (r2 + l2) + (l2 - r2).powi(2)).sqrt();
            let bo = (ao + l2).sqrt();
            let eo = (ao - l2).max(0.0).sqrt();
            (2.0 * l2 - dd) * (sq2 * l / bo).min(1.0).asin() + sq2 * l * (ao * dd - l2 * cc) / (eo * bo * bo)
        }
        (ShapeKind::Sphere, _) => unreachable!(),
    };
    Ok(pre * v)
}

/// Spheroidal-coordinate closed forms for a uniform spheroid.
pub fn phi_uniform_spheroidal(r: f64, z: f64, shape: &Shape, m: f64) -> Result<f64> {
    not_sphere(shape)?;
    let l = shape.focal();
    let pre = -G * m / l;
    let inside = shape.contains(r, z);
    match shape.kind() {
        ShapeKind::Prolate => {
            let (xi, eta) = prolate_coords(r, z, l)?;
            let x0 = shape.c() / l;
            if !inside {
                return Ok(pre * (q0(xi) - q2(xi) * p2(eta)));
            }
            let pp = p2(xi) * p2(eta);
            let g1 = 1.0 - pp;
            let g2 = 1.5 * p2(eta) * xi;
            let g3 = 0.5 + pp;
            let d = x0 * (x0 * x0 - 1.0);
            Ok(pre * (q0(x0) * g1 + xi * (xi * xi - 1.0) / d * g2 + (x0 * x0 - xi * xi) / d * g3))
        }
        ShapeKind::Oblate => {
            let (xi, eta) = oblate_coords(r, z, l)?;
            let x0 = shape.c() / l;
            if !inside {
                return Ok(pre * (q0_oblate(xi) + q2_oblate(xi) * p2(eta)));
            }
            let w = 0.5 * (3.0 * xi * xi + 1.0) * p2(eta);
            let g1 = 1.0 + w;
            let g3 = 0.5 - w;
            let d = x0 * (x0 * x0 + 1.0);
            Ok(pre
                * (q0_oblate(x0) * g1 - 1.5 * xi * xi * (xi * xi + 1.0) * p2(eta) / d
                    + (x0 * x0 - xi * xi) * g3 / d))
        }
        ShapeKind::Sphere => unreachable!(),
    }
}

/// Second-order small-ellipticity expansion about the sphere of equal volume.
/// The sign of the correction is negative for prolate and positive for oblate.
pub fn phi_uniform_small_e(r: f64, z: f64, shape: &Shape, m: f64) -> f64 {
    let big_r = shape.equivalent_radius();
    let rho = r.hypot(z);
    let e2 = shape.ellipticity().powi(2);
    let sign = match shape.kind() {
        ShapeKind::Prolate => -1.0,
        _ => 1.0,
    };
    let p = if rho > 0.0 { p2(z / rho) } else { 0.0 };
    if shape.contains(r, z) {
        phi_uniform_sphere(rho, big_r, m) + sign * G * m * rho * rho / (5.0 * big_r.powi(3)) * p * e2
    } else {
        phi_uniform_sphere(rho, big_r, m) + sign * G * m * big_r * big_r / (5.0 * rho.powi(3)) * p * e2
    }
}

/// Uniform spheroid potential by the chosen method.
///
/// Spheres are rejected; they have their own closed form.
pub fn phi_uniform_spheroid(r: f64, z: f64, shape: &Shape, m: f64, method: SpheroidMethod) -> Result<f64> {
    not_sphere(shape)?;
    match method {
        SpheroidMethod::Homoeoid => Ok(phi_uniform_homoeoid(r, z, shape, m)),
        SpheroidMethod::Cylindrical => phi_uniform_cylindrical(r, z, shape, m),
        SpheroidMethod::Spheroidal => phi_uniform_spheroidal(r, z, shape, m),
        SpheroidMethod::SmallE => Ok(phi_uniform_small_e(r, z, shape, m)),
    }
}

/// Exterior TF spheroid potential as a terminating Legendre series,
/// −(GM/7l)(7Q₀ − 10Q₂P₂ + 3Q₄P₄) (prolate) and its oblate continuation.
pub fn phi_tf_exterior_legendre(r: f64, z: f64, shape: &Shape, m: f64) -> Result<f64> {
    not_sphere(shape)?;
    if shape.contains(r, z) {
        return Err(Error::NotApplicable("the Legendre series only holds outside the body".into()));
    }
    let l = shape.focal();
    let pre = -G * m / (7.0 * l);
    Ok(match shape.kind() {
        ShapeKind::Prolate => {
            let (xi, eta) = prolate_coords(r, z, l)?;
            pre * (7.0 * q0(xi) - 10.0 * q2(xi) * p2(eta) + 3.0 * q4(xi) * p4(eta))
        }
        _ => {
            let (xi, eta) = oblate_coords(r, z, l)?;
            pre * (7.0 * q0_oblate(xi) + 10.0 * q2_oblate(xi) * p2(eta) + 3.0 * q4_oblate(xi) * p4(eta))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TfMethod {
    Homoeoid,
    /// Legendre series outside, shell integral inside.
    Legendre,
}

/// Thomas-Fermi spheroid potential.
pub fn phi_tf_spheroid(r: f64, z: f64, shape: &Shape, m: f64, method: TfMethod) -> Result<f64> {
    not_sphere(shape)?;
    match method {
        TfMethod::Legendre if !shape.contains(r, z) => phi_tf_exterior_legendre(r, z, shape, m),
        _ => Ok(phi_tf_homoeoid(r, z, shape, m)),
    }
}

/// Uniform or TF potential of any shape, spheres included.
pub fn phi_uniform_any(r: f64, z: f64, shape: &Shape, m: f64) -> f64 {
    if shape.kind() == ShapeKind::Sphere {
        phi_uniform_sphere(r.hypot(z), shape.a(), m)
    } else {
        phi_uniform_homoeoid(r, z, shape, m)
    }
}

pub fn phi_tf_any(r: f64, z: f64, shape: &Shape, m: f64) -> f64 {
    if shape.kind() == ShapeKind::Sphere {
        phi_tf_sphere(r.hypot(z), shape.a(), m)
    } else {
        phi_tf_homoeoid(r, z, shape, m)
    }
}
