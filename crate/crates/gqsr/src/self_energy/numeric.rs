//! E_G by nested adaptive quadrature over the exact potentials.
//!
//! Using the reflection symmetry of the body along the displacement,
//!
//! ```text
//! E_G = ½ ∫ ρ(x) [φ(x+b) + φ(x−b) − 2φ(x)] d³x
//! ```
//!
//! which only needs the body's own support and whose integrand is O(b²)
//! pointwise. Lengths are scaled by the largest semi-axis and G = M = 1.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use super::{eg_infinite_separation, Method, SelfEnergyResult};
use crate::constants::G;
use crate::density::{DensityProfile, Regime};
use crate::error::{invalid, non_negative, positive, Error, Result};
use crate::geometry::{Axis, Shape, SuperpositionConfig};
use crate::potential::spheroid::{phi_tf_any, phi_uniform_any};
use crate::quadrature::{integrate_points, integrate_to_infinity, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Relative tolerance of the outermost integral.
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self { rel: 1e-6, max_intervals: 4000 }
    }
}

impl NumericOptions {
    pub fn rel(rel: f64) -> Self {
        Self { rel, ..Self::default() }
    }
}

/// E_G of `profile` superposed with its copy displaced as in `cfg`.
///
/// The configuration's shape must be the profile's shape. Gaussian profiles
/// go through [`eg_gaussian_pair`].
pub fn eg_numeric(profile: &DensityProfile, cfg: &SuperpositionConfig, opts: &NumericOptions) -> Result<SelfEnergyResult> {
    if cfg.shape != profile.shape {
        return Err(invalid("configuration shape differs from the profile shape"));
    }
    if !(opts.rel >= 1e-10 && opts.rel < 1.0) {
        return Err(invalid(format!("relative tolerance must be in [1e-10, 1), got {}", opts.rel)));
    }
    if profile.regime == Regime::Gaussian {
        return eg_gaussian_pair(&profile.shape, profile.mass, cfg.b, cfg.axis, opts);
    }
    let big = profile.shape.major();
    let shape = Shape::spheroid(profile.shape.a() / big, profile.shape.c() / big)?;
    let unit = DensityProfile::new(profile.regime, shape, 1.0)?;
    let b = cfg.b / big;
    if b == 0.0 {
        return Ok(SelfEnergyResult::from_dimensionless(0.0, profile.mass, big, Method::Quadrature, 0.0));
    }
    let phi = |r: f64, z: f64| match unit.regime {
        Regime::ThomasFermi => phi_tf_any(r, z, &shape, 1.0) / G,
        _ => phi_uniform_any(r, z, &shape, 1.0) / G,
    };
    // E_G(b) stays below E_G(∞)·min(1, b²) up to O(1); thin slivers near the
    // surface contribute far less than that and need no relative accuracy
    let scale = eg_infinite_separation(&unit).dimensionless * b.min(1.0).powi(2);
    let floor = 1e-3 * opts.rel * scale;
    let ctx = Nested { unit: &unit, phi: &phi, b, opts: *opts, floor, failed: Cell::new(false) };
    let (value, err) = match cfg.axis {
        Axis::Symmetry => ctx.axial(),
        Axis::Equatorial if shape.a() == shape.c() => ctx.axial(),
        Axis::Equatorial => ctx.equatorial(),
    };
    if ctx.failed.get() || !value.is_finite() {
        return Err(Error::NoConvergence { estimate: value, error: err, tol: opts.rel });
    }
    let rel_error = (err / value.abs()).max(ctx.inner_rel());
    Ok(SelfEnergyResult::from_dimensionless(value, profile.mass, big, Method::Quadrature, rel_error))
}

struct Nested<'a, F: Fn(f64, f64) -> f64> {
    unit: &'a DensityProfile,
    phi: &'a F,
    b: f64,
    opts: NumericOptions,
    /// Absolute tolerance of the inner integrals.
    floor: f64,
    failed: Cell<bool>,
}

impl<F: Fn(f64, f64) -> f64> Nested<'_, F> {
    fn inner_rel(&self) -> f64 {
        (self.opts.rel * 1e-2).max(1e-13)
    }

    fn quad(&self, f: impl FnMut(f64) -> f64, pts: &[f64], rel: f64, abs: f64) -> (f64, f64) {
        let o = QuadOptions { rel, abs, max_intervals: self.opts.max_intervals };
        let i = integrate_points(f, pts, &o);
        if !i.converged {
            self.failed.set(true);
        }
        (i.value, i.error)
    }

    // kinks in the inner variable sit where x ± b crosses the surface
    fn inner_points(half: f64, b: f64) -> Vec<f64> {
        let k = (half - b).abs();
        if k > 0.0 && k < half {
            vec![0.0, k, half]
        } else {
            vec![0.0, half]
        }
    }

    fn outer_points(b: f64, axis_len: f64) -> Vec<f64> {
        // cos θ = b/axis and b/(2·axis), as θ
        let mut pts = vec![0.0];
        for c in [b / axis_len, b / (2.0 * axis_len)] {
            if c < 1.0 {
                pts.push(c.acos());
            }
        }
        pts.push(FRAC_PI_2);
        pts.sort_by(f64::total_cmp);
        pts
    }

    /// Displacement along z: 4π ∫ r dr ∫₀^h F dz with r = a sin θ, h = c cos θ.
    fn axial(&self) -> (f64, f64) {
        let s = self.unit.shape;
        let (a, c, b) = (s.a(), s.c(), self.b);
        let inner_rel = self.inner_rel();
        let outer = |t: f64| {
            let (r, h) = (a * t.sin(), c * t.cos());
            if h <= 0.0 {
                return 0.0;
            }
            let f = |z: f64| {
                let p0 = (self.phi)(r, z);
                let dd = (self.phi)(r, z + b) + (self.phi)(r, z - b) - 2.0 * p0;
                0.5 * self.unit.density(r, z) * dd
            };
            let (v, _) = self.quad(f, &Self::inner_points(h, b), inner_rel, self.floor);
            v * a * a * t.sin() * t.cos()
        };
        let (v, e) = self.quad(outer, &Self::outer_points(b, c), self.opts.rel, 0.0);
        (4.0 * PI * v, 4.0 * PI * e)
    }

    /// Displacement along x: 8 ∫∫ dy dz ∫₀^w F dx over the octant, with
    /// y = a sin θ cos α, z = c sin θ sin α, w = a cos θ.
    fn equatorial(&self) -> (f64, f64) {
        let s = self.unit.shape;
        let (a, c, b) = (s.a(), s.c(), self.b);
        let inner_rel = self.inner_rel();
        let mid_rel = (self.opts.rel * 0.1).max(1e-12);
        let outer = |t: f64| {
            let (st, w) = (t.sin(), a * t.cos());
            if w <= 0.0 {
                return 0.0;
            }
            let pts = Self::inner_points(w, b);
            let mid = |al: f64| {
                let (y, z) = (a * st * al.cos(), c * st * al.sin());
                let f = |x: f64| {
                    let p0 = (self.phi)(x.hypot(y), z);
                    let dd = (self.phi)((x + b).hypot(y), z) + (self.phi)((x - b).hypot(y), z) - 2.0 * p0;
                    0.5 * self.unit.density(x.hypot(y), z) * dd
                };
                self.quad(f, &pts, inner_rel, self.floor).0
            };
            let (v, _) = self.quad(mid, &[0.0, FRAC_PI_2], mid_rel, self.floor);
            v * a * c * st * t.cos()
        };
        let (v, e) = self.quad(outer, &Self::outer_points(b, a), self.opts.rel, 0.0);
        (8.0 * v, 8.0 * e)
    }
}

/// E_G of a Gaussian profile with widths `widths` displaced by `b` along
/// `axis`, from the one-dimensional representation
///
/// ```text
/// E_G = GM² (2/√π) ∫₀^∞ [1 − exp(−b²t²/(1+2s²t²))] / ((1+2a′²t²)√(1+2c′²t²)) dt
/// ```
///
/// with s the width along the displacement.
pub fn eg_gaussian_pair(widths: &Shape, m: f64, b: f64, axis: Axis, opts: &NumericOptions) -> Result<SelfEnergyResult> {
    positive("mass", m)?;
    non_negative("displacement", b)?;
    let big = widths.major();
    let (a, c, b) = (widths.a() / big, widths.c() / big, b / big);
    let s = match axis {
        Axis::Symmetry => c,
        Axis::Equatorial => a,
    };
    let f = |t: f64| {
        let t2 = t * t;
        let q = b * b * t2 / (1.0 + 2.0 * s * s * t2);
        -(-q).exp_m1() / ((1.0 + 2.0 * a * a * t2) * (1.0 + 2.0 * c * c * t2).sqrt())
    };
    let o = QuadOptions { rel: opts.rel.min(1e-10), abs: 0.0, max_intervals: opts.max_intervals };
    let i = integrate_to_infinity(f, 0.0, &o).require(o.rel)?;
    let d = 2.0 / PI.sqrt() * i.value;
    let rel_error = if d > 0.0 { i.error / i.value.abs() } else { 0.0 };
    Ok(SelfEnergyResult::from_dimensionless(d, m, big, Method::Quadrature, rel_error))
}
