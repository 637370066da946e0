//! Shapes, superposition configurations and the dimensionless numbers that
//! the energy formulas are written in.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Sphere,
    Oblate,
    Prolate,
}

impl ShapeKind {
    /// Kind of cloud a trap with anisotropy λ_ω produces.
    pub fn from_lambda_omega(lw: f64) -> Self {
        if lw == 1.0 {
            ShapeKind::Sphere
        } else if lw < 1.0 {
            ShapeKind::Prolate
        } else {
            ShapeKind::Oblate
        }
    }
}

/// A sphere or spheroid with equatorial radius `a` and polar radius `c` (m).
///
/// The kind is derived from the axes, so a spheroid with `a == c` is a sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    a: f64,
    c: f64,
}

impl Shape {
    pub fn sphere(r: f64) -> Result<Self> {
        let r = positive("radius", r)?;
        Ok(Self { a: r, c: r })
    }

    pub fn spheroid(a: f64, c: f64) -> Result<Self> {
        Ok(Self { a: positive("equatorial radius a", a)?, c: positive("polar radius c", c)? })
    }

    /// Builds a shape and insists it has the requested kind.
    pub fn with_kind(kind: ShapeKind, a: f64, c: f64) -> Result<Self> {
        let s = Self::spheroid(a, c)?;
        if s.kind() != kind {
            return Err(invalid(format!("a={a}, c={c} is {:?}, not {kind:?}", s.kind())));
        }
        Ok(s)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn kind(&self) -> ShapeKind {
        if self.a == self.c {
            ShapeKind::Sphere
        } else if self.a > self.c {
            ShapeKind::Oblate
        } else {
            ShapeKind::Prolate
        }
    }

    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * std::f64::consts::PI * self.a * self.a * self.c
    }

    /// Radius of the sphere with the same volume.
    pub fn equivalent_radius(&self) -> f64 {
        (self.a * self.a * self.c).cbrt()
    }

    /// Largest semi-axis.
    pub fn major(&self) -> f64 {
        self.a.max(self.c)
    }

    /// Focal distance √|a²−c²|.
    pub fn focal(&self) -> f64 {
        ((self.a - self.c) * (self.a + self.c)).abs().sqrt()
    }

    /// Ellipticity e = √(1−ε²).
    pub fn ellipticity(&self) -> f64 {
        let (lo, hi) = (self.a.min(self.c), self.a.max(self.c));
        ((hi - lo) * (hi + lo)).sqrt() / hi
    }

    /// Axis ratio ε = minor/major.
    pub fn epsilon(&self) -> f64 {
        self.a.min(self.c) / self.a.max(self.c)
    }

    /// `true` when (r, z) is inside or on the surface.
    pub fn contains(&self, r: f64, z: f64) -> bool {
        (r / self.a).powi(2) + (z / self.c).powi(2) <= 1.0
    }
}

/// Direction of the displacement relative to the symmetry axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Symmetry,
    Equatorial,
}

/// Configuration labels: a) oblate along the symmetry axis, b) prolate along
/// the symmetry axis, c) oblate along an equatorial axis, d) prolate along an
/// equatorial axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConfigLabel {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "sphere")]
    Sphere,
}

impl ConfigLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ConfigLabel::A => "a",
            ConfigLabel::B => "b",
            ConfigLabel::C => "c",
            ConfigLabel::D => "d",
            ConfigLabel::Sphere => "sphere",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(ConfigLabel::A),
            "b" => Ok(ConfigLabel::B),
            "c" => Ok(ConfigLabel::C),
            "d" => Ok(ConfigLabel::D),
            "sphere" => Ok(ConfigLabel::Sphere),
            other => Err(invalid(format!("unknown configuration `{other}` (expected a, b, c, d or sphere)"))),
        }
    }

    /// The shape kind and displacement axis a label stands for.
    pub fn geometry(self) -> (ShapeKind, Axis) {
        match self {
            ConfigLabel::A => (ShapeKind::Oblate, Axis::Symmetry),
            ConfigLabel::B => (ShapeKind::Prolate, Axis::Symmetry),
            ConfigLabel::C => (ShapeKind::Oblate, Axis::Equatorial),
            ConfigLabel::D => (ShapeKind::Prolate, Axis::Equatorial),
            ConfigLabel::Sphere => (ShapeKind::Sphere, Axis::Symmetry),
        }
    }
}

/// One body superposed with a copy of itself displaced by `b` along `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionConfig {
    pub shape: Shape,
    pub b: f64,
    pub axis: Axis,
}

impl SuperpositionConfig {
    pub fn new(shape: Shape, b: f64, axis: Axis) -> Result<Self> {
        if !b.is_finite() || b < 0.0 {
            return Err(invalid(format!("displacement b must be >= 0, got {b}")));
        }
        Ok(Self { shape, b, axis })
    }

    /// Builds a configuration from its label, checking the shape fits it.
    pub fn from_label(label: ConfigLabel, shape: Shape, b: f64) -> Result<Self> {
        let (kind, axis) = label.geometry();
        if shape.kind() != kind {
            return Err(invalid(format!(
                "configuration {} needs a {kind:?} shape, got {:?}",
                label.as_str(),
                shape.kind()
            )));
        }
        Self::new(shape, b, axis)
    }

    pub fn label(&self) -> ConfigLabel {
        match (self.shape.kind(), self.axis) {
            (ShapeKind::Sphere, _) => ConfigLabel::Sphere,
            (ShapeKind::Oblate, Axis::Symmetry) => ConfigLabel::A,
            (ShapeKind::Prolate, Axis::Symmetry) => ConfigLabel::B,
            (ShapeKind::Oblate, Axis::Equatorial) => ConfigLabel::C,
            (ShapeKind::Prolate, Axis::Equatorial) => ConfigLabel::D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessParams {
    /// b/(2R) for a sphere, b/(2c) for a spheroid.
    pub lambda: f64,
    /// b/(2a).
    pub beta: f64,
    pub epsilon: f64,
    pub e: f64,
    /// l/c, only meaningful for oblate shapes (0 otherwise).
    pub e_second: f64,
    /// Focal distance (m).
    pub l: f64,
    /// Surface value of the spheroidal radial coordinate, c/l (∞ for a sphere).
    pub xi0: f64,
}

pub fn dimensionless(cfg: &SuperpositionConfig) -> DimensionlessParams {
    let s = cfg.shape;
    let l = s.focal();
    let (e_second, xi0) = match s.kind() {
        ShapeKind::Sphere => (0.0, f64::INFINITY),
        ShapeKind::Oblate => (l / s.c(), s.c() / l),
        ShapeKind::Prolate => (0.0, s.c() / l),
    };
    DimensionlessParams {
        lambda: cfg.b / (2.0 * s.c()),
        beta: cfg.b / (2.0 * s.a()),
        epsilon: s.epsilon(),
        e: s.ellipticity(),
        e_second,
        l,
        xi0,
    }
}

/// Spheroid with the volume of a sphere of radius `r` and axis ratio `eps`.
pub fn equivalent_spheroid(r: f64, eps: f64, kind: ShapeKind) -> Result<Shape> {
    positive("radius", r)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(invalid(format!("axis ratio must be in (0, 1], got {eps}")));
    }
    if eps == 1.0 || kind == ShapeKind::Sphere {
        return Shape::sphere(r);
    }
    match kind {
        // a²c = r³ with c = εa
        ShapeKind::Oblate => {
            let a = r / eps.cbrt();
            Shape::spheroid(a, eps * a)
        }
        // a²c = r³ with a = εc
        ShapeKind::Prolate => {
            let c = r / (eps * eps).cbrt();
            Shape::spheroid(eps * c, c)
        }
        ShapeKind::Sphere => unreachable!(),
    }
}

/// Prolate spheroidal coordinates (ξ, η) of the cylindrical point (r, z).
pub fn prolate_coords(r: f64, z: f64, l: f64) -> Result<(f64, f64)> {
    if !(l > 0.0) {
        return Err(Error::NotApplicable("focal distance is zero; use the spherical formulas".into()));
    }
    let s1 = r.hypot(z + l);
    let s2 = r.hypot(z - l);
    let xi = ((s1 + s2) / (2.0 * l)).max(1.0);
    let eta = ((s1 - s2) / (2.0 * l)).clamp(-1.0, 1.0);
    Ok((xi, eta))
}

/// Inverse of [`prolate_coords`].
pub fn prolate_cylindrical(xi: f64, eta: f64, l: f64) -> (f64, f64) {
    let r = l * ((xi - 1.0) * (xi + 1.0)).max(0.0).sqrt() * ((1.0 - eta) * (1.0 + eta)).max(0.0).sqrt();
    (r, l * xi * eta)
}

/// Oblate spheroidal coordinates (ξ ≥ 0, η ∈ [−1, 1]) with
/// r = l√(ξ²+1)√(1−η²), z = lξη.
pub fn oblate_coords(r: f64, z: f64, l: f64) -> Result<(f64, f64)> {
    if !(l > 0.0) {
        return Err(Error::NotApplicable("focal distance is zero; use the spherical formulas".into()));
    }
    // ξ² solves ξ⁴ + (1 − ρ² − ζ²)ξ² − ζ² = 0 with ρ = r/l, ζ = z/l.
    let (rho, zeta) = (r / l, z / l);
    let p = rho * rho + zeta * zeta - 1.0;
    let disc = p.hypot(2.0 * zeta);
    let xi2 = if p >= 0.0 { 0.5 * (p + disc) } else { 2.0 * zeta * zeta / (disc - p) };
    let xi = xi2.sqrt();
    let eta = if xi > 0.0 {
        (zeta / xi).clamp(-1.0, 1.0)
    } else {
        // on the focal disc
        (1.0 - rho * rho).max(0.0).sqrt().copysign(z)
    };
    Ok((xi, eta))
}

/// Inverse of [`oblate_coords`].
pub fn oblate_cylindrical(xi: f64, eta: f64, l: f64) -> (f64, f64) {
    let r = l * (xi * xi + 1.0).sqrt() * ((1.0 - eta) * (1.0 + eta)).max(0.0).sqrt();
    (r, l * xi * eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn touching_spheres() {
        let cfg = SuperpositionConfig::new(Shape::sphere(1.0).unwrap(), 2.0, Axis::Symmetry).unwrap();
        let d = dimensionless(&cfg);
        assert_eq!((d.lambda, d.e, d.epsilon, d.l), (1.0, 0.0, 1.0, 0.0));
        assert_eq!(cfg.label(), ConfigLabel::Sphere);
    }

    #[test]
    fn prolate_half() {
        let s = Shape::spheroid(0.5, 1.0).unwrap();
        let d = dimensionless(&SuperpositionConfig::new(s, 0.0, Axis::Symmetry).unwrap());
        assert!((d.epsilon - 0.5).abs() < 1e-15);
        assert!((d.e - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((d.l - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((d.epsilon.powi(2) + d.e.powi(2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pancake_ellipticity() {
        let s = Shape::spheroid(1.0, 0.01).unwrap();
        assert!((s.ellipticity() - 0.99995).abs() < 1e-6);
        assert_eq!(s.kind(), ShapeKind::Oblate);
    }

    #[test]
    fn volume_matched_spheroids() {
        let o = equivalent_spheroid(1.0, 0.5, ShapeKind::Oblate).unwrap();
        assert!((o.a() - 1.259_921).abs() < 1e-6 && (o.c() - 0.629_960_5).abs() < 1e-6);
        let p = equivalent_spheroid(1.0, 0.5, ShapeKind::Prolate).unwrap();
        assert!((p.a() - 0.793_700_5).abs() < 1e-6 && (p.c() - 1.587_401).abs() < 1e-6);
        let s = equivalent_spheroid(1.0, 1.0, ShapeKind::Oblate).unwrap();
        assert_eq!(s.kind(), ShapeKind::Sphere);
        assert!(equivalent_spheroid(1.0, 0.0, ShapeKind::Oblate).is_err());
        assert!(equivalent_spheroid(-1.0, 0.5, ShapeKind::Oblate).is_err());
    }

    #[test]
    fn prolate_coordinate_examples() {
        let l = 0.7;
        let (xi, eta) = prolate_coords(0.0, 2.0 * l, l).unwrap();
        assert!((xi - 2.0).abs() < 1e-14 && (eta - 1.0).abs() < 1e-14);
        let (xi, eta) = prolate_coords(l, 0.0, l).unwrap();
        assert!((xi - 2f64.sqrt()).abs() < 1e-14 && eta.abs() < 1e-14);
        assert!(prolate_coords(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn labels_follow_geometry() {
        let o = Shape::spheroid(2.0, 1.0).unwrap();
        let p = Shape::spheroid(1.0, 2.0).unwrap();
        assert_eq!(SuperpositionConfig::from_label(ConfigLabel::A, o, 1.0).unwrap().label(), ConfigLabel::A);
        assert_eq!(SuperpositionConfig::from_label(ConfigLabel::D, p, 1.0).unwrap().label(), ConfigLabel::D);
        assert!(SuperpositionConfig::from_label(ConfigLabel::A, p, 1.0).is_err());
        assert!(SuperpositionConfig::new(o, -1.0, Axis::Symmetry).is_err());
    }
}
