//! Spheroid quadrature against the voxel oracle.

use gqsr::density::DensityProfile;
use gqsr::geometry::{equivalent_spheroid, Axis, ShapeKind, SuperpositionConfig};
use gqsr::oracle::eg_bruteforce;
use gqsr::self_energy::{eg_numeric, NumericOptions};

fn check(kind: ShapeKind, eps: f64, axis: Axis, tf: bool) {
    let s = equivalent_spheroid(1.0, eps, kind).unwrap();
    let p = if tf { DensityProfile::thomas_fermi(s, 1.0) } else { DensityProfile::uniform(s, 1.0) }.unwrap();
    // b = R
    let cfg = SuperpositionConfig::new(s, 1.0, axis).unwrap();
    let q = eg_numeric(&p, &cfg, &NumericOptions::rel(1e-7)).unwrap();
    let o = eg_bruteforce(&p, &cfg, 2.0 * s.major() / 48.0).unwrap();
    let d = (q.value / o.value - 1.0).abs();
    assert!(d < 0.01, "{kind:?} eps {eps} {axis:?} tf {tf}: quadrature {} oracle {} ({d:.2e})", q.value, o.value);
}

#[test]
fn tf_oblate_along_axis() {
    check(ShapeKind::Oblate, 0.5, Axis::Symmetry, true);
}

#[test]
fn tf_prolate_across_axis() {
    check(ShapeKind::Prolate, 0.5, Axis::Equatorial, true);
}

#[test]
fn uniform_prolate_along_axis() {
    check(ShapeKind::Prolate, 0.5, Axis::Symmetry, false);
}

#[test]
fn uniform_oblate_across_axis() {
    check(ShapeKind::Oblate, 0.5, Axis::Equatorial, false);
}

#[test]
fn thin_tf_prolate_across_axis_converges() {
    let s = equivalent_spheroid(1.0, 0.1, ShapeKind::Prolate).unwrap();
    let p = DensityProfile::thomas_fermi(s, 1.0).unwrap();
    for b in [0.01, 0.1, 1.0, 10.0] {
        let cfg = SuperpositionConfig::new(s, b, Axis::Equatorial).unwrap();
        let r = eg_numeric(&p, &cfg, &NumericOptions::default()).unwrap();
        assert!(r.value > 0.0 && r.rel_error < 1e-5, "b {b}: {r:?}");
    }
}
