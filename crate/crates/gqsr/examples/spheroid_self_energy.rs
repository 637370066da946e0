//! Prolate spheroids split along and across the symmetry axis, compared with
//! the volume-matched sphere.
use gqsr::density::DensityProfile;
use gqsr::geometry::{equivalent_spheroid, Axis, ShapeKind, SuperpositionConfig};
use gqsr::self_energy::{eg_numeric, eg_uniform_sphere, NumericOptions};

fn main() -> gqsr::Result<()> {
    let (m, r) = (1.0, 1.0);
    let opts = NumericOptions::rel(1e-7);
    for eps in [0.2, 0.5, 0.8] {
        let s = equivalent_spheroid(r, eps, ShapeKind::Prolate)?;
        let p = DensityProfile::uniform(s, m)?;
        for lam in [0.5, 1.0, 2.0] {
            let b = 2.0 * r * lam;
            let along = eg_numeric(&p, &SuperpositionConfig::new(s, b, Axis::Symmetry)?, &opts)?;
            let across = eg_numeric(&p, &SuperpositionConfig::new(s, b, Axis::Equatorial)?, &opts)?;
            let sphere = eg_uniform_sphere(lam, m, r)?;
            println!(
                "eps {eps:.1} b/2R {lam:.1}: along {:.5} across {:.5} sphere {:.5}",
                along.value / sphere.value,
                across.value / sphere.value,
                sphere.dimensionless
            );
        }
    }
    Ok(())
}
