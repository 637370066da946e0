//! Brute-force voxel E_G against the sphere closed forms.
use gqsr::density::DensityProfile;
use gqsr::geometry::{Axis, Shape, SuperpositionConfig};
use gqsr::oracle::eg_bruteforce;
use gqsr::self_energy::{eg_tf_sphere, eg_uniform_sphere};

fn main() -> gqsr::Result<()> {
    let s = Shape::sphere(1.0)?;
    let h = 2.0 / 48.0;
    for lam in [0.5, 1.0, 2.0] {
        let cfg = SuperpositionConfig::new(s, 2.0 * lam, Axis::Symmetry)?;
        let u = eg_bruteforce(&DensityProfile::uniform(s, 1.0)?, &cfg, h)?;
        let t = eg_bruteforce(&DensityProfile::thomas_fermi(s, 1.0)?, &cfg, h)?;
        println!(
            "b/2R {lam}: uniform {:.6} (closed {:.6})  tf {:.6} (closed {:.6})",
            u.dimensionless,
            eg_uniform_sphere(lam, 1.0, 1.0)?.dimensionless,
            t.dimensionless,
            eg_tf_sphere(lam, 1.0, 1.0)?.dimensionless
        );
    }
    Ok(())
}
