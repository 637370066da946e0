//! Potential (in units of G) of a uniform prolate spheroid by three routes, and of the matching sphere.
use gqsr::constants::G;
use gqsr::geometry::Shape;
use gqsr::potential::{phi_uniform_sphere, phi_uniform_spheroid, SpheroidMethod};

fn main() -> gqsr::Result<()> {
    let s = Shape::spheroid(0.8, 1.4)?;
    let r_eq = s.equivalent_radius();
    for z in [0.0, 0.7, 1.4, 2.0, 4.0] {
        let mut row = format!("z {z:>4.1}");
        for m in [SpheroidMethod::Homoeoid, SpheroidMethod::Cylindrical, SpheroidMethod::Spheroidal] {
            row += &format!("  {:?} {:+.8}", m, phi_uniform_spheroid(0.3, z, &s, 1.0, m)? / G);
        }
        let d = (0.09f64 + z * z).sqrt();
        row += &format!("  sphere {:+.8}", phi_uniform_sphere(d, r_eq, 1.0) / G);
        println!("{row}");
    }
    Ok(())
}
