//! E_G of uniform, Thomas-Fermi and Gaussian spheres against separation.
use gqsr::self_energy::{gaussian_sphere_curve, tf_sphere_curve, uniform_sphere_curve};

fn main() {
    println!("{:>6} {:>10} {:>10} {:>10}", "b/2R", "uniform", "tf", "gaussian");
    for i in 0..=12 {
        let lam = 0.25 * i as f64;
        println!(
            "{lam:>6.2} {:>10.6} {:>10.6} {:>10.6}",
            uniform_sphere_curve(lam),
            tf_sphere_curve(lam),
            gaussian_sphere_curve(lam)
        );
    }
}
