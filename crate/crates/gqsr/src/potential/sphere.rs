//! Potentials of spherically symmetric bodies.

use std::f64::consts::PI;

use crate::constants::G;

/// Uniform ball of radius `big_r`.
pub fn phi_uniform_sphere(r: f64, big_r: f64, m: f64) -> f64 {
    if r <= big_r {
        -G * m / big_r * (1.5 - 0.5 * (r / big_r).powi(2))
    } else {
        -G * m / r
    }
}

/// Thomas-Fermi (inverted parabola) sphere of radius `big_r`.
pub fn phi_tf_sphere(r: f64, big_r: f64, m: f64) -> f64 {
    if r <= big_r {
        let x2 = (r / big_r).powi(2);
        -G * m / (8.0 * big_r) * (15.0 - 10.0 * x2 + 3.0 * x2 * x2)
    } else {
        -G * m / r
    }
}

/// Mass of a TF sphere enclosed within radius r.
pub fn tf_enclosed_mass(r: f64, big_r: f64, m: f64) -> f64 {
    if r >= big_r {
        return m;
    }
    m / (2.0 * big_r.powi(5)) * (5.0 * big_r * big_r * r.powi(3) - 3.0 * r.powi(5))
}

/// Gaussian sphere ρ ∝ exp(−r²/R₀′²): −(GM/r) erf(r/R₀′).
pub fn phi_gaussian_sphere(r: f64, r0: f64, m: f64) -> f64 {
    -G * m / r0 * erf_over_x(r / r0)
}

/// erf(x)/x, with its Taylor series near the removable singularity at 0.
pub fn erf_over_x(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-4 {
        let x2 = x * x;
        2.0 / PI.sqrt() * (1.0 - x2 / 3.0 + x2 * x2 / 10.0)
    } else {
        libm::erf(x) / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_values() {
        assert!((phi_uniform_sphere(0.0, 1.0, 1.0) + 1.5 * G).abs() < 1e-25);
        assert_eq!(phi_uniform_sphere(1.0, 1.0, 1.0), -G);
        assert!((phi_uniform_sphere(2.0, 1.0, 1.0) + 0.5 * G).abs() < 1e-25);
        // slope continuity at the surface
        let h = 1e-6;
        let din = (phi_uniform_sphere(1.0, 1.0, 1.0) - phi_uniform_sphere(1.0 - h, 1.0, 1.0)) / h;
        let dout = (phi_uniform_sphere(1.0 + h, 1.0, 1.0) - phi_uniform_sphere(1.0, 1.0, 1.0)) / h;
        assert!((din / dout - 1.0).abs() < 1e-5);
    }

    #[test]
    fn tf_values() {
        assert!((phi_tf_sphere(0.0, 2.0, 1.0) + 15.0 * G / 16.0).abs() < 1e-25);
        assert!((phi_tf_sphere(2.0, 2.0, 1.0) + G / 2.0).abs() < 1e-25);
        assert_eq!(tf_enclosed_mass(2.0, 2.0, 3.0), 3.0);
        assert!((tf_enclosed_mass(2.0 - 1e-15, 2.0, 3.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_values() {
        let c = -phi_gaussian_sphere(0.0, 1.0, 1.0) / G;
        assert!((c - 2.0 / PI.sqrt()).abs() < 1e-15);
        let at1 = -phi_gaussian_sphere(1.0, 1.0, 1.0) / G;
        assert!((at1 - 0.842_700_79).abs() < 1e-8);
        let far = phi_gaussian_sphere(100.0, 1.0, 1.0) / (-G / 100.0);
        assert!((far - 1.0).abs() < 1e-10);
        // series and direct agree across the switch
        assert!((erf_over_x(0.999_999e-4) / erf_over_x(1.000_001e-4) - 1.0).abs() < 1e-12);
    }
}
