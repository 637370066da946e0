//! Frozen values worked out by hand from the defining formulas.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex;

use gqsr::collapse::{sample_collapse_times, sphere_lifetime, survival_probability, Separation};
use gqsr::constants::{G, HBAR};
use gqsr::density::{DensityProfile, Regime};
use gqsr::feasibility::{casimir_min_separation, entanglement_phases};
use gqsr::geometry::{equivalent_spheroid, prolate_coords, Shape, ShapeKind};
use gqsr::potential::legendre::q0;
use gqsr::potential::{phi_gaussian_sphere, phi_tf_sphere, phi_uniform_sphere};
use gqsr::self_energy::{eg_infinite_separation, gaussian_sphere_curve};
use gqsr::twomode::{
    build_hamiltonian, ground_state_fidelity_with_noon, n_particle_correlation, n_particle_correlation_density,
    noon_state, BoseHubbardParams, Branch, TwoModeState,
};

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

#[test]
fn spheroid_geometry() {
    let s = Shape::spheroid(0.5, 1.0).unwrap();
    assert!(rel(s.epsilon(), 0.5) < 1e-15);
    assert!(rel(s.ellipticity(), 0.75f64.sqrt()) < 1e-15);
    assert!(rel(s.focal(), 0.75f64.sqrt()) < 1e-15);
    let o = equivalent_spheroid(1.0, 0.5, ShapeKind::Oblate).unwrap();
    assert!((o.a() - 1.2599).abs() < 1e-4 && (o.c() - 0.6300).abs() < 1e-4);
    let p = equivalent_spheroid(1.0, 0.5, ShapeKind::Prolate).unwrap();
    assert!((p.a() - 0.7937).abs() < 1e-4 && (p.c() - 1.5874).abs() < 1e-4);
}

#[test]
fn prolate_coordinates_on_axis_and_equator() {
    let l = 0.7;
    let (xi, eta) = prolate_coords(0.0, 2.0 * l, l).unwrap();
    assert!((xi - 2.0).abs() < 1e-14 && (eta - 1.0).abs() < 1e-14);
    let (xi, eta) = prolate_coords(l, 0.0, l).unwrap();
    assert!((xi - 2f64.sqrt()).abs() < 1e-14 && eta.abs() < 1e-14);
}

#[test]
fn central_densities() {
    let s = Shape::sphere(1.0).unwrap();
    let tf = DensityProfile::new(Regime::ThomasFermi, s, 1.0).unwrap();
    assert!(rel(tf.density(0.0, 0.0), 2.5 * tf.rho0()) < 1e-14);
    let g = DensityProfile::new(Regime::Gaussian, s, 1.0).unwrap();
    assert!(rel(g.density(0.0, 0.0), 4.0 / (3.0 * PI.sqrt()) * g.rho0()) < 1e-14);
}

#[test]
fn sphere_potentials() {
    assert!(rel(phi_uniform_sphere(0.0, 1.0, 1.0), -1.5 * G) < 1e-14);
    assert!(rel(phi_tf_sphere(0.0, 1.0, 1.0), -15.0 / 8.0 * G) < 1e-14);
    assert!(rel(phi_gaussian_sphere(1.0, 1.0, 1.0), -0.842_700_792_949_715 * G) < 1e-12);
    assert!((q0(2.0) - 0.549_306_144_334_055).abs() < 1e-14);
}

#[test]
fn gaussian_and_spheroid_self_energies() {
    assert!((gaussian_sphere_curve(1.0) - 0.32063).abs() < 5e-6);
    assert!((gaussian_sphere_curve(1e9) - 0.79788).abs() < 5e-6);
    // oblate e = 0.6: 6/(5l)·asin(e) with l = e·a
    let s = Shape::spheroid(1.0, 0.8).unwrap();
    let inf = eg_infinite_separation(&DensityProfile::uniform(s, 1.0).unwrap());
    assert!(rel(inf.dimensionless, 1.2 * 0.6f64.asin() / 0.6) < 1e-12);
    assert!((0.6f64.asin() - 0.6435).abs() < 1e-4);
}

#[test]
fn touching_spheres_live_twelve_sevenths_longer() {
    let far = sphere_lifetime(1e-14, 1e-6, Separation::Far).unwrap();
    let touching = sphere_lifetime(1e-14, 1e-6, Separation::Distance(2e-6)).unwrap();
    assert!(rel(touching / far, 12.0 / 7.0) < 1e-12);
}

#[test]
fn feynman_sphere_survival_is_imperceptible() {
    let tau = sphere_lifetime(1e-14, 1e-6, Separation::Far).unwrap();
    let s = survival_probability(HBAR / tau, 2.5).unwrap();
    assert!(s.survival > 0.0 && s.survival < 1e-80);
}

#[test]
fn sampled_mean_is_the_lifetime() {
    let tau = 0.5;
    let t = sample_collapse_times(HBAR / tau, 100_000, 11).unwrap();
    let mean = t.iter().sum::<f64>() / t.len() as f64 / tau;
    assert!((0.99..=1.01).contains(&mean), "{mean}");
}

#[test]
fn noon_fock_and_mixture() {
    assert_eq!(n_particle_correlation(&noon_state(4).unwrap()), 12.0);
    assert_eq!(n_particle_correlation(&TwoModeState::fock(4, 4).unwrap()), 0.0);
    let mut rho = DMatrix::<Complex<f64>>::zeros(5, 5);
    rho[(0, 0)] = Complex::new(0.5, 0.0);
    rho[(4, 4)] = Complex::new(0.5, 0.0);
    assert_eq!(n_particle_correlation_density(&rho).unwrap(), 0.0);
}

#[test]
fn single_atom_hamiltonian() {
    let h = build_hamiltonian(&BoseHubbardParams { e_lr: 0.3, u: 7.0 }, 1).unwrap();
    assert_eq!(h[(0, 0)], 0.0);
    assert_eq!(h[(1, 1)], 0.0);
    assert_eq!(h[(0, 1)].abs(), 0.3);
    assert_eq!(h[(0, 1)], h[(1, 0)]);
}

#[test]
fn non_interacting_ground_state_is_far_from_noon() {
    let f = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u: 0.0 }, 8, Branch::Ground).unwrap();
    // binomial state: overlap with NOON is 2·(1/2)^N
    assert!((f.fidelity - 2.0 * 0.5f64.powi(8)).abs() < 1e-12, "{}", f.fidelity);
}

#[test]
fn repulsive_highest_mirrors_attractive_ground() {
    // H(U, E) = -H(-U, -E); for even N the sign of E is a basis-sign change
    // that leaves NOON alone
    for (n, e_lr) in [(4usize, 1.0), (6, 1.0), (7, -1.0)] {
        let a = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u: -3.0 }, n, Branch::Ground).unwrap();
        let r = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr, u: 3.0 }, n, Branch::Highest).unwrap();
        assert!((a.fidelity - r.fidelity).abs() < 1e-10, "{n}");
    }
}

#[test]
fn entangling_phases_are_order_one() {
    let p = entanglement_phases(1e-14, 200e-6, 250e-6, 2.5).unwrap();
    assert!((0.1..10.0).contains(&p.sum.abs()), "{}", p.sum);
}

#[test]
fn casimir_separation_is_a_finite_multiple_of_the_radius() {
    let d = casimir_min_separation(1e-14, 1e-6, 5.0).unwrap();
    assert!(d.is_finite() && d > 2e-6);
}
