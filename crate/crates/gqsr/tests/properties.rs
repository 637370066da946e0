use proptest::prelude::*;

use gqsr::collapse::{ks_statistic, sample_partition, survival_probability, CollapseLaw};
use gqsr::constants::HBAR;
use gqsr::decoherence::{channel_exponent, Channel};
use gqsr::feasibility::preset;
use gqsr::self_energy::{
    eg_tf_sphere, eg_uniform_sphere, gaussian_sphere_curve, tf_sphere_curve, uniform_sphere_curve,
};
use gqsr::twomode::{build_hamiltonian, n_particle_correlation, noon_state, BoseHubbardParams};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #[test]
    fn survival_and_decay_sum_to_one(e_g in 1e-40f64..1e-30, t in 0.0f64..1e3) {
        let s = survival_probability(e_g, t).unwrap();
        prop_assert!(close(s.survival + s.decay, 1.0, 1e-12));
        prop_assert!((0.0..=1.0).contains(&s.survival));
    }

    #[test]
    fn survival_is_memoryless(e_g in 1e-36f64..1e-32, t1 in 0.0f64..50.0, t2 in 0.0f64..50.0) {
        let law = CollapseLaw::new(e_g).unwrap();
        let joint = law.survival(t1 + t2).unwrap().log_survival;
        let parts = law.survival(t1).unwrap().log_survival + law.survival(t2).unwrap().log_survival;
        prop_assert!(close(joint, parts, 1e-12) || joint.abs() < 1e-300);
    }

    #[test]
    fn exponents_scale_with_their_power_of_n(n in 1.0f64..1e9, rate in 1e-9f64..1e3) {
        for ch in Channel::ALL {
            let r = channel_exponent(ch, 2.0 * n, rate) / channel_exponent(ch, n, rate);
            prop_assert!(close(r, 2f64.powi(ch.n_power()), 1e-12));
        }
    }

    #[test]
    fn sphere_curves_rise_and_stay_below_their_far_values(a in 0.0f64..10.0, d in 1e-6f64..1.0) {
        let b = a + d;
        for (f, far) in [
            (uniform_sphere_curve as fn(f64) -> f64, 1.2),
            (tf_sphere_curve, 10.0 / 7.0),
            (gaussian_sphere_curve, (2.0 / std::f64::consts::PI).sqrt()),
        ] {
            prop_assert!(f(b) >= f(a));
            prop_assert!(f(b) <= far * (1.0 + 1e-15));
        }
    }

    #[test]
    fn eg_scales_as_mass_squared_over_radius(lam in 0.0f64..4.0, m in 1e-20f64..1e-10, r in 1e-7f64..1e-3) {
        let one = eg_uniform_sphere(lam, 1.0, 1.0).unwrap().value;
        prop_assert!(close(eg_uniform_sphere(lam, m, r).unwrap().value, one * m * m / r, 1e-12));
        let one = eg_tf_sphere(lam, 1.0, 1.0).unwrap().value;
        prop_assert!(close(eg_tf_sphere(lam, m, r).unwrap().value, one * m * m / r, 1e-12));
    }

    #[test]
    fn hamiltonian_is_real_symmetric(n in 1usize..40, e_lr in -10.0f64..10.0, u in -100.0f64..100.0) {
        let h = build_hamiltonian(&BoseHubbardParams { e_lr, u }, n).unwrap();
        prop_assert_eq!(h.nrows(), n + 1);
        prop_assert!((&h - h.transpose()).amax() == 0.0);
    }

    #[test]
    fn noon_states_are_normalised(n in 1usize..64) {
        let s = noon_state(n).unwrap();
        prop_assert!(close(s.norm(), 1.0, 1e-14));
        prop_assert!(n_particle_correlation(&s) > 0.0);
    }

    #[test]
    fn three_body_ratio_times_n_is_fixed_at_fixed_radius(n in 1e8f64..1e11) {
        let base = preset("tf-threebody").unwrap();
        let reference = base.evaluate().unwrap().ratio * base.n_atoms;
        let mut s = base.clone();
        s.n_atoms = n;
        prop_assert!(close(s.evaluate().unwrap().ratio * n, reference, 1e-9));
    }

    #[test]
    fn samples_follow_the_lifetime(seed in any::<u64>(), partition in 0u64..8) {
        let tau = 3.0;
        let a = sample_partition(HBAR / tau, 4000, seed, partition).unwrap();
        prop_assert_eq!(&a, &sample_partition(HBAR / tau, 4000, seed, partition).unwrap());
        prop_assert!(a.iter().all(|&t| t >= 0.0 && t.is_finite()));
        // P(D > 0.045) is below 1e-6 at this sample size
        prop_assert!(ks_statistic(&a, tau) < 0.045);
    }
}
