//! Lifetimes, survival and sampled collapse times.
use gqsr::collapse::{
    ks_statistic, sample_collapse_times, sphere_lifetime, survival_probability, tf_touching_lifetime, Separation,
};
use gqsr::constants::{lookup_species, GammaParameter, HBAR};

fn main() -> gqsr::Result<()> {
    let tau_far = sphere_lifetime(1e-14, 1e-6, Separation::Far)?;
    println!("1e-14 kg, 1 um sphere, far apart: tau = {tau_far:.4e} s");

    let m = 4e9 * lookup_species("Cs133")?.mass();
    let tau = tf_touching_lifetime(m, 1e-6, GammaParameter::default())?;
    println!("4e9 Cs atoms, 1 um TF sphere, touching: tau = {tau:.4} s");

    let e_g = HBAR / tau;
    for t in [0.5, 1.0, 2.0, 5.0] {
        let s = survival_probability(e_g, t)?;
        println!("  t = {t:.1} s: survive {:.4}, decay {:.4}", s.survival, s.decay);
    }
    let samples = sample_collapse_times(e_g, 10_000, 7)?;
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    println!("  10000 samples: mean {mean:.4} s, KS {:.4}", ks_statistic(&samples, tau));
    Ok(())
}
