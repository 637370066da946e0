//! Thomas-Fermi and Gaussian profiles of a trapped caesium condensate.
use gqsr::constants::lookup_species;
use gqsr::density::{condensate_profile, tf_valid, CondensateSpec, Regime};

fn main() -> gqsr::Result<()> {
    let cs = lookup_species("Cs133")?;
    for n in [1e3, 1e6, 4e9] {
        let spec = CondensateSpec::spherical(cs.clone(), n, 2.0 * std::f64::consts::PI * 10.0)?;
        let v = tf_valid(&spec);
        println!("N = {n:e}: s0 {:.3e} m, N a_s/s0 {:.3e}, TF valid {}", spec.s0(), v.margin, v.valid);
        for regime in [Regime::ThomasFermi, Regime::Gaussian] {
            let p = condensate_profile(&spec, regime)?;
            let ext = p.extent();
            let samples: Vec<String> =
                [0.0, 0.5, 0.9].iter().map(|f| format!("{:.3e}", p.density(f * ext, 0.0))).collect();
            println!("  {:<14} extent {ext:.3e} m, rho(0, .5, .9 extent) = {} kg/m^3", regime.as_str(), samples.join(", "));
        }
    }
    Ok(())
}
