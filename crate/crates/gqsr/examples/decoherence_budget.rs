//! Decay of the N-particle correlation of a NOON state, channel by channel.
use gqsr::constants::lookup_species;
use gqsr::decoherence::{channel_exponent, three_body_rate, thermal_rate, Channel, DensityScale, ThermalModel};
use gqsr::density::{condensate_profile, CondensateSpec, Regime};

fn main() -> gqsr::Result<()> {
    let cs = lookup_species("Cs133")?;
    let mut spec = CondensateSpec::spherical(cs, 1e6, 2.0 * std::f64::consts::PI * 50.0)?;
    spec.temperature = 1e-9;
    let profile = condensate_profile(&spec, Regime::ThomasFermi)?;
    let g3 = three_body_rate(&spec, &profile, DensityScale::Peak);
    let gt = thermal_rate(&spec, ThermalModel::TfCloud, 0.0)?;
    println!("gamma_3 = {g3:.3e} 1/s, gamma_T = {:.3e} 1/s", gt.gamma);
    for n in [10.0, 100.0, 1e4, 1e6] {
        println!(
            "N = {n:>7e}: three-body {:.3e} 1/s, thermal {:.3e} 1/s",
            channel_exponent(Channel::ThreeBody, n, g3),
            channel_exponent(Channel::Thermal, n, gt.gamma)
        );
    }
    Ok(())
}
