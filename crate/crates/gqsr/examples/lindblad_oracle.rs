//! Master-equation decay of a small NOON state against the closed decay law.
use gqsr::decoherence::{channel_exponent, Channel};
use gqsr::oracle::{fit_decay_exponent, lindblad_decay};

fn main() -> gqsr::Result<()> {
    let rate = 0.1;
    let times: Vec<f64> = (0..=20).map(|i| 0.05 * i as f64).collect();
    for ch in Channel::ALL {
        for n in [2usize, 4, 6] {
            let tr = lindblad_decay(ch, n, rate, &times, None)?;
            let fit = fit_decay_exponent(&tr.times, &tr.correlation)?;
            println!(
                "{:<10} N = {n}: fitted {fit:.5} 1/s, closed {:.5} 1/s, dt {:.1e} s",
                ch.as_str(),
                channel_exponent(ch, n as f64, rate),
                tr.dt
            );
        }
    }
    Ok(())
}
