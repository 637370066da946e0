//! NOON correlations and how close Bose-Hubbard extremal states are to NOON.
use gqsr::twomode::{
    ground_state_fidelity_with_noon, n_particle_correlation, noon_correlation_exact, noon_state, BoseHubbardParams,
    Branch,
};

fn main() -> gqsr::Result<()> {
    for n in [2usize, 5, 10, 20] {
        let c = n_particle_correlation(&noon_state(n)?);
        println!("N = {n:>2}: <a_L^N+ a_R^N> = {c} (N!/2 = {})", noon_correlation_exact(n as u32));
    }
    for u in [-10.0, -1.0, 0.0, 1.0, 10.0] {
        let p = BoseHubbardParams { e_lr: 1.0, u };
        let g = ground_state_fidelity_with_noon(&p, 10, Branch::Ground)?;
        let h = ground_state_fidelity_with_noon(&p, 10, Branch::Highest)?;
        println!("U/E_LR = {u:>5}: ground {:.4}{}, highest {:.4}", g.fidelity, if g.degenerate { " (deg)" } else { "" }, h.fidelity);
    }
    Ok(())
}
