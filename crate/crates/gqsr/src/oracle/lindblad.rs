//! Direct integration of the two-mode master equations for small N.
//!
//! The density operator lives on |n_L, n_R⟩ with 0 ≤ n_L, n_R ≤ N, so
//! particle loss stays inside the space. Jump operators are stored sparsely
//! (one entry per column) and the equation is stepped with classical RK4.

use rustfft::num_complex::Complex;
use serde::Serialize;

use crate::decoherence::Channel;
use crate::error::{invalid, non_negative, Error, Result};
use crate::twomode::factorial;

pub const MAX_N: usize = 6;

type C64 = Complex<f64>;

/// Bose-Hubbard terms E_LR/ħ and U/ħ (s⁻¹), switched on by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HamiltonianRates {
    pub tunnelling: f64,
    pub interaction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LindbladTrace {
    pub times: Vec<f64>,
    /// ⟨a_L†ᴺ a_Rᴺ⟩ at each time.
    pub correlation: Vec<f64>,
    /// Step size that met the halving test (s).
    pub dt: f64,
    /// Largest |Tr ρ − 1| seen.
    pub trace_error: f64,
    /// Largest |ρ − ρ†| element seen.
    pub hermiticity_error: f64,
}

struct Space {
    n: usize,
}

impl Space {
    fn dim(&self) -> usize {
        (self.n + 1) * (self.n + 1)
    }

    fn idx(&self, nl: usize, nr: usize) -> usize {
        nl * (self.n + 1) + nr
    }

    /// a_k^p as (column → (row, coefficient)).
    fn lowering(&self, left: bool, p: usize) -> Vec<Option<(usize, f64)>> {
        let mut out = vec![None; self.dim()];
        for nl in 0..=self.n {
            for nr in 0..=self.n {
                let k = if left { nl } else { nr };
                if k < p {
                    continue;
                }
                let c: f64 = (0..p).map(|i| (k - i) as f64).product::<f64>().sqrt();
                let row = if left { self.idx(nl - p, nr) } else { self.idx(nl, nr - p) };
                out[self.idx(nl, nr)] = Some((row, c));
            }
        }
        out
    }
}

// rate, and per Fock column the target row and amplitude of L (None if L kills it)
type Jump = (f64, Vec<Option<(usize, f64)>>);

struct Generator {
    dim: usize,
    jumps: Vec<Jump>,
    /// Σ γ L†L diagonals.
    loss: Vec<f64>,
    /// dephasing: −γ (J_i − J_j)² with J = n_L − n_R
    dephase: Option<(f64, Vec<f64>)>,
    ham: Vec<(usize, usize, f64)>,
}

impl Generator {
    fn apply(&self, rho: &[C64], out: &mut [C64]) {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = rho[i * d + j] * (-0.5 * (self.loss[i] + self.loss[j]));
            }
        }
        if let Some((g, jz)) = &self.dephase {
            for i in 0..d {
                for j in 0..d {
                    let dj = jz[i] - jz[j];
                    out[i * d + j] -= rho[i * d + j] * (g * dj * dj);
                }
            }
        }
        for (g, l) in &self.jumps {
            for k in 0..d {
                let Some((rk, ck)) = l[k] else { continue };
                for m in 0..d {
                    let Some((rm, cm)) = l[m] else { continue };
                    out[rk * d + rm] += rho[k * d + m] * (g * ck * cm);
                }
            }
        }
        // −i[H, ρ]
        let mi = C64::new(0.0, -1.0);
        for &(a, b, h) in &self.ham {
            for j in 0..d {
                out[a * d + j] += mi * h * rho[b * d + j];
                out[j * d + b] -= mi * h * rho[j * d + a];
            }
        }
    }
}

fn generator(channel: Channel, n: usize, rate: f64, ham: Option<HamiltonianRates>) -> Generator {
    let sp = Space { n };
    let d = sp.dim();
    let mut g = Generator { dim: d, jumps: Vec::new(), loss: vec![0.0; d], dephase: None, ham: Vec::new() };
    match channel {
        Channel::ThreeBody | Channel::Foreign => {
            let p = if channel == Channel::ThreeBody { 3 } else { 1 };
            for left in [true, false] {
                let l = sp.lowering(left, p);
                for (col, e) in l.iter().enumerate() {
                    if let Some((_, c)) = e {
                        g.loss[col] += rate * c * c;
                    }
                }
                g.jumps.push((rate, l));
            }
        }
        Channel::Thermal => {
            let mut jz = vec![0.0; d];
            for nl in 0..=n {
                for nr in 0..=n {
                    jz[sp.idx(nl, nr)] = nl as f64 - nr as f64;
                }
            }
            g.dephase = Some((rate, jz));
        }
    }
    if let Some(h) = ham {
        for nl in 0..=n {
            for nr in 0..=n {
                let i = sp.idx(nl, nr);
                let u = 0.5 * h.interaction * ((nl * nl.saturating_sub(1) + nr * nr.saturating_sub(1)) as f64);
                if u != 0.0 {
                    g.ham.push((i, i, u));
                }
                // a_L† a_R and its conjugate
                if nr > 0 && nl < n {
                    let j = sp.idx(nl + 1, nr - 1);
                    let c = h.tunnelling * (((nl + 1) * nr) as f64).sqrt();
                    g.ham.push((j, i, c));
                    g.ham.push((i, j, c));
                }
            }
        }
    }
    g
}

fn rk4(g: &Generator, rho: &mut [C64], dt: f64, k: &mut [Vec<C64>; 4], tmp: &mut [C64]) {
    let len = rho.len();
    g.apply(rho, &mut k[0]);
    for s in 1..4 {
        let f = if s == 3 { dt } else { 0.5 * dt };
        for i in 0..len {
            tmp[i] = rho[i] + k[s - 1][i] * f;
        }
        g.apply(tmp, &mut k[s]);
    }
    for i in 0..len {
        rho[i] += (k[0][i] + k[1][i] * 2.0 + k[2][i] * 2.0 + k[3][i]) * (dt / 6.0);
    }
}

struct Run {
    corr: Vec<f64>,
    trace_error: f64,
    hermiticity_error: f64,
}

fn run(g: &Generator, n: usize, times: &[f64], dt: f64) -> Run {
    let sp = Space { n };
    let d = g.dim;
    let mut rho = vec![C64::new(0.0, 0.0); d * d];
    let (a, b) = (sp.idx(n, 0), sp.idx(0, n));
    for &(i, j) in &[(a, a), (a, b), (b, a), (b, b)] {
        rho[i * d + j] = C64::new(0.5, 0.0);
    }
    let mut k = [vec![C64::new(0.0, 0.0); d * d], vec![C64::new(0.0, 0.0); d * d], vec![C64::new(0.0, 0.0); d * d], vec![C64::new(0.0, 0.0); d * d]];
    let mut tmp = vec![C64::new(0.0, 0.0); d * d];
    let nf = factorial(n as u32) as f64;
    let mut t = 0.0;
    let mut out = Run { corr: Vec::with_capacity(times.len()), trace_error: 0.0, hermiticity_error: 0.0 };
    for &target in times {
        while t < target {
            let step = dt.min(target - t);
            rk4(g, &mut rho, step, &mut k, &mut tmp);
            t = if target - t <= dt { target } else { t + step };
            let tr: f64 = (0..d).map(|i| rho[i * d + i].re).sum();
            out.trace_error = out.trace_error.max((tr - 1.0).abs());
        }
        for i in 0..d {
            for j in 0..i {
                out.hermiticity_error = out.hermiticity_error.max((rho[i * d + j] - rho[j * d + i].conj()).norm());
            }
        }
        // ⟨N0| a_L†ᴺ a_Rᴺ |0N⟩ = N!, the only element in reach
        out.corr.push(nf * rho[b * d + a].re);
    }
    out
}

/// ⟨a_L†ᴺ a_Rᴺ⟩(t) for an initial NOON state evolving under one channel's
/// master equation, with the Hamiltonian off unless `ham` is given.
///
/// The step is halved until halving again moves no sample by more than
/// 1e-6 relative to N!/2.
pub fn lindblad_decay(
    channel: Channel,
    n: usize,
    rate: f64,
    times: &[f64],
    ham: Option<HamiltonianRates>,
) -> Result<LindbladTrace> {
    if n == 0 || n > MAX_N {
        return Err(invalid(format!("oracle handles 1 <= N <= {MAX_N}, got {n}")));
    }
    non_negative("rate", rate)?;
    if times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|&t| !(t >= 0.0)) {
        return Err(invalid("time grid must be non-negative and increasing"));
    }
    let g = generator(channel, n, rate, ham);
    let scale = g.loss.iter().cloned().fold(0.0, f64::max)
        + g.dephase.as_ref().map_or(0.0, |(r, _)| 4.0 * r * (n * n) as f64)
        + ham.map_or(0.0, |h| (h.tunnelling.abs() + h.interaction.abs()) * (n * n) as f64);
    let t_end = times.last().copied().unwrap_or(0.0);
    let mut dt = if scale > 0.0 { 0.1 / scale } else { t_end.max(1.0) };
    let nf2 = factorial(n as u32) as f64 / 2.0;
    let mut prev = run(&g, n, times, dt);
    for _ in 0..16 {
        let next = run(&g, n, times, 0.5 * dt);
        let change = prev.corr.iter().zip(&next.corr).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / nf2;
        dt *= 0.5;
        prev = next;
        if change < 1e-6 {
            return Ok(LindbladTrace {
                times: times.to_vec(),
                correlation: prev.corr,
                dt,
                trace_error: prev.trace_error,
                hermiticity_error: prev.hermiticity_error,
            });
        }
    }
    Err(Error::Numerical("master-equation step did not settle after 16 halvings".into()))
}

/// Least-squares slope of −ln C(t): the fitted decay exponent (s⁻¹).
pub fn fit_decay_exponent(times: &[f64], values: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = times.iter().zip(values).filter(|(_, &v)| v > 0.0).map(|(&t, &v)| (t, v.ln())).collect();
    if pts.len() < 2 {
        return Err(invalid("need at least two positive samples to fit"));
    }
    let n = pts.len() as f64;
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(t, y)| (a + t, b + y));
    let (mt, my) = (st / n, sy / n);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), &(t, y)| (a + (t - mt) * (y - my), b + (t - mt) * (t - mt)));
    if den == 0.0 {
        return Err(invalid("time samples are all equal"));
    }
    Ok(-num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(t_end: f64, k: usize) -> Vec<f64> {
        (0..=k).map(|i| t_end * i as f64 / k as f64).collect()
    }

    #[test]
    fn no_dissipation_keeps_correlation() {
        let tr = lindblad_decay(Channel::Foreign, 4, 0.0, &grid(1.0, 4), None).unwrap();
        assert!(tr.correlation.iter().all(|&c| c == 12.0));
    }

    #[test]
    fn exact_exponents() {
        // what the stated master equations produce for an exact NOON state
        for n in 2..=MAX_N {
            let nf = n as f64;
            for (ch, want) in [
                (Channel::Foreign, nf),
                (Channel::Thermal, 4.0 * nf * nf),
                (Channel::ThreeBody, nf * (nf - 1.0) * (nf - 2.0)),
            ] {
                let times = grid(if want > 0.0 { 2.0 / want } else { 1.0 }, 10);
                let tr = lindblad_decay(ch, n, 1.0, &times, None).unwrap();
                if want == 0.0 {
                    assert!((tr.correlation[10] - factorial(n as u32) as f64 / 2.0).abs() < 1e-9);
                    continue;
                }
                let fit = fit_decay_exponent(&tr.times, &tr.correlation).unwrap();
                assert!((fit / want - 1.0).abs() < 1e-6, "{ch:?} N={n}: {fit} vs {want}");
                assert!(tr.trace_error < 1e-8 && tr.hermiticity_error < 1e-10);
            }
        }
    }

    #[test]
    fn hamiltonian_keeps_invariants() {
        let h = HamiltonianRates { tunnelling: 0.3, interaction: -1.0 };
        let tr = lindblad_decay(Channel::Foreign, 3, 0.5, &grid(1.0, 5), Some(h)).unwrap();
        assert!(tr.trace_error < 1e-8);
        assert!(tr.hermiticity_error < 1e-10);
    }

    #[test]
    fn rejects_large_n() {
        assert!(lindblad_decay(Channel::Foreign, 7, 1.0, &[0.0], None).is_err());
    }
}
