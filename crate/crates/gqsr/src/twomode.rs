//! Two-mode Fock space {|n, N−n⟩ : n = 0..N} for a fixed total N: the
//! Bose-Hubbard Hamiltonian, NOON states and N-particle correlations.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub const MAX_N: usize = 64;

/// n! for n ≤ 20 (the largest that fits in a u64).
pub fn factorial(n: u32) -> u64 {
    assert!(n <= 20, "{n}! overflows u64; use ln_factorial");
    (1..=n as u64).product()
}

pub fn ln_factorial(n: u32) -> f64 {
    if n <= 20 {
        (factorial(n) as f64).ln()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// ⟨NOON| a_L†ᴺ a_Rᴺ |NOON⟩ = N!/2 in integer arithmetic, 2 ≤ N ≤ 20.
pub fn noon_correlation_exact(n: u32) -> u64 {
    assert!((2..=20).contains(&n));
    factorial(n) / 2
}

/// E_LR (a_L†a_R + a_R†a_L) + ½U (a_L†²a_L² + a_R†²a_R²), energies in J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoseHubbardParams {
    pub e_lr: f64,
    pub u: f64,
}

/// Full two-mode Hamiltonian before the tight-binding reduction. Overlap
/// collision terms default to zero, which with ξ_L = ξ_R, U_L = U_R = U/2
/// and J_LR = E_LR reproduces [`BoseHubbardParams`] up to a multiple of N̂.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ExtendedParams {
    pub xi_l: f64,
    pub xi_r: f64,
    pub j_lr: f64,
    pub u_l: f64,
    pub u_r: f64,
    pub u_lrlr: f64,
    pub u_lllr: f64,
    pub u_rrrl: f64,
    pub u_llrr: f64,
}

impl From<BoseHubbardParams> for ExtendedParams {
    fn from(p: BoseHubbardParams) -> Self {
        Self { j_lr: p.e_lr, u_l: 0.5 * p.u, u_r: 0.5 * p.u, ..Self::default() }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        Err(invalid(format!("two-mode engine handles 1 <= N <= {MAX_N}, got {n}")))
    } else {
        Ok(())
    }
}

/// Real symmetric (N+1)×(N+1) matrix in the basis |n, N−n⟩ indexed by n.
pub fn build_hamiltonian(p: &BoseHubbardParams, n: usize) -> Result<DMatrix<f64>> {
    check_n(n)?;
    let mut h = DMatrix::zeros(n + 1, n + 1);
    for l in 0..=n {
        let r = n - l;
        h[(l, l)] = 0.5 * p.u * (l * l.saturating_sub(1) + r * r.saturating_sub(1)) as f64;
        if l < n {
            // ⟨l+1| a_L† a_R |l⟩
            let t = p.e_lr * (((l + 1) * r) as f64).sqrt();
            h[(l + 1, l)] = t;
            h[(l, l + 1)] = t;
        }
    }
    Ok(h)
}

/// Extended Hamiltonian including the overlap collision terms.
pub fn build_extended_hamiltonian(p: &ExtendedParams, n: usize) -> Result<DMatrix<f64>> {
    check_n(n)?;
    let mut h = DMatrix::zeros(n + 1, n + 1);
    let mut add = |to: usize, from: usize, v: f64| {
        h[(to, from)] += v;
        if to != from {
            h[(from, to)] += v;
        }
    };
    for l in 0..=n {
        let r = n - l;
        let (lf, rf) = (l as f64, r as f64);
        add(
            l,
            l,
            p.xi_l * lf
                + p.xi_r * rf
                + p.u_l * lf * (lf - 1.0).max(0.0)
                + p.u_r * rf * (rf - 1.0).max(0.0)
                + 4.0 * p.u_lrlr * lf * rf,
        );
        if l < n {
            add(l + 1, l, p.j_lr * ((lf + 1.0) * rf).sqrt());
            // a_L†² a_L a_R |l, r⟩ = l √(r(l+1)) |l+1, r−1⟩
            add(l + 1, l, 2.0 * p.u_lllr * lf * (rf * (lf + 1.0)).sqrt());
            // a_R†² a_R a_L |l+1, r−1⟩ = (r−1) √((l+1) r) |l, r⟩
            add(l, l + 1, 2.0 * p.u_rrrl * (rf - 1.0).max(0.0) * ((lf + 1.0) * rf).sqrt());
        }
        if l + 2 <= n {
            // a_L†² a_R² |l, r⟩ = √(r(r−1)(l+1)(l+2)) |l+2, r−2⟩
            add(l + 2, l, p.u_llrr * (rf * (rf - 1.0) * (lf + 1.0) * (lf + 2.0)).sqrt());
        }
    }
    Ok(h)
}

/// Amplitudes over |n, N−n⟩, n = 0..N.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    pub n: usize,
    pub amps: DVector<Complex<f64>>,
}

impl TwoModeState {
    pub fn new(n: usize, amps: DVector<Complex<f64>>) -> Result<Self> {
        if amps.len() != n + 1 {
            return Err(invalid(format!("need {} amplitudes for N = {n}, got {}", n + 1, amps.len())));
        }
        let norm = amps.norm();
        if !(norm > 0.0) {
            return Err(invalid("state has zero norm"));
        }
        Ok(Self { n, amps: amps / Complex::new(norm, 0.0) })
    }

    pub fn from_real(n: usize, v: &DVector<f64>) -> Result<Self> {
        Self::new(n, v.map(|x| Complex::new(x, 0.0)))
    }

    /// Fock state |l, N−l⟩.
    pub fn fock(n: usize, l: usize) -> Result<Self> {
        let mut v = DVector::zeros(n + 1);
        *v.get_mut(l).ok_or_else(|| invalid("occupation exceeds N"))? = Complex::new(1.0, 0.0);
        Self::new(n, v)
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn overlap(&self, other: &Self) -> Complex<f64> {
        self.amps.dotc(&other.amps)
    }
}

/// (|N0⟩ + |0N⟩)/√2.
pub fn noon_state(n: usize) -> Result<TwoModeState> {
    check_n(n)?;
    let mut v = DVector::zeros(n + 1);
    let s = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = s;
    v[n] = s;
    Ok(TwoModeState { n, amps: v })
}

/// Re ⟨a_L†ᴺ a_Rᴺ⟩ = N! Re(c_N* c_0) / ‖c‖².
pub fn n_particle_correlation(state: &TwoModeState) -> f64 {
    let n = state.n;
    let c = &state.amps;
    let w = (c[n].conj() * c[0]).re / c.norm_squared();
    factorial_f64(n) * w
}

/// Same for a density matrix ρ over |n, N−n⟩: N! Re ρ_{0N}.
pub fn n_particle_correlation_density(rho: &DMatrix<Complex<f64>>) -> Result<f64> {
    let n = rho.nrows().checked_sub(1).ok_or_else(|| invalid("empty density matrix"))?;
    if rho.ncols() != n + 1 {
        return Err(invalid("density matrix must be square"));
    }
    let tr: Complex<f64> = rho.trace();
    Ok(factorial_f64(n) * (rho[(0, n)] / tr).re)
}

fn factorial_f64(n: usize) -> f64 {
    if n <= 20 {
        factorial(n as u32) as f64
    } else {
        ln_factorial(n as u32).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Lowest eigenstate, for U < 0.
    Ground,
    /// Highest eigenstate, for U > 0.
    Highest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelity {
    pub fidelity: f64,
    /// The extremal pair is degenerate and the projection onto their span was used.
    pub degenerate: bool,
    /// Gap between the two extremal eigenvalues (J).
    pub gap: f64,
}

/// Relative gap below which the extremal pair counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// |⟨NOON|ψ⟩|² for the extremal eigenstate on the chosen branch.
pub fn ground_state_fidelity_with_noon(p: &BoseHubbardParams, n: usize, branch: Branch) -> Result<Fidelity> {
    let h = build_hamiltonian(p, n)?;
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    if branch == Branch::Highest {
        order.reverse();
    }
    if !eig.eigenvalues.iter().all(|x| x.is_finite()) {
        return Err(Error::Numerical("eigensolver returned non-finite values".into()));
    }
    let noon = noon_state(n)?;
    let proj = |k: usize| {
        let v = eig.eigenvectors.column(k);
        let s: f64 = (0..=n).map(|i| v[i] * noon.amps[i].re).sum();
        s * s
    };
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let gap = if n >= 1 { (eig.eigenvalues[order[1]] - eig.eigenvalues[order[0]]).abs() } else { f64::INFINITY };
    let degenerate = gap < DEGENERACY_TOL * scale;
    let fidelity = if degenerate { proj(order[0]) + proj(order[1]) } else { proj(order[0]) };
    Ok(Fidelity { fidelity: fidelity.min(1.0), degenerate, gap })
}

/// Extremal eigenstate itself (no degeneracy handling).
pub fn extremal_state(p: &BoseHubbardParams, n: usize, branch: Branch) -> Result<TwoModeState> {
    let eig = SymmetricEigen::new(build_hamiltonian(p, n)?);
    let pick = (0..=n)
        .reduce(|a, b| {
            let better = match branch {
                Branch::Ground => eig.eigenvalues[b] < eig.eigenvalues[a],
                Branch::Highest => eig.eigenvalues[b] > eig.eigenvalues[a],
            };
            if better {
                b
            } else {
                a
            }
        })
        .unwrap_or(0);
    TwoModeState::from_real(n, &eig.eigenvectors.column(pick).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_atom_matrix() {
        let h = build_hamiltonian(&BoseHubbardParams { e_lr: 0.7, u: 5.0 }, 1).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[0.0, 0.7, 0.7, 0.0]));
    }

    #[test]
    fn no_tunnelling_is_diagonal_and_symmetric() {
        let h = build_hamiltonian(&BoseHubbardParams { e_lr: 0.0, u: -1.0 }, 6).unwrap();
        assert!((0..7).all(|i| (0..7).all(|j| i == j || h[(i, j)] == 0.0)));
        let h = build_hamiltonian(&BoseHubbardParams { e_lr: 1.3, u: -0.4 }, 9).unwrap();
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn extended_reduces_to_bose_hubbard() {
        let p = BoseHubbardParams { e_lr: 0.9, u: -2.0 };
        let a = build_hamiltonian(&p, 7).unwrap();
        let b = build_extended_hamiltonian(&p.into(), 7).unwrap();
        assert!((a - b).abs().max() < 1e-14);
        let q = ExtendedParams { u_lllr: 0.2, u_rrrl: -0.1, u_llrr: 0.3, u_lrlr: 0.05, ..p.into() };
        let h = build_extended_hamiltonian(&q, 7).unwrap();
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn noon_correlations() {
        for n in 2..=20u32 {
            let c = n_particle_correlation(&noon_state(n as usize).unwrap());
            assert_eq!(c, noon_correlation_exact(n) as f64, "N={n}");
        }
        assert_eq!(n_particle_correlation(&TwoModeState::fock(5, 5).unwrap()), 0.0);
        // equal mixture of |N0⟩ and |0N⟩
        let mut rho = DMatrix::zeros(5, 5);
        rho[(0, 0)] = Complex::new(0.5, 0.0);
        rho[(4, 4)] = Complex::new(0.5, 0.0);
        assert_eq!(n_particle_correlation_density(&rho).unwrap(), 0.0);
        let s = noon_state(4).unwrap();
        let pure = &s.amps * s.amps.adjoint();
        assert_eq!(n_particle_correlation_density(&pure).unwrap(), 12.0);
    }

    #[test]
    fn noon_basics() {
        let s = noon_state(2).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let half = TwoModeState::fock(4, 2).unwrap();
        assert_eq!(noon_state(4).unwrap().overlap(&half).norm(), 0.0);
    }

    #[test]
    fn attractive_ground_state_is_noon() {
        let f = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u: -1e4 }, 8, Branch::Ground).unwrap();
        assert!(f.fidelity > 0.99, "{f:?}");
        assert!(f.degenerate);
    }

    #[test]
    fn ideal_gas_ground_state_is_binomial() {
        // U = 0: all atoms in the antisymmetric mode, amplitude √(C(N,l))/2^{N/2}
        let n = 8;
        let f = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u: 0.0 }, n, Branch::Ground).unwrap();
        assert!(!f.degenerate);
        assert!((f.fidelity - 2.0 * (0.5f64).powi(n as i32)).abs() < 1e-12, "{f:?}");
    }

    #[test]
    fn repulsive_mirrors_attractive() {
        let a = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u: -50.0 }, 6, Branch::Ground).unwrap();
        let r = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: -1.0, u: 50.0 }, 6, Branch::Highest).unwrap();
        assert!((a.fidelity - r.fidelity).abs() < 1e-12);
    }
}
