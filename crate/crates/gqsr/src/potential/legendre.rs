//! Legendre polynomials P₂, P₄ and the functions of the second kind Q₀, Q₂,
//! Q₄, in the prolate (x > 1) and oblate (ξ ≥ 0, argument iξ) variants.
//!
//! Q₂ and Q₄ lose most of their digits to cancellation for large arguments,
//! so above [`SERIES_FROM`] they are summed from their hypergeometric series.

pub const SERIES_FROM: f64 = 1.5;

pub fn p2(x: f64) -> f64 {
    0.5 * (3.0 * x * x - 1.0)
}

pub fn p4(x: f64) -> f64 {
    let x2 = x * x;
    (3.0 - 30.0 * x2 + 35.0 * x2 * x2) / 8.0
}

/// ½ ln((x+1)/(x−1)), x > 1.
pub fn q0(x: f64) -> f64 {
    0.5 * (2.0 / (x - 1.0)).ln_1p()
}

pub fn q2(x: f64) -> f64 {
    if x > SERIES_FROM {
        q_series(2, x, 1.0)
    } else {
        p2(x) * q0(x) - 1.5 * x
    }
}

pub fn q4(x: f64) -> f64 {
    if x > SERIES_FROM {
        q_series(4, x, 1.0)
    } else {
        x * (110.0 - 210.0 * x * x) / 48.0 + p4(x) * q0(x)
    }
}

/// Oblate counterpart of Q₀: acot ξ.
pub fn q0_oblate(xi: f64) -> f64 {
    (1.0 / xi).atan()
}

/// ((3ξ²+1) acot ξ − 3ξ)/2.
pub fn q2_oblate(xi: f64) -> f64 {
    if xi > SERIES_FROM {
        q_series(2, xi, -1.0)
    } else {
        0.5 * ((3.0 * xi * xi + 1.0) * q0_oblate(xi) - 3.0 * xi)
    }
}

/// P₄(iξ) acot ξ − ξ(110 + 210ξ²)/48.
pub fn q4_oblate(xi: f64) -> f64 {
    if xi > SERIES_FROM {
        q_series(4, xi, -1.0)
    } else {
        let x2 = xi * xi;
        (3.0 + 30.0 * x2 + 35.0 * x2 * x2) / 8.0 * q0_oblate(xi) - xi * (110.0 + 210.0 * x2) / 48.0
    }
}

// √π n!/Γ(n+3/2) for n = 0, 2, 4
fn q_prefactor(n: u32) -> f64 {
    match n {
        0 => 2.0,
        2 => 16.0 / 15.0,
        4 => 256.0 / 315.0,
        _ => unreachable!("only even n ≤ 4 are used"),
    }
}

/// Q_n(x) = √π n!/(Γ(n+3/2)(2x)^{n+1}) ₂F₁((n+1)/2, (n+2)/2; n+3/2; s/x²),
/// with s = 1 for the prolate functions and s = −1 for the oblate ones.
fn q_series(n: u32, x: f64, sign: f64) -> f64 {
    let (a, b, c) = (0.5 * (n as f64 + 1.0), 0.5 * (n as f64 + 2.0), n as f64 + 1.5);
    let z = sign / (x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..400 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    q_prefactor(n) / (2.0 * x).powi(n as i32 + 1) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_at_two() {
        assert!((q0(2.0) - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert!((q0(2.0) - 0.549_306).abs() < 1e-6);
    }

    #[test]
    fn series_matches_closed_forms_at_switch() {
        for &x in &[1.2, 1.5, 1.7, 2.0] {
            let d2 = p2(x) * q0(x) - 1.5 * x;
            let d4 = x * (110.0 - 210.0 * x * x) / 48.0 + p4(x) * q0(x);
            assert!((q_series(2, x, 1.0) / d2 - 1.0).abs() < 1e-11, "{x}");
            assert!((q_series(4, x, 1.0) / d4 - 1.0).abs() < 1e-9, "{x}");
            assert!((q_series(0, x, 1.0) / q0(x) - 1.0).abs() < 1e-13);
            let o2 = 0.5 * ((3.0 * x * x + 1.0) * q0_oblate(x) - 3.0 * x);
            assert!((q_series(2, x, -1.0) / o2 - 1.0).abs() < 1e-11, "{x}");
            assert!((q_series(0, x, -1.0) / q0_oblate(x) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn legendre_equation_residual() {
        // (1−x²)y'' − 2xy' + n(n+1)y = 0
        let h = 1e-4;
        for (n, f) in [(2.0, q2 as fn(f64) -> f64), (4.0, q4)] {
            for &x in &[1.3, 2.5, 6.0] {
                let (y0, yp, ym) = (f(x), f(x + h), f(x - h));
                let d1 = (yp - ym) / (2.0 * h);
                let d2 = (yp - 2.0 * y0 + ym) / (h * h);
                let res = (1.0 - x * x) * d2 - 2.0 * x * d1 + n * (n + 1.0) * y0;
                assert!(res.abs() < 1e-5 * (d2.abs() * x * x + y0.abs() * 20.0), "n={n} x={x} res={res}");
            }
        }
    }

    #[test]
    fn q4_decays_like_x_minus_five() {
        let x = 1e3;
        assert!((q4(x) * (2.0 * x).powi(5) / (256.0 / 315.0) - 1.0).abs() < 1e-5);
        assert!(q4_oblate(x) > 0.0 && q2_oblate(x) > 0.0);
    }
}
