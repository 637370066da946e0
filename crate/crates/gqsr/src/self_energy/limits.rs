//! Leading-order formulas for extreme spheroids (ε ≪ 1).
//!
//! Each curve has a near branch (overlapping bodies) and a far branch,
//! meeting where the displaced copies just touch. The far branches contain
//! logarithms that cancel badly once λ is a few units, so from
//! [`SERIES_FROM`] on they are replaced by their exact expansions in 1/λ.

use std::f64::consts::{LN_2, PI};

use super::{Method, SelfEnergyResult};
use crate::error::{non_negative, positive, Error, Result};
use crate::geometry::{ConfigLabel, SuperpositionConfig};

/// λ (or β) from which the far branches use their 1/λ series.
pub const SERIES_FROM: f64 = 3.0;

// odd powers x¹, x³, …, x³¹ with x = 1/λ
const UNIFORM_PROLATE: [f64; 16] = [
    -5.0 / 12.0,
    -1.0 / 24.0,
    -3.0 / 280.0,
    -1.0 / 252.0,
    -5.0 / 2772.0,
    -15.0 / 16016.0,
    -1.0 / 1872.0,
    -1.0 / 3060.0,
    -3.0 / 14212.0,
    -5.0 / 35112.0,
    -5.0 / 50232.0,
    -3.0 / 41860.0,
    -1.0 / 18900.0,
    -1.0 / 25056.0,
    -15.0 / 489056.0,
    -5.0 / 208692.0,
];

const TF_PROLATE: [f64; 16] = [
    -7.0 / 20.0,
    -1.0 / 40.0,
    -1.0 / 210.0,
    -5.0 / 3696.0,
    -5.0 / 10296.0,
    -7.0 / 34320.0,
    -7.0 / 72930.0,
    -7.0 / 142120.0,
    -5.0 / 184756.0,
    -5.0 / 318136.0,
    -1.0 / 104650.0,
    -1.0 / 165600.0,
    -7.0 / 1774800.0,
    -35.0 / 13204512.0,
    -35.0 / 19164882.0,
    -1.0 / 777480.0,
];

fn odd_series(c0: f64, coeffs: &[f64; 16], x: f64, alternate: bool) -> f64 {
    let x2 = x * x;
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate().rev() {
        let c = if alternate && k % 2 == 1 { -c } else { c };
        acc = acc * x2 + c;
    }
    c0 + x * acc
}

// (λ−1)^k·ln(2λ−2) with its zero limit at λ = 1
fn xlog(x: f64, arg: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * arg.ln()
    }
}

/// Uniform prolate, displacement along the axis, λ = b/(2c) ≤ 1,
/// in units of 6GM²/(5c).
pub fn uniform_prolate_b_near(lambda: f64, eps: f64) -> f64 {
    let l = lambda;
    let l2 = l * l;
    let b = 5.0 * l2 - 5.0 * l2 * l + l2 * l2 * l;
    -b * eps.ln() + 5.0 * l2 * LN_2 - l2 * (3.0 * l2 * l - 10.0 * l + 20.0) / 4.0
}

/// Far branch of [`uniform_prolate_b_near`], λ ≥ 1.
pub fn uniform_prolate_b_far(lambda: f64, eps: f64) -> f64 {
    let l = lambda;
    let f = if l >= SERIES_FROM {
        odd_series(LN_2, &UNIFORM_PROLATE, 1.0 / l, false)
    } else {
        let l2 = l * l;
        let x = (l - 1.0).powi(3) * (l2 + 3.0 * l + 1.0);
        let y = (l + 1.0).powi(3) * (l2 - 3.0 * l + 1.0);
        LN_2 * (l2 * l2 * l - 5.0 * l2 * l + 1.0) + l2 * l * (l2 - 5.0) * l.ln()
            - 0.5 * xlog(x, 2.0 * l - 2.0)
            - 0.5 * y * (2.0 * l + 2.0).ln()
            - l * (2.0 * l2 + 11.0) / 4.0
    };
    f - eps.ln()
}

/// Thomas-Fermi prolate along the axis, λ = b/(2c) ≤ 1, in units of 10GM²/(7c).
pub fn tf_prolate_b_near(lambda: f64, eps: f64) -> f64 {
    let l = lambda;
    let l2 = l * l;
    let l4 = l2 * l2;
    let bt = 6.0 * l2 - 21.0 * l4 + 21.0 * l4 * l - 6.0 * l4 * l2 * l + l4 * l4 * l;
    let poly = 25.0 * l4 * l2 * l - 132.0 * l4 * l + 378.0 * l2 * l - 672.0 * l2 + 144.0;
    -bt * eps.ln() + (6.0 * l2 - 21.0 * l4) * LN_2 - l2 * poly / 24.0
}

/// Far branch of [`tf_prolate_b_near`], λ ≥ 1.
pub fn tf_prolate_b_far(lambda: f64, eps: f64) -> f64 {
    let l = lambda;
    let f = if l >= SERIES_FROM {
        odd_series(LN_2, &TF_PROLATE, 1.0 / l, false)
    } else {
        let l2 = l * l;
        let l4 = l2 * l2;
        let (l5, l7, l9) = (l4 * l, l4 * l2 * l, l4 * l4 * l);
        let xt = l9 - 6.0 * l7 + 21.0 * l5 - 21.0 * l4 + 6.0 * l2 - 1.0;
        let yt = l9 - 6.0 * l7 + 21.0 * l5 + 21.0 * l4 - 6.0 * l2 + 1.0;
        let xt = if l == 1.0 { 0.0 } else { xt };
        LN_2 * (l9 - 6.0 * l7 + 21.0 * l5 + 1.0) + l5 * (l4 - 6.0 * l2 + 21.0) * l.ln()
            - 0.5 * xlog(xt, 2.0 * l - 2.0)
            - 0.5 * yt * (2.0 * l + 2.0).ln()
            - l * (12.0 * l4 * l2 - 66.0 * l4 - 284.0 * l2 + 81.0) / 24.0
    };
    f - eps.ln()
}

/// Uniform oblate along the axis, β = b/(2a) ≤ ε, in units of 6GM²/(5a).
pub fn oblate_a_near(beta: f64, eps: f64) -> f64 {
    let b = beta;
    5.0 * b * b * (1.0 / eps - PI / 2.0) - 2.5 * b.powi(3) / (eps * eps) + b.powi(5) / (4.0 * eps.powi(4))
}

/// Far branch of [`oblate_a_near`], β ≥ ε.
pub fn oblate_a_far(beta: f64, eps: f64) -> f64 {
    let b = beta;
    let c4 = if b >= SERIES_FROM {
        odd_series(PI / 2.0, &UNIFORM_PROLATE, 1.0 / b, true)
    } else {
        let b2 = b * b;
        (2.0 * PI + 11.0 * b - 2.0 * b2 * b - 4.0 * (1.0 + 5.0 * b2) * (1.0 / b).atan()
            + 2.0 * b2 * b * (5.0 + b2) * (1.0 / b2).ln_1p())
            / 4.0
    };
    c4 - eps
}

fn method_for(x: f64, seam: f64) -> Method {
    if x > seam && x >= SERIES_FROM {
        Method::Series
    } else {
        Method::ClosedForm
    }
}

/// Extreme-spheroid E_G for configurations a (oblate, along the axis) and
/// b (prolate, along the axis). Leading order in ε, so meant for ε ≤ 0.1.
pub fn eg_uniform_spheroid_limit(cfg: &SuperpositionConfig, m: f64) -> Result<SelfEnergyResult> {
    positive("mass", m)?;
    let s = cfg.shape;
    let eps = s.epsilon();
    match cfg.label() {
        ConfigLabel::A => {
            let beta = cfg.b / (2.0 * s.a());
            let d = if beta <= eps { oblate_a_near(beta, eps) } else { oblate_a_far(beta, eps) };
            Ok(SelfEnergyResult::from_dimensionless(1.2 * d, m, s.a(), method_for(beta, eps), eps))
        }
        ConfigLabel::B => {
            let lambda = cfg.b / (2.0 * s.c());
            let d = if lambda <= 1.0 { uniform_prolate_b_near(lambda, eps) } else { uniform_prolate_b_far(lambda, eps) };
            Ok(SelfEnergyResult::from_dimensionless(1.2 * d, m, s.c(), method_for(lambda, 1.0), eps))
        }
        other => Err(Error::NotApplicable(format!(
            "no extreme-spheroid formula for configuration {}; use eg_numeric",
            other.as_str()
        ))),
    }
}

/// Extreme Thomas-Fermi prolate displaced along its axis, λ = b/(2c),
/// equatorial radius `a` and axis ratio ε = a/c.
pub fn eg_tf_prolate_limit(lambda: f64, m: f64, a: f64, eps: f64) -> Result<SelfEnergyResult> {
    non_negative("lambda", lambda)?;
    positive("mass", m)?;
    positive("a", a)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid(format!("axis ratio must be in (0, 1), got {eps}")));
    }
    let c = a / eps;
    let d = if lambda <= 1.0 { tf_prolate_b_near(lambda, eps) } else { tf_prolate_b_far(lambda, eps) };
    Ok(SelfEnergyResult::from_dimensionless(10.0 / 7.0 * d, m, c, method_for(lambda, 1.0), eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Axis, Shape};

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn prolate_seams() {
        for eps in [1e-3, 1e-2, 0.1] {
            let u = 5.0 * LN_2 - 13.0 / 4.0 - f64::ln(eps);
            assert!(rel(uniform_prolate_b_near(1.0, eps), u) < 1e-14);
            assert!(rel(uniform_prolate_b_far(1.0, eps), u) < 1e-14);
            let t = -15.0 * LN_2 + 257.0 / 24.0 - f64::ln(eps);
            assert!(rel(tf_prolate_b_near(1.0, eps), t) < 1e-14);
            assert!(rel(tf_prolate_b_far(1.0, eps), t) < 1e-13);
        }
    }

    #[test]
    fn series_switch_is_seamless() {
        let eps = 0.01;
        for (f, tol) in [
            (uniform_prolate_b_far as fn(f64, f64) -> f64, 1e-12),
            (tf_prolate_b_far, 1e-11),
            (oblate_a_far, 1e-12),
        ] {
            let lo = f(SERIES_FROM * (1.0 - 1e-15), eps);
            let hi = f(SERIES_FROM, eps);
            assert!(rel(lo, hi) < tol, "{lo} {hi}");
        }
    }

    #[test]
    fn zero_displacement_is_zero() {
        assert_eq!(uniform_prolate_b_near(0.0, 0.01), 0.0);
        assert_eq!(tf_prolate_b_near(0.0, 0.01), 0.0);
        assert_eq!(oblate_a_near(0.0, 0.01), 0.0);
    }

    #[test]
    fn far_limits_approach_infinite_separation() {
        // ln(2/ε) − ε² terms dropped at leading order
        let eps = 1e-3;
        assert!(rel(uniform_prolate_b_far(1e8, eps), (2.0 / eps).ln()) < 1e-8);
        assert!(rel(oblate_a_far(1e8, eps), PI / 2.0 - eps) < 1e-8);
    }

    #[test]
    fn configs_c_and_d_refused() {
        let s = Shape::spheroid(1.0, 0.01).unwrap();
        let cfg = SuperpositionConfig::new(s, 0.1, Axis::Equatorial).unwrap();
        assert_eq!(eg_uniform_spheroid_limit(&cfg, 1.0).unwrap_err().exit_code(), 1);
    }
}
