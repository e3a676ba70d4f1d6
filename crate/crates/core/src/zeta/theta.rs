//! The Riemann–Siegel theta function
//! `θ(t) = -(t/2) ln π + Im ln Γ(1/4 + it/2)`.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use super::dd::{self, Dd};
use crate::error::{ensure_finite, Result};

/// Below this ordinate θ is evaluated through the shifted log-Gamma
/// function; above it through the Stirling-type expansion of θ itself.
pub const THETA_SWITCH: f64 = 10.0;

/// Number of expansion terms used by [`theta`].
pub const DEFAULT_THETA_ORDER: usize = 7;

const MAX_THETA_ORDER: usize = 10;

/// |B_2k| for k = 1..=11.
const BERNOULLI_ABS: [f64; 11] = [
    1.0 / 6.0,
    1.0 / 30.0,
    1.0 / 42.0,
    1.0 / 30.0,
    5.0 / 66.0,
    691.0 / 2730.0,
    7.0 / 6.0,
    3617.0 / 510.0,
    43867.0 / 798.0,
    174611.0 / 330.0,
    854513.0 / 138.0,
];

/// B_2k with sign, k = 1..=9, for the complex Stirling series.
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

const U: f64 = f64::EPSILON * 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub t: f64,
    pub value: f64,
    pub abs_err_bound: f64,
}

/// Coefficient of `t^{1-2k}` in the expansion of θ: `(1 - 2^{1-2k}) |B_2k| / (4k(2k-1))`.
fn theta_coeff(k: usize) -> f64 {
    let kf = k as f64;
    (1.0 - 2f64.powi(1 - 2 * k as i32)) * BERNOULLI_ABS[k - 1] / (4.0 * kf * (2.0 * kf - 1.0))
}

pub fn theta(t: f64) -> Result<ThetaValue> {
    theta_with_order(t, DEFAULT_THETA_ORDER)
}

/// θ(t) using `order` correction terms of the asymptotic expansion (for
/// `t >= 10`). Below the switch point the order is ignored.
pub fn theta_with_order(t: f64, order: usize) -> Result<ThetaValue> {
    ensure_finite("t", t)?;
    if t < 0.0 {
        return Err(crate::error::domain(format!("theta requires t >= 0, got {t}")));
    }
    let (value, abs_err_bound) = if t >= THETA_SWITCH {
        theta_asymptotic(t, order.clamp(1, MAX_THETA_ORDER))
    } else {
        theta_log_gamma(t)
    };
    Ok(ThetaValue { t, value, abs_err_bound })
}

fn theta_asymptotic_dd(t: f64, order: usize) -> Dd {
    let r = 1.0 / t;
    let r2 = r * r;
    let mut s = 0.0;
    for k in (1..=order).rev() {
        s = s * r2 + theta_coeff(k);
    }
    // exponentially small term missed by the power series
    let tiny = 0.5 * (-PI * t).exp().atan();
    let x = Dd::from_f64(t).div(dd::TAU);
    let main = x.ln().mul_f64(0.5 * t);
    main - Dd::from_f64(0.5 * t) - dd::PI_8 + Dd::from_f64(s * r + tiny)
}

/// θ(t) in double-double for the Riemann–Siegel phases. `t >= THETA_SWITCH`.
#[inline]
pub(crate) fn theta_dd(t: f64) -> Dd {
    theta_asymptotic_dd(t, DEFAULT_THETA_ORDER)
}

fn theta_asymptotic(t: f64, order: usize) -> (f64, f64) {
    let value = theta_asymptotic_dd(t, order);
    // First omitted term (doubled) plus the final rounding to f64, which
    // alone exceeds 1e-10 once |θ| > ~9e5 (t > ~1.7e5).
    let next = theta_coeff(order + 1) * t.powi(-(2 * order as i32 + 1));
    (value.hi + value.lo, 2.0 * next + U * value.hi.abs() + 1e-15 / t)
}

/// Im ln Γ(1/4 + it/2) by upward shift to |z| >= 10 and Stirling's series,
/// minus the phase term `(t/2) ln π`.
fn theta_log_gamma(t: f64) -> (f64, f64) {
    const SHIFT: usize = 10;
    let w = Complex64::new(0.25, 0.5 * t);
    let mut arg_sum = 0.0;
    for k in 0..SHIFT {
        let zk = w + k as f64;
        arg_sum += zk.im.atan2(zk.re);
    }
    let z = w + SHIFT as f64;
    let mut series = Complex64::new(0.0, 0.0);
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut pow = zinv;
    for (k, b) in BERNOULLI.iter().enumerate().take(8) {
        let kf = (k + 1) as f64;
        series += pow * (*b / (2.0 * kf * (2.0 * kf - 1.0)));
        pow *= zinv2;
    }
    let lng = (z - 0.5) * z.ln() - z + 0.5 * TAU.ln() + series;
    let value = lng.im - arg_sum - 0.5 * t * PI.ln();
    // Next Stirling term at |z| >= 10.25 with arg z < π/4.
    let next = BERNOULLI[8].abs() / (18.0 * 17.0) * pow.norm() * 2.0;
    (value, next + 64.0 * U * (1.0 + value.abs()))
}
