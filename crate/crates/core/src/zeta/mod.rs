//! Evaluation of θ(t), Z(t) = e^{iθ(t)} ζ(1/2 + it) and Z²(t), and
//! localisation of the zeros of ζ on the critical line.
//!
//! For `t >= RS_SWITCH` Z is the Riemann–Siegel main sum plus up to four
//! correction terms; the truncation error follows Gabcke's bounds
//! `|R_k| <= g_k t^{-(2k+3)/4}` and a statistical model of phase rounding is
//! added. Below the switch, ζ(1/2+it) comes from the accelerated alternating
//! series with an explicit truncation bound.

mod alternating;
mod dd;
mod riemann_siegel;
#[rustfmt::skip]
mod rs_coeffs;
mod theta;
mod zeros;

pub use theta::{theta, theta_with_order, ThetaValue, DEFAULT_THETA_ORDER, THETA_SWITCH};
pub use zeros::{find_zeros, find_zeros_with_tol, zero_count_check, CountCheck, ZeroRecord, Z_TOL};

use num_complex::Complex64;

use crate::error::{domain, ensure_finite, Result};

/// Ordinate above which the Riemann–Siegel formula is used.
pub const RS_SWITCH: f64 = 200.0;

/// Default evaluation order: number of Riemann–Siegel correction terms.
pub const DEFAULT_Z_ORDER: usize = riemann_siegel::MAX_CORRECTIONS;

/// Target truncation error of the small-t alternating series.
const ALTERNATING_TARGET: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZValue {
    pub t: f64,
    pub value: f64,
    pub abs_err_bound: f64,
}

impl ZValue {
    pub fn squared(&self) -> f64 {
        self.value * self.value
    }
}

pub fn z(t: f64) -> Result<ZValue> {
    z_with_order(t, DEFAULT_Z_ORDER)
}

/// Z(t) at a chosen evaluation order.
///
/// Above [`RS_SWITCH`], `order` is the number of Riemann–Siegel correction
/// terms (capped at 4). Below it, `order` adds `8 * order` terms to the
/// alternating series beyond the minimum its truncation bound requires.
pub fn z_with_order(t: f64, order: usize) -> Result<ZValue> {
    ensure_finite("t", t)?;
    if t < 0.0 {
        return Err(domain(format!("Z requires t >= 0, got {t}")));
    }
    let (value, abs_err_bound) = if t >= RS_SWITCH {
        riemann_siegel::z_rs(t, order)
    } else {
        let extra = 8 * order.min(DEFAULT_Z_ORDER);
        z_small(t, extra)
    };
    Ok(ZValue { t, value, abs_err_bound })
}

/// Z²(t).
pub fn z_squared(t: f64) -> Result<f64> {
    z(t).map(|v| v.squared())
}

/// Unchecked Z(t) for the quadrature kernels. `t` must be finite and >= 0.
#[inline]
pub(crate) fn z_fast(t: f64) -> f64 {
    if t >= RS_SWITCH {
        riemann_siegel::z_rs(t, DEFAULT_Z_ORDER).0
    } else {
        z_small(t, 8 * DEFAULT_Z_ORDER).0
    }
}

fn z_small(t: f64, extra_terms: usize) -> (f64, f64) {
    let n = alternating::terms_for(t, ALTERNATING_TARGET) + extra_terms;
    let (zeta, zeta_err) = alternating::zeta_half_line(t, n);
    let th = theta_with_order(t, DEFAULT_THETA_ORDER).expect("finite non-negative t");
    let rotated = Complex64::from_polar(1.0, th.value) * zeta;
    let bound = zeta_err + th.abs_err_bound * zeta.norm() + 4.0 * f64::EPSILON * zeta.norm();
    (rotated.re, bound)
}
