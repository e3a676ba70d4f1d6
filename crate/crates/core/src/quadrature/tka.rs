//! Numerical check of the truncated Titchmarsh–Kober–Atkinson formula
//!
//! ```text
//!   ∫_0^{μ(1/δ)} Z² e^{-2δt} dt = (1/2δ) ln(1/δ) + D/(2δ) + c₀ + O(δ ln(1/δ))
//! ```
//!
//! with μ(y) = 7 y ln y.

use serde::Serialize;

use super::table::CumulativeTable;
use super::weighted::weighted_integral_to;
use crate::constants::Constants;
use crate::error::{domain, ensure_finite, Result};
use crate::ladder::MIN_K;

/// Largest δ accepted by the check.
pub const DELTA0: f64 = 1.0 / 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TkaCheck {
    pub delta: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs − rhs.
    pub residual: f64,
    /// residual / (δ ln(1/δ)).
    pub scaled: f64,
}

pub fn tka_truncated_check(delta: f64, table: &CumulativeTable, k: &Constants) -> Result<TkaCheck> {
    ensure_finite("delta", delta)?;
    if !(delta > 0.0 && delta <= DELTA0) {
        return Err(domain(format!("delta must lie in (0, {DELTA0}], got {delta}")));
    }
    let c0 = k.c0()?;
    let y = 1.0 / delta;
    let lhs = weighted_integral_to(y, MIN_K * y * y.ln(), table)?.value;
    let rhs = 0.5 * y * y.ln() + k.d * 0.5 * y + c0;
    let residual = lhs - rhs;
    Ok(TkaCheck { delta, lhs, rhs, residual, scaled: residual / (delta * y.ln()) })
}
