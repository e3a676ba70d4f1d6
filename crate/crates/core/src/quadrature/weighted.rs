//! The weighted integral `Φ(y) = ∫_0^{μ(y)} Z²(t) e^{-2t/y} dt` and Φ′(y).
//!
//! Whole checkpoint intervals are summed from their stored moments:
//! with `x = 2h/y`, `∫ Z² e^{-2t/y}` over `[t_i, t_i + h]` equals
//! `e^{-2t_i/y} Σ_k (-x)^k M_k` where `M_k = ∫ Z² s^k / k!`. Intervals with
//! `x` above [`MAX_MOMENT_ARG`] and partial intervals are integrated directly.

use serde::Serialize;

use super::panels::integral;
use super::table::{CumulativeTable, MOMENTS};
use crate::error::{domain, ensure_finite, LabError, Result};
use crate::ladder::MuSpec;
use crate::zeta::z_fast;

/// Largest `2h/y` for which the moment series is used. The first omitted
/// term is below `0.5^16/16! < 1e-18` relative.
pub const MAX_MOMENT_ARG: f64 = 0.5;

/// Relative size of the neglected tail at a smooth truncation point;
/// below half an ulp of Φ.
const SMOOTH_TAIL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedIntegralResult {
    pub y: f64,
    pub mu_of_y: f64,
    pub value: f64,
    pub truncation_point: f64,
    pub truncation_err_bound: f64,
}

/// Rough size of Φ(y), used to scale absolute tolerances.
pub fn phi_scale(y: f64) -> f64 {
    (0.5 * y * (0.5 * y).ln()).max(1.0)
}

/// Upper bound on `∫_U^∞ Z² e^{-2t/y} dt` given |Z(t)| <= A t^{1/4}:
/// `A² U^{1/2} e^{-2U/y} (y/2) (1 + y/(4U))`.
pub fn tail_bound(u: f64, y: f64, a: f64) -> f64 {
    a * a * u.sqrt() * (-2.0 * u / y).exp() * 0.5 * y * (1.0 + y / (4.0 * u))
}

/// Same bound for `∫_U^∞ t Z² e^{-2t/y} dt`.
fn tail_bound_first(u: f64, y: f64, a: f64) -> f64 {
    let x = 2.0 * u / y;
    a * a * u.powf(1.5) * (-x).exp() * 0.5 * y * (1.0 + 1.5 / x + 0.75 / (x * x))
}

/// Smallest ordinate U with a tail bound below the smooth threshold at `y`.
pub fn required_extent(y: f64, a: f64) -> f64 {
    let threshold = SMOOTH_TAIL * phi_scale(y);
    let mut u = 2.0 * y;
    for _ in 0..60 {
        let next = 0.5 * y * (tail_bound(u, y, a) * (2.0 * u / y).exp() / threshold).ln();
        if (next - u).abs() < 1e-9 * u {
            break;
        }
        u = next.max(y);
    }
    u
}

struct Plan {
    cut: f64,
    bound: f64,
}

fn plan(y: f64, mu_y: f64, table: &CumulativeTable, first_moment: bool) -> Result<Plan> {
    let a = table.tail_a;
    let scale = if first_moment { phi_scale(y) * y } else { phi_scale(y) };
    let tail = |u: f64| if first_moment { tail_bound_first(u, y, a) } else { tail_bound(u, y, a) };
    let threshold = SMOOTH_TAIL * scale;
    let abs_tol = table.abs_tol * scale;

    // the bounds decrease for t beyond y (and beyond 3y/4 for the first moment)
    let j = table.knots.partition_point(|k| k.t < y || tail(k.t) > threshold);
    let smooth = match table.knots.get(j) {
        Some(k) => k.t,
        None => {
            if tail(table.t_max) > abs_tol {
                return Err(LabError::Range(format!(
                    "weighted integral at y = {y} needs checkpoints to t >= {:.0} (t_max = {})",
                    required_extent(y, a),
                    table.t_max
                )));
            }
            table.t_max
        }
    };
    if mu_y <= smooth {
        if mu_y > table.t_max {
            return Err(LabError::Range(format!("mu(y) = {mu_y} exceeds t_max = {}", table.t_max)));
        }
        Ok(Plan { cut: mu_y, bound: 0.0 })
    } else {
        Ok(Plan { cut: smooth, bound: tail(smooth) })
    }
}

/// `Σ ∫ t^p Z² e^{-2t/y}` over `[0, cut]` for p = 0 or 1.
fn accumulate(y: f64, cut: f64, table: &CumulativeTable, p: i32) -> f64 {
    let knots = &table.knots;
    let last = table.knot_below(cut);
    let weight = |t: f64| t.powi(p) * (-2.0 * t / y).exp();
    let mut total = 0.0;
    for i in 0..last {
        let (t0, t1) = (knots[i].t, knots[i + 1].t);
        let h = t1 - t0;
        let x = 2.0 * h / y;
        if x > MAX_MOMENT_ARG {
            total += integral(t0, t1, table.rel_tol, &weight);
            continue;
        }
        let m = &table.moments[i];
        let mut zeroth = m[MOMENTS - 1];
        for k in (0..MOMENTS - 1).rev() {
            zeroth = m[k] - x * zeroth;
        }
        let decay = (-2.0 * t0 / y).exp();
        if p == 0 {
            total += decay * zeroth;
        } else {
            // ∫ (t0 + h s) Z² e^{-x s}: the s-part uses (k+1) M_{k+1}
            let mut shifted = (MOMENTS - 1) as f64 * m[MOMENTS - 1];
            for k in (0..MOMENTS - 2).rev() {
                shifted = (k + 1) as f64 * m[k + 1] - x * shifted;
            }
            total += decay * (t0 * zeroth + h * shifted);
        }
    }
    if cut > knots[last].t {
        total += integral(knots[last].t, cut, table.rel_tol, &weight);
    }
    total
}

/// Φ(y) for an admissible μ.
pub fn weighted_integral(y: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<WeightedIntegralResult> {
    ensure_finite("y", y)?;
    mu.check_at(y)?;
    weighted_integral_to(y, mu.eval(y), table)
}

/// Φ(y) with an explicit upper limit `mu_of_y`.
pub fn weighted_integral_to(y: f64, mu_of_y: f64, table: &CumulativeTable) -> Result<WeightedIntegralResult> {
    ensure_finite("y", y)?;
    ensure_finite("mu(y)", mu_of_y)?;
    if y <= 2.0 || mu_of_y <= 0.0 {
        return Err(domain(format!("weighted integral needs y > 2 and mu(y) > 0, got y = {y}, mu = {mu_of_y}")));
    }
    let p = plan(y, mu_of_y, table, false)?;
    Ok(WeightedIntegralResult {
        y,
        mu_of_y,
        value: accumulate(y, p.cut, table, 0),
        truncation_point: p.cut,
        truncation_err_bound: p.bound,
    })
}

/// Φ′(y) = (2/y²) ∫_0^{μ(y)} t Z² e^{-2t/y} dt + μ′(y) Z²(μ(y)) e^{-2μ(y)/y}.
pub fn weighted_derivative(y: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<f64> {
    ensure_finite("y", y)?;
    mu.check_at(y)?;
    let mu_y = mu.eval(y);
    let p = plan(y, mu_y, table, true)?;
    let bulk = 2.0 / (y * y) * accumulate(y, p.cut, table, 1);
    let exponent = -2.0 * mu_y / y;
    let boundary = if exponent > -700.0 {
        let z = z_fast(mu_y);
        mu.derivative(y) * z * z * exponent.exp()
    } else {
        0.0
    };
    Ok(bulk + boundary)
}
