//! Closed-form asymptotics around the ladder representation
//! `I(T) = F(φ(T)) + r(φ(T))`: the function F and its remainder, the
//! fitted constant c₀, the Balasubramanian reference formula, the exact
//! coefficient series, the prime-counting relation and the tangent law.

mod primes;
mod series;
mod tangent;

pub use primes::{gauss_li_expansion, sieve_pi, SIEVE_LIMIT};
pub use series::{
    expansion_a, expansion_b, series_residual, CoefficientSeries, Poly, SeriesVariable,
};
pub use tangent::{max_chord, tangent_alpha, tangent_law, tangent_law_residual, TangentLaw};

use crate::constants::{C0Fit, Constants};
use crate::error::{domain, ensure_finite, LabError, Result};
use crate::ladder::{phi, LadderTable, MuSpec};
use crate::quadrature::{hl_integral, CumulativeTable};

/// Smallest ladder span (max T / min T) accepted by the c₀ fit.
pub const C0_MIN_SPAN: f64 = 10.0;

/// `F(y) = (y/2) ln(y/2) + E (y/2) + c₀`.
pub fn f_of_y(y: f64, k: &Constants) -> Result<f64> {
    ensure_finite("y", y)?;
    if y <= 0.0 {
        return Err(domain(format!("F(y) needs y > 0, got {y}")));
    }
    Ok(f_without_c0(y, k) + k.c0()?)
}

fn f_without_c0(y: f64, k: &Constants) -> f64 {
    0.5 * y * (0.5 * y).ln() + k.e * 0.5 * y
}

/// `F′(y) = ½ ln(y/2) + (E + 1)/2`, the derivative of [`f_of_y`].
pub fn f_prime(y: f64, k: &Constants) -> f64 {
    0.5 * (0.5 * y).ln() + 0.5 * (k.e + 1.0)
}

/// Median of `I − (φ/2)ln(φ/2) − E φ/2` over the upper half (by T) of the
/// given samples, with half the range of those values as uncertainty.
pub fn estimate_c0_from(ts: &[f64], integrals: &[f64], phis: &[f64], k: &Constants) -> Result<C0Fit> {
    if ts.len() != integrals.len() || ts.len() != phis.len() {
        return Err(domain("c0 fit needs equally long T, I and phi columns"));
    }
    if ts.len() < 4 {
        return Err(LabError::Precondition(format!("c0 fit needs at least 4 points, got {}", ts.len())));
    }
    let lo = ts.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi >= C0_MIN_SPAN * lo) {
        return Err(LabError::Precondition(format!("c0 fit needs a decade of T, got [{lo}, {hi}]")));
    }
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&i, &j| ts[i].total_cmp(&ts[j]));
    let mut d: Vec<f64> = order[ts.len() / 2..]
        .iter()
        .map(|&i| integrals[i] - f_without_c0(phis[i], k))
        .collect();
    d.sort_by(f64::total_cmp);
    let n = d.len();
    let value = if n % 2 == 1 { d[n / 2] } else { 0.5 * (d[n / 2 - 1] + d[n / 2]) };
    Ok(C0Fit { value, uncertainty: 0.5 * (d[n - 1] - d[0]) })
}

pub fn estimate_c0(ladder: &LadderTable, table: &CumulativeTable, k: &Constants) -> Result<C0Fit> {
    let ts = ladder.ts();
    let integrals = ts.iter().map(|&t| hl_integral(t, table)).collect::<Result<Vec<_>>>()?;
    estimate_c0_from(&ts, &integrals, &ladder.phis(), k)
}

/// `r = I(T) − F(φ(T))`.
pub fn remainder(t: f64, mu: &MuSpec, table: &CumulativeTable, k: &Constants) -> Result<f64> {
    let y = phi(t, mu, table)?;
    Ok(hl_integral(t, table)? - f_of_y(y, k)?)
}

/// Main terms of the Balasubramanian formula: `T ln T + (2c − 1 − ln 2π) T`.
pub fn balasubramanian(t: f64, k: &Constants) -> Result<f64> {
    ensure_finite("T", t)?;
    if t <= 0.0 {
        return Err(domain(format!("balasubramanian needs T > 0, got {t}")));
    }
    Ok(t * t.ln() + (2.0 * k.c - 1.0 - std::f64::consts::TAU.ln()) * t)
}

/// `ω(t) = t ln t + (c − ln 2π) t`.
pub fn omega_fn(t: f64, k: &Constants) -> Result<f64> {
    ensure_finite("t", t)?;
    if t <= 0.0 {
        return Err(domain(format!("omega needs t > 0, got {t}")));
    }
    Ok(t * t.ln() + k.e * t)
}

/// `x = (T − φ/2)/T`.
pub fn x_of_t(t: f64, phi: f64) -> Result<f64> {
    ensure_finite("T", t)?;
    ensure_finite("phi", phi)?;
    if t <= 0.0 {
        return Err(domain(format!("x needs T > 0, got {t}")));
    }
    Ok((t - 0.5 * phi) / t)
}

/// `π(T) ≈ (T − φ/2)/(1 − c)`.
pub fn pi_approx(t: f64, phi: f64, k: &Constants) -> Result<f64> {
    ensure_finite("T", t)?;
    ensure_finite("phi", phi)?;
    Ok((t - 0.5 * phi) / k.q())
}
