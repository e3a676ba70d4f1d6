//! The tangent law: the chord slope of y = φ(T)/2 against short-interval
//! integrals of Z².

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{domain, ensure_finite, Result};
use crate::ladder::{phi, MuSpec};
use crate::quadrature::{interval_integral, CumulativeTable};

/// Largest chord length accepted at T: T^{1/3 + 2ε₀}.
pub fn max_chord(t: f64, k: &Constants) -> f64 {
    t.powf(1.0 / 3.0 + 2.0 * k.eps0)
}

fn check_chord(t: f64, u: f64, k: &Constants) -> Result<()> {
    ensure_finite("T", t)?;
    ensure_finite("U", u)?;
    let cap = max_chord(t, k);
    if !(u > 0.0 && u <= cap * (1.0 + 1e-12)) {
        return Err(domain(format!("chord length must lie in (0, T^(1/3+2eps0)] = (0, {cap}], got {u}")));
    }
    Ok(())
}

/// tan α(T, U) = (φ(T+U) − φ(T)) / (2U).
pub fn tangent_alpha(t: f64, u: f64, mu: &MuSpec, table: &CumulativeTable, k: &Constants) -> Result<f64> {
    check_chord(t, u, k)?;
    Ok((phi(t + u, mu, table)? - phi(t, mu, table)?) / (2.0 * u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentLaw {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub tan_alpha: f64,
    /// ∫_T^{T+U} Z².
    pub lhs: f64,
    /// U ln(e^{−a} φ(T)/2) tan α.
    pub main: f64,
    pub residual: f64,
    /// main / lhs.
    pub ratio: f64,
}

pub fn tangent_law(t: f64, u: f64, mu: &MuSpec, table: &CumulativeTable, k: &Constants) -> Result<TangentLaw> {
    check_chord(t, u, k)?;
    let (p0, p1) = (phi(t, mu, table)?, phi(t + u, mu, table)?);
    let tan_alpha = (p1 - p0) / (2.0 * u);
    let lhs = interval_integral(t, t + u)?;
    let main = u * ((-k.a).exp() * 0.5 * p0).ln() * tan_alpha;
    Ok(TangentLaw { t, u, tan_alpha, lhs, main, residual: lhs - main, ratio: main / lhs })
}

pub fn tangent_law_residual(t: f64, u: f64, mu: &MuSpec, table: &CumulativeTable, k: &Constants) -> Result<f64> {
    tangent_law(t, u, mu, table, k).map(|r| r.residual)
}
