//! M_μ(y) from `I(M) = Φ(y)` and its inverse φ(T).

use rayon::prelude::*;
use serde::Serialize;

use super::mu::MuSpec;
use crate::error::{domain, ensure_finite, LabError, Result};
use crate::quadrature::{hl_integral, weighted_derivative, weighted_integral, CumulativeTable};
use crate::roots::brent;
use crate::zeta::z;

/// Defining-equation tolerance factor: tol_eq = TOL_EQ · max(1, Φ(y)).
pub const TOL_EQ: f64 = 1e-8;

/// Inversion tolerance factor: tol_inv = TOL_INV · y.
pub const TOL_INV: f64 = 1e-9;

// The root finders run to near machine precision; the tolerances above are
// what is checked afterwards.
const XTOL: f64 = 1e-14;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MSolution {
    pub y: f64,
    pub m: f64,
    pub phi_value: f64,
    /// I(M) − Φ(y).
    pub residual: f64,
}

/// Solve `I(M) = Φ(y)` for M on the bracket [y/2, y].
pub fn solve_m_detailed(y: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<MSolution> {
    ensure_finite("y", y)?;
    mu.check_at(y)?;
    if y > table.t_max {
        return Err(LabError::Range(format!(
            "M({y}) needs checkpoints up to {y}; table ends at {}",
            table.t_max
        )));
    }
    let target = weighted_integral(y, mu, table)?.value;
    let g = |m: f64| hl_integral(m, table).map(|i| i - target);
    let (lo, hi) = (0.5 * y, y);
    let (glo, ghi) = (g(lo)?, g(hi)?);
    if glo >= 0.0 || ghi <= 0.0 {
        return Err(LabError::Internal(format!(
            "no bracket for M({y}): I(y/2) - Phi = {glo:e}, I(y) - Phi = {ghi:e}"
        )));
    }
    let root = brent(g, lo, hi, glo, ghi, XTOL * y, MAX_ITER)?;
    let residual = if root.fx == 0.0 { 0.0 } else { g(root.x)? };
    let tol = TOL_EQ * target.max(1.0);
    if residual.abs() > tol {
        return Err(LabError::Internal(format!("M({y}) residual {residual:e} exceeds {tol:e}")));
    }
    Ok(MSolution { y, m: root.x, phi_value: target, residual })
}

pub fn solve_m(y: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<f64> {
    solve_m_detailed(y, mu, table).map(|s| s.m)
}

/// T₀[φ] = M_μ(y₀) (taken at the first admissible y).
pub fn domain_start(mu: &MuSpec, table: &CumulativeTable) -> Result<f64> {
    solve_m(mu.start(), mu, table)
}

/// φ(T): the y with `Φ(y) = I(T)`, searched on (T, 2T).
pub fn phi(t: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<f64> {
    phi_with_start(t, mu, table, domain_start(mu, table)?)
}

pub(crate) fn phi_with_start(t: f64, mu: &MuSpec, table: &CumulativeTable, t0: f64) -> Result<f64> {
    ensure_finite("T", t)?;
    if t < t0 {
        return Err(domain(format!("phi(T) needs T >= T0 = {t0}, got T = {t}")));
    }
    let target = hl_integral(t, table)?;
    let h = |y: f64| weighted_integral(y, mu, table).map(|r| r.value - target);
    let lo = t.max(mu.start());
    let hi = 2.0 * t;
    let (hlo, hhi) = (h(lo)?, h(hi)?);
    if hlo >= 0.0 {
        // only possible at the very start of the domain
        return Ok(lo);
    }
    if hhi <= 0.0 {
        return Err(LabError::Internal(format!(
            "no bracket for phi({t}): Phi({lo}) - I = {hlo:e}, Phi({hi}) - I = {hhi:e}"
        )));
    }
    Ok(brent(h, lo, hi, hlo, hhi, XTOL * hi, MAX_ITER)?.x)
}

/// φ′(T) = Z²(T) / Φ′(φ(T)).
pub fn phi_derivative(t: f64, mu: &MuSpec, table: &CumulativeTable) -> Result<f64> {
    let y = phi(t, mu, table)?;
    let zt = z(t)?.value;
    Ok(zt * zt / weighted_derivative(y, mu, table)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderPoint {
    #[serde(rename = "T")]
    pub t: f64,
    pub phi: f64,
    /// Φ(φ(T)) − I(T).
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderTable {
    pub mu: MuSpec,
    #[serde(rename = "T0")]
    pub t0: f64,
    pub points: Vec<LadderPoint>,
}

impl LadderTable {
    pub fn ts(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    pub fn phis(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.phi).collect()
    }

    /// CSV `T,phi,residual`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["T", "phi", "residual"])?;
        for p in &self.points {
            out.write_record([format!("{:.16e}", p.t), format!("{:.16e}", p.phi), format!("{:.6e}", p.residual)])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// φ on a grid of T values (points below T₀ are rejected).
pub fn tabulate(mu: &MuSpec, t_grid: &[f64], table: &CumulativeTable) -> Result<LadderTable> {
    let t0 = domain_start(mu, table)?;
    let points = t_grid
        .par_iter()
        .map(|&t| {
            let y = phi_with_start(t, mu, table, t0)?;
            let residual = weighted_integral(y, mu, table)?.value - hl_integral(t, table)?;
            Ok(LadderPoint { t, phi: y, residual })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LadderTable { mu: *mu, t0, points })
}

/// φ₁(T) − φ₂(T).
pub fn ladder_gap(mu1: &MuSpec, mu2: &MuSpec, t: f64, table: &CumulativeTable) -> Result<f64> {
    let (s1, s2) = (domain_start(mu1, table)?, domain_start(mu2, table)?);
    let lower = s1.max(s2);
    if t < lower {
        return Err(domain(format!("ladder gap needs T >= max(T0) = {lower}, got {t}")));
    }
    Ok(phi_with_start(t, mu1, table, s1)? - phi_with_start(t, mu2, table, s2)?)
}
