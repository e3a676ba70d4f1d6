//! Beams of rays {μ} and the spread of the ladders they produce.

use rayon::prelude::*;
use serde::Serialize;

use super::mu::{MuFamily, MuSpec};
use super::solver::{domain_start, phi_with_start};
use crate::error::{LabError, Result};
use crate::quadrature::{tail_bound, weighted_derivative, CumulativeTable};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamReport {
    pub members: Vec<String>,
    pub y_grid: Vec<f64>,
    /// Δ(y) = y (y − y₀)ⁿ / √(1 + (y − y₀)²), when the members share y₀ and n.
    pub divergence: Option<Vec<f64>>,
    #[serde(rename = "T_grid")]
    pub t_grid: Vec<f64>,
    /// φ of every member (outer index) at every T.
    pub phi: Vec<Vec<f64>>,
    /// max pairwise |φ_i(T) − φ_j(T)|.
    pub spread: Vec<f64>,
    #[serde(rename = "spread_times_T")]
    pub spread_times_t: Vec<f64>,
    /// Analytic bound on the spread: the Φ-tail beyond the smallest μ(φ)
    /// divided by Φ′(φ).
    pub spread_bound: Vec<f64>,
}

/// Δ(y) for the beam u(y; ρ, n) = y²[1 + ρ(y − y₀)ⁿ].
pub fn beam_divergence(y: f64, y0: f64, n: f64) -> f64 {
    let d = y - y0;
    y * d.powf(n) / (1.0 + d * d).sqrt()
}

pub fn beam_experiment(
    members: &[MuSpec],
    y_grid: &[f64],
    t_grid: &[f64],
    table: &CumulativeTable,
) -> Result<BeamReport> {
    if members.is_empty() {
        return Err(LabError::Precondition("beam has no members".into()));
    }
    let y_hi = y_grid.iter().copied().fold(2.0 * t_grid.iter().copied().fold(0.0, f64::max), f64::max);
    for m in members {
        m.certify(y_hi).map_err(|e| LabError::Precondition(format!("member {}: {e}", m.label())))?;
        let at_start = m.eval(m.start());
        if !at_start.is_finite() {
            return Err(LabError::Precondition(format!("member {}: mu(y0) is not finite", m.label())));
        }
    }

    let shared = match members[0].family {
        MuFamily::Beam { n, .. } => members
            .iter()
            .all(|m| matches!(m.family, MuFamily::Beam { n: k, .. } if k == n) && m.y0 == members[0].y0)
            .then_some((members[0].y0, n)),
        MuFamily::KLog { .. } => None,
    };
    let divergence = shared.map(|(y0, n)| y_grid.iter().map(|&y| beam_divergence(y, y0, n)).collect());

    let starts = members.iter().map(|m| domain_start(m, table)).collect::<Result<Vec<_>>>()?;
    let phi: Vec<Vec<f64>> = members
        .iter()
        .zip(&starts)
        .map(|(m, &t0)| t_grid.par_iter().map(|&t| phi_with_start(t, m, table, t0)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let mut spread = Vec::with_capacity(t_grid.len());
    let mut spread_bound = Vec::with_capacity(t_grid.len());
    for (j, _) in t_grid.iter().enumerate() {
        let column: Vec<f64> = phi.iter().map(|row| row[j]).collect();
        let hi = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = column.iter().copied().fold(f64::INFINITY, f64::min);
        spread.push(hi - lo);
        let y = lo;
        let mu_min = members.iter().map(|m| m.eval(y)).fold(f64::INFINITY, f64::min);
        let slope = weighted_derivative(y, &members[0], table)?;
        spread_bound.push(if members.len() > 1 { tail_bound(mu_min, y, table.tail_a) / slope } else { 0.0 });
    }
    let spread_times_t = spread.iter().zip(t_grid).map(|(s, t)| s * t).collect();
    Ok(BeamReport {
        members: members.iter().map(MuSpec::label).collect(),
        y_grid: y_grid.to_vec(),
        divergence,
        t_grid: t_grid.to_vec(),
        phi,
        spread,
        spread_times_t,
        spread_bound,
    })
}
