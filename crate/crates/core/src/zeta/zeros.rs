//! Scan for sign changes of Z and refine them to tight brackets.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{theta, z_fast};
use crate::error::{domain, ensure_finite, Result};
use crate::roots::brent;

/// Default `|Z|` threshold under which a non-crossing minimum is treated as
/// a suspected multiple zero.
pub const Z_TOL: f64 = 1e-7;

const BRACKET_TARGET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// 1-based ordinal among the zeros found by the scan; equals the usual
    /// zero index when the scan starts at 0.
    pub index: usize,
    pub gamma: f64,
    pub bracket_width: f64,
    pub z_residual: f64,
    /// `true` for a minimum of |Z| below the tolerance without a sign
    /// change, i.e. a suspected zero of even multiplicity.
    pub tangential: bool,
}

/// Scan step: a twentieth of the mean zero spacing `2π / ln(t/2π)`.
fn scan_step(t: f64) -> f64 {
    0.05 * TAU / (t / TAU).ln().max(1.0)
}

pub fn find_zeros(t_lo: f64, t_hi: f64) -> Result<Vec<ZeroRecord>> {
    find_zeros_with_tol(t_lo, t_hi, Z_TOL)
}

/// All sign changes of Z on `[t_lo, t_hi]`, each refined to a bracket of
/// width at most 1e-9, plus flagged tangential minima with `|Z| < z_tol`.
pub fn find_zeros_with_tol(t_lo: f64, t_hi: f64, z_tol: f64) -> Result<Vec<ZeroRecord>> {
    ensure_finite("t_lo", t_lo)?;
    ensure_finite("t_hi", t_hi)?;
    if t_lo < 0.0 || t_hi <= t_lo {
        return Err(domain(format!("need 0 <= t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    let mut out: Vec<ZeroRecord> = Vec::new();
    let mut push = |out: &mut Vec<ZeroRecord>, gamma: f64, width: f64, tangential: bool| {
        out.push(ZeroRecord {
            index: out.len() + 1,
            gamma,
            bracket_width: width,
            z_residual: z_fast(gamma).abs(),
            tangential,
        });
    };

    let mut t0 = t_lo;
    let mut z0 = z_fast(t0);
    if z0 == 0.0 {
        push(&mut out, t0, 0.0, false);
    }
    // previous sample, for detecting minima of |Z| without a crossing
    let mut prev: Option<(f64, f64)> = None;
    while t0 < t_hi {
        let t1 = (t0 + scan_step(t0)).min(t_hi);
        let z1 = z_fast(t1);
        if z1 == 0.0 {
            if z0 != 0.0 {
                push(&mut out, t1, 0.0, false);
            }
        } else if z0 != 0.0 && z0.signum() != z1.signum() {
            let root = refine(t0, t1, z0, z1)?;
            push(&mut out, root.0, root.1, false);
        } else if let Some((tp, zp)) = prev {
            if zp.signum() == z0.signum() && z0.signum() == z1.signum() && z0.abs() < zp.abs() && z0.abs() < z1.abs() {
                inspect_minimum(tp, t1, z_tol, &mut out, &mut push)?;
            }
        }
        prev = Some((t0, z0));
        t0 = t1;
        z0 = z1;
    }
    out.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    for (i, r) in out.iter_mut().enumerate() {
        r.index = i + 1;
    }
    Ok(out)
}

fn refine(a: f64, b: f64, za: f64, zb: f64) -> Result<(f64, f64)> {
    let r = brent(|t| Ok(z_fast(t)), a, b, za, zb, 0.5 * BRACKET_TARGET, 200)?;
    Ok((r.x, r.bracket_width()))
}

/// Golden-section search for the minimum of |Z| on `[a, b]`. A sign flip at
/// the minimiser reveals a pair of close zeros the scan stepped over; a
/// tiny minimum without a flip is recorded as tangential.
fn inspect_minimum<P>(a: f64, b: f64, z_tol: f64, out: &mut Vec<ZeroRecord>, push: &mut P) -> Result<()>
where
    P: FnMut(&mut Vec<ZeroRecord>, f64, f64, bool),
{
    let za = z_fast(a);
    let zb = z_fast(b);
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - invphi * (hi - lo);
    let mut x2 = lo + invphi * (hi - lo);
    let mut f1 = z_fast(x1);
    let mut f2 = z_fast(x2);
    for _ in 0..80 {
        if f1.signum() != za.signum() {
            let r = refine(a, x1, za, f1)?;
            push(out, r.0, r.1, false);
            let r = refine(x1, b, f1, zb)?;
            push(out, r.0, r.1, false);
            return Ok(());
        }
        if f2.signum() != za.signum() {
            let r = refine(a, x2, za, f2)?;
            push(out, r.0, r.1, false);
            let r = refine(x2, b, f2, zb)?;
            push(out, r.0, r.1, false);
            return Ok(());
        }
        if hi - lo < BRACKET_TARGET {
            break;
        }
        if f1.abs() < f2.abs() {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = z_fast(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = z_fast(x2);
        }
    }
    let (xm, fm) = if f1.abs() < f2.abs() { (x1, f1) } else { (x2, f2) };
    if fm.abs() < z_tol {
        push(out, xm, hi - lo, true);
    }
    Ok(())
}

/// Zero count against the smooth counting estimate `θ(T)/π + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountCheck {
    pub t: f64,
    pub counted: usize,
    pub expected: f64,
    pub deviation: f64,
    /// Set when the deviation exceeds the Gram-law slack of 2.
    pub flagged: bool,
}

pub fn zero_count_check(t: f64, counted: usize) -> Result<CountCheck> {
    let expected = theta(t)?.value / PI + 1.0;
    let deviation = counted as f64 - expected;
    Ok(CountCheck { t, counted, expected, deviation, flagged: deviation.abs() > 2.0 })
}
