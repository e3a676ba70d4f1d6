//! Adaptive panel integration of `Z²(t)·w(t)`.

use super::gauss_kronrod::{panel, Panel};
use crate::zeta::z_fast;

/// Deepest bisection level for a panel that misses its tolerance.
const MAX_DEPTH: u32 = 12;

/// Widest panel allowed at ordinate `t`: half the mean zero spacing
/// 2π/ln(t/2π), capped at 1 where that spacing is meaningless.
pub fn panel_width(t: f64) -> f64 {
    let l = (t / std::f64::consts::TAU).ln();
    if l <= std::f64::consts::PI {
        1.0
    } else {
        std::f64::consts::PI / l
    }
}

/// Typical size of Z² near `t` (its mean value is about ln(t/2π)).
pub(crate) fn mean_density(t: f64) -> f64 {
    (t / std::f64::consts::TAU).ln().max(1.0)
}

/// Integrate `Z²(t)·weight(t)` over `[a, b]`, handing every accepted panel
/// (with weighted values) to `sink`. The tolerance of each panel is
/// `rel_tol` times its width times the local mean of the integrand, so the
/// total error stays below `rel_tol` times the size of the integral.
///
/// Returns the number of panels that reached [`MAX_DEPTH`] unconverged.
pub(crate) fn integrate<W, S>(a: f64, b: f64, rel_tol: f64, weight: &W, sink: &mut S) -> usize
where
    W: Fn(f64) -> f64,
    S: FnMut(&Panel),
{
    if b <= a {
        return 0;
    }
    let width = panel_width(b);
    let count = ((b - a) / width).ceil().max(1.0) as usize;
    let step = (b - a) / count as f64;
    let mut failures = 0;
    for j in 0..count {
        let lo = a + j as f64 * step;
        let hi = if j + 1 == count { b } else { a + (j + 1) as f64 * step };
        failures += refine(lo, hi, rel_tol, weight, sink, 0);
    }
    failures
}

fn refine<W, S>(a: f64, b: f64, rel_tol: f64, weight: &W, sink: &mut S, depth: u32) -> usize
where
    W: Fn(f64) -> f64,
    S: FnMut(&Panel),
{
    let p = panel(
        |t| {
            let z = z_fast(t);
            z * z * weight(t)
        },
        a,
        b,
    );
    let mid = 0.5 * (a + b);
    let tol = rel_tol * (b - a) * mean_density(mid) * weight(mid);
    if p.error <= tol || depth >= MAX_DEPTH {
        sink(&p);
        return usize::from(p.error > tol);
    }
    refine(a, mid, rel_tol, weight, sink, depth + 1) + refine(mid, b, rel_tol, weight, sink, depth + 1)
}

/// `∫_a^b Z²·weight` as a plain number.
pub(crate) fn integral<W: Fn(f64) -> f64>(a: f64, b: f64, rel_tol: f64, weight: &W) -> f64 {
    let mut total = 0.0;
    integrate(a, b, rel_tol, weight, &mut |p: &Panel| total += p.kronrod);
    total
}

#[inline]
pub(crate) fn unit(_: f64) -> f64 {
    1.0
}
