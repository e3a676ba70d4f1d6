//! Riemann–Siegel main sum with up to four correction terms.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use super::dd::{phase_mod_tau, Dd};
use super::rs_coeffs::{C0, C1, C2, C3, C4};
use super::theta::theta_dd;

/// Correction terms used by default.
pub const MAX_CORRECTIONS: usize = 4;

const U: f64 = f64::EPSILON * 0.5;

/// Remainder constants after `k` corrections: `|R_k| <= G[k] t^{-(2k+3)/4}`,
/// valid for `t >= 200`.
const REMAINDER_CONST: [f64; 5] = [0.127, 0.053, 0.011, 0.031, 0.017];

const TABLE_LEN: usize = 4096;

struct TermTable {
    ln_n: Vec<Dd>,
    inv_sqrt_n: Vec<f64>,
}

fn table() -> &'static TermTable {
    static TABLE: OnceLock<TermTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut ln_n = Vec::with_capacity(TABLE_LEN + 1);
        let mut inv_sqrt_n = Vec::with_capacity(TABLE_LEN + 1);
        ln_n.push(Dd::from_f64(0.0));
        inv_sqrt_n.push(0.0);
        for n in 1..=TABLE_LEN {
            let nf = n as f64;
            ln_n.push(Dd::from_f64(nf).ln());
            inv_sqrt_n.push(1.0 / nf.sqrt());
        }
        TermTable { ln_n, inv_sqrt_n }
    })
}

#[inline]
fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// Evaluate Z(t) for `t >= 200` with `corrections` correction terms.
/// Returns `(value, error_bound)`.
pub(crate) fn z_rs(t: f64, corrections: usize) -> (f64, f64) {
    let corrections = corrections.min(MAX_CORRECTIONS);
    let a = (t / TAU).sqrt();
    let n_terms = a.floor() as usize;
    let p = a - n_terms as f64;
    // Phases θ(t) - t ln n are formed in double-double and reduced mod 2π
    // before the cosine, so they are accurate to a few ulps of π.
    let th = theta_dd(t);

    let mut sum = 0.0;
    if n_terms <= TABLE_LEN {
        let tab = table();
        for (l, w) in tab.ln_n[1..=n_terms].iter().zip(&tab.inv_sqrt_n[1..=n_terms]) {
            sum += w * phase_mod_tau(th, t, *l).cos();
        }
    } else {
        for n in 1..=n_terms {
            let nf = n as f64;
            sum += phase_mod_tau(th, t, Dd::from_f64(nf).ln()).cos() / nf.sqrt();
        }
    }
    sum *= 2.0;

    let x = p - 0.5;
    let x2 = x * x;
    let ainv = 1.0 / a;
    let polys: [f64; 5] = [
        horner(&C0, x2),
        x * horner(&C1, x2),
        horner(&C2, x2),
        x * horner(&C3, x2),
        horner(&C4, x2),
    ];
    let mut corr = 0.0;
    let mut scale = 1.0;
    for poly in polys.iter().take(corrections + 1) {
        corr += poly * scale;
        scale *= ainv;
    }
    let sign = if n_terms % 2 == 1 { 1.0 } else { -1.0 };
    let value = sum + sign * ainv.sqrt() * corr;

    let truncation = REMAINDER_CONST[corrections] * t.powf(-(2.0 * corrections as f64 + 3.0) / 4.0);
    // Reduced phases carry ~4 ulps of π plus the double-double error of
    // |θ| ~ t ln t; the amplitude sum 2 Σ n^{-1/2} <= 4 sqrt(N).
    let nf = n_terms as f64;
    let phase_err = 16.0 * U + 1e-30 * t * t.ln();
    let rounding = (phase_err + 8.0 * U) * 4.0 * nf.sqrt() + 16.0 * U;
    (value, truncation + rounding)
}
