//! ζ(1/2 + it) through the accelerated alternating series for the Dirichlet
//! eta function (Borwein's algorithm), used for small `t`.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

const U: f64 = f64::EPSILON * 0.5;

/// Smallest number of terms for which the truncation bound
/// `3 (1 + 2t) e^{πt/2} / ((3 + √8)^n |1 - 2^{1-s}|)` is below `target`.
pub(crate) fn terms_for(t: f64, target: f64) -> usize {
    let denom = one_minus_two_pow(t).norm();
    let log_num = (3.0 * (1.0 + 2.0 * t)).ln() + 0.5 * PI * t - denom.ln() - target.ln();
    let rate = (3.0 + 8f64.sqrt()).ln();
    (log_num / rate).ceil().max(1.0) as usize
}

/// `1 - 2^{1-s}` at `s = 1/2 + it`.
fn one_minus_two_pow(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    Complex64::new(1.0, 0.0) - ((1.0 - s) * LN_2).exp()
}

/// Returns `(ζ(1/2+it), error_bound)` using `n` terms.
pub(crate) fn zeta_half_line(t: f64, n: usize) -> (Complex64, f64) {
    // d_k / d_n with d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!).
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut acc = 0.0f64;
    for i in 0..=n {
        acc += term;
        d.push(acc);
        let fi = i as f64;
        let nf = n as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut rounding = 0.0;
    for k in 0..n {
        let w = (d[k] - dn) / dn;
        let lk = ((k + 1) as f64).ln();
        // (k+1)^{-s} = e^{-ln(k+1)/2} (cos(t ln(k+1)) - i sin(t ln(k+1)))
        let mag = (-0.5 * lk).exp();
        let (sn, cs) = (t * lk).sin_cos();
        let term = Complex64::new(mag * cs, -mag * sn) * w;
        // relative rounding of the weight, the magnitude and the phase t ln(k+1)
        rounding += term.norm() * U * (8.0 + 2.0 * t * lk);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let denom = one_minus_two_pow(t);
    let zeta = -sum / denom;
    let trunc_log = (3.0 * (1.0 + 2.0 * t)).ln() + 0.5 * PI * t
        - n as f64 * (3.0 + 8f64.sqrt()).ln()
        - denom.norm().ln();
    (zeta, trunc_log.exp() + rounding / denom.norm())
}
