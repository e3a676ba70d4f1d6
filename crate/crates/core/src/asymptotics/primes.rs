//! Prime counting by a segmented sieve, and the asymptotic series of the
//! logarithmic integral.

use crate::error::{domain, ensure_finite, Result};

pub const SIEVE_LIMIT: f64 = 1e8;

const SEGMENT: usize = 1 << 16;

/// π(T), the number of primes <= T, for 2 <= T <= 10⁸.
pub fn sieve_pi(t: f64) -> Result<u64> {
    ensure_finite("T", t)?;
    if !(2.0..=SIEVE_LIMIT).contains(&t) {
        return Err(domain(format!("sieve needs 2 <= T <= {SIEVE_LIMIT}, got {t}")));
    }
    let n = t.floor() as usize;
    let root = (n as f64).sqrt() as usize + 1;

    let mut small = vec![true; root + 1];
    let mut base = Vec::new();
    for p in 2..=root {
        if small[p] {
            base.push(p);
            let mut m = p * p;
            while m <= root {
                small[m] = false;
                m += p;
            }
        }
    }

    let mut count = 0u64;
    let mut seg = vec![true; SEGMENT];
    let mut lo = 2;
    while lo <= n {
        let hi = (lo + SEGMENT - 1).min(n);
        seg[..=hi - lo].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                seg[m - lo] = false;
                m += p;
            }
        }
        count += seg[..=hi - lo].iter().filter(|&&b| b).count() as u64;
        lo = hi + 1;
    }
    Ok(count)
}

/// `Σ_{k=1}^{n} (k−1)! / ln^k T`, the asymptotic series of
/// `(1/T) ∫_2^T dt / ln t`.
pub fn gauss_li_expansion(t: f64, n: usize) -> Result<f64> {
    ensure_finite("T", t)?;
    if t <= 2.0 || n == 0 {
        return Err(domain(format!("li expansion needs T > 2 and n >= 1, got T = {t}, n = {n}")));
    }
    let l = t.ln();
    let mut term = 1.0 / l;
    let mut sum = 0.0;
    for k in 1..=n {
        sum += term;
        term *= k as f64 / l;
    }
    Ok(sum)
}
