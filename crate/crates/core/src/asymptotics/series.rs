//! Exact coefficients of the inversion series
//!
//! ```text
//!   x ln τ − Σ_{k≥2} x^k/(k(k−1)) = 1 − c,   x = Σ_k A_k / ln^k τ
//! ```
//!
//! and of its re-expansion in powers of 1/ln T (ln τ = ln T − a). The
//! coefficients are polynomials with rational coefficients in q = 1 − c
//! (and a, for the B-series).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Result};

/// Polynomial in (q, a) with rational coefficients; keys are the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · q^i · a^j`.
    pub fn monomial(coeff: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), coeff);
        p
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn a() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^i a^j`.
    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * s);
        }
        out
    }

    pub fn eval(&self, q: f64, a: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(*i as i32) * a.powi(*j as i32))
            .sum()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // ascending total degree, then ascending power of q
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, *j));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = [("q", key.0), ("a", key.1)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVariable {
    /// Powers of 1/ln τ.
    InvLogTau,
    /// Powers of 1/ln T.
    InvLogT,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSeries {
    pub order: usize,
    /// `coeffs[k - 1]` is the coefficient of the k-th inverse power.
    pub coeffs: Vec<Poly>,
    pub variable: SeriesVariable,
}

impl CoefficientSeries {
    /// Coefficient k (1-based).
    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k - 1]
    }

    /// `Σ_k coeff_k(q, a) / L^k`.
    pub fn eval(&self, l: f64, q: f64, a: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| p.eval(q, a) / l.powi(k as i32 + 1))
            .sum()
    }
}

/// Truncated power series in v with polynomial coefficients;
/// `s[m]` multiplies v^m.
fn series_mul(x: &[Poly], y: &[Poly], n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); n + 1];
    for (i, xi) in x.iter().enumerate().take(n + 1) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(n + 1 - i) {
            if !yj.is_zero() {
                out[i + j] = out[i + j].add(&xi.mul(yj));
            }
        }
    }
    out
}

/// A₁ … A_n by matching powers of v = 1/ln τ.
///
/// With x = Σ A_j v^j, the term x ln τ contributes A_{m+1} at order v^m,
/// while Σ_{k≥2} x^k/(k(k−1)) at order v^m only involves A_1 … A_{m−1}.
pub fn expansion_a(n: usize) -> Result<CoefficientSeries> {
    if n == 0 {
        return Err(domain("series order must be positive"));
    }
    // x[j] = A_j, x[0] = 0
    let mut x = vec![Poly::zero(); n + 1];
    x[1] = Poly::q();
    for m in 1..n {
        // [v^m] Σ_{k=2}^{m} x^k / (k(k−1)); higher k start beyond v^m
        let mut power = series_mul(&x, &x, m);
        let mut acc = Poly::zero();
        for k in 2..=m {
            acc = acc.add(&power[m].scale(&ratio(1, (k * (k - 1)) as i64)));
            power = series_mul(&power, &x, m);
        }
        x[m + 1] = acc;
    }
    Ok(CoefficientSeries { order: n, coeffs: x[1..].to_vec(), variable: SeriesVariable::InvLogTau })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// B₁ … B_n: `Σ_k A_k/(L − a)^k = Σ_m B_m / L^m`, where
/// `B_m = Σ_{k+j=m} C(m−1, j) a^j A_k`.
pub fn expansion_b(n: usize) -> Result<CoefficientSeries> {
    let a_series = expansion_a(n)?;
    let mut coeffs = Vec::with_capacity(n);
    for m in 1..=n {
        let mut b = Poly::zero();
        for j in 0..m {
            let k = m - j;
            let c = BigRational::from_integer(binomial((m - 1) as u64, j as u64));
            b = b.add(&a_series.coeff(k).mul(&Poly::monomial(c, 0, j as u32)));
        }
        coeffs.push(b);
    }
    Ok(CoefficientSeries { order: n, coeffs, variable: SeriesVariable::InvLogT })
}

/// Left side minus right side of the defining equation at
/// `x = Σ_{k≤n} A_k / L^k`, with L = ln τ: `x L − [(1−x)ln(1−x) + x] − q`.
pub fn series_residual(series: &CoefficientSeries, l: f64, q: f64) -> f64 {
    let x = series.eval(l, q, 0.0);
    // Σ_{k≥2} x^k/(k(k−1)) = (1−x) ln(1−x) + x
    let tail = (1.0 - x) * (-x).ln_1p() + x;
    x * l - tail - q
}
