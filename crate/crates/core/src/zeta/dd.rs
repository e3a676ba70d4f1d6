//! Minimal double-double arithmetic for the Riemann–Siegel phases, whose
//! magnitude (~t ln t) would otherwise cost several digits of Z.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
pub(crate) const TAU: Dd = Dd { hi: 6.283185307179586, lo: 2.4492935982947064e-16 };
pub(crate) const PI_8: Dd = Dd { hi: 0.39269908169872414, lo: 1.5308084989341915e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    /// Natural logarithm of a positive double-double.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let mut k = self.hi.log2().round() as i32;
        let mut scale = 2f64.powi(-k);
        let mut m = Dd { hi: self.hi * scale, lo: self.lo * scale };
        if m.hi > std::f64::consts::SQRT_2 {
            k += 1;
            scale = 0.5;
            m = Dd { hi: m.hi * scale, lo: m.lo * scale };
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            k -= 1;
            m = Dd { hi: m.hi * 2.0, lo: m.lo * 2.0 };
        }
        let one = Dd::from_f64(1.0);
        let z = (m - one).div(m + one);
        let z2 = z * z;
        // 2 atanh(z) = 2 (z + z^3/3 + z^5/5 + ...), |z| <= 0.172
        let mut sum = Dd::from_f64(0.0);
        for inv in odd_reciprocals().iter().rev() {
            sum = sum * z2 + *inv;
        }
        (sum * z).mul_f64(2.0) + LN2.mul_f64(k as f64)
    }

    /// Reduce modulo 2π into (-π, π] and round to `f64`.
    #[cfg(test)]
    pub fn rem_tau(self) -> f64 {
        let k = (self.hi / TAU.hi).round();
        let r = self - TAU.mul_f64(k);
        r.hi + r.lo
    }
}

// 14 terms give ln to ~1e-21 absolute: phase error (t/2)·1e-21 stays below
// 1e-15 for t <= 1e6.
const ATANH_TERMS: usize = 14;

fn odd_reciprocals() -> &'static [Dd; ATANH_TERMS] {
    static TABLE: std::sync::OnceLock<[Dd; ATANH_TERMS]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|j| Dd::from_f64(1.0).div(Dd::from_f64((2 * j + 1) as f64)))
    })
}

/// `(a - t * l) mod 2π` for a double-double `a` and `l`, rounded to `f64`.
/// The specialised form of the Riemann–Siegel phase reduction.
#[inline]
pub(crate) fn phase_mod_tau(a: Dd, t: f64, l: Dd) -> f64 {
    let p = t * l.hi;
    let pe = t.mul_add(l.hi, -p) + t * l.lo;
    let (s, se) = two_sum(a.hi, -p);
    let lo = se + a.lo - pe;
    let k = ((s + lo) / TAU.hi).round();
    let r = (-k).mul_add(TAU.hi, s);
    r + (lo - k * TAU.lo)
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}
