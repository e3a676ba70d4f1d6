//! Fixed real constants of the Hardy–Littlewood / ladder asymptotics.

use serde::{Deserialize, Serialize};

/// Euler's constant to 50 decimal digits.
pub const EULER_GAMMA_DIGITS: &str = "0.57721566490153286060651209008240243104215933593992";

/// Euler's constant as the nearest `f64`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponent used in the short-interval (Heath-Brown/Ivić range) statements.
pub const EPS0: f64 = 1.0 / 108.0;

/// Small exponent used for all `O(T^{1/3+eps})` remainder fits.
pub const REMAINDER_EPS: f64 = 0.01;

/// The TKA constant term, as fitted from a ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C0Fit {
    pub value: f64,
    pub uncertainty: f64,
}

/// Constants entering `F`, the reference asymptotics and the series.
///
/// `e = c - ln 2π`, `d = c - ln 4π`, `a = ln 2π - 1 - c`. All derived
/// values are computed from `c` at full working precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub c: f64,
    pub e: f64,
    pub d: f64,
    pub a: f64,
    pub eps0: f64,
    pub c0: Option<C0Fit>,
}

impl Default for Constants {
    fn default() -> Self {
        Self::new()
    }
}

impl Constants {
    pub fn new() -> Self {
        let c = EULER_GAMMA;
        let ln_2pi = std::f64::consts::TAU.ln();
        let ln_4pi = (2.0 * std::f64::consts::TAU).ln();
        Constants {
            c,
            e: c - ln_2pi,
            d: c - ln_4pi,
            a: ln_2pi - 1.0 - c,
            eps0: EPS0,
            c0: None,
        }
    }

    pub fn with_c0(mut self, fit: C0Fit) -> Self {
        self.c0 = Some(fit);
        self
    }

    /// `1 - c`, the symbol `q` of the exact coefficient series.
    pub fn q(&self) -> f64 {
        1.0 - self.c
    }

    pub fn c0(&self) -> crate::Result<f64> {
        self.c0
            .map(|f| f.value)
            .ok_or_else(|| crate::LabError::State("c0 has not been fitted".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_digits_match_f64() {
        let parsed: f64 = EULER_GAMMA_DIGITS.parse().unwrap();
        assert_eq!(parsed, EULER_GAMMA);
    }

    #[test]
    fn algebraic_identities() {
        let k = Constants::new();
        assert!((k.e - k.d - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((k.a - (-k.e - 1.0)).abs() < 1e-15);
        assert!((k.c - 0.5772156649).abs() < 1e-10);
    }

    #[test]
    fn missing_c0_is_a_state_error() {
        assert!(matches!(Constants::new().c0(), Err(crate::LabError::State(_))));
    }
}
