//! The class {μ}: admissible upper limits of the weighted integral.

use serde::{Deserialize, Serialize};

use crate::error::{domain, ensure_finite, LabError, Result};
use crate::roots::brent;

/// Minimal admissible growth: μ(y) >= MIN_K · y ln y.
pub const MIN_K: f64 = 7.0;

/// Default domain start.
pub const DEFAULT_Y0: f64 = 100.0;

/// Grid size of the validity certificate.
const CERT_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MuFamily {
    /// μ(y) = K y ln y.
    KLog { k: f64 },
    /// u(y; ρ, n) = y² [1 + ρ (y − y₀)ⁿ].
    Beam { rho: f64, n: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuSpec {
    #[serde(flatten)]
    pub family: MuFamily,
    pub y0: f64,
    /// Least y at which μ(y) >= 7 y ln y holds (and keeps holding).
    pub validity_from: f64,
}

fn lower_envelope(y: f64) -> f64 {
    MIN_K * y * y.ln()
}

impl MuSpec {
    pub fn k_log(k: f64, y0: f64) -> Result<Self> {
        ensure_finite("K", k)?;
        ensure_finite("y0", y0)?;
        if k < MIN_K {
            return Err(domain(format!("K must be >= {MIN_K}, got {k}")));
        }
        if y0 <= 1.0 {
            return Err(domain(format!("y0 must exceed 1, got {y0}")));
        }
        // K y ln y >= 7 y ln y as soon as ln y >= 0
        Ok(Self { family: MuFamily::KLog { k }, y0, validity_from: 1.0 })
    }

    pub fn beam(rho: f64, n: f64, y0: f64) -> Result<Self> {
        ensure_finite("rho", rho)?;
        ensure_finite("n", n)?;
        ensure_finite("y0", y0)?;
        if rho < 0.0 {
            return Err(domain(format!("beam needs rho >= 0, got {rho}")));
        }
        if n < 1.0 {
            return Err(domain(format!("beam needs n >= 1, got {n}")));
        }
        if y0 <= 1.0 {
            return Err(domain(format!("y0 must exceed 1, got {y0}")));
        }
        // on [y0, ∞) the bracket is >= 1, so y² >= 7 y ln y decides;
        // y = 7 ln y has its larger root near 21.5
        let g = |y: f64| Ok(y - MIN_K * y.ln());
        let root = brent(g, 8.0, 100.0, 8.0 - MIN_K * 8f64.ln(), 100.0 - MIN_K * 100f64.ln(), 1e-12, 200)?;
        Ok(Self { family: MuFamily::Beam { rho, n }, y0, validity_from: root.hi.max(y0) })
    }

    pub fn label(&self) -> String {
        match self.family {
            MuFamily::KLog { k } => format!("k_log(K={k})"),
            MuFamily::Beam { rho, n } => format!("beam(rho={rho},n={n},y0={})", self.y0),
        }
    }

    /// Smallest y at which the ladder machinery may use this μ.
    pub fn start(&self) -> f64 {
        self.y0.max(self.validity_from)
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self.family {
            MuFamily::KLog { k } => k * y * y.ln(),
            MuFamily::Beam { rho, n } => y * y * (1.0 + rho * (y - self.y0).max(0.0).powf(n)),
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        match self.family {
            MuFamily::KLog { k } => k * (y.ln() + 1.0),
            MuFamily::Beam { rho, n } => {
                let d = (y - self.y0).max(0.0);
                let dn1 = if n == 1.0 { 1.0 } else { d.powf(n - 1.0) };
                2.0 * y * (1.0 + rho * d.powf(n)) + y * y * rho * n * dn1
            }
        }
    }

    /// Check that μ can be used at `y`.
    pub fn check_at(&self, y: f64) -> Result<()> {
        if !(y >= self.start()) {
            return Err(LabError::Precondition(format!(
                "{} is not admissible at y = {y}: needs y >= {}",
                self.label(),
                self.start()
            )));
        }
        let mu = self.eval(y);
        if !(mu >= lower_envelope(y)) {
            return Err(LabError::Precondition(format!(
                "{} violates mu(y) >= 7 y ln y at y = {y} (mu = {mu})",
                self.label()
            )));
        }
        Ok(())
    }

    /// Certificate on a geometric grid of `[start, y_hi]` plus both
    /// endpoints: μ(y) >= 7 y ln y and μ strictly increasing.
    pub fn certify(&self, y_hi: f64) -> Result<()> {
        let lo = self.start();
        if !(y_hi > lo) {
            return Err(domain(format!("certificate range [{lo}, {y_hi}] is empty")));
        }
        let ratio = (y_hi / lo).powf(1.0 / (CERT_POINTS - 1) as f64);
        let mut prev = f64::NEG_INFINITY;
        for j in 0..CERT_POINTS {
            let y = if j + 1 == CERT_POINTS { y_hi } else { lo * ratio.powi(j as i32) };
            self.check_at(y)?;
            let mu = self.eval(y);
            if !(mu > prev) || self.derivative(y) <= 0.0 {
                return Err(LabError::Precondition(format!("{} is not increasing near y = {y}", self.label())));
            }
            prev = mu;
        }
        Ok(())
    }
}
