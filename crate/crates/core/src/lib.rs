//! Numerical laboratory for Jacob's ladders: solutions φ(T) of
//!
//! ```text
//!   ∫_0^{μ(φ)} Z²(t) e^{-2t/φ} dt = ∫_0^T Z²(t) dt
//! ```
//!
//! together with the asymptotic machinery used to check the almost-exact
//! representation of the Hardy–Littlewood integral `I(T) = ∫_0^T Z²`.
//!
//! * [`zeta`] — θ, Z, Z² and zeros on the critical line.
//! * [`quadrature`] — checkpointed cumulative integral, weighted integral Φ(y).
//! * [`ladder`] — the class {μ}, M_μ(y), φ(T), beams of ladders.
//! * [`asymptotics`] — F, c₀ fit, reference formulas, exact series, primes.
//! * [`report`] — verification suites and their JSON report.

pub mod asymptotics;
pub mod constants;
pub mod error;
pub mod ladder;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod zeta;

pub use constants::{C0Fit, Constants};
pub use error::{LabError, Result};

/// Version string stamped into checkpoint manifests.
pub const ENGINE_VERSION: &str = concat!("ladderlab-", env!("CARGO_PKG_VERSION"), "+rs4");
