//! Quadrature of Z²: the cumulative Hardy–Littlewood integral
//! `I(T) = ∫_0^T Z²`, kept as a persistent checkpoint table, short-interval
//! integrals, and the Laplace-weighted integral Φ(y).
//!
//! Panels are Gauss–Kronrod 7/15, at most half a mean zero spacing wide,
//! bisected until their error estimate meets the tolerance.

mod gauss_kronrod;
mod panels;
mod table;
mod tka;
mod weighted;

pub use panels::panel_width;
pub use table::{
    build_checkpoints, hl_integral, interval_integral, CumulativeTable, Knot, Manifest, DEFAULT_ABS_TOL,
    DEFAULT_MAX_STEP, DEFAULT_REL_TOL, FINE_STEP_LIMIT, MOMENTS,
};
pub use tka::{tka_truncated_check, TkaCheck, DELTA0};
pub use weighted::{
    phi_scale, required_extent, tail_bound, weighted_derivative, weighted_integral, weighted_integral_to,
    WeightedIntegralResult, MAX_MOMENT_ARG,
};
