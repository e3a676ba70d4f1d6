//! Jacob's ladders: M_μ(y) from `I(M) = Φ(y)`, its inverse φ(T), and beams.

mod beam;
mod mu;
mod solver;

pub use beam::{beam_divergence, beam_experiment, BeamReport};
pub use mu::{MuFamily, MuSpec, DEFAULT_Y0, MIN_K};
pub use solver::{
    domain_start, ladder_gap, phi, phi_derivative, solve_m, solve_m_detailed, tabulate, LadderPoint, LadderTable,
    MSolution, TOL_EQ, TOL_INV,
};
