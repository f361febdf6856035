//! Generic numerics behind the partition-function routes: certified direct
//! summation, the Euler-MacLaurin engine, closed-form tail integrals, analytic
//! boundary derivatives and the quadrature oracle.

pub mod bernoulli;
pub mod euler_maclaurin;
pub mod finite_diff;
pub mod quadrature;
pub mod summand;
pub mod summation;
pub mod tail;

pub use bernoulli::{bernoulli, bernoulli_f64};
pub use euler_maclaurin::{euler_maclaurin_sum, EmExpansion, DEFAULT_ORDER};
pub use quadrature::{quadrature_oracle, Quadrature, QuadratureOptions};
pub use summand::Summand;
pub use summation::{direct_sum, CompensatedSum, SumResult, DEFAULT_K_MAX, DEFAULT_REL_TOL};
pub use tail::{tail_integral_nonrel, tail_integral_rel, RelTailCoefficients};

use crate::error::Result;
use crate::model::{ModelParams, Regime, ReducedState};

/// The summand of the one-particle partition function at this state.
pub fn summand_for(params: &ModelParams, state: &ReducedState) -> Result<Summand> {
    match params.regime() {
        Regime::Relativistic => Summand::relativistic(state.a, state.b, params.xi()),
        Regime::NonRelativistic => Summand::nonrelativistic(state.a, state.b_bar),
    }
}

/// `f'(1), f'''(1), ...` of the partition-function summand, up to `max_order <= 2`.
pub fn em_derivatives(params: &ModelParams, state: &ReducedState, max_order: usize) -> Result<Vec<f64>> {
    summand_for(params, state)?.odd_derivatives(1.0, max_order)
}
