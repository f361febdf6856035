//! Canonical-ensemble thermodynamics of neutral spin-1/2 particles with a
//! magnetic dipole moment in an external electromagnetic field.
//!
//! The one-particle partition function
//! `Z = sum_{k>=1} k (k + 2) exp(-beta E_k)` is evaluated by four independent
//! routes that check one another:
//!
//! - certified direct summation ([`partition::z_direct`]),
//! - the Euler-MacLaurin expansion through `f'''` ([`partition::z_euler_maclaurin`]),
//! - the leading high-temperature term ([`partition::z_high_t`]),
//! - the geometric closed form of the non-relativistic series ([`partition::z_exact_nonrel`]).
//!
//! [`thermo`] turns these into free energy, mean energy, entropy and heat capacity.

pub mod cli;
pub mod error;
pub mod grid;
pub mod model;
pub mod partition;
pub mod series;
pub mod thermo;

pub use error::{Error, Result};
pub use model::{ModelParams, Regime, ReducedState, UnitsSystem};
pub use partition::{Method, PartitionResult};
pub use thermo::{ReducedQuantities, ThermoQuantities};
