//! Wigner quasiprobability functions on phase-space grids, the Moyal star
//! calculus, truncated Fock-space oracles, and 2×2 matrix Wigner operators
//! for SU(1,1) and SU(2).

pub mod cli;
pub mod error;
pub mod fock_oracle;
pub mod quadrature;
pub mod phase_space;
pub mod projection;
pub mod specfun;
pub mod models;
pub mod star_engine;
pub mod su_matrix;
pub mod verify;

pub use error::{Error, Result};
