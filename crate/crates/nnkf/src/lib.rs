//! Exact lattice-polytope kernel and a non-negative Kouchnirenko formula for differences of
//! Newton numbers.

pub mod arith;
pub mod asymptotic;
pub mod critical;
pub mod error;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod newton;
pub mod nonneg;
pub mod par;
pub mod lp;
pub mod polytope;
pub mod region;
pub mod semi;
pub mod system;

pub use error::{Error, Result};
