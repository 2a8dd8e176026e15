//! Exact computations for monomial semigroups over Q: preperiodic points,
//! canonical heights, explicit bounds, and S-integrality scans.

pub mod bounds;
pub mod error;
pub mod heights;
pub mod ntcore;
pub mod preper;
pub mod scan;
pub mod semigroup;

pub use error::{Error, Result};
pub use ntcore::{Place, Rational, UniPoly};
