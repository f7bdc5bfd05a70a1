//! Coefficient determinants with Fekete–Szegő parameters for normalized
//! analytic functions on the unit disk, their closed-form bounds over the
//! starlike class, and numerical sharpness checks.

pub mod bounds;
pub mod caratheodory;
pub mod determinants;
pub mod error;
pub mod optimize;
pub mod proofcheck;
pub mod rng;
pub mod search;
pub mod series;
pub mod starlike;
pub mod suites;

pub use error::{Error, Result};
