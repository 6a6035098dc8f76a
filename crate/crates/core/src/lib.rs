//! Static dipole polarizability of a particle bound in a one-dimensional
//! finite square well.

// `!(x > 0.0)` style guards are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod conventional_sum;
pub mod dalgarno_lewis;
pub mod error;
pub mod format;
pub mod grid_oracle;
pub mod limits;
pub mod methods;
pub mod numerics;
pub mod published;
pub mod well_spectrum;

pub use error::{Error, Result};
pub use well_spectrum::{GroundState, WellSpec};
