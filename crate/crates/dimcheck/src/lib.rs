//! Dimensional-analysis engine.
//!
//! Dimensions are integer exponent vectors over a user-chosen class of base
//! dimensions; quantities are unit-tagged reals. On top of the exact
//! dimension algebra the crate decides dimensional dependence, computes
//! Buckingham Π-groups and scaling laws, checks plain-text model files for
//! dimensional consistency and tests raw numeric relationships for
//! covariance under unit rescaling.

pub mod cli;
pub mod covariance;
pub mod dimension;
pub mod error;
pub mod lang;
pub mod lindep;
pub mod pi;
pub mod quantity;
pub mod units;

pub use crate::dimension::{ltm, Dim, DimClass};
pub use crate::error::{Error, Result};
pub use crate::lindep::DepEvidence;
pub use crate::quantity::Quantity;
pub use crate::units::{UnitRegistry, UnitSystem};
