//! Dimension-checked quantum-vacuum toolkit: pair production, Unruh and
//! Hawking temperatures, Planck-scale limits, worldline proper acceleration,
//! the tangent-bundle metric and Planck-suppressed scalar-field modes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod black_hole;
pub mod bundle;
pub mod error;
pub mod field;
pub mod geometry;
pub mod series;
pub mod units;
pub mod vacuum;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use error::{Error, Result};
pub use units::{ConstantSet, Dimension, Quantity, UnitSystem};

/// Which coefficient family a formula uses: the exact closed form or the
/// order-of-magnitude estimate obtained from uncertainty-principle arguments.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimate {
    Exact,
    Heuristic,
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Estimate::Exact => "exact",
            Estimate::Heuristic => "heuristic",
        })
    }
}

impl FromStr for Estimate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Estimate::Exact),
            "heuristic" => Ok(Estimate::Heuristic),
            other => Err(Error::InvalidInput(format!(
                "unknown estimate mode `{other}` (expected exact or heuristic)"
            ))),
        }
    }
}
