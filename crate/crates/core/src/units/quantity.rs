use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_rational::Rational32;
use serde::Serialize;

use super::Dimension;
use crate::error::{Error, Result};

/// A real value tagged with its dimension vector.
///
/// Multiplication and division always succeed and combine dimensions;
/// addition, subtraction and comparison require equal dimensions and go
/// through the `try_*` methods.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
}

impl Quantity {
    pub const fn new(value: f64, dim: Dimension) -> Self {
        Self { value, dim }
    }

    /// Like [`Quantity::new`] but rejects NaN and infinities.
    pub fn finite(value: f64, dim: Dimension) -> Result<Self> {
        Self::new(value, dim).ensure_finite("quantity construction")
    }

    pub fn dimensionless(value: f64) -> Self {
        Self::new(value, Dimension::dimensionless())
    }

    pub fn ensure_finite(self, context: &str) -> Result<Self> {
        if self.value.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context.to_string()))
        }
    }

    /// Returns the raw value after checking the dimension and finiteness.
    pub fn expect(&self, dim: Dimension, what: &str) -> Result<f64> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                what: what.to_string(),
                expected: dim,
                found: self.dim,
            });
        }
        if !self.value.is_finite() {
            return Err(Error::NonFinite(what.to_string()));
        }
        Ok(self.value)
    }

    /// [`Quantity::expect`] plus a strict positivity check.
    pub fn expect_positive(&self, dim: Dimension, what: &str) -> Result<f64> {
        let v = self.expect(dim, what)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(crate::error::must_be_positive(what))
        }
    }

    /// [`Quantity::expect`] plus a non-negativity check.
    pub fn expect_nonnegative(&self, dim: Dimension, what: &str) -> Result<f64> {
        let v = self.expect(dim, what)?;
        if v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::InvalidInput(format!("{what} must be non-negative")))
        }
    }

    fn same_dim(&self, other: &Quantity, op: &str) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                what: format!("operand of {op}"),
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity> {
        self.same_dim(&other, "addition")?;
        Quantity::new(self.value + other.value, self.dim).ensure_finite("addition")
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity> {
        self.same_dim(&other, "subtraction")?;
        Quantity::new(self.value - other.value, self.dim).ensure_finite("subtraction")
    }

    pub fn try_cmp(&self, other: &Quantity) -> Result<Ordering> {
        self.same_dim(other, "comparison")?;
        self.value
            .partial_cmp(&other.value)
            .ok_or_else(|| Error::NonFinite("comparison".into()))
    }

    pub fn powi(self, n: i32) -> Quantity {
        Quantity::new(self.value.powi(n), self.dim.scaled(Rational32::from_integer(n)))
    }

    pub fn sqrt(self) -> Quantity {
        Quantity::new(self.value.sqrt(), self.dim.scaled(Rational32::new(1, 2)))
    }

    /// Rational power; negative bases only make sense for odd denominators
    /// and are rejected here.
    pub fn powr(self, power: Rational32) -> Result<Quantity> {
        if self.value < 0.0 {
            return Err(Error::InvalidInput("rational power of a negative quantity".into()));
        }
        let p = *power.numer() as f64 / *power.denom() as f64;
        Quantity::new(self.value.powf(p), self.dim.scaled(power)).ensure_finite("rational power")
    }

    pub fn recip(self) -> Quantity {
        Quantity::new(1.0 / self.value, -self.dim)
    }
}

impl Mul for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value * rhs.value, self.dim + rhs.dim)
    }
}

impl Div for Quantity {
    type Output = Quantity;

    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value / rhs.value, self.dim - rhs.dim)
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: f64) -> Quantity {
        Quantity::new(self.value * rhs, self.dim)
    }
}

impl Mul<Quantity> for f64 {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        rhs * self
    }
}

impl Div<f64> for Quantity {
    type Output = Quantity;

    fn div(self, rhs: f64) -> Quantity {
        Quantity::new(self.value / rhs, self.dim)
    }
}

impl Neg for Quantity {
    type Output = Quantity;

    fn neg(self) -> Quantity {
        Quantity::new(-self.value, self.dim)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} [{}]", self.value, self.dim)
    }
}
