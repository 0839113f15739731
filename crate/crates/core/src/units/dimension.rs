use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational32;
use serde::{Serialize, Serializer};

/// Number of base dimensions tracked: mass, length, time, temperature, current.
pub const BASE_COUNT: usize = 5;

const SYMBOLS: [&str; BASE_COUNT] = ["M", "L", "T", "Θ", "I"];

/// Exponent vector over (M, L, T, Θ, I). Rational so that square roots of
/// products of constants stay representable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Dimension {
    exponents: [Rational32; BASE_COUNT],
}

impl Dimension {
    pub const fn new(exponents: [Rational32; BASE_COUNT]) -> Self {
        Self { exponents }
    }

    /// Integer exponents, the common case.
    pub fn from_ints(m: i32, l: i32, t: i32, theta: i32, i: i32) -> Self {
        Self::new([m, l, t, theta, i].map(Rational32::from_integer))
    }

    pub fn exponents(&self) -> &[Rational32; BASE_COUNT] {
        &self.exponents
    }

    pub fn exponent(&self, slot: usize) -> Rational32 {
        self.exponents[slot]
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exponents.iter().all(|e| *e == Rational32::from_integer(0))
    }

    /// Dimension of `q^power` given the dimension of `q`.
    pub fn scaled(&self, power: Rational32) -> Self {
        Self::new(self.exponents.map(|e| e * power))
    }

    pub fn dimensionless() -> Self {
        Self::default()
    }
    pub fn mass() -> Self {
        Self::from_ints(1, 0, 0, 0, 0)
    }
    pub fn length() -> Self {
        Self::from_ints(0, 1, 0, 0, 0)
    }
    pub fn time() -> Self {
        Self::from_ints(0, 0, 1, 0, 0)
    }
    pub fn temperature() -> Self {
        Self::from_ints(0, 0, 0, 1, 0)
    }
    pub fn current() -> Self {
        Self::from_ints(0, 0, 0, 0, 1)
    }
    pub fn velocity() -> Self {
        Self::from_ints(0, 1, -1, 0, 0)
    }
    pub fn acceleration() -> Self {
        Self::from_ints(0, 1, -2, 0, 0)
    }
    pub fn momentum() -> Self {
        Self::from_ints(1, 1, -1, 0, 0)
    }
    pub fn energy() -> Self {
        Self::from_ints(1, 2, -2, 0, 0)
    }
    pub fn action() -> Self {
        Self::from_ints(1, 2, -1, 0, 0)
    }
    pub fn charge() -> Self {
        Self::from_ints(0, 0, 1, 0, 1)
    }
    /// Volt per metre.
    pub fn electric_field() -> Self {
        Self::from_ints(1, 1, -3, 0, -1)
    }
    pub fn angular_frequency() -> Self {
        Self::from_ints(0, 0, -1, 0, 0)
    }
    /// Events per unit time per unit volume.
    pub fn rate_density() -> Self {
        Self::from_ints(0, -3, -1, 0, 0)
    }
    /// Energy per kelvin, the dimension of k and of entropy.
    pub fn entropy() -> Self {
        Self::from_ints(1, 2, -2, -1, 0)
    }
    pub fn gravitational() -> Self {
        Self::from_ints(-1, 3, -2, 0, 0)
    }
}

impl Add for Dimension {
    type Output = Dimension;

    fn add(self, rhs: Dimension) -> Dimension {
        let mut out = self.exponents;
        for (o, r) in out.iter_mut().zip(rhs.exponents) {
            *o += r;
        }
        Dimension::new(out)
    }
}

impl Sub for Dimension {
    type Output = Dimension;

    fn sub(self, rhs: Dimension) -> Dimension {
        self + (-rhs)
    }
}

impl Neg for Dimension {
    type Output = Dimension;

    fn neg(self) -> Dimension {
        Dimension::new(self.exponents.map(|e| -e))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return f.write_str("1");
        }
        let mut first = true;
        for (sym, e) in SYMBOLS.iter().zip(self.exponents) {
            if e == Rational32::from_integer(0) {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e.is_integer() {
                write!(f, "{sym}^{}", e.to_integer())?;
            } else {
                write!(f, "{sym}^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
