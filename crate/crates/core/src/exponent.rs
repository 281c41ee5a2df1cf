//! Exact rational exponents of a bound unitary `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational exponent kept in lowest terms with a positive denominator.
///
/// Serialized as a two-element array `[numerator, denominator]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalExponent(Rational64);

impl RationalExponent {
    pub const ZERO: RationalExponent = RationalExponent(Rational64::new_raw(0, 1));
    pub const ONE: RationalExponent = RationalExponent(Rational64::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidExponent(format!(
                "zero denominator in {numer}/{denom}"
            )));
        }
        Ok(Self(Rational64::new(numer, denom)))
    }

    /// Panicking constructor for table literals with a known non-zero denominator.
    pub(crate) fn frac(numer: i64, denom: i64) -> Self {
        Self(Rational64::new(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Self(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Parity of an integer exponent; `None` for non-integers.
    pub fn parity(&self) -> Option<u8> {
        self.is_integer().then(|| self.numer().rem_euclid(2) as u8)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// True when the denominator divides `n`.
    pub fn denom_divides(&self, n: i64) -> bool {
        n.is_multiple_of(&self.denom())
    }

    pub fn as_ratio(&self) -> Rational64 {
        self.0
    }
}

impl From<i64> for RationalExponent {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<Rational64> for RationalExponent {
    fn from(r: Rational64) -> Self {
        Self(r)
    }
}

impl Add for RationalExponent {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for RationalExponent {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for RationalExponent {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<i64> for RationalExponent {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        Self(self.0 * rhs)
    }
}

impl Mul for RationalExponent {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl std::iter::Sum for RationalExponent {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidExponent(format!("cannot parse `{s}` as n or n/d"));
        match s.trim().split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for RationalExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.numer(), self.denom()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [n, d] = <[i64; 2]>::deserialize(deserializer)?;
        Self::new(n, d).map_err(serde::de::Error::custom)
    }
}
