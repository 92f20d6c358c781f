//! Exact rationals with eager reduction.
//!
//! A thin newtype over [`num_rational::BigRational`]: the wrapped value is
//! always reduced with a positive denominator, and zero is `0/1`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    /// Shorthand for small literals in tests and tables; panics on `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest double. Ratios whose parts overflow `f64` are scaled first.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        let n = self.numer();
        let d = self.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for BigRat {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for BigRat {
    fn from(v: BigInt) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for BigRat {
    fn from(v: BigRational) -> Self {
        Self(v)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Self::from_int(n))
            }
        }
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division panics on a zero divisor, same as the integer types; fallible
// callers go through `recip`.
forward_binop!(Div, div);

impl AddAssign<&BigRat> for BigRat {
    fn add_assign(&mut self, rhs: &BigRat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&BigRat> for BigRat {
    fn sub_assign(&mut self, rhs: &BigRat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&BigRat> for BigRat {
    fn mul_assign(&mut self, rhs: &BigRat) {
        self.0 *= &rhs.0;
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl Sum for BigRat {
    fn sum<I: Iterator<Item = BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::zero(), |a, b| a + b)
    }
}

impl Product for BigRat {
    fn product<I: Iterator<Item = BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::one(), |a, b| a * b)
    }
}
