//! Dense univariate polynomials over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BigRat, ExactError};

/// Ascending coefficient list; trailing zeros are always stripped, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

/// Ring operation selector for [`Poly::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(BigRat::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds from small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRat::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - root`.
    pub fn linear_root(root: &BigRat) -> Self {
        Self::new(vec![-root, BigRat::one()])
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(BigRat::is_one)
    }

    pub fn arith(&self, other: &Poly, op: RingOp) -> Poly {
        match op {
            RingOp::Add => self + other,
            RingOp::Sub => self - other,
            RingOp::Mul => self * other,
        }
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip().expect("nonzero leading")),
            _ => self.clone(),
        }
    }

    pub fn derive(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &BigRat::from(k as i64))
                .collect(),
        )
    }

    /// `self(x + c)` via repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: &BigRat) -> Poly {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = &a[k + 1] * c;
                a[k] += &t;
            }
        }
        Poly::new(a)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), ExactError> {
        let dd = d.degree().ok_or(ExactError::DivisionByZero)?;
        let inv_lc = d.leading().expect("nonzero").recip()?;
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut q = vec![BigRat::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let t = &r[k + dd] * &inv_lc;
            if !t.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let s = &t * dc;
                    r[k + j] -= &s;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, ExactError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::InexactDivision)
        }
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, ExactError> {
        if self.is_zero() && other.is_zero() {
            return Err(ExactError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            // keeping the remainder monic bounds coefficient growth a bit
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest-double coefficients, ascending.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(BigRat::to_f64).collect()
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::new(Vec::<BigRat>::deserialize(deserializer)?))
    }
}
