//! Reduced rational functions `num/den` with a monic denominator.

use std::fmt;

use super::{BigRat, ExactError, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, g: &RatFunc) -> RatFunc {
        if self.den == g.den {
            return Self::new(&self.num + &g.num, self.den.clone()).expect("nonzero den");
        }
        Self::new(
            &(&self.num * &g.den) + &(&g.num * &self.den),
            &self.den * &g.den,
        )
        .expect("nonzero den")
    }

    pub fn sub(&self, g: &RatFunc) -> RatFunc {
        self.add(&g.neg())
    }

    pub fn mul(&self, g: &RatFunc) -> RatFunc {
        Self::new(&self.num * &g.num, &self.den * &g.den).expect("nonzero den")
    }

    pub fn div(&self, g: &RatFunc) -> Result<RatFunc, ExactError> {
        if g.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &g.den, &self.den * &g.num)
    }

    pub fn arith(&self, g: &RatFunc, op: FieldOp) -> Result<RatFunc, ExactError> {
        Ok(match op {
            FieldOp::Add => self.add(g),
            FieldOp::Sub => self.sub(g),
            FieldOp::Mul => self.mul(g),
            FieldOp::Div => return self.div(g),
        })
    }

    pub fn neg(&self) -> RatFunc {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Quotient rule.
    pub fn derive(&self) -> RatFunc {
        let top = &(&self.num.derive() * &self.den) - &(&self.num * &self.den.derive());
        Self::new(top, &self.den * &self.den).expect("nonzero den")
    }

    /// `(ln p)' = p'/p`.
    pub fn log_derivative(p: &Poly) -> Result<RatFunc, ExactError> {
        Self::new(p.derive(), p.clone())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
