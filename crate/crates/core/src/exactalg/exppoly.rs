//! Exponential polynomials `Σ_k p_k(x)·e^{kx}` and their rational-function
//! counterpart with integer (possibly negative) exponents.

use std::collections::BTreeMap;
use std::fmt;

use super::{BigRat, ExactError, Poly, RatFunc};

/// Finite sum `Σ_k p_k(x) e^{kx}` with `k ≥ 0`. No key maps to zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<u32, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(p: Poly, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(k, p);
        }
        Self { terms }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::term(p, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.terms.iter().map(|(&k, p)| (k, p))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Option<&Poly> {
        self.terms.get(&k)
    }

    /// `Some((k, p))` when the value is exactly `p·e^{kx}`.
    pub fn single_term(&self) -> Option<(u32, &Poly)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn insert_add(terms: &mut BTreeMap<u32, Poly>, k: u32, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match terms.remove(&k) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (k, p) in other.terms() {
            Self::insert_add(&mut terms, k, p.clone());
        }
        Self { terms }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        Self {
            terms: self.terms.iter().map(|(&k, p)| (k, -p)).collect(),
        }
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = BTreeMap::new();
        for (k1, p1) in self.terms() {
            for (k2, p2) in other.terms() {
                Self::insert_add(&mut terms, k1 + k2, p1 * p2);
            }
        }
        Self { terms }
    }

    pub fn scale(&self, c: &BigRat) -> ExpPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, p)| (k, p.scale(c))).collect(),
        }
    }

    pub fn mul_poly(&self, q: &Poly) -> ExpPoly {
        self.mul(&ExpPoly::from_poly(q.clone()))
    }

    /// Multiplies by `e^{shift·x}`.
    pub fn mul_exp(&self, shift: u32) -> ExpPoly {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, p)| (k + shift, p.clone()))
                .collect(),
        }
    }

    /// Termwise `p_k e^{kx} ↦ (p_k' + k p_k) e^{kx}`.
    pub fn derive(&self) -> ExpPoly {
        let mut terms = BTreeMap::new();
        for (k, p) in self.terms() {
            let d = &p.derive() + &p.scale(&BigRat::from(k as i64));
            Self::insert_add(&mut terms, k, d);
        }
        Self { terms }
    }

    pub fn derive_n(&self, n: usize) -> ExpPoly {
        (0..n).fold(self.clone(), |acc, _| acc.derive())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, p)| match k {
                0 => format!("({p})"),
                _ => format!("({p})*e^({k}x)"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finite sum `Σ_k r_k(x) e^{kx}` with rational-function coefficients and
/// `k ∈ ℤ`. Used for variable-coefficient second-order ODEs whose
/// coefficients carry factors such as `e^{-x}`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpRatFunc {
    terms: BTreeMap<i64, RatFunc>,
}

impl ExpRatFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(r: RatFunc, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(k, r);
        }
        Self { terms }
    }

    /// `(num/den)·e^{kx}`.
    pub fn from_parts(num: Poly, den: Poly, k: i64) -> Result<Self, ExactError> {
        Ok(Self::term(RatFunc::new(num, den)?, k))
    }

    pub fn constant(c: BigRat) -> Self {
        Self::term(RatFunc::constant(c), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.terms.iter().map(|(&k, r)| (k, r))
    }

    pub fn single_term(&self) -> Option<(i64, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn insert_add(terms: &mut BTreeMap<i64, RatFunc>, k: i64, r: RatFunc) {
        if r.is_zero() {
            return;
        }
        let sum = match terms.remove(&k) {
            Some(q) => q.add(&r),
            None => r,
        };
        if !sum.is_zero() {
            terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &ExpRatFunc) -> ExpRatFunc {
        let mut terms = self.terms.clone();
        for (k, r) in other.terms() {
            Self::insert_add(&mut terms, k, r.clone());
        }
        Self { terms }
    }

    pub fn sub(&self, other: &ExpRatFunc) -> ExpRatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpRatFunc {
        Self {
            terms: self.terms.iter().map(|(&k, r)| (k, r.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> ExpRatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, r)| (k, r.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &ExpRatFunc) -> ExpRatFunc {
        let mut terms = BTreeMap::new();
        for (k1, r1) in self.terms() {
            for (k2, r2) in other.terms() {
                Self::insert_add(&mut terms, k1 + k2, r1.mul(r2));
            }
        }
        Self { terms }
    }

    /// Division is only defined by a single-term divisor.
    pub fn div(&self, other: &ExpRatFunc) -> Result<ExpRatFunc, ExactError> {
        let (k2, r2) = other.single_term().ok_or(ExactError::NotSingleTerm)?;
        let mut terms = BTreeMap::new();
        for (k1, r1) in self.terms() {
            Self::insert_add(&mut terms, k1 - k2, r1.div(r2)?);
        }
        Ok(Self { terms })
    }

    pub fn derive(&self) -> ExpRatFunc {
        let mut terms = BTreeMap::new();
        for (k, r) in self.terms() {
            let d = r.derive().add(&r.scale(&BigRat::from(k)));
            Self::insert_add(&mut terms, k, d);
        }
        Self { terms }
    }

    /// Logarithmic derivative of a single term `r e^{kx}`: `r'/r + k`.
    pub fn log_derivative(&self) -> Result<ExpRatFunc, ExactError> {
        let (k, r) = self.single_term().ok_or(ExactError::NotSingleTerm)?;
        let ld = r.derive().div(r)?.add(&RatFunc::constant(BigRat::from(k)));
        Ok(Self::term(ld, 0))
    }
}

impl From<&ExpPoly> for ExpRatFunc {
    fn from(e: &ExpPoly) -> Self {
        Self {
            terms: e
                .terms()
                .map(|(k, p)| (i64::from(k), RatFunc::from_poly(p.clone())))
                .collect(),
        }
    }
}

impl fmt::Debug for ExpRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, r)| format!("[{r:?}]*e^({k}x)"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
