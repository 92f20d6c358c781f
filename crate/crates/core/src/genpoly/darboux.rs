//! Generalized Darboux transformation for `u₂φ'' + u₁φ' + u₀φ = 0`.
//!
//! Given two solutions `φ₁, φ₂`, the function `φ̃ = φ₂' − φ₁'φ₂/φ₁` solves the
//! equation with `ũ₂ = u₂`, `ũ₁ = u₁ + u₂'` and
//! `ũ₀ = u₀ + u₁' + 2u₂(ln φ₁)'' + u₂'(ln φ₁)'`.

use super::GenError;
use crate::exactalg::{BigRat, ExpRatFunc, Poly, RatFunc};

/// Coefficients of a linear second-order ODE with exp-rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DarbouxOde {
    pub u2: ExpRatFunc,
    pub u1: ExpRatFunc,
    pub u0: ExpRatFunc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DarbouxResult {
    pub ode: DarbouxOde,
    pub phi: ExpRatFunc,
}

impl DarbouxOde {
    /// `e^{wx}[φ'' + (2(ln P)'' − (ln P)')φ − (n+1)φ'] = 0`.
    pub fn balance_ode(p: &Poly, n: usize, weight: i64) -> Result<Self, GenError> {
        if p.is_zero() {
            return Err(GenError::ZeroPolynomial);
        }
        let ld = RatFunc::log_derivative(p)?;
        let potential = ld.derive().scale(&BigRat::from(2)).sub(&ld);
        Ok(Self {
            u2: ExpRatFunc::term(RatFunc::one(), weight),
            u1: ExpRatFunc::term(RatFunc::constant(BigRat::from(-((n + 1) as i64))), weight),
            u0: ExpRatFunc::term(potential, weight),
        })
    }

    pub fn apply(&self, phi: &ExpRatFunc) -> ExpRatFunc {
        let d1 = phi.derive();
        let d2 = d1.derive();
        self.u2
            .mul(&d2)
            .add(&self.u1.mul(&d1))
            .add(&self.u0.mul(phi))
    }

    pub fn is_solution(&self, phi: &ExpRatFunc) -> bool {
        self.apply(phi).is_zero()
    }
}

pub fn darboux_transform(
    ode: &DarbouxOde,
    phi1: &ExpRatFunc,
    phi2: &ExpRatFunc,
) -> Result<DarbouxResult, GenError> {
    if !ode.is_solution(phi1) {
        return Err(GenError::Precondition(
            "phi1 does not solve the input equation".into(),
        ));
    }
    if !ode.is_solution(phi2) {
        return Err(GenError::Precondition(
            "phi2 does not solve the input equation".into(),
        ));
    }
    if phi1.is_zero() {
        return Err(GenError::Precondition("phi1 is identically zero".into()));
    }
    let ld1 = phi1.log_derivative()?;
    let ld2 = ld1.derive();
    let du2 = ode.u2.derive();

    let u0 = ode
        .u0
        .add(&ode.u1.derive())
        .add(&ode.u2.mul(&ld2).scale(&BigRat::from(2)))
        .add(&du2.mul(&ld1));
    let new_ode = DarbouxOde {
        u2: ode.u2.clone(),
        u1: ode.u1.add(&du2),
        u0,
    };
    let phi = phi2.derive().sub(&phi1.derive().mul(phi2).div(phi1)?);
    if !new_ode.is_solution(&phi) {
        return Err(GenError::Inconsistent(
            "transformed function fails the transformed equation".into(),
        ));
    }
    Ok(DarbouxResult { ode: new_ode, phi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn equal_inputs_give_zero() {
        let p2 = p(&[2, -2, 1]);
        let ode = DarbouxOde::balance_ode(&p2, 1, -1).unwrap();
        let phi = ExpRatFunc::from_parts(Poly::x(), p2, 0).unwrap();
        let out = darboux_transform(&ode, &phi, &phi).unwrap();
        assert!(out.phi.is_zero());
    }

    #[test]
    fn rejects_non_solutions() {
        let p2 = p(&[2, -2, 1]);
        let ode = DarbouxOde::balance_ode(&p2, 1, -1).unwrap();
        let good = ExpRatFunc::from_parts(Poly::x(), p2.clone(), 0).unwrap();
        let bad = ExpRatFunc::from_parts(p(&[1, 1]), p2, 0).unwrap();
        assert!(matches!(
            darboux_transform(&ode, &good, &bad),
            Err(GenError::Precondition(_))
        ));
        assert!(matches!(
            darboux_transform(&ode, &bad, &good),
            Err(GenError::Precondition(_))
        ));
    }
}
