//! Exact checks of the bilinear equation, the recurrence and the Wronskian
//! identities behind it.

use super::sequence::{verify_recurrence_residual, wronskian_k};
use super::GenError;
use crate::exactalg::{wronskian, BigRat, ExpPoly, Poly};

/// `P''Q − 2P'Q' + PQ'' + nP'Q − mPQ'`; zero iff `(P, Q)` solves the
/// bilinear equation for `(m, n)`.
pub fn verify_pq(p: &Poly, q: &Poly, m: i64, n: i64) -> Poly {
    let (dp, dq) = (p.derive(), q.derive());
    let (ddp, ddq) = (dp.derive(), dq.derive());
    let mut r = &ddp * q;
    r = &r - &(&dp * &dq).scale(&BigRat::from(2));
    r = &r + &(p * &ddq);
    r = &r + &(&dp * q).scale(&BigRat::from(n));
    &r - &(p * &dq).scale(&BigRat::from(m))
}

/// `𝒫_n'𝒫_{n+2} − 𝒫_n𝒫_{n+2}' − (n+1)𝒫_n𝒫_{n+2} + (n+1)𝒫_{n+1}² = 0`.
pub fn verify_three_term(pn: &Poly, pn1: &Poly, pn2: &Poly, n: usize) -> bool {
    verify_recurrence_residual(pn, pn1, pn2, n).is_zero()
}

/// `W_n'W_{n+2} − W_nW_{n+2}' + nW_nW_{n+2} + (n+1)² e^x W_{n+1}²` in the
/// exponential-polynomial ring.
pub fn refi_residual(n: usize) -> ExpPoly {
    let wn = wronskian_k(n);
    let wn1 = wronskian_k(n + 1);
    let wn2 = wronskian_k(n + 2);
    let nn = BigRat::from(n as i64);
    let sq = BigRat::from(((n + 1) * (n + 1)) as i64);
    wn.derive()
        .mul(&wn2)
        .sub(&wn.mul(&wn2.derive()))
        .add(&wn.mul(&wn2).scale(&nn))
        .add(&wn1.mul(&wn1).mul_exp(1).scale(&sq))
}

pub fn verify_refi(n: usize) -> Result<bool, GenError> {
    if n == 0 {
        return Err(GenError::IndexOutOfRange(n));
    }
    Ok(refi_residual(n).is_zero())
}

fn w_with(k: usize, xi: &ExpPoly) -> ExpPoly {
    let mut fs: Vec<ExpPoly> = (1..=k).map(|j| super::omega(j).expect("j >= 1")).collect();
    fs.push(xi.clone());
    wronskian(&fs)
}

/// `(W_k(ξ))'W_{k+1} − W_k(ξ)W_{k+1}' − W_{k+1}(ξ)W_k` with
/// `W_k(ξ) = W(ω_1, …, ω_k, ξ)`.
pub fn jacobi_residual(k: usize, xi: &ExpPoly) -> ExpPoly {
    let wk_xi = w_with(k, xi);
    let wk1_xi = w_with(k + 1, xi);
    let wk = wronskian_k(k);
    let wk1 = wronskian_k(k + 1);
    wk_xi
        .derive()
        .mul(&wk1)
        .sub(&wk_xi.mul(&wk1.derive()))
        .sub(&wk1_xi.mul(&wk))
}

/// `W_k(1) − (−1)^k ((k−1)!)² e^{(k−1)x} W_{k−1}`.
pub fn w_one_residual(k: usize) -> Result<ExpPoly, GenError> {
    if k == 0 {
        return Err(GenError::IndexOutOfRange(k));
    }
    let lhs = w_with(k, &ExpPoly::from_poly(Poly::one()));
    let fact: BigRat = (1..k as i64).map(BigRat::from).product();
    let mut c = fact.pow(2);
    if k % 2 == 1 {
        c = -c;
    }
    let rhs = wronskian_k(k - 1).mul_exp((k - 1) as u32).scale(&c);
    Ok(lhs.sub(&rhs))
}

/// Substitutes `φ = (A/P) e^{kx}` into
/// `φ'' + (2(ln P)'' − (ln P)')φ − (n+1)φ' = 0`. After clearing `P³e^{kx}`
/// and one factor of `P` the condition is the polynomial identity
/// `A''P − 2A'P' + AP'' + (2k−n−1)(A'P − AP') + (k² − (n+1)k)AP − AP' = 0`.
pub fn verify_ode_solution(p: &Poly, n: usize, a: &Poly, k: i64) -> Result<bool, GenError> {
    Ok(ode_residual(p, n, a, k)?.is_zero())
}

/// Left-hand side of the cleared identity in [`verify_ode_solution`].
pub fn ode_residual(p: &Poly, n: usize, a: &Poly, k: i64) -> Result<Poly, GenError> {
    if p.is_zero() {
        return Err(GenError::ZeroPolynomial);
    }
    let n1 = (n + 1) as i64;
    let (da, dp) = (a.derive(), p.derive());
    let (dda, ddp) = (da.derive(), dp.derive());
    let wr = &(&da * p) - &(a * &dp);
    let mut r = &dda * p;
    r = &r - &(&da * &dp).scale(&BigRat::from(2));
    r = &r + &(a * &ddp);
    r = &r + &wr.scale(&BigRat::from(2 * k - n1));
    r = &r + &(a * p).scale(&BigRat::from(k * k - n1 * k));
    Ok(&r - &(a * &dp))
}
