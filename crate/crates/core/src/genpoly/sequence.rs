//! The polynomial sequence `𝒫_1, 𝒫_2, …`, generated either as normalized
//! Wronskians of `ω_j = (x − a_j) e^{(j−1)x}` or by integrating the
//! three-term recurrence.

use serde::{Deserialize, Serialize};

use super::GenError;
use crate::exactalg::{wronskian, BigRat, ExpPoly, Poly};

/// Degree cap used when callers do not configure one.
pub const DEFAULT_MAX_INDEX: usize = 20;

/// `a_1 … a_n` with `a_1 = 0`, `a_{j+1} = a_j + 2/j`.
pub fn shift_sequence(n: usize) -> Vec<BigRat> {
    let mut out = Vec::with_capacity(n);
    let mut a = BigRat::zero();
    for j in 1..=n {
        out.push(a.clone());
        a = a + BigRat::frac(2, j as i64);
    }
    out
}

/// `ω_j = (x − a_j)·e^{(j−1)x}`.
pub fn omega(j: usize) -> Result<ExpPoly, GenError> {
    if j == 0 {
        return Err(GenError::IndexOutOfRange(j));
    }
    let a_j = shift_sequence(j).pop().expect("j >= 1");
    Ok(ExpPoly::term(Poly::linear_root(&a_j), (j - 1) as u32))
}

fn omegas(n: usize) -> Vec<ExpPoly> {
    let shifts = shift_sequence(n);
    shifts
        .iter()
        .enumerate()
        .map(|(i, a)| ExpPoly::term(Poly::linear_root(a), i as u32))
        .collect()
}

/// `W_k = W(ω_1, …, ω_k)`; `W_0 = 1`.
pub fn wronskian_k(k: usize) -> ExpPoly {
    wronskian(&omegas(k))
}

/// `c_n = [(n−1)! · Π_{1≤i<j≤n−1} (j−i)]^{−1}`.
pub fn norm_const(n: usize) -> Result<BigRat, GenError> {
    if n == 0 {
        return Err(GenError::IndexOutOfRange(n));
    }
    let mut prod = BigRat::one();
    for f in 2..n {
        prod = prod * BigRat::from(f as i64);
    }
    for j in 2..n {
        for i in 1..j {
            prod = prod * BigRat::from((j - i) as i64);
        }
    }
    Ok(prod.recip().expect("positive product"))
}

/// `𝒫_n = c_n e^{−n(n−1)x/2} W(ω_1, …, ω_n)`.
pub fn gen_wronskian(n: usize) -> Result<Poly, GenError> {
    if n == 0 {
        return Err(GenError::IndexOutOfRange(n));
    }
    let w = wronskian_k(n);
    let expected = (n * (n - 1) / 2) as u32;
    let poly = match w.single_term() {
        Some((k, p)) if k == expected => p.scale(&norm_const(n)?),
        _ => {
            return Err(GenError::Inconsistent(format!(
                "W(ω_1..ω_{n}) is not a single e^{{{expected}x}} term: {w:?}"
            )))
        }
    };
    if poly.degree() != Some(n) || !poly.is_monic() {
        return Err(GenError::Inconsistent(format!(
            "normalized Wronskian for n={n} is not monic of degree {n}: {poly}"
        )));
    }
    Ok(poly)
}

/// Solves `𝒫_n' y − 𝒫_n y' − (n+1) 𝒫_n y + (n+1) 𝒫_{n+1}² = 0` for the
/// polynomial `y = 𝒫_{n+2}` by exact elimination on its `n+3` coefficients.
/// The homogeneous solution carries an exponential factor, so a polynomial
/// solution, when it exists, is unique.
pub fn gen_recurrence(pn: &Poly, pn1: &Poly, n: usize) -> Result<Poly, GenError> {
    let unknowns = n + 3;
    let dpn = pn.derive();
    let k = BigRat::from((n + 1) as i64);

    // image of each basis monomial x^i under y ↦ 𝒫_n' y − 𝒫_n y' − (n+1)𝒫_n y
    let columns: Vec<Poly> = (0..unknowns)
        .map(|i| {
            let mut c = vec![BigRat::zero(); i + 1];
            c[i] = BigRat::one();
            let xi = Poly::new(c);
            &(&(&dpn * &xi) - &(pn * &xi.derive())) - &(pn * &xi).scale(&k)
        })
        .collect();
    let target = (pn1 * pn1).scale(&(-&k));

    let rows = columns
        .iter()
        .chain(std::iter::once(&target))
        .filter_map(Poly::degree)
        .max()
        .map_or(0, |d| d + 1);
    let matrix: Vec<Vec<BigRat>> = (0..rows)
        .map(|r| columns.iter().map(|c| c.coeff(r)).collect())
        .collect();
    let rhs: Vec<BigRat> = (0..rows).map(|r| target.coeff(r)).collect();

    let y = Poly::new(solve_exact(matrix, rhs)?);
    if !verify_recurrence_residual(pn, pn1, &y, n).is_zero() {
        return Err(GenError::NoPolynomialSolution);
    }
    Ok(y)
}

pub(super) fn verify_recurrence_residual(pn: &Poly, pn1: &Poly, pn2: &Poly, n: usize) -> Poly {
    let k = BigRat::from((n + 1) as i64);
    let lhs = &(&pn.derive() * pn2) - &(pn * &pn2.derive());
    let lhs = &lhs - &(pn * pn2).scale(&k);
    &lhs + &(pn1 * pn1).scale(&k)
}

/// Exact Gaussian elimination for an overdetermined system that must have
/// full column rank and be consistent.
fn solve_exact(mut a: Vec<Vec<BigRat>>, mut b: Vec<BigRat>) -> Result<Vec<BigRat>, GenError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(GenError::NoPolynomialSolution);
        };
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip().expect("nonzero pivot");
        for v in &mut a[pivot_row][col..] {
            *v = &*v * &inv;
        }
        b[pivot_row] = &b[pivot_row] * &inv;
        let pivot = a[pivot_row].clone();
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (v, pv) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                *v -= &(&f * pv);
            }
            let t = &f * &b[pivot_row];
            b[r] -= &t;
        }
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(GenError::NoPolynomialSolution);
    }
    b.truncate(cols);
    Ok(b)
}

/// Which construction produced an [`AMSequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Wronskian,
    Recurrence,
    /// Both routes, required to agree exactly.
    Both,
}

/// `𝒫_1 … 𝒫_N` (monic, `deg 𝒫_n = n`) with the shifts `a_1 … a_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AMSequence {
    polys: Vec<Poly>,
    shifts: Vec<BigRat>,
    max_index: usize,
}

impl AMSequence {
    pub fn generate(max_index: usize, route: Route) -> Result<Self, GenError> {
        if max_index == 0 {
            return Err(GenError::IndexOutOfRange(0));
        }
        let polys = match route {
            Route::Wronskian => Self::wronskian_polys(max_index)?,
            Route::Recurrence => Self::recurrence_polys(max_index)?,
            Route::Both => {
                let w = Self::wronskian_polys(max_index)?;
                let r = Self::recurrence_polys(max_index)?;
                if let Some(n) = w.iter().zip(&r).position(|(a, b)| a != b) {
                    return Err(GenError::RouteMismatch(n + 1));
                }
                w
            }
        };
        Ok(Self {
            polys,
            shifts: shift_sequence(max_index),
            max_index,
        })
    }

    fn wronskian_polys(max_index: usize) -> Result<Vec<Poly>, GenError> {
        (1..=max_index).map(gen_wronskian).collect()
    }

    fn recurrence_polys(max_index: usize) -> Result<Vec<Poly>, GenError> {
        let mut out = vec![Poly::x(), Poly::from_ints(&[2, -2, 1])];
        while out.len() < max_index {
            let n = out.len() - 1;
            let next = gen_recurrence(&out[n - 1], &out[n], n)?;
            out.push(next);
        }
        out.truncate(max_index);
        Ok(out)
    }

    /// `𝒫_n` for `1 ≤ n ≤ N`; `𝒫_0 = 1` is also accepted.
    pub fn poly(&self, n: usize) -> Option<Poly> {
        match n {
            0 => Some(Poly::one()),
            _ => self.polys.get(n - 1).cloned(),
        }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn shifts(&self) -> &[BigRat] {
        &self.shifts
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }
}
