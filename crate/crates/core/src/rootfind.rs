//! Exact structural checks (square-freeness, common roots) and a
//! simultaneous Aberth–Ehrlich iteration for the complex roots.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactalg::Poly;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootFindError {
    #[error("polynomial has a repeated root")]
    NotSquareFree,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("no convergence after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
    },
}

/// True iff `gcd(p, p')` is constant. Exact.
pub fn is_square_free(p: &Poly) -> bool {
    if p.is_zero() {
        return false;
    }
    p.gcd(&p.derive()).map(|g| g.is_constant()).unwrap_or(false)
}

/// True iff `gcd(p, q)` is constant. Exact.
pub fn common_root_free(p: &Poly, q: &Poly) -> bool {
    if p.is_zero() || q.is_zero() {
        return false;
    }
    p.gcd(q).map(|g| g.is_constant()).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// max over roots of `|p(z)| / (|lead|·max(1,|z|)^deg)`.
    pub residual_bound: f64,
    pub square_free_certificate: bool,
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.roots.iter().map(|z| [z.re, z.im]).collect();
        let mut s = serializer.serialize_struct("RootSet", 3)?;
        s.serialize_field("roots", &pairs)?;
        s.serialize_field("residual_bound", &self.residual_bound)?;
        s.serialize_field("square_free", &self.square_free_certificate)?;
        s.end()
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)| / (|lead|·max(1,|z|)^deg)` for ascending double coefficients.
pub fn scaled_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let deg = coeffs.len().saturating_sub(1) as i32;
    let lead = coeffs.last().copied().unwrap_or(1.0).abs();
    horner(coeffs, z).norm() / (lead * z.norm().max(1.0).powi(deg))
}

/// All roots of a square-free `p`, conjugate-paired.
pub fn find_roots(p: &Poly, tol: f64) -> Result<RootSet, RootFindError> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(RootFindError::ConstantPolynomial),
    };
    if !is_square_free(p) {
        return Err(RootFindError::NotSquareFree);
    }
    let coeffs: Vec<f64> = p.monic().to_f64_coeffs();
    if deg == 1 {
        let z = Complex64::new(-coeffs[0], 0.0);
        return Ok(RootSet {
            residual_bound: scaled_residual(&coeffs, z),
            roots: vec![z],
            square_free_certificate: true,
        });
    }

    // Cauchy bound 1 + max |a_k / a_n|
    let radius = 1.0 + coeffs[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / deg as f64 + 0.4))
        .collect();

    let residual_of = |z: &[Complex64]| {
        z.iter()
            .map(|&r| scaled_residual(&coeffs, r))
            .fold(0.0, f64::max)
    };

    let mut best = f64::INFINITY;
    let mut converged = false;
    let mut settled = 0;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (pv, dpv) = horner_with_derivative(&coeffs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let w = pv / dpv;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        best = best.min(residual_of(&z));
        if best <= tol && max_step < 1e-15 {
            // a couple of extra sweeps once the corrections stall
            settled += 1;
            if settled >= 2 {
                converged = true;
                break;
            }
        }
    }

    pair_conjugates(&mut z, tol);
    let residual_bound = residual_of(&z);
    if !converged && residual_bound > tol {
        return Err(RootFindError::NoConvergence {
            iterations: MAX_ITER,
            best_residual: best.min(residual_bound),
        });
    }
    if residual_bound > tol {
        return Err(RootFindError::NoConvergence {
            iterations: MAX_ITER,
            best_residual: residual_bound,
        });
    }
    sort_roots(&mut z);
    Ok(RootSet {
        roots: z,
        residual_bound,
        square_free_certificate: true,
    })
}

/// Snaps near-real roots onto the axis and averages each remaining root
/// with its closest conjugate partner.
fn pair_conjugates(z: &mut [Complex64], tol: f64) {
    let n = z.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if z[i].im.abs() < tol * (1.0 + z[i].norm()) {
            z[i].im = 0.0;
            done[i] = true;
        }
    }
    let mut upper: Vec<usize> = (0..n).filter(|&i| !done[i] && z[i].im > 0.0).collect();
    upper.sort_by(|&a, &b| z[b].im.total_cmp(&z[a].im));
    for i in upper {
        let partner = (0..n)
            .filter(|&j| !done[j] && j != i && z[j].im < 0.0)
            .min_by(|&a, &b| {
                (z[a] - z[i].conj())
                    .norm()
                    .total_cmp(&(z[b] - z[i].conj()).norm())
            });
        if let Some(j) = partner {
            let avg = (z[i] + z[j].conj()) * 0.5;
            z[i] = avg;
            z[j] = avg.conj();
            done[i] = true;
            done[j] = true;
        }
    }
    for i in 0..n {
        if !done[i] && z[i].im.abs() < 1e-8 * (1.0 + z[i].norm()) {
            z[i].im = 0.0;
        }
    }
}

/// Deterministic order: by real part, then imaginary part.
fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// True iff the multiset is closed under conjugation within `tol`
/// (greedy matching).
pub fn conj_symmetric(roots: &[Complex64], tol: f64) -> bool {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let target = roots[i].conj();
        if (roots[i] - target).norm() <= tol {
            used[i] = true;
            continue;
        }
        let partner = (0..n)
            .filter(|&j| !used[j] && j != i)
            .filter(|&j| (roots[j] - target).norm() <= tol)
            .min_by(|&a, &b| {
                (roots[a] - target)
                    .norm()
                    .total_cmp(&(roots[b] - target).norm())
            });
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

/// Expands `Π (x − r)` in floating point; ascending coefficients.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    c
}
