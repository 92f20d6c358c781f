//! Damped Newton iteration for `F(z) = rhs`.
//!
//! `F` is holomorphic in the points, so a complex step with the complex
//! Jacobian is the same step as Newton on the real/imaginary split. One
//! point is pinned to fix the translation gauge; the remaining `N − 1`
//! unknowns are solved in the least-squares sense, which absorbs the
//! linear dependence `Σ τ_k F_k ≡ 0` among the `N` equations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{jacobian, residual, VortexConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Success threshold on the residual max-norm.
    pub tol: f64,
    /// Below this separation the run is reported as merging.
    pub min_separation: f64,
    /// Index of the pinned point in `(a.., b..)` order; defaults to the
    /// first `b` point (or the first `a` point when there are none).
    pub pin: Option<usize>,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iter: 60,
            tol: 1e-12,
            min_separation: 1e-6,
            pin: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonOutcome {
    pub config: VortexConfig,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NewtonFailureKind {
    SingularJacobian,
    MergingConfiguration,
    Diverged,
    NoConvergence,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("Newton failed ({kind:?}) after {iterations} iterations, residual {residual:e}")]
pub struct NewtonFailure {
    pub kind: NewtonFailureKind,
    pub iterations: usize,
    pub residual: f64,
    pub last: Box<VortexConfig>,
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn newton_solve(
    start: &VortexConfig,
    opts: &NewtonOptions,
) -> Result<NewtonOutcome, NewtonFailure> {
    let n = start.len();
    let pin = opts
        .pin
        .unwrap_or(if start.n() > 0 { start.m() } else { 0 });
    let mut cfg = start.clone();

    let fail = |kind, iterations, residual, last: &VortexConfig| NewtonFailure {
        kind,
        iterations,
        residual,
        last: Box::new(last.clone()),
    };

    let coincident = |cfg: &VortexConfig, it| {
        fail(
            NewtonFailureKind::MergingConfiguration,
            it,
            f64::INFINITY,
            cfg,
        )
    };

    if n == 0 || cfg.min_separation() <= opts.min_separation {
        return Err(coincident(&cfg, 0));
    }

    let mut r = residual(&cfg).map_err(|_| coincident(&cfg, 0))?;
    for it in 0..=opts.max_iter {
        let rn = max_norm(&r);
        if rn < opts.tol {
            return Ok(NewtonOutcome {
                config: cfg,
                iterations: it,
                residual: rn,
            });
        }
        if it == opts.max_iter || n == 1 {
            break;
        }

        let j = jacobian(&cfg).map_err(|_| coincident(&cfg, it))?;
        let free: Vec<usize> = (0..n).filter(|&k| k != pin).collect();
        let jr = DMatrix::from_fn(n, free.len(), |row, col| j[(row, free[col])]);
        let svd = jr.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin.is_nan() || smin <= 1e-13 * smax {
            return Err(fail(NewtonFailureKind::SingularJacobian, it, rn, &cfg));
        }
        let rhs = DVector::from_iterator(n, r.iter().map(|v| -v));
        let delta = svd
            .solve(&rhs, 0.0)
            .map_err(|_| fail(NewtonFailureKind::SingularJacobian, it, rn, &cfg))?;

        // backtracking on the Euclidean residual norm
        let z = cfg.points();
        let base = l2(&r);
        let mut t = 1.0;
        let accepted = loop {
            let mut trial = z.clone();
            for (c, &k) in free.iter().enumerate() {
                trial[k] += delta[c] * t;
            }
            let cand = cfg.with_points(&trial);
            if cand.min_separation() > opts.min_separation {
                if let Ok(rc) = residual(&cand) {
                    if l2(&rc) <= (1.0 - 1e-4 * t) * base || t < 1e-6 {
                        break Some((cand, rc));
                    }
                }
            }
            t *= 0.5;
            if t < 1e-6 {
                break None;
            }
        };
        match accepted {
            Some((cand, rc)) => {
                cfg = cand;
                r = rc;
            }
            None => {
                let kind = if cfg.min_separation() < 1e-3 {
                    NewtonFailureKind::MergingConfiguration
                } else {
                    NewtonFailureKind::NoConvergence
                };
                return Err(fail(kind, it, rn, &cfg));
            }
        }
        if cfg
            .points()
            .iter()
            .any(|p| !p.is_finite() || p.norm() > 1e8)
        {
            return Err(fail(
                NewtonFailureKind::Diverged,
                it + 1,
                max_norm(&r),
                &cfg,
            ));
        }
        if cfg.min_separation() <= opts.min_separation {
            return Err(fail(
                NewtonFailureKind::MergingConfiguration,
                it + 1,
                max_norm(&r),
                &cfg,
            ));
        }
    }
    Err(fail(
        NewtonFailureKind::NoConvergence,
        opts.max_iter,
        max_norm(&r),
        &cfg,
    ))
}
