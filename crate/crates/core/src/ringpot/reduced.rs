use serde::Serialize;

use super::{potential_a, HalfPlanePoint, RingError};
use crate::balance::{RhsPreset, VortexConfig};
use crate::exactalg::BigRat;

/// `2(m+n)/(m−n)`.
pub fn alpha0(m: i64, n: i64) -> Result<BigRat, RingError> {
    if m == n {
        return Err(RingError::EqualCounts);
    }
    Ok(BigRat::frac(2 * (m + n), m - n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    pub cfg: VortexConfig,
    pub eps: f64,
    pub alpha0: f64,
    /// Profile constant of the self-interaction term; defaults to 0.
    pub c1: f64,
}

impl ReducedInstance {
    pub fn new(cfg: VortexConfig, eps: f64) -> Result<Self, RingError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(RingError::InvalidEps(eps));
        }
        let a0 = alpha0(cfg.m() as i64, cfg.n() as i64)?.to_f64();
        Ok(Self {
            cfg,
            eps,
            alpha0: a0,
            c1: 0.0,
        })
    }

    pub fn with_c1(mut self, c1: f64) -> Self {
        self.c1 = c1;
        self
    }

    pub fn log_scale(&self) -> f64 {
        self.eps.ln().abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedResidual {
    /// Max over the radial equations, divided by `|ln ε|`.
    pub row_norm1: f64,
    /// Max over the axial equations.
    pub row_norm2: f64,
}

/// Embedded points `α₀ + z/|ln ε|`, with `z` taken at the
/// `reduced-embedding` scale, plus their orientations.
pub fn embed(inst: &ReducedInstance) -> Result<(Vec<HalfPlanePoint>, Vec<f64>), RingError> {
    let (m, n) = (inst.cfg.m(), inst.cfg.n());
    let target = RhsPreset::builtin(RhsPreset::REDUCED_EMBEDDING, m, n)?;
    let cfg = inst.cfg.rescale(&target)?;
    let l = inst.log_scale();
    let pts: Vec<HalfPlanePoint> = cfg
        .points()
        .iter()
        .map(|z| HalfPlanePoint::new(inst.alpha0 + z.re / l, z.im / l))
        .collect();
    for (index, p) in pts.iter().enumerate() {
        if p.x1.is_nan() || p.x1 <= 0.0 {
            return Err(RingError::LeavesHalfPlane { index, value: p.x1 });
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                return Err(RingError::CoincidentEmbedded(i, j));
            }
        }
    }
    Ok((pts, cfg.orientations()))
}

/// Leading-log form of the reduced problem.
pub fn reduced_residual(inst: &ReducedInstance) -> Result<ReducedResidual, RingError> {
    let (p, tau) = embed(inst)?;
    let l = inst.log_scale();
    let ln_eps = inst.eps.ln();
    let mut row1 = 0.0f64;
    let mut row2 = 0.0f64;
    for j in 0..p.len() {
        let (mut s1, mut s2) = (0.0, 0.0);
        for k in (0..p.len()).filter(|&k| k != j) {
            let d1 = p[j].x1 - p[k].x1;
            let d2 = p[j].x2 - p[k].x2;
            let w = tau[j] * tau[k] / (d1 * d1 + d2 * d2);
            s1 += w * d1;
            s2 += w * d2;
        }
        let r1 = tau[j] * l + 2.0 * ln_eps / p[j].x1 + 2.0 * s1;
        row1 = row1.max(r1.abs() / l);
        row2 = row2.max((2.0 * s2).abs());
    }
    Ok(ReducedResidual {
        row_norm1: row1,
        row_norm2: row2,
    })
}

/// The reduced problem with the exact ring potential. Partial derivatives
/// of `A` use central differences with step `1e−6` times the minimum
/// separation of the embedded points.
pub fn reduced_residual_elliptic(inst: &ReducedInstance) -> Result<ReducedResidual, RingError> {
    let (p, tau) = embed(inst)?;
    let l = inst.log_scale();
    let ln_eps = inst.eps.ln();
    let mut sep = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            sep = sep.min(p[i].dist(p[j]));
        }
    }
    let h = if sep.is_finite() { 1e-6 * sep } else { 1e-6 };

    let mut row1 = 0.0f64;
    let mut row2 = 0.0f64;
    for j in 0..p.len() {
        let x = p[j];
        let (mut sa, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for k in (0..p.len()).filter(|&k| k != j) {
            let w = tau[j] * tau[k];
            let at =
                |d1: f64, d2: f64| potential_a(p[k], HalfPlanePoint::new(x.x1 + d1, x.x2 + d2));
            sa += w * at(0.0, 0.0)?;
            s1 += w * (at(h, 0.0)? - at(-h, 0.0)?) / (2.0 * h);
            s2 += w * (at(0.0, h)? - at(0.0, -h)?) / (2.0 * h);
        }
        let r1 = tau[j] * l + 2.0 * ln_eps / x.x1
            - 2.0 * x.x1.ln() / x.x1
            - 2.0 * inst.c1 / x.x1
            - 2.0 * sa / x.x1
            - 2.0 * s1;
        row1 = row1.max(r1.abs() / l);
        row2 = row2.max((2.0 * s2).abs());
    }
    Ok(ReducedResidual {
        row_norm1: row1,
        row_norm2: row2,
    })
}
