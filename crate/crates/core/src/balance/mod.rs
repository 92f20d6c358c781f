//! The balancing map for `m` positively and `n` negatively oriented vortices.
//!
//! With all points stacked as `z = (a_1..a_m, b_1..b_n)` and orientations
//! `τ = (+1..+1, −1..−1)`, the left-hand side of equation `k` is
//! `F_k = Σ_{j≠k} τ_j / (z_k − z_j)`. Each equation is compared against a
//! right-hand side taken from a [`RhsPreset`]; the map is homogeneous,
//! `F(λz) = F(z)/λ`, so presets with proportional right-hand sides describe
//! the same configurations up to scaling.

mod map;
mod newton;
mod nondeg;
mod search;

pub use map::{jacobian, lhs, residual, tau_weighted_sum};
pub use newton::{newton_solve, NewtonFailure, NewtonFailureKind, NewtonOptions, NewtonOutcome};
pub use nondeg::{nondegeneracy, nondegeneracy_of_matrix, NondegReport, DEFAULT_KERNEL_TOL};
pub use search::{random_search, SearchClass, SearchOptions};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BalanceError {
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("right-hand sides of {from} and {to} are not proportional")]
    NonProportionalPresets { from: String, to: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("configuration needs at least one point")]
    Empty,
}

/// Right-hand side shared by all `a`-equations and by all `b`-equations.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsPreset {
    pub name: String,
    pub rhs_a: Complex64,
    pub rhs_b: Complex64,
}

impl RhsPreset {
    pub const PAPER_BALANCE: &'static str = "paper-balance";
    pub const PQ_ROOTS: &'static str = "pq-roots";
    pub const ALPHA0_FORM: &'static str = "alpha0-form";
    pub const REDUCED_EMBEDDING: &'static str = "reduced-embedding";

    pub const BUILTIN: [&'static str; 4] = [
        Self::PAPER_BALANCE,
        Self::PQ_ROOTS,
        Self::ALPHA0_FORM,
        Self::REDUCED_EMBEDDING,
    ];

    /// Built-in presets for given `(m, n)`:
    ///
    /// * `paper-balance`: `(−n, −m)`
    /// * `pq-roots`: `(−n/2, −m/2)`, satisfied by roots of a solution pair
    ///   of the bilinear equation
    /// * `alpha0-form`: `(n/(m+n), m/(m+n))`, i.e. `(½ − 1/α₀, ½ + 1/α₀)`
    /// * `reduced-embedding`: `(−n/(m+n), −m/(m+n))`, the scale at which
    ///   `α₀ + z/|ln ε|` cancels the leading order of the reduced problem
    pub fn builtin(name: &str, m: usize, n: usize) -> Result<Self, BalanceError> {
        let (mf, nf) = (m as f64, n as f64);
        let total = mf + nf;
        let (ra, rb) = match name {
            Self::PAPER_BALANCE => (-nf, -mf),
            Self::PQ_ROOTS => (-nf / 2.0, -mf / 2.0),
            Self::ALPHA0_FORM => (nf / total, mf / total),
            Self::REDUCED_EMBEDDING => (-nf / total, -mf / total),
            other => return Err(BalanceError::UnknownPreset(other.to_string())),
        };
        Ok(Self {
            name: name.to_string(),
            rhs_a: Complex64::new(ra, 0.0),
            rhs_b: Complex64::new(rb, 0.0),
        })
    }
}

/// Positions of positively (`a`) and negatively (`b`) oriented vortices.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexConfig {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub preset: RhsPreset,
}

impl VortexConfig {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>, preset: RhsPreset) -> Self {
        Self { a, b, preset }
    }

    /// Uses the named built-in preset for this `(m, n)`.
    pub fn with_builtin(
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        preset: &str,
    ) -> Result<Self, BalanceError> {
        let preset = RhsPreset::builtin(preset, a.len(), b.len())?;
        Ok(Self { a, b, preset })
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `a` points followed by `b` points.
    pub fn points(&self) -> Vec<Complex64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    /// `+1` for `a` points, `−1` for `b` points.
    pub fn orientations(&self) -> Vec<f64> {
        std::iter::repeat_n(1.0, self.m())
            .chain(std::iter::repeat_n(-1.0, self.n()))
            .collect()
    }

    pub fn with_points(&self, z: &[Complex64]) -> Self {
        let (a, b) = z.split_at(self.m());
        Self {
            a: a.to_vec(),
            b: b.to_vec(),
            preset: self.preset.clone(),
        }
    }

    pub fn rhs(&self) -> Vec<Complex64> {
        std::iter::repeat_n(self.preset.rhs_a, self.m())
            .chain(std::iter::repeat_n(self.preset.rhs_b, self.n()))
            .collect()
    }

    pub fn min_separation(&self) -> f64 {
        let z = self.points();
        let mut best = f64::INFINITY;
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                best = best.min((z[i] - z[j]).norm());
            }
        }
        best
    }

    pub fn centroid(&self) -> Complex64 {
        let z = self.points();
        z.iter().sum::<Complex64>() / z.len().max(1) as f64
    }

    pub fn translated(&self, c: Complex64) -> Self {
        let z: Vec<Complex64> = self.points().iter().map(|p| p + c).collect();
        self.with_points(&z)
    }

    pub fn scaled(&self, lambda: Complex64) -> Self {
        let z: Vec<Complex64> = self.points().iter().map(|p| p * lambda).collect();
        self.with_points(&z)
    }

    /// Max pointwise distance after removing the centroid from both
    /// configurations; `a`/`b` points are compared in stored order.
    pub fn distance_mod_translation(&self, other: &VortexConfig) -> f64 {
        if self.m() != other.m() || self.n() != other.n() {
            return f64::INFINITY;
        }
        let (c1, c2) = (self.centroid(), other.centroid());
        self.points()
            .iter()
            .zip(other.points())
            .map(|(p, q)| ((p - c1) - (q - c2)).norm())
            .fold(0.0, f64::max)
    }

    /// Like [`Self::distance_mod_translation`] but matches points within each
    /// orientation class greedily instead of by position in the list.
    pub fn matched_distance_mod_translation(&self, other: &VortexConfig) -> f64 {
        if self.m() != other.m() || self.n() != other.n() {
            return f64::INFINITY;
        }
        let (c1, c2) = (self.centroid(), other.centroid());
        let shift = |v: &[Complex64], c: Complex64| v.iter().map(|p| p - c).collect::<Vec<_>>();
        greedy_match(&shift(&self.a, c1), &shift(&other.a, c2))
            .max(greedy_match(&shift(&self.b, c1), &shift(&other.b, c2)))
    }

    /// Re-expresses the configuration under `to` using homogeneity:
    /// every point is multiplied by `λ = rhs_from / rhs_to`.
    pub fn rescale(&self, to: &RhsPreset) -> Result<Self, BalanceError> {
        let lambda = scale_factor(&self.preset, to, self.m(), self.n())?;
        let mut out = self.scaled(lambda);
        out.preset = to.clone();
        Ok(out)
    }
}

fn greedy_match(x: &[Complex64], y: &[Complex64]) -> f64 {
    let mut used = vec![false; y.len()];
    let mut worst = 0.0f64;
    for p in x {
        let best = (0..y.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (p - y[i]).norm().total_cmp(&(p - y[j]).norm()));
        match best {
            Some(j) => {
                used[j] = true;
                worst = worst.max((p - y[j]).norm());
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// The common ratio `rhs_from / rhs_to` over the nonempty equation groups.
pub fn scale_factor(
    from: &RhsPreset,
    to: &RhsPreset,
    m: usize,
    n: usize,
) -> Result<Complex64, BalanceError> {
    let err = || BalanceError::NonProportionalPresets {
        from: from.name.clone(),
        to: to.name.clone(),
    };
    let mut ratio: Option<Complex64> = None;
    for (count, f, t) in [(m, from.rhs_a, to.rhs_a), (n, from.rhs_b, to.rhs_b)] {
        if count == 0 {
            continue;
        }
        match (f.norm() == 0.0, t.norm() == 0.0) {
            (true, true) => continue,
            (false, false) => {}
            _ => return Err(err()),
        }
        let r = f / t;
        match ratio {
            None => ratio = Some(r),
            Some(prev) if (prev - r).norm() <= 1e-12 * prev.norm().max(1.0) => {}
            Some(_) => return Err(err()),
        }
    }
    Ok(ratio.unwrap_or(Complex64::new(1.0, 0.0)))
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl Serialize for VortexConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VortexConfig", 5)?;
        s.serialize_field("m", &self.m())?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("preset", &self.preset.name)?;
        s.serialize_field("a", &pairs(&self.a))?;
        s.serialize_field("b", &pairs(&self.b))?;
        s.end()
    }
}
