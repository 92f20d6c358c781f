//! Seeded multi-start Newton search for balanced configurations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    newton_solve, nondegeneracy, residual, BalanceError, NewtonOptions, NondegReport, RhsPreset,
    VortexConfig, DEFAULT_KERNEL_TOL,
};
use crate::rootfind::conj_symmetric;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub preset: String,
    /// Starts are drawn in the disk of this radius.
    pub radius: f64,
    /// Two solutions closer than this after centering are the same class.
    pub dedup_tol: f64,
    pub newton: NewtonOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            preset: RhsPreset::PQ_ROOTS.to_string(),
            radius: 3.0,
            dedup_tol: 1e-6,
            newton: NewtonOptions::default(),
        }
    }
}

/// One configuration class, represented by its first hit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchClass {
    pub config: VortexConfig,
    /// Number of attempts that landed in this class.
    pub hits: usize,
    /// First attempt index that found it.
    pub first_attempt: usize,
    pub residual: f64,
    /// Closed under conjugation after moving the centroid onto the real axis.
    pub conjugate_symmetric: bool,
    pub nondegeneracy: NondegReport,
}

fn random_in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let t = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(r, t)
}

/// `count` points closed under conjugation; real points first.
fn symmetric_points(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Complex64> {
    let pairs = rng.random_range(0..=count / 2);
    let reals = count - 2 * pairs;
    let mut out = Vec::with_capacity(count);
    for _ in 0..reals {
        out.push(Complex64::new(
            radius * (2.0 * rng.random::<f64>() - 1.0),
            0.0,
        ));
    }
    for _ in 0..pairs {
        let mut z = random_in_disk(rng, radius);
        if z.im.abs() < 1e-3 {
            z.im = 1e-3;
        }
        out.push(z);
        out.push(z.conj());
    }
    out
}

/// The start for attempt `index`, a pure function of `(seed, index)`.
pub fn search_start(
    m: usize,
    n: usize,
    seed: u64,
    index: usize,
    opts: &SearchOptions,
) -> Result<VortexConfig, BalanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let a = symmetric_points(&mut rng, m, opts.radius);
    let b = symmetric_points(&mut rng, n, opts.radius);
    VortexConfig::with_builtin(a, b, &opts.preset)
}

fn centered_on_axis(cfg: &VortexConfig) -> VortexConfig {
    let c = cfg.centroid();
    cfg.translated(Complex64::new(0.0, -c.im))
}

/// Runs `tries` seeded Newton attempts and groups the successes into
/// classes up to translation. Attempts may run in parallel; the result
/// depends only on `(m, n, tries, seed, opts)`.
pub fn random_search(
    m: usize,
    n: usize,
    tries: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<Vec<SearchClass>, BalanceError> {
    if m + n == 0 {
        return Err(BalanceError::Empty);
    }
    RhsPreset::builtin(&opts.preset, m, n)?;

    let outcomes: Vec<Option<VortexConfig>> = (0..tries)
        .into_par_iter()
        .map(|i| {
            let start = search_start(m, n, seed, i, opts).ok()?;
            newton_solve(&start, &opts.newton).ok().map(|o| o.config)
        })
        .collect();

    let mut classes: Vec<SearchClass> = Vec::new();
    for (i, found) in outcomes.into_iter().enumerate() {
        let Some(cfg) = found else { continue };
        if let Some(cls) = classes
            .iter_mut()
            .find(|c| c.config.matched_distance_mod_translation(&cfg) < opts.dedup_tol)
        {
            cls.hits += 1;
            continue;
        }
        let cfg = centered_on_axis(&cfg);
        let res = residual(&cfg)?.iter().map(|r| r.norm()).fold(0.0, f64::max);
        let symmetric = conj_symmetric(&cfg.points(), opts.dedup_tol);
        let nondeg = nondegeneracy(&cfg, DEFAULT_KERNEL_TOL)?;
        classes.push(SearchClass {
            config: cfg,
            hits: 1,
            first_attempt: i,
            residual: res,
            conjugate_symmetric: symmetric,
            nondegeneracy: nondeg,
        });
    }
    Ok(classes)
}
