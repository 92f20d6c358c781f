//! Fixtures shared by the integration targets: the published generating
//! pairs and root tables, plus independent numerical oracles.

#![allow(dead_code)]

use amvortex::balance::VortexConfig;
use amvortex::exactalg::{BigRat, Poly};
use amvortex::rootfind::find_roots;
use amvortex::Complex64;

pub fn poly(desc: &[&str]) -> Poly {
    Poly::new(desc.iter().map(|s| s.parse::<BigRat>().unwrap()).collect())
}

pub struct Pair {
    pub m: usize,
    pub n: usize,
    pub p: Poly,
    pub q: Poly,
}

/// The five published generating pairs, ascending coefficients.
pub fn published_pairs() -> Vec<Pair> {
    vec![
        Pair {
            m: 2,
            n: 1,
            p: poly(&["2", "-2", "1"]),
            q: poly(&["0", "1"]),
        },
        Pair {
            m: 3,
            n: 2,
            p: poly(&["-3/2", "7/2", "-2", "1"]),
            q: poly(&["1", "0", "1"]),
        },
        Pair {
            m: 4,
            n: 3,
            p: poly(&["533/324", "-89/27", "44/9", "-2", "1"]),
            q: poly(&["13/54", "13/6", "0", "1"]),
        },
        Pair {
            m: 5,
            n: 4,
            p: poly(&[
                "-16015/15552",
                "12919/2592",
                "-749/144",
                "449/72",
                "-2",
                "1",
            ]),
            q: poly(&["1337/1296", "16/27", "61/18", "0", "1"]),
        },
        Pair {
            m: 6,
            n: 5,
            p: poly(&[
                "3980046413/2916000000",
                "-57115601/16200000",
                "10810499/1080000",
                "-193279/27000",
                "2269/300",
                "-2",
                "1",
            ]),
            q: poly(&[
                "23805769/48600000",
                "1112099/324000",
                "3607/3600",
                "1669/360",
                "0",
                "1",
            ]),
        },
    ]
}

/// Published pairs with repeated roots, `(m, n, P, Q)`.
pub fn degenerate_pairs() -> Vec<Pair> {
    vec![
        Pair {
            m: 4,
            n: 1,
            p: poly(&["0", "0", "0", "4", "1"]),
            q: poly(&["0", "1"]),
        },
        Pair {
            m: 5,
            n: 3,
            p: poly(&["0", "8/27", "-8/9", "4/3", "-4/3", "1"]),
            q: poly(&["0", "0", "0", "1"]),
        },
    ]
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Published rounded root lists, `a` points then `b` points.
pub fn published_roots() -> Vec<(Vec<Complex64>, Vec<Complex64>)> {
    vec![
        (vec![c(1.0, 1.0), c(1.0, -1.0)], vec![c(0.0, 0.0)]),
        (
            vec![c(0.56, 0.0), c(0.72, 1.48), c(0.72, -1.48)],
            vec![c(0.0, 1.0), c(0.0, -1.0)],
        ),
        (
            vec![
                c(0.393, -0.57),
                c(0.393, 0.57),
                c(0.607, -1.76),
                c(0.607, 1.76),
            ],
            vec![c(-0.11, 0.0), c(0.055, -1.48), c(0.055, 1.48)],
        ),
        (
            vec![
                c(0.255, 0.0),
                c(0.322, -0.938),
                c(0.322, 0.938),
                c(0.55, -1.948),
                c(0.55, 1.948),
            ],
            vec![
                c(-0.107, -0.567),
                c(-0.107, 0.567),
                c(0.107, -1.758),
                c(0.107, 1.758),
            ],
        ),
        (
            vec![
                c(0.191, -0.395),
                c(0.191, 0.395),
                c(0.29, -1.2),
                c(0.29, 1.2),
                c(0.52, -2.09),
                c(0.52, 2.09),
            ],
            vec![
                c(-0.145, 0.0),
                c(-0.078, -0.94),
                c(-0.078, 0.94),
                c(0.15, -1.95),
                c(0.15, 1.95),
            ],
        ),
    ]
}

/// Root configuration of a published pair under `pq-roots`.
pub fn pair_config(pair: &Pair) -> VortexConfig {
    let a = find_roots(&pair.p, 1e-12).unwrap().roots;
    let b = find_roots(&pair.q, 1e-12).unwrap().roots;
    VortexConfig::with_builtin(a, b, "pq-roots").unwrap()
}

pub fn pair_configs() -> Vec<VortexConfig> {
    published_pairs().iter().map(pair_config).collect()
}

/// Largest distance from a published value to its nearest computed value,
/// matching greedily without reuse.
pub fn table_distance(published: &[Complex64], computed: &[Complex64]) -> f64 {
    let mut used = vec![false; computed.len()];
    let mut worst = 0.0f64;
    for p in published {
        let best = (0..computed.len()).filter(|&j| !used[j]).min_by(|&i, &j| {
            (p - computed[i])
                .norm()
                .total_cmp(&(p - computed[j]).norm())
        });
        match best {
            Some(j) => {
                used[j] = true;
                worst = worst.max((p - computed[j]).norm());
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

fn simpson(
    f: &dyn Fn(f64) -> f64,
    (a, b): (f64, f64),
    (fa, fm, fb): (f64, f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, (a, m), (fa, flm, fm), left, 0.5 * tol, depth - 1)
        + simpson(f, (m, b), (fm, frm, fb), right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, (a, b), (fa, fm, fb), whole, tol, 50)
}

/// `K(s)` from its defining integral.
pub fn quad_k(s: f64) -> f64 {
    integrate(
        &|t: f64| (1.0 - s * t.sin().powi(2)).powf(-0.5),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-14,
    )
}

/// `E(s)` from its defining integral.
pub fn quad_e(s: f64) -> f64 {
    integrate(
        &|t: f64| (1.0 - s * t.sin().powi(2)).sqrt(),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-14,
    )
}

/// Central finite-difference Jacobian of the balancing map.
pub fn fd_jacobian(cfg: &VortexConfig, h: f64) -> Vec<Vec<Complex64>> {
    let z = cfg.points();
    let n = z.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut zp = z.clone();
        let mut zm = z.clone();
        zp[j] += h;
        zm[j] -= h;
        let fp = amvortex::balance::lhs(&cfg.with_points(&zp)).unwrap();
        let fm = amvortex::balance::lhs(&cfg.with_points(&zm)).unwrap();
        for k in 0..n {
            out[k][j] = (fp[k] - fm[k]) / (2.0 * h);
        }
    }
    out
}
