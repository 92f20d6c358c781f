mod common;

use amvortex::balance::*;
use amvortex::exactalg::Poly;
use amvortex::genpoly::{AMSequence, Route};
use amvortex::rootfind::*;
use amvortex::Complex64;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn roots_match_published_tables() {
    for (pair, (ta, tb)) in published_pairs().iter().zip(published_roots()) {
        let ra = find_roots(&pair.p, 1e-12).unwrap();
        let rb = find_roots(&pair.q, 1e-12).unwrap();
        assert!(ra.residual_bound < 1e-12 && rb.residual_bound < 1e-12);
        assert!(
            table_distance(&ta, &ra.roots) < 0.01,
            "a points of ({}, {})",
            pair.m,
            pair.n
        );
        assert!(
            table_distance(&tb, &rb.roots) < 0.01,
            "b points of ({}, {})",
            pair.m,
            pair.n
        );
    }
}

#[test]
fn sequence_roots_reconstruct_their_polynomials() {
    let seq = AMSequence::generate(12, Route::Wronskian).unwrap();
    for n in 1..=12 {
        let p = seq.poly(n).unwrap();
        let next = seq.poly(n + 1);
        assert!(is_square_free(&p), "n = {n}");
        if let Some(q) = &next {
            assert!(common_root_free(&p, q), "n = {n}");
        }
        let rs = find_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), n);
        assert!(conj_symmetric(&rs.roots, 1e-9));
        // compare against the coefficients of Π(x + |r|), the natural scale
        // of rounding in the expansion
        let rebuilt = expand_roots(&rs.roots);
        let abs: Vec<Complex64> = rs.roots.iter().map(|z| c(-z.norm(), 0.0)).collect();
        let mag = expand_roots(&abs);
        for (k, want) in p.to_f64_coeffs().iter().enumerate() {
            let tol = 1e-7 * mag[k].re.abs();
            assert!((rebuilt[k].re - want).abs() <= tol, "n = {n}, k = {k}");
            assert!(rebuilt[k].im.abs() <= tol);
        }
    }
}

#[test]
fn degenerate_pairs_fail_exact_checks() {
    let d = degenerate_pairs();
    assert!(!is_square_free(&d[0].p));
    assert!(!common_root_free(&d[0].p, &d[0].q));
    assert!(!is_square_free(&d[1].q));
    assert!(matches!(
        find_roots(&d[1].q, 1e-12),
        Err(RootFindError::NotSquareFree)
    ));
}

#[test]
fn published_configs_balance() {
    for cfg in pair_configs() {
        let r = residual(&cfg).unwrap();
        assert!(r.iter().all(|v| v.norm() < 1e-10));
        let pb = cfg
            .rescale(&RhsPreset::builtin("paper-balance", cfg.m(), cfg.n()).unwrap())
            .unwrap();
        assert!(residual(&pb).unwrap().iter().all(|v| v.norm() < 1e-10));
    }
}

#[test]
fn published_configs_nondegenerate() {
    for cfg in pair_configs() {
        let rep = nondegeneracy(&cfg, DEFAULT_KERNEL_TOL).unwrap();
        let sv = &rep.singular_values;
        assert_eq!(rep.kernel_dim, 1);
        assert!(sv[sv.len() - 2] > 1e-3 * sv[0]);
        assert!(rep.translation_residual < 1e-10);
        assert!(rep.signed_transpose_kernel_aligned);
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    for cfg in pair_configs() {
        let j = jacobian(&cfg).unwrap();
        let fd = fd_jacobian(&cfg, 1e-6);
        let mut err = 0.0f64;
        let mut size = 0.0f64;
        for (k, row) in fd.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                err = err.max((j[(k, l)] - v).norm());
                size = size.max(j[(k, l)].norm());
            }
        }
        assert!(err <= 1e-5 * size);
    }
}

fn perturbed(cfg: &VortexConfig, rng: &mut ChaCha8Rng, radius: f64) -> VortexConfig {
    let z: Vec<Complex64> = cfg
        .points()
        .iter()
        .map(|p| {
            let r = radius * rng.random::<f64>().sqrt();
            p + Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
        })
        .collect();
    cfg.with_points(&z)
}

#[test]
fn newton_recovers_from_small_noise() {
    for (idx, cfg) in pair_configs().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        let hits = (0..50)
            .filter(|_| {
                let start = perturbed(cfg, &mut rng, 1e-2);
                newton_solve(&start, &NewtonOptions::default())
                    .map(|o| o.config.matched_distance_mod_translation(cfg) < 1e-8)
                    .unwrap_or(false)
            })
            .count();
        assert!(hits >= 48, "config {idx}: {hits}/50");
    }
}

#[test]
fn search_finds_known_classes() {
    let opts = SearchOptions::default();
    let known21 = &pair_configs()[0];
    let classes = random_search(2, 1, 100, 0, &opts).unwrap();
    assert_eq!(classes.len(), 1);
    assert!(classes[0].config.matched_distance_mod_translation(known21) < 1e-8);

    let known32 = &pair_configs()[1];
    let classes = random_search(3, 2, 200, 0, &opts).unwrap();
    assert!(classes
        .iter()
        .any(|c| c.config.matched_distance_mod_translation(known32) < 1e-8));
    assert_eq!(classes, random_search(3, 2, 200, 0, &opts).unwrap());
}

fn distinct(z: &[Complex64]) -> bool {
    (0..z.len()).all(|i| (i + 1..z.len()).all(|j| (z[i] - z[j]).norm() > 1e-3))
}

fn arb_config() -> impl Strategy<Value = VortexConfig> {
    (1usize..4, 0usize..4)
        .prop_flat_map(|(m, n)| {
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), m + n).prop_map(move |v| (m, v))
        })
        .prop_filter_map("distinct points", |(m, v)| {
            let z: Vec<Complex64> = v.into_iter().map(|(x, y)| c(x, y)).collect();
            if !distinct(&z) {
                return None;
            }
            let (a, b) = z.split_at(m);
            VortexConfig::with_builtin(a.to_vec(), b.to_vec(), "paper-balance").ok()
        })
}

proptest! {
    #[test]
    fn lhs_is_homogeneous(cfg in arb_config(), lam in 0.2f64..5.0, arg in 0.0f64..std::f64::consts::TAU) {
        let l = Complex64::from_polar(lam, arg);
        let f = lhs(&cfg).unwrap();
        let g = lhs(&cfg.scaled(l)).unwrap();
        for (x, y) in f.iter().zip(&g) {
            prop_assert!((x / l - y).norm() <= 1e-9 * (1.0 + x.norm() / lam));
        }
    }

    #[test]
    fn lhs_is_translation_invariant(cfg in arb_config(), tx in -3.0f64..3.0, ty in -3.0f64..3.0) {
        let f = lhs(&cfg).unwrap();
        let g = lhs(&cfg.translated(c(tx, ty))).unwrap();
        for (x, y) in f.iter().zip(&g) {
            prop_assert!((x - y).norm() <= 1e-9 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn signed_sum_vanishes(cfg in arb_config()) {
        let f = lhs(&cfg).unwrap();
        let scale = f.iter().map(|v| v.norm()).fold(1.0, f64::max);
        prop_assert!(tau_weighted_sum(&cfg).unwrap().norm() <= 1e-10 * scale);
    }

    #[test]
    fn conjugation_equivariance(cfg in arb_config()) {
        let conj: Vec<Complex64> = cfg.points().iter().map(|z| z.conj()).collect();
        let f = lhs(&cfg).unwrap();
        let g = lhs(&cfg.with_points(&conj)).unwrap();
        for (x, y) in f.iter().zip(&g) {
            prop_assert!((x.conj() - y).norm() <= 1e-10 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn jacobian_rows_sum_to_zero(cfg in arb_config()) {
        let j = jacobian(&cfg).unwrap();
        let rep = nondegeneracy_of_matrix(&j, &cfg.orientations(), 1e-8);
        prop_assert!(rep.translation_residual < 1e-10);
        prop_assert!(rep.signed_transpose_kernel_residual < 1e-10);
    }

    #[test]
    fn shift_roots_follow(p in proptest::collection::vec(-5i64..5, 2..6), s in -3i64..3) {
        let mut c = p.clone();
        c.push(1);
        let poly = Poly::from_ints(&c);
        prop_assume!(is_square_free(&poly));
        let shifted = poly.shift(&amvortex::exactalg::BigRat::from(s));
        let r1 = find_roots(&poly, 1e-10).unwrap().roots;
        let r2 = find_roots(&shifted, 1e-10).unwrap().roots;
        let moved: Vec<Complex64> = r2.iter().map(|z| z + s as f64).collect();
        prop_assert!(table_distance(&r1, &moved) < 1e-5);
    }
}
