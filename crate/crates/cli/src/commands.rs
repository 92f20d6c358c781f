use std::fs;
use std::path::Path;

use amvortex::balance::{
    nondegeneracy, random_search, residual, NondegReport, RhsPreset, SearchOptions, VortexConfig,
    DEFAULT_KERNEL_TOL,
};
use amvortex::exactalg::Poly;
use amvortex::genpoly::{normalized_pair, verify_pq, AMSequence, GenError, Route};
use amvortex::ringpot::{
    alpha0, potential_a, reduced_residual, reduced_residual_elliptic, HalfPlanePoint,
    ReducedInstance, ReducedResidual,
};
use amvortex::rootfind::{common_root_free, conj_symmetric, find_roots, is_square_free, RootSet};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::output::{emit, f17, sidecar, to_csv, to_json, SCHEMA_VERSION, TOOL_VERSION};
use crate::{CliError, Common, Format, RouteArg};

const BALANCE_TOL: f64 = 1e-10;

fn header(command: &str) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("tool_version".into(), json!(TOOL_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

pub fn gen(common: &Common, n: usize, route: RouteArg, cap: usize) -> Result<(), CliError> {
    if n == 0 || n > cap {
        return Err(CliError::Input(format!(
            "--n must lie in 1..={cap}, got {n}"
        )));
    }
    let (route, name) = match route {
        RouteArg::Wronskian => (Route::Wronskian, "wronskian"),
        RouteArg::Recurrence => (Route::Recurrence, "recurrence"),
        RouteArg::Both => (Route::Both, "both"),
    };
    let seq = AMSequence::generate(n, route).map_err(|e| match e {
        GenError::RouteMismatch(k) => CliError::Inconsistent(format!("index {k}")),
        other => CliError::Inconsistent(other.to_string()),
    })?;
    let p = seq.poly(n).expect("generated");
    let q = seq.poly(n - 1).expect("generated");

    let bytes = match common.format {
        Format::Json => {
            let pair = normalized_pair(n - 1, &seq).map_err(input)?;
            let mut doc = header("gen");
            doc.insert("route".into(), json!(name));
            doc.insert("tolerances".into(), json!({}));
            doc.insert("n".into(), json!(n));
            doc.insert("P".into(), json!(p));
            doc.insert("Q".into(), json!(q));
            doc.insert("shift".into(), json!("0"));
            doc.insert("sequence".into(), json!(seq.polys()));
            doc.insert("shifts".into(), json!(seq.shifts()));
            doc.insert("normalized".into(), json!(pair));
            to_json(&doc)?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = seq
                .polys()
                .iter()
                .enumerate()
                .flat_map(|(i, poly)| {
                    poly.coeffs()
                        .iter()
                        .enumerate()
                        .map(move |(k, c)| vec![(i + 1).to_string(), k.to_string(), c.to_string()])
                        .collect::<Vec<_>>()
                })
                .collect();
            to_csv(&["n", "k", "coefficient"], &rows)?
        }
    };
    emit(common.out.as_deref(), &bytes)
}

#[derive(Debug, Deserialize)]
struct PairFile {
    #[serde(rename = "P")]
    p: Poly,
    #[serde(rename = "Q")]
    q: Poly,
}

#[derive(Debug, Serialize)]
struct Certificate {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn roots_or_empty(p: &Poly, tol: f64) -> Result<RootSet, String> {
    match p.degree() {
        Some(0) => Ok(RootSet {
            roots: vec![],
            residual_bound: 0.0,
            square_free_certificate: true,
        }),
        _ => find_roots(p, tol).map_err(|e| e.to_string()),
    }
}

pub fn certify(common: &Common, path: &Path, preset: &str) -> Result<(), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let pair: PairFile = serde_json::from_str(&text).map_err(input)?;
    let (m, n) = match (pair.p.degree(), pair.q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(CliError::Input("P and Q must be nonzero".into())),
    };
    RhsPreset::builtin(preset, m, n).map_err(input)?;

    let mut certs = Vec::new();
    let mut push = |name, passed, detail: String| {
        certs.push(Certificate {
            name,
            passed,
            detail,
        })
    };

    let bil = verify_pq(&pair.p, &pair.q, m as i64, n as i64);
    push("bilinear", bil.is_zero(), format!("residual {bil}"));
    let sf_p = is_square_free(&pair.p);
    let sf_q = is_square_free(&pair.q);
    push("square_free_p", sf_p, String::new());
    push("square_free_q", sf_q, String::new());
    push(
        "common_root_free",
        common_root_free(&pair.p, &pair.q),
        String::new(),
    );

    let mut cfg_json = serde_json::Value::Null;
    let mut nondeg: Option<NondegReport> = None;
    let mut roots_json = serde_json::Value::Null;
    match (
        roots_or_empty(&pair.p, common.tol),
        roots_or_empty(&pair.q, common.tol),
    ) {
        (Ok(ra), Ok(rb)) => {
            let worst = ra.residual_bound.max(rb.residual_bound);
            push(
                "roots",
                worst <= common.tol,
                format!("scaled residual {}", f17(worst)),
            );
            let sym = conj_symmetric(&ra.roots, 1e-9) && conj_symmetric(&rb.roots, 1e-9);
            push("conjugate_symmetric", sym, String::new());
            roots_json = json!({ "a": ra, "b": rb });
            let cfg = VortexConfig::with_builtin(ra.roots, rb.roots, preset).map_err(input)?;
            match residual(&cfg) {
                Ok(r) => {
                    let rn = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
                    push(
                        "balance_residual",
                        rn < BALANCE_TOL,
                        format!("max-norm {}", f17(rn)),
                    );
                }
                Err(e) => push("balance_residual", false, e.to_string()),
            }
            match nondegeneracy(&cfg, DEFAULT_KERNEL_TOL) {
                Ok(rep) => {
                    push(
                        "nondegenerate",
                        rep.is_nondegenerate(),
                        format!("kernel dimension {}", rep.kernel_dim),
                    );
                    nondeg = Some(rep);
                }
                Err(e) => push("nondegenerate", false, e.to_string()),
            }
            cfg_json = json!(cfg);
        }
        (ra, rb) => {
            let why = ra.err().or(rb.err()).unwrap_or_default();
            for name in [
                "roots",
                "conjugate_symmetric",
                "balance_residual",
                "nondegenerate",
            ] {
                push(name, false, format!("not evaluated: {why}"));
            }
        }
    }

    let failed: Vec<&str> = certs.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let bytes = match common.format {
        Format::Json => {
            let mut doc = header("certify");
            doc.insert("preset".into(), json!(preset));
            doc.insert(
                "tolerances".into(),
                json!({
                    "root_residual": common.tol,
                    "balance_residual": BALANCE_TOL,
                    "kernel_relative": DEFAULT_KERNEL_TOL,
                }),
            );
            doc.insert("m".into(), json!(m));
            doc.insert("n".into(), json!(n));
            doc.insert("P".into(), json!(pair.p));
            doc.insert("Q".into(), json!(pair.q));
            doc.insert("all_passed".into(), json!(failed.is_empty()));
            doc.insert("certificates".into(), json!(certs));
            doc.insert("roots".into(), roots_json);
            doc.insert("configuration".into(), cfg_json);
            doc.insert("nondegeneracy".into(), json!(nondeg));
            to_json(&doc)?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = certs
                .iter()
                .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()])
                .collect();
            to_csv(&["certificate", "passed", "detail"], &rows)?
        }
    };
    emit(common.out.as_deref(), &bytes)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certificate(failed.join(", ")))
    }
}

pub fn search(
    common: &Common,
    m: usize,
    n: usize,
    tries: usize,
    seed: u64,
    preset: &str,
) -> Result<(), CliError> {
    if m <= n {
        return Err(CliError::Input(format!(
            "search needs m > n, got m = {m}, n = {n}"
        )));
    }
    let opts = SearchOptions {
        preset: preset.to_string(),
        ..SearchOptions::default()
    };
    let classes = random_search(m, n, tries, seed, &opts).map_err(input)?;
    let bytes = match common.format {
        Format::Json => {
            let mut doc = header("search");
            doc.insert("preset".into(), json!(preset));
            doc.insert(
                "tolerances".into(),
                json!({
                    "newton_residual": opts.newton.tol,
                    "min_separation": opts.newton.min_separation,
                    "dedup": opts.dedup_tol,
                    "kernel_relative": DEFAULT_KERNEL_TOL,
                }),
            );
            doc.insert("m".into(), json!(m));
            doc.insert("n".into(), json!(n));
            doc.insert("tries".into(), json!(tries));
            doc.insert("seed".into(), json!(seed));
            doc.insert("radius".into(), json!(opts.radius));
            doc.insert("class_count".into(), json!(classes.len()));
            doc.insert("classes".into(), json!(classes));
            to_json(&doc)?
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (i, cls) in classes.iter().enumerate() {
                let labelled = cls
                    .config
                    .a
                    .iter()
                    .map(|z| ("a", z))
                    .chain(cls.config.b.iter().map(|z| ("b", z)));
                for (label, z) in labelled {
                    rows.push(vec![
                        i.to_string(),
                        cls.hits.to_string(),
                        label.to_string(),
                        f17(z.re),
                        f17(z.im),
                    ]);
                }
            }
            to_csv(&["class", "hits", "label", "re", "im"], &rows)?
        }
    };
    emit(common.out.as_deref(), &bytes)
}

fn parse_floats(s: &str, count: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    if v.len() != count || v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!(
            "{what}: expected {count} finite numbers"
        )));
    }
    Ok(v)
}

fn axis(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let v = parse_floats(s, 3, what)?;
    let count = v[2];
    if count < 1.0 || count.fract() != 0.0 || v[1] < v[0] {
        return Err(CliError::Input(format!(
            "{what}: expected MIN,MAX,COUNT with MIN <= MAX"
        )));
    }
    let count = count as usize;
    Ok((0..count)
        .map(|i| {
            if count == 1 {
                v[0]
            } else {
                v[0] + (v[1] - v[0]) * i as f64 / (count - 1) as f64
            }
        })
        .collect())
}

pub fn potential(common: &Common, a: &str, x1: &str, x2: &str) -> Result<(), CliError> {
    let av = parse_floats(a, 2, "--a")?;
    let center = HalfPlanePoint::new(av[0], av[1]);
    if center.x1.is_nan() || center.x1 <= 0.0 {
        return Err(CliError::Input("--a must have a1 > 0".into()));
    }
    let g1 = axis(x1, "--x1")?;
    let g2 = axis(x2, "--x2")?;
    if g1[0] <= 0.0 {
        return Err(CliError::Input("grid touches x1 <= 0".into()));
    }
    let mut values = Vec::with_capacity(g1.len() * g2.len());
    for &u in &g1 {
        for &v in &g2 {
            let x = HalfPlanePoint::new(u, v);
            let val = potential_a(center, x)
                .map_err(|e| CliError::Input(format!("grid point ({u}, {v}): {e}")))?;
            values.push((u, v, val));
        }
    }

    // scaling spot-check on the first grid point
    let lambda = 2.5;
    let (u, v, val) = values[0];
    let scaled = potential_a(
        center.scaled(lambda),
        HalfPlanePoint::new(u, v).scaled(lambda),
    )
    .map_err(input)?;
    let rel = (scaled - val).abs() / val.abs().max(f64::MIN_POSITIVE);
    let check_passed = rel <= 1e-12;
    let scaling = json!({
        "lambda": lambda,
        "point": [u, v],
        "value": val,
        "scaled_value": scaled,
        "relative_error": rel,
        "tolerance": 1e-12,
        "passed": check_passed,
    });

    let mut meta = header("potential");
    meta.insert("preset".into(), serde_json::Value::Null);
    meta.insert("tolerances".into(), json!({ "scaling_relative": 1e-12 }));
    meta.insert("a".into(), json!([center.x1, center.x2]));
    meta.insert("grid".into(), json!({ "x1": x1, "x2": x2 }));
    meta.insert("scaling_check".into(), scaling);

    match common.format {
        Format::Json => {
            let rows: Vec<[f64; 3]> = values.iter().map(|&(u, v, a)| [u, v, a]).collect();
            meta.insert("values".into(), json!(rows));
            emit(common.out.as_deref(), &to_json(&meta)?)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|&(u, v, a)| vec![f17(u), f17(v), f17(a)])
                .collect();
            emit(common.out.as_deref(), &to_csv(&["x1", "x2", "A"], &rows)?)?;
            if let Some(out) = &common.out {
                emit(Some(&sidecar(out)), &to_json(&meta)?)?;
            }
        }
    }
    if check_passed {
        Ok(())
    } else {
        Err(CliError::Certificate(format!(
            "scaling check, relative error {rel:e}"
        )))
    }
}

fn generated_config(n: usize, tol: f64) -> Result<VortexConfig, CliError> {
    let seq = AMSequence::generate(n + 1, Route::Wronskian).map_err(input)?;
    let pair = normalized_pair(n, &seq).map_err(input)?;
    let a = roots_or_empty(&pair.p, tol).map_err(CliError::Certificate)?;
    let b = roots_or_empty(&pair.q, tol).map_err(CliError::Certificate)?;
    VortexConfig::with_builtin(a.roots, b.roots, RhsPreset::PQ_ROOTS).map_err(input)
}

#[derive(Serialize)]
struct ReducedRow {
    row_norm1: f64,
    row_norm2: f64,
    elliptic: ReducedResidual,
}

pub fn reduced(common: &Common, m: usize, n: usize, eps: &[f64], c1: f64) -> Result<(), CliError> {
    let a0 = alpha0(m as i64, n as i64).map_err(input)?;
    if m != n + 1 {
        return Err(CliError::Input(format!(
            "generated configurations exist for m = n + 1 only, got m = {m}, n = {n}"
        )));
    }
    if eps.is_empty() {
        return Err(CliError::Input("--eps needs at least one value".into()));
    }
    let cfg = generated_config(n, common.tol)?;
    let mut rows: Vec<(f64, ReducedResidual, ReducedResidual)> = Vec::new();
    for &e in eps {
        let inst = ReducedInstance::new(cfg.clone(), e)
            .map_err(input)?
            .with_c1(c1);
        let log = reduced_residual(&inst).map_err(input)?;
        let ell = reduced_residual_elliptic(&inst).map_err(input)?;
        rows.push((e, log, ell));
    }
    let mut order: Vec<&(f64, ReducedResidual, ReducedResidual)> = rows.iter().collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    let decreasing = order
        .windows(2)
        .all(|w| w[0].1.row_norm1 > w[1].1.row_norm1);

    let bytes = match common.format {
        Format::Json => {
            let mut results = serde_json::Map::new();
            for (e, log, ell) in &rows {
                let row = ReducedRow {
                    row_norm1: log.row_norm1,
                    row_norm2: log.row_norm2,
                    elliptic: *ell,
                };
                results.insert(format!("{e:e}"), json!(row));
            }
            let mut doc = header("reduced");
            doc.insert("preset".into(), json!(RhsPreset::REDUCED_EMBEDDING));
            doc.insert(
                "tolerances".into(),
                json!({ "root_residual": common.tol, "derivative_step_relative": 1e-6 }),
            );
            doc.insert("m".into(), json!(m));
            doc.insert("n".into(), json!(n));
            doc.insert("alpha0".into(), json!(a0));
            doc.insert("c1".into(), json!(c1));
            doc.insert("configuration".into(), json!(cfg));
            doc.insert("results".into(), serde_json::Value::Object(results));
            doc.insert("row_norm1_strictly_decreasing".into(), json!(decreasing));
            to_json(&doc)?
        }
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(e, log, ell)| {
                    vec![
                        format!("{e:e}"),
                        f17(log.row_norm1),
                        f17(log.row_norm2),
                        f17(ell.row_norm1),
                        f17(ell.row_norm2),
                    ]
                })
                .collect();
            to_csv(
                &[
                    "eps",
                    "row_norm1",
                    "row_norm2",
                    "row_norm1_elliptic",
                    "row_norm2_elliptic",
                ],
                &body,
            )?
        }
    };
    emit(common.out.as_deref(), &bytes)
}
