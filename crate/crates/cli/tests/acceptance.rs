//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use dualmetric::oracle::{max_discrepancy, ORACLE_MAX_DIM};
use dualmetric::products::inverse_matrix_via_formula;
use dualmetric::sampling::{random_graded, random_metric};
use dualmetric::{
    Dimension, Duality, MetricExtensor, MetricSpace, MetricTensor, Multiform, Multivector,
};
use dualmetric_cli::suite::{identities, Suite};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_TOL: f64 = 1e-10;
const SUITE_TOL: f64 = 1e-9;
const INVERT_TOL: f64 = 1e-9;
const VARIANT_TOL: f64 = 1e-12;
const GAMMA6_TOL: f64 = 1e-9;
const DET_TOL: f64 = 1e-9;
const NORM_PRODUCT_TOL: f64 = 1e-10;
const ROUND_TRIP_TOL: f64 = 1e-14;
const RECIPROCITY_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dim(n: usize) -> Dimension {
    Dimension::new(n).expect("small dimension")
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale > 1e-12 {
        diff / scale
    } else {
        diff
    }
}

fn within(name: &str, worst: f64, tol: f64) -> Outcome {
    let msg = format!("{name} {worst:.3e} (limit {tol:e})");
    if worst <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=ORACLE_MAX_DIM {
        let duality = Duality::new(dim(n));
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        for _ in 0..100 {
            worst = worst.max(max_discrepancy(&duality, &mut rng).map_err(|e| e.to_string())?);
        }
    }
    within("max_abs", worst, ORACLE_TOL)
}

fn identity_suite() -> Outcome {
    let total = identities().len();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for n in 1..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + n as u64);
        let metrics: Vec<DMatrix<f64>> = (0..20).map(|_| random_metric(dim(n), &mut rng)).collect();
        let suite = Suite::new(&metrics, 200, 2024 + n as u64, SUITE_TOL).map_err(|e| e.to_string())?;
        for report in suite.run() {
            worst = worst.max(report.max_rel);
            if !report.passed {
                failures.push(format!("n={n}: {report}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{total} identities x n=1..6, max_rel {worst:.3e} (limit {SUITE_TOL:e})"))
    } else {
        Err(failures.join("; "))
    }
}

fn inversion_formula() -> Outcome {
    let (mut worst, mut variants) = (0.0f64, 0.0f64);
    for n in 2..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
        for _ in 0..100 {
            let g = random_metric(dim(n), &mut rng);
            let lu = MetricExtensor::from_matrix(g.clone()).map_err(|e| e.to_string())?;
            let a = inverse_matrix_via_formula(&g, false).map_err(|e| e.to_string())?;
            let b = inverse_matrix_via_formula(&g, true).map_err(|e| e.to_string())?;
            worst = worst.max((&a - lu.inverse_matrix()).amax());
            variants = variants.max((&a - &b).amax());
        }
    }
    let msg = format!("vs LU {worst:.3e} (limit {INVERT_TOL:e}), variants {variants:.3e} (limit {VARIANT_TOL:e})");
    if worst < INVERT_TOL && variants <= VARIANT_TOL {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn extended_inversion() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + n as u64);
        for _ in 0..200 {
            let space = MetricSpace::from_matrix(random_metric(dim(n), &mut rng)).map_err(|e| e.to_string())?;
            let phi: Multiform = random_graded(dim(n), &mut rng);
            let expected = space.extensor().extend_inverse(&phi).map_err(|e| e.to_string())?;
            for got in [
                space.invert_extension_via_formula(&phi),
                space.invert_extension_via_formula_alt(&phi),
            ] {
                let got = got.map_err(|e| e.to_string())?;
                worst = worst.max(rel(got.max_abs_diff(&expected), expected.max_abs()));
            }
        }
    }
    within("max_rel", worst, GAMMA6_TOL)
}

fn pseudoscalar_laws() -> Outcome {
    let (mut det_err, mut prod_err) = (0.0f64, 0.0f64);
    let mut negative = 0;
    for n in 1..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + n as u64);
        for _ in 0..20 {
            let space = MetricSpace::from_matrix(random_metric(dim(n), &mut rng)).map_err(|e| e.to_string())?;
            let ps = space.extensor().pseudoscalars();
            let ee = space.scalar_product_mv(&ps.e_wedge, &ps.e_wedge).map_err(|e| e.to_string())?;
            let up = space.scalar_product_mv(&ps.e_wedge_up, &ps.e_wedge_up).map_err(|e| e.to_string())?;
            let det = space.extensor().determinant();
            negative += usize::from(det < 0.0);
            det_err = det_err.max(rel((ee - det).abs(), det.abs()));
            prod_err = prod_err.max((ee * up - 1.0).abs());
        }
    }
    let msg = format!(
        "e.e vs det G {det_err:.3e} (limit {DET_TOL:e}), (e.e)(e^.e^) - 1 {prod_err:.3e} (limit {NORM_PRODUCT_TOL:e}), {negative} of 120 metrics with det < 0"
    );
    if det_err <= DET_TOL && prod_err <= NORM_PRODUCT_TOL && negative > 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn theorem_round_trip() -> Outcome {
    let (mut matrix_err, mut eval_err) = (0.0f64, 0.0f64);
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for t in 0..1000 {
        let d = dim(1 + t % 6);
        let tensor = MetricTensor::new(random_metric(d, &mut rng)).map_err(|e| e.to_string())?;
        let gamma = MetricExtensor::from_tensor(&tensor).map_err(|e| e.to_string())?;
        let back = gamma.to_tensor();
        matrix_err = matrix_err.max((back.matrix() - tensor.matrix()).amax());
        let v: Vec<f64> = (0..d.get()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let w: Vec<f64> = (0..d.get()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let v = Multivector::vector(d, &v).map_err(|e| e.to_string())?;
        let w = Multivector::vector(d, &w).map_err(|e| e.to_string())?;
        let lhs = dualmetric::pair(&gamma.apply(&v).map_err(|e| e.to_string())?, &w).map_err(|e| e.to_string())?;
        let rhs = tensor.eval(&v, &w).map_err(|e| e.to_string())?;
        // The two sides sum the same n² products in different orders, so the
        // error is measured against Σ|v_j G_jk w_k| rather than |g(v, w)|,
        // which can cancel to near zero.
        let (vp, wp) = (v.vector_part(), w.vector_part());
        let magnitude: f64 = (0..d.get())
            .flat_map(|j| (0..d.get()).map(move |k| (j, k)))
            .map(|(j, k)| (vp[j] * tensor.matrix()[(j, k)] * wp[k]).abs())
            .sum();
        eval_err = eval_err.max(rel((lhs - rhs).abs(), magnitude));
    }
    let msg = format!(
        "tensor round trip {matrix_err:.3e}, <γ(v),w> vs g(v,w) {eval_err:.3e} (limit {ROUND_TRIP_TOL:e})"
    );
    if matrix_err <= ROUND_TRIP_TOL && eval_err <= ROUND_TRIP_TOL {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Every increasing `j` tuple against every `k` tuple (repeats allowed) of
/// each grade `p ≤ n`.
fn reciprocity() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for n in 1..=5 {
        let d = dim(n);
        let mut rng = ChaCha8Rng::seed_from_u64(700 + n as u64);
        let space = MetricSpace::from_matrix(random_metric(d, &mut rng)).map_err(|e| e.to_string())?;
        let (up, down) = space.extensor().reciprocal_basis();
        for p in 1..=n {
            for &mask in d.grades().masks(p) {
                let js: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let lower = Multivector::blade(d, &js.iter().map(|j| j + 1).collect::<Vec<_>>())
                    .map_err(|e| e.to_string())?;
                let upper_f = Multiform::blade(d, &js.iter().map(|j| j + 1).collect::<Vec<_>>())
                    .map_err(|e| e.to_string())?;
                for flat in 0..n.pow(p as u32) {
                    let ks: Vec<usize> = (0..p).map(|i| (flat / n.pow(i as u32)) % n).collect();
                    let symbol =
                        DMatrix::from_fn(p, p, |a, b| if js[a] == ks[b] { 1.0 } else { 0.0 }).determinant();
                    let mut upper = Multivector::scalar(d, 1.0);
                    let mut lower_f = Multiform::scalar(d, 1.0);
                    for &k in &ks {
                        upper = upper.wedge(&up[k]).map_err(|e| e.to_string())?;
                        lower_f = lower_f.wedge(&down[k]).map_err(|e| e.to_string())?;
                    }
                    let mv = space.scalar_product_mv(&lower, &upper).map_err(|e| e.to_string())?;
                    let mf = space.scalar_product_mf(&upper_f, &lower_f).map_err(|e| e.to_string())?;
                    worst = worst.max((mv - symbol).abs()).max((mf - symbol).abs());
                    checked += 1;
                }
            }
        }
    }
    within(&format!("{checked} tuple pairs, max_abs"), worst, RECIPROCITY_TOL)
}

fn bundled_configs() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("configs directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    out.sort();
    out
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dualmetric"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("`{}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cli_contract() -> Outcome {
    let configs = bundled_configs();
    let path = |name: &str| {
        configs
            .iter()
            .find(|p| p.file_name().is_some_and(|f| f == name))
            .map(|p| p.to_string_lossy().into_owned())
            .ok_or(format!("missing configs/{name}"))
    };
    let indefinite = path("indefinite5.conf")?;
    let first = cli(&["check", "--config", &indefinite, "--seed", "31"])?;
    let second = cli(&["check", "--config", &indefinite, "--seed", "31"])?;
    if first != second {
        return Err("check output differs between identical runs".into());
    }

    let diag = path("diag23.conf")?;
    for (expr, expected) in [("e1 . e1", "2"), ("pair(J, I)", "1"), ("ginv(d1)", "0.5*e1")] {
        let got = cli(&["eval", "--config", &diag, expr])?;
        if got.trim() != expected {
            return Err(format!("eval {expr:?} printed {:?}, expected {expected:?}", got.trim()));
        }
    }

    let mut worst = 0.0f64;
    for config in &configs {
        let text = cli(&["invert", "--config", &config.to_string_lossy()])?;
        let diff: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("max_abs_diff "))
            .and_then(|v| v.parse().ok())
            .ok_or(format!("no max_abs_diff from {}", config.display()))?;
        worst = worst.max(diff);
    }
    let msg = format!(
        "check reproducible, 3 eval examples, invert on {} configs max diff {worst:.3e} (limit {INVERT_TOL:e})",
        configs.len()
    );
    if worst < INVERT_TOL {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle_equivalence", oracle_equivalence),
        ("identity_suite", identity_suite),
        ("inversion_formula", inversion_formula),
        ("extended_inversion", extended_inversion),
        ("pseudoscalar_laws", pseudoscalar_laws),
        ("theorem_round_trip", theorem_round_trip),
        ("reciprocity", reciprocity),
        ("cli_contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
