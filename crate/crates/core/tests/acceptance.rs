// Acceptance criteria 1-6. Runs without the libtest harness so that every
// criterion prints exactly one PASS/FAIL line; the process exits nonzero if
// any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncdist_core::{
    geodesic, oracle_graph, oracle_path, solve_block, solve_path, solve_path_fastpath, verify_candidate,
    FastPathCase, Graph, Method, OracleConfig, Path, Reach, Report, SolveOptions, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn path(d: &[f64]) -> Path {
    Path::new(d.to_vec()).unwrap()
}

fn solve(d: &[f64]) -> Report {
    solve_path(&path(d), SolveOptions::default()).unwrap()
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

fn random_weights(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| log_uniform(rng, 0.1, 10.0)).collect()
}

fn regression_cases() -> Vec<(&'static str, Vec<f64>, f64)> {
    vec![
        ("n=2", vec![0.37], 1.0 / 0.37),
        ("n=3 unit", vec![1.0, 1.0], 2f64.sqrt()),
        ("(3,2,1)", vec![3.0, 2.0, 1.0], 4.0 / 3.0),
        ("(2,1,1,1,1)", vec![2.0, 1.0, 1.0, 1.0, 1.0], 1.5 * 3f64.sqrt()),
        ("(1,2,1,2,1)", vec![1.0, 2.0, 1.0, 2.0, 1.0], 3.0),
        ("(3,20,100,10,1000)", vec![3.0, 20.0, 100.0, 10.0, 1000.0], 409f64.sqrt() / 60.0 + 10001f64.sqrt() / 1000.0),
        ("(1,3,2,1,1)", vec![1.0, 3.0, 2.0, 1.0, 1.0], 1.0 + (2.5f64).sqrt()),
        ("(1,1,2,3,1)", vec![1.0, 1.0, 2.0, 3.0, 1.0], 1.0 + (2.5f64).sqrt()),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (name, d, expected) in regression_cases() {
        let r = solve(&d);
        let err = (r.distance - expected).abs();
        worst = worst.max(err);
        if err > 1e-12 {
            failures.push(format!("{name}: {} vs {expected}", r.distance));
        }
    }
    // the maximizers printed alongside the examples
    let s3 = 3f64.sqrt();
    let s10 = 10f64.sqrt();
    let maximizers: Vec<(Vec<f64>, Vec<f64>)> = vec![
        (vec![1.0, 2.0, 1.0, 2.0, 1.0], vec![1.0, 0.0, 1.0, 0.0, 1.0]),
        (vec![2.0, 1.0, 1.0, 1.0, 1.0], vec![1.0 / (2.0 * s3), 1.0 / s3, 1.0 / s3, 1.0 / (2.0 * s3), s3 / 2.0]),
        (
            vec![3.0, 20.0, 100.0, 10.0, 1000.0],
            vec![
                20.0 / (3.0 * 409f64.sqrt()),
                3.0 / (20.0 * 409f64.sqrt()),
                0.0,
                10.0 / 10001f64.sqrt(),
                1.0 / (1000.0 * 10001f64.sqrt()),
            ],
        ),
        (vec![1.0, 3.0, 2.0, 1.0, 1.0], vec![1.0, 0.0, 1.0 / s10, 3.0 / (2.0 * s10), 2.5f64.sqrt() / 2.0]),
        (vec![1.0, 1.0, 2.0, 3.0, 1.0], vec![2.5f64.sqrt() / 2.0, 3.0 / (2.0 * s10), 1.0 / s10, 0.0, 1.0]),
    ];
    for (d, z) in maximizers {
        let r = solve(&d);
        let err = r.optimal_z.iter().zip(&z).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(err);
        if err > 1e-12 {
            failures.push(format!("z for {d:?}: {:?}", r.optimal_z));
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed <= Duration::from_secs(1);
    Outcome {
        passed: failures.is_empty() && fast,
        detail: format!("worst abs error {worst:.2e}, {elapsed:.2?} {}", failures.join("; ")),
    }
}

/// Uniform maximizer: `z_j = [j odd]` for `n = 2k`; otherwise
/// `z_{2j-1} = j s - (j-1)/s`, `z_{2j} = j (1/s - s)` with `s = sqrt((k-1)/k)`.
fn uniform_maximizer(n: usize) -> (f64, Vec<f64>) {
    if n % 2 == 0 {
        let z = (1..n).map(|j| if j % 2 == 1 { 1.0 } else { 0.0 }).collect();
        return ((n / 2) as f64, z);
    }
    let k = ((n + 1) / 2) as f64;
    let s = ((k - 1.0) / k).sqrt();
    let mut z = Vec::new();
    for j in 1..=n / 2 {
        let j = j as f64;
        z.push(j * s - (j - 1.0) / s);
        z.push(j * (1.0 / s - s));
    }
    ((k * (k - 1.0)).sqrt(), z)
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for n in 2..=20 {
        let (value, z) = uniform_maximizer(n);
        let r = solve(&vec![1.0; n - 1]);
        let err = r
            .optimal_z
            .iter()
            .zip(&z)
            .map(|(a, b)| (a - b).abs())
            .fold((r.distance - value).abs(), f64::max);
        worst = worst.max(err);
        if err > 1e-12 || r.optimal_z.len() != z.len() {
            failures.push(format!("n={n}"));
        }
    }
    Outcome { passed: failures.is_empty(), detail: format!("n=2..20, worst error {worst:.2e} {}", failures.join(" ")) }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let instances: Vec<Vec<f64>> = (0..500)
        .map(|_| {
            let n = rng.random_range(3..=7);
            random_weights(&mut rng, n - 1)
        })
        .collect();
    let (mut agree, mut flagged, mut silent) = (0, 0, Vec::new());
    let mut worst_agreeing: f64 = 0.0;
    for (k, d) in instances.iter().enumerate() {
        let exact = solve(d).distance;
        let cfg = OracleConfig { seed: k as u64, ..Default::default() };
        let o = oracle_path(&path(d), &cfg).unwrap();
        let rel = (o.value - exact).abs() / exact;
        if rel <= 1e-6 {
            agree += 1;
            worst_agreeing = worst_agreeing.max(rel);
        } else if o.converged {
            silent.push(format!("#{k} {d:?}: oracle {} exact {exact}", o.value));
        } else {
            flagged += 1;
        }
    }
    let elapsed = start.elapsed();
    let passed = agree * 100 >= 99 * instances.len() && silent.is_empty() && elapsed <= Duration::from_secs(120);
    Outcome {
        passed,
        detail: format!(
            "{agree}/500 within 1e-6 (worst {worst_agreeing:.1e}), {flagged} flagged, {} silent, {elapsed:.1?} {}",
            silent.len(),
            silent.join("; ")
        ),
    }
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Case selected by the weight inequalities, evaluated from scratch.
fn expected_case(d: &[f64]) -> FastPathCase {
    if d.len() == 3 {
        return if d[1] * d[1] > d[0] * d[2] { FastPathCase::FourSplit } else { FastPathCase::FourWhole };
    }
    let mu = [1.0, d[0] / d[1], d[0] * d[2] / (d[1] * d[3])];
    let nu = [1.0, d[1] / d[2]];
    let (m, v) = (norm_sq(&mu), norm_sq(&nu));
    if v > m {
        FastPathCase::FiveSplitLeft
    } else if m > (1.0 + (d[0] / d[1]).powi(2)) * v {
        FastPathCase::FiveSplitRight
    } else {
        FastPathCase::FiveWhole
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let opts = SolveOptions { strategy: Strategy::Enumerate, prune: false, ..Default::default() };
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    for n in [4, 5] {
        for _ in 0..10_000 {
            let d = random_weights(&mut rng, n - 1);
            let p = path(&d);
            let full = solve_path(&p, opts).unwrap();
            let fast = solve_path_fastpath(&p).expect("closed form exists for n <= 5");
            let err = (full.distance - fast.distance).abs();
            worst = worst.max(err);
            let Method::ClosedForm(case) = fast.method else { unreachable!() };
            *seen.entry(case.name()).or_insert(0) += 1;
            if err > 1e-12 || case != expected_case(&d) {
                failures.push(format!("{d:?}"));
            }
        }
    }
    let cases: Vec<String> = seen.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "2x10^4 instances, worst {worst:.1e}, cases {}, {} mismatches {}",
            cases.join(" "),
            failures.len(),
            failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    }
}

fn criterion_5() -> Outcome {
    const INSTANCES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut broken: Vec<String> = Vec::new();
    let mut note = |what: &str, d: &[f64]| {
        if broken.len() < 8 {
            broken.push(format!("{what} {d:?}"));
        }
    };
    let (mut worst_mutnu, mut worst_scale, mut worst_rev): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut counts = [0usize; 7];

    for _ in 0..INSTANCES {
        let n = rng.random_range(2..=12);
        let d = random_weights(&mut rng, n - 1);
        let p = path(&d);

        // mu^t T(z) nu = d_1 sum(z) for arbitrary positive z
        let z: Vec<f64> = (0..n - 1).map(|_| log_uniform(&mut rng, 0.01, 100.0)).collect();
        let res = ncdist_core::bilinear_identity_residual(&p, &z).unwrap();
        worst_mutnu = worst_mutnu.max(res);
        if res > 1e-10 {
            note("muTnu", &d);
        }
        counts[0] += 1;

        // whole-path block value dominates any split at an interior p
        let whole = solve_block(&d).value;
        for split in 2..n.saturating_sub(1) {
            let left = solve_block(&d[..split - 1]).value;
            let right = solve_block(&d[split..]).value;
            if whole < (left + right) * (1.0 - 1e-12) {
                note("prerefine", &d);
            }
            counts[1] += 1;
        }

        // refinements of a viable pattern never do better
        let all = solve_path(&p, SolveOptions { prune: false, all_candidates: true, ..Default::default() }).unwrap();
        let cands = all.candidates.as_ref().unwrap();
        for a in cands {
            for b in cands {
                if a.pattern.is_strict_subset_of(&b.pattern) && b.objective > a.objective * (1.0 + 1e-12) {
                    note("refine", &d);
                }
            }
        }
        let pruned = solve(&d);
        if (pruned.distance - all.distance).abs() > 1e-12 * all.distance {
            note("pruning", &d);
        }
        counts[2] += 1;

        let c = log_uniform(&mut rng, 0.01, 100.0);
        let scaled: Vec<f64> = d.iter().map(|v| c * v).collect();
        let rel = (solve(&scaled).distance - pruned.distance / c).abs() / (pruned.distance / c);
        worst_scale = worst_scale.max(rel);
        if rel > 1e-12 {
            note("homogeneity", &d);
        }
        counts[3] += 1;

        let rev: Vec<f64> = d.iter().rev().copied().collect();
        let rel = (solve(&rev).distance - pruned.distance).abs() / pruned.distance;
        worst_rev = worst_rev.max(rel);
        if rel > 1e-12 {
            note("reversal", &d);
        }
        counts[4] += 1;

        if pruned.distance > pruned.geodesic * (1.0 + 1e-12) {
            note("geodesic", &d);
        }
        counts[5] += 1;

        let v = verify_candidate(&p, &pruned.pattern, &pruned.optimal_z);
        if !v.passed || v.eigen_residual > 1e-9 || v.block_norm_deviation > 1e-9 || v.birkhoff_james > 1e-9 {
            note("verify", &d);
        }
        counts[6] += 1;
    }
    Outcome {
        passed: broken.is_empty(),
        detail: format!(
            "{INSTANCES} instances (muTnu {:.1e}, homogeneity {:.1e}, reversal {:.1e}, {} splits) {}",
            worst_mutnu,
            worst_scale,
            worst_rev,
            counts[1],
            broken.join("; ")
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, d, expected) in regression_cases() {
        let g = Graph::path(&d);
        let cfg = OracleConfig::default();
        let r = oracle_graph(&g, 0, d.len(), &cfg).unwrap();
        match r {
            Reach::Finite(o) => {
                let err = (o.value - expected).abs();
                worst = worst.max(err);
                if err > 1e-6 {
                    failures.push(format!("{name}: {}", o.value));
                }
            }
            Reach::Infinite => failures.push(format!("{name}: infinite")),
        }
    }
    let rows = vec![
        vec![0.0, 1.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 2.0],
        vec![0.0, 0.0, 2.0, 0.0],
    ];
    let split = Graph::from_rows(&rows, 1e-12).unwrap();
    let cfg = OracleConfig::default();
    if !oracle_graph(&split, 0, 2, &cfg).unwrap().is_infinite() || !geodesic(&split, 1, 3).unwrap().is_infinite() {
        failures.push("disconnected pair not infinite".into());
    }
    let exact = 1.0f64 / 3.0 + 1.0 / 2.0 + 1.0;
    let g = geodesic(&Graph::path(&[3.0, 2.0, 1.0]), 0, 3).unwrap();
    if g != Reach::Finite(exact) {
        failures.push(format!("geodesic {g:?}"));
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!("8 paths, worst {worst:.1e}, geodesic {exact:?} {}", failures.join("; ")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("regression values", criterion_1),
        ("uniform closed forms", criterion_2),
        ("oracle equivalence", criterion_3),
        ("case analysis", criterion_4),
        ("property suites", criterion_5),
        ("graph oracle", criterion_6),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {tag}: {name}: {}", k + 1, out.detail.trim_end());
        failed += usize::from(!out.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
