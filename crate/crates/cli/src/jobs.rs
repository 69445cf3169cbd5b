use ncdist_core::{
    geodesic, oracle_graph, oracle_path, pattern_count, solve_path, Graph, Method, OracleConfig, Path, Reach,
    SolveOptions, MAX_ENUMERATION_ORDER,
};
use serde_json::{json, Map, Value};

use crate::format::r15;
use crate::report::{self, jnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_NOT_CONVERGED: u8 = 4;

/// Largest relative solver/oracle disagreement accepted by `compare`.
const COMPARE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Solve,
    Oracle,
    Verify,
    Enumerate,
    Compare,
    Geodesic,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub solve: SolveOptions,
    pub oracle: OracleConfig,
    /// Zero-based vertex pair, when given.
    pub pair: Option<(usize, usize)>,
}

pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

fn verified(passed: bool) -> u8 {
    if passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn compare_code(verified: bool, converged: bool, gap: f64, distance: f64) -> u8 {
    if !verified {
        EXIT_VERIFICATION
    } else if !converged {
        EXIT_NOT_CONVERGED
    } else if gap > COMPARE_TOLERANCE * distance {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    }
}

fn pair_value(i: usize, j: usize) -> Value {
    json!([i + 1, j + 1])
}

pub fn run_path(mode: Mode, d: &Path, s: &Settings) -> Result<Outcome, ncdist_core::Error> {
    match mode {
        Mode::Solve => {
            let r = solve_path(d, s.solve)?;
            let mut m = report::solution(&r);
            if let Some(cands) = &r.candidates {
                m.insert("candidates".into(), cands.iter().map(|c| report::candidate(c, None)).collect());
            }
            Ok(Outcome { code: verified(r.verification.passed), report: Value::Object(m) })
        }
        Mode::Verify => {
            let listing = d.order() <= MAX_ENUMERATION_ORDER;
            let r = solve_path(d, SolveOptions { all_candidates: listing, ..s.solve })?;
            let mut m = report::solution(&r);
            let mut ok = r.verification.passed;
            if let Some(cands) = &r.candidates {
                let listed: Vec<Value> = cands
                    .iter()
                    .map(|c| {
                        let v = c.verify(d);
                        ok &= v.passed;
                        report::candidate(c, Some(&v))
                    })
                    .collect();
                m.insert("candidates".into(), Value::Array(listed));
            }
            m.insert("verified".into(), json!(ok));
            Ok(Outcome { code: verified(ok), report: Value::Object(m) })
        }
        Mode::Enumerate => {
            let r = solve_path(d, SolveOptions { all_candidates: true, ..s.solve })?;
            let mut m = Map::new();
            m.insert("input".into(), report::echo(d));
            m.insert("n".into(), json!(d.order()));
            m.insert("patterns".into(), json!(pattern_count(d.order()).to_string()));
            if let Method::Enumeration { evaluated, pruned } = r.method {
                m.insert("evaluated".into(), json!(evaluated));
                m.insert("pruned".into(), json!(pruned));
            }
            let cands = r.candidates.as_deref().unwrap_or_default();
            m.insert("candidates".into(), cands.iter().map(|c| report::candidate(c, None)).collect());
            m.insert("distance".into(), jnum(r.distance));
            m.insert("pattern".into(), json!(r.pattern.zeros()));
            Ok(Outcome { code: verified(r.verification.passed), report: Value::Object(m) })
        }
        Mode::Compare => {
            let r = solve_path(d, s.solve)?;
            let o = oracle_path(d, &s.oracle)?;
            let mut m = report::solution(&r);
            m.insert("oracle".into(), report::oracle(&o, "z", &s.oracle));
            // recomputed from the two printed values, reported exactly
            let gap = (r15(r.distance) - r15(o.value)).abs();
            m.insert("gap".into(), json!(gap));
            let code = compare_code(r.verification.passed, o.converged, gap, r15(r.distance));
            Ok(Outcome { report: Value::Object(m), code })
        }
        Mode::Oracle => {
            let mut m = Map::new();
            m.insert("input".into(), report::echo(d));
            m.insert("n".into(), json!(d.order()));
            let code = match s.pair {
                None => {
                    let o = oracle_path(d, &s.oracle)?;
                    m.insert("oracle".into(), report::oracle(&o, "z", &s.oracle));
                    if o.converged { EXIT_OK } else { EXIT_NOT_CONVERGED }
                }
                Some((i, j)) => {
                    m.insert("pair".into(), pair_value(i, j));
                    graph_oracle(&Graph::path(d.weights()), i, j, s, &mut m)?
                }
            };
            let (i, j) = s.pair.unwrap_or((0, d.order() - 1));
            m.insert("geodesic".into(), reach(geodesic(&Graph::path(d.weights()), i, j)?));
            Ok(Outcome { report: Value::Object(m), code })
        }
        Mode::Geodesic => {
            let (i, j) = s.pair.unwrap_or((0, d.order() - 1));
            let mut m = Map::new();
            m.insert("input".into(), report::echo(d));
            m.insert("n".into(), json!(d.order()));
            m.insert("pair".into(), pair_value(i, j));
            m.insert("geodesic".into(), reach(geodesic(&Graph::path(d.weights()), i, j)?));
            Ok(Outcome { report: Value::Object(m), code: EXIT_OK })
        }
    }
}

fn reach(r: Reach<f64>) -> Value {
    jnum(r.finite().unwrap_or(f64::INFINITY))
}

fn graph_oracle(g: &Graph, i: usize, j: usize, s: &Settings, m: &mut Map<String, Value>) -> Result<u8, ncdist_core::Error> {
    Ok(match oracle_graph(g, i, j, &s.oracle)? {
        Reach::Finite(o) => {
            m.insert("oracle".into(), report::oracle(&o, "a", &s.oracle));
            if o.converged { EXIT_OK } else { EXIT_NOT_CONVERGED }
        }
        Reach::Infinite => {
            m.insert("oracle".into(), json!({"value": "inf"}));
            EXIT_OK
        }
    })
}

/// `oracle` and `geodesic` on a general graph; the pair is required.
pub fn run_graph(mode: Mode, g: &Graph, s: &Settings) -> Result<Outcome, ncdist_core::Error> {
    let (i, j) = s.pair.expect("validated: graph input has a pair");
    let n = g.order();
    let rows: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| g.get(r, c)).collect()).collect();
    let mut m = Map::new();
    m.insert("input".into(), json!(rows));
    m.insert("n".into(), json!(n));
    m.insert("pair".into(), pair_value(i, j));
    let code = match mode {
        Mode::Oracle => graph_oracle(g, i, j, s, &mut m)?,
        _ => EXIT_OK,
    };
    m.insert("geodesic".into(), reach(geodesic(g, i, j)?));
    Ok(Outcome { report: Value::Object(m), code })
}
