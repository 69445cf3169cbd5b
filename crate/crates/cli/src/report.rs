use ncdist_core::{BlockValue, Candidate, Oracle, Path, Report, Verification, ZeroPattern};
use serde_json::{json, Map, Value};

use crate::format::{num, r15};

/// A reported number: rounded to 15 significant digits, `"inf"` when infinite.
pub fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(r15(x))
    } else {
        Value::String(num(x))
    }
}

pub fn jnums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| jnum(x)).collect())
}

/// Input weights at full precision, so they re-parse to the same operator.
pub fn echo(d: &Path) -> Value {
    json!(d.weights())
}

fn pattern(p: &ZeroPattern) -> Value {
    json!(p.zeros())
}

fn blocks(b: &[BlockValue<f64>]) -> Value {
    b.iter().map(|b| json!({"start": b.start, "end": b.end, "value": jnum(b.value)})).collect()
}

pub fn residuals(v: &Verification) -> Value {
    json!({
        "structural": v.structural,
        "eigen": jnum(v.eigen_residual),
        "block_norm": jnum(v.block_norm_deviation),
        "singular_pair": jnum(v.singular_pair_deviation),
        "birkhoff_james": jnum(v.birkhoff_james),
        "passed": v.passed,
    })
}

pub fn candidate(c: &Candidate, verification: Option<&Verification>) -> Value {
    let mut m = Map::new();
    m.insert("pattern".into(), pattern(&c.pattern));
    m.insert("objective".into(), jnum(c.objective));
    m.insert("maximizer".into(), json!(c.is_maximizer));
    m.insert("z".into(), jnums(&c.z));
    m.insert("blocks".into(), blocks(&c.blocks));
    m.insert("residual".into(), jnum(c.residual));
    if let Some(v) = verification {
        m.insert("verified".into(), json!(v.passed));
    }
    Value::Object(m)
}

/// The common solver fields, in report order.
pub fn solution(r: &Report) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("input".into(), echo(&r.weights));
    m.insert("n".into(), json!(r.weights.order()));
    m.insert("distance".into(), jnum(r.distance));
    m.insert("z".into(), jnums(&r.optimal_z));
    m.insert("a".into(), jnums(&r.optimal_a));
    m.insert("pattern".into(), pattern(&r.pattern));
    m.insert("blocks".into(), blocks(&r.blocks));
    m.insert("geodesic".into(), jnum(r.geodesic));
    m.insert("residuals".into(), residuals(&r.verification));
    m
}

pub fn oracle(o: &Oracle, argument_key: &str, cfg: &ncdist_core::OracleConfig) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), jnum(o.value));
    m.insert(argument_key.into(), jnums(&o.argument));
    m.insert("converged".into(), json!(o.converged));
    m.insert("feasibility_residual".into(), jnum(o.feasibility_residual));
    m.insert("iterations".into(), json!(o.iterations));
    m.insert("agreeing_restarts".into(), json!(o.agreeing_restarts));
    m.insert("restarts".into(), json!(cfg.restarts));
    m.insert("seed".into(), json!(cfg.seed));
    Value::Object(m)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64 number")),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => "null".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" "),
    }
}

/// Weights as `--weights` accepts them; matrix rows separated by `;`.
fn echo_text(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(Value::is_array) => {
            items.iter().map(echo_text).collect::<Vec<_>>().join("; ")
        }
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        other => scalar(other),
    }
}

/// One `key: value` line per field; nested objects become dotted keys and
/// lists of objects one indexed line per element.
pub fn to_text(report: &Value) -> String {
    let mut out = String::new();
    let Value::Object(fields) = report else { return scalar(report) + "\n" };
    for (key, value) in fields {
        if key == "input" {
            out.push_str(&format!("input: {}\n", echo_text(value)));
            continue;
        }
        match value {
            Value::Object(inner) => {
                for (k, v) in inner {
                    match v {
                        Value::Array(items) if items.iter().any(Value::is_object) => {
                            for (i, item) in items.iter().enumerate() {
                                out.push_str(&format!("{key}.{k}[{}]: {}\n", i + 1, scalar(item)));
                            }
                        }
                        _ => out.push_str(&format!("{key}.{k}: {}\n", scalar(v))),
                    }
                }
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{key}[{}]: {}\n", i + 1, scalar(item)));
                }
            }
            _ => out.push_str(&format!("{key}: {}\n", scalar(value))),
        }
    }
    out
}
