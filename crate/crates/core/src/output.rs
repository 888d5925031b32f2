//! JSON and CSV renderings of results. Floats are rounded to 12
//! significant digits so outputs are byte-stable across platforms.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::enumerate::EnumerationResult;
use crate::partition::{ClassCount, KappaValue, PartialComparison, PartitionResult};

/// Rounds to 12 significant digits; non-finite values become `None`.
pub fn round12(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    format!("{x:.11e}").parse().ok()
}

fn number(x: f64) -> serde_json::Value {
    round12(x)
        .and_then(serde_json::Number::from_f64)
        .map_or(serde_json::Value::Null, serde_json::Value::Number)
}

#[derive(Serialize)]
struct CountsJson<'a> {
    surface: String,
    orientable: bool,
    euler_characteristic: i64,
    counts: &'a BTreeMap<usize, usize>,
}

pub fn enumeration_json(result: &EnumerationResult) -> String {
    let counts = result.counts();
    let doc = CountsJson {
        surface: result.surface.name(),
        orientable: result.surface.orientable,
        euler_characteristic: result.surface.euler_characteristic,
        counts: &counts,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct TermJson {
    k: usize,
    #[serde(rename = "C")]
    class_count: serde_json::Value,
    kappa: serde_json::Value,
    term: serde_json::Value,
}

#[derive(Serialize)]
struct PartitionJson {
    surface: String,
    mu: serde_json::Value,
    #[serde(rename = "D")]
    dimension: u32,
    mode: &'static str,
    value: serde_json::Value,
    converged: bool,
    mu_critical: serde_json::Value,
    terms: Vec<TermJson>,
}

fn class_count_json(c: &ClassCount) -> serde_json::Value {
    match c {
        ClassCount::Exact(n) => serde_json::Value::from(*n),
        ClassCount::Asymptotic(x) => number(*x),
    }
}

fn kappa_json(k: &KappaValue) -> serde_json::Value {
    match k {
        KappaValue::Exact(n) => n.to_u64().map_or_else(
            || serde_json::Value::String(n.to_string()),
            serde_json::Value::from,
        ),
        KappaValue::Bound(x) => number(*x),
    }
}

fn partition_doc(r: &PartitionResult) -> PartitionJson {
    PartitionJson {
        surface: r.surface.name(),
        mu: number(r.mu),
        dimension: r.dimension,
        mode: r.mode.name(),
        value: number(r.value),
        converged: r.converged,
        mu_critical: number(r.mu_critical),
        terms: r
            .terms
            .iter()
            .map(|t| TermJson {
                k: t.k,
                class_count: class_count_json(&t.class_count),
                kappa: kappa_json(&t.kappa),
                term: number(t.term),
            })
            .collect(),
    }
}

pub fn partition_json(r: &PartitionResult) -> String {
    serde_json::to_string_pretty(&partition_doc(r)).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct PartialJson {
    mode: &'static str,
    mu: serde_json::Value,
    #[serde(rename = "D")]
    dimension: u32,
    ratio: serde_json::Value,
    sphere: PartitionJson,
    torus: PartitionJson,
}

pub fn partial_json(p: &PartialComparison) -> String {
    let (s, t) = p.values();
    let doc = PartialJson {
        mode: p.sphere.mode.name(),
        mu: number(p.sphere.mu),
        dimension: p.sphere.dimension,
        ratio: number(s / t),
        sphere: partition_doc(&p.sphere),
        torus: partition_doc(&p.torus),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn csv_field(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One row per term.
pub fn partition_csv(results: &[&PartitionResult]) -> String {
    let mut out = String::from("surface,mode,mu,D,k,n_vertices,C,kappa,log_term,term\n");
    for r in results {
        for t in &r.terms {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.surface.name(),
                r.mode.name(),
                csv_field(&number(r.mu)),
                r.dimension,
                t.k,
                t.n_vertices,
                csv_field(&class_count_json(&t.class_count)),
                csv_field(&kappa_json(&t.kappa)),
                csv_field(&number(t.log_term)),
                csv_field(&number(t.term)),
            ));
        }
    }
    out
}
