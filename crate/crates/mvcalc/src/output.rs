//! Serialization of results: JSON envelopes, CSV flattening, text lines.
//!
//! JSON objects use `serde_json`'s ordered maps, so identical inputs always
//! produce byte-identical output.

use clifford_core::Multivector;
use curve_calculus::{ProbeReport, ProbeStep};
use serde_json::{json, Map, Value};

/// Blade-label → coefficient object, e.g. `{"1": 2.0, "e12": -0.5}`.
pub fn multivector_json(mv: &Multivector) -> Value {
    let mut object = Map::new();
    for (mask, coeff) in mv.terms() {
        object.insert(mask.label(), json!(coeff));
    }
    Value::Object(object)
}

/// Top-level envelope shared by every command.
pub fn envelope(command: &str, config: Value, result: Value) -> Value {
    json!({
        "command": command,
        "config": config,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Multivector in ascending-mask text form.
pub fn multivector_text(mv: &Multivector) -> String {
    mv.to_string()
}

/// `blade,coefficient` lines.
pub fn multivector_csv(mv: &Multivector) -> String {
    let mut out = String::from("blade,coefficient\n");
    for (mask, coeff) in mv.terms() {
        out.push_str(&format!("{},{coeff:?}\n", mask.label()));
    }
    out
}

pub fn probe_report_json(report: &ProbeReport) -> Value {
    json!({
        "estimate": multivector_json(&report.estimate),
        "trace": report.trace.iter().enumerate().map(|(k, step)| probe_step_json(k, step))
            .collect::<Vec<Value>>(),
        "coefficients": report.coefficients.iter().map(|c| json!({
            "blade": c.blade.label(),
            "converged": c.converged,
            "diverged": c.diverged,
            "last_gap": c.last_gap,
            "last_side_gap": c.last_side_gap,
        })).collect::<Vec<Value>>(),
        "converged": report.converged,
        "verdict": report.verdict.name(),
    })
}

fn probe_step_json(k: usize, step: &ProbeStep) -> Value {
    json!({
        "k": k,
        "delta": step.delta,
        "estimate": multivector_json(&step.estimate),
        // The first step has no predecessor; its gap serializes as null.
        "norm_gap": finite_or_null(step.norm_gap),
        "side_gap": step.side_gap,
    })
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// Flattened probe trace: one row per (step, blade).
pub fn probe_report_csv(report: &ProbeReport) -> String {
    let mut blades: Vec<_> = report
        .trace
        .iter()
        .flat_map(|s| s.estimate.terms().map(|(m, _)| m))
        .collect();
    blades.sort();
    blades.dedup();

    let mut out = String::from("k,delta,blade,coeff,gap\n");
    for (k, step) in report.trace.iter().enumerate() {
        for &blade in &blades {
            let coeff = step.estimate.coefficient(blade);
            let gap = if k == 0 {
                String::new()
            } else {
                let previous = report.trace[k - 1].estimate.coefficient(blade);
                format!("{:?}", (coeff - previous).abs())
            };
            out.push_str(&format!("{k},{:?},{},{coeff:?},{gap}\n", step.delta, blade.label()));
        }
    }
    out
}

pub fn probe_report_text(report: &ProbeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict: {}\n", report.verdict.name()));
    out.push_str(&format!("converged: {}\n", report.converged));
    out.push_str(&format!("estimate: {}\n", report.estimate));
    for (k, step) in report.trace.iter().enumerate() {
        out.push_str(&format!(
            "  k={k:<2} delta={:<12.6e} estimate={} gap={:.3e} side_gap={:.3e}\n",
            step.delta, step.estimate, step.norm_gap, step.side_gap
        ));
    }
    out
}
