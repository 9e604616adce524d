//! JSON rendering of reports. All numbers pass through serde_json's
//! shortest-roundtrip formatting, so identical inputs produce
//! byte-identical reports; non-finite margins become null.

use serde_json::{json, Value};

use lurefrac::criteria::CriterionVerdict;
use lurefrac::tf::{CommensurateTF, StabilityReport};

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

pub fn plant_json(g: &CommensurateTF) -> Value {
    json!({
        "alpha": g.alpha(),
        "num": g.num().coeffs(),
        "den": g.den().coeffs(),
        "warnings": g.warnings(),
    })
}

pub fn stability_json(report: &StabilityReport) -> Value {
    let poles: Vec<Value> = report
        .pole_args
        .iter()
        .map(|p| {
            json!({
                "re": num(p.root.re),
                "im": num(p.root.im),
                "arg_abs": num(p.arg_abs),
                "margin": num(p.margin),
            })
        })
        .collect();
    json!({
        "bibo": report.bibo,
        "unstable_pole_count": report.n_p,
        "l2_finite": report.l2_finite,
        "relative_degree": num(report.relative_degree),
        "popov_applicable": report.popov_applicable,
        "poles": poles,
    })
}

pub fn verdict_json(v: &CriterionVerdict) -> Value {
    json!({
        "pass": v.pass,
        "case": v.case_used.as_str(),
        "margin": num(v.margin),
        "witness_omega": num(v.witness_omega),
        "notes": v.notes,
    })
}

pub fn print_report(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization")
    );
}
