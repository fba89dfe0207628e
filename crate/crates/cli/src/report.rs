//! Text and JSON renderings of results. Integers go into JSON as exact
//! numbers of any size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};
use truncarr::analysis::{CoefficientVector, ComparisonVerdict, Witness};
use truncarr::{Polynomial, QuasiPolynomial};

pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integers are valid JSON"))
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

/// Ascending coefficients plus the printed form.
pub fn polynomial(p: &Polynomial) -> Value {
    json!({ "coefficients": ints(p.coeffs()), "text": p.to_string() })
}

pub fn quasi_polynomial(qp: &QuasiPolynomial) -> Value {
    let constituents: Vec<Value> = qp
        .constituents()
        .map(|(g, f)| {
            json!({ "g": int(g), "coefficients": ints(f.coeffs()), "text": f.to_string() })
        })
        .collect();
    json!({
        "period": int(qp.period()),
        "q0": int(qp.threshold()),
        "real_space_empty": qp.real_space_empty(),
        "constituents": constituents,
    })
}

pub fn coefficients(v: &CoefficientVector) -> Value {
    json!({ "lower": v.lower(), "upper": v.upper(), "values": ints(v.values()) })
}

pub fn verdict(v: &ComparisonVerdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Index(j)) => json!({ "index": j }),
        Some(Witness::Counts { at_q, at_pq }) => json!({ "at_q": int(at_q), "at_pq": int(at_pq) }),
    };
    json!({
        "hypotheses_hold": v.hypotheses_hold,
        "conclusion_holds": v.conclusion_holds,
        "witness": witness,
    })
}

/// Two lines: hypotheses, then conclusion with its witness if any.
pub fn verdict_text(v: &ComparisonVerdict) -> String {
    let witness = match &v.witness {
        None => String::new(),
        Some(Witness::Index(j)) => format!(" (fails at j = {j})"),
        Some(Witness::Counts { at_q, at_pq }) => format!(" ({at_q} > {at_pq})"),
    };
    format!(
        "hypotheses {}\nconclusion {}{witness}",
        v.hypotheses_hold, v.conclusion_holds
    )
}
