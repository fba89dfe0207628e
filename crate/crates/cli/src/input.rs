//! JSON input files.
//!
//! Arrangement files hold `"A"` (rows), `"a"`, and optionally `"B"`, `"b"`
//! and `"n"`; the dimension comes from the first non-empty matrix, or from
//! `"n"` when both are empty. Graph files hold `"n"`, `"edges"` as 1-based
//! `[tail, head]` pairs, and optionally `"w"` and `"b"`.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Value};
use truncarr::{DirectedMultigraph, IntMatrix, IntVector, TruncatedArrangement};

use crate::CliError;

pub struct GraphFile {
    pub graph: DirectedMultigraph,
    pub weights: Option<IntVector>,
    pub supplies: Option<IntVector>,
}

fn read_object(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Input(format!(
            "{}: expected a JSON object",
            path.display()
        ))),
        Err(e) => Err(CliError::Input(format!("{}: {e}", path.display()))),
    }
}

fn integer(v: &Value, what: &str) -> Result<BigInt, CliError> {
    let bad = || CliError::Input(format!("{what}: expected an integer, found {v}"));
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn list<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Input(format!("{what}: expected a list")))
}

fn vector(v: &Value, what: &str) -> Result<IntVector, CliError> {
    list(v, what)?
        .iter()
        .map(|x| integer(x, what))
        .collect::<Result<Vec<_>, _>>()
        .map(IntVector::new)
}

fn rows(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    list(v, what)?
        .iter()
        .map(|row| {
            list(row, what)?
                .iter()
                .map(|x| integer(x, what))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

fn count(v: &Value, what: &str) -> Result<usize, CliError> {
    integer(v, what)?
        .try_into()
        .map_err(|_| CliError::Input(format!("{what}: expected a nonnegative count")))
}

fn matrix(rows: Vec<Vec<BigInt>>, cols: usize, what: &str) -> Result<IntMatrix, CliError> {
    IntMatrix::from_rows(cols, rows).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

pub fn read_arrangement(path: &Path) -> Result<TruncatedArrangement, CliError> {
    let obj = read_object(path)?;
    let field = |key: &str| obj.get(key);

    let a_rows = match field("A") {
        Some(v) => rows(v, "A")?,
        None => return Err(CliError::Input("missing field \"A\"".into())),
    };
    let offsets = match field("a") {
        Some(v) => vector(v, "a")?,
        None => return Err(CliError::Input("missing field \"a\"".into())),
    };
    let b_rows = field("B")
        .map(|v| rows(v, "B"))
        .transpose()?
        .unwrap_or_default();
    let rhs = field("b").map(|v| vector(v, "b")).transpose()?;
    let declared = field("n").map(|v| count(v, "n")).transpose()?;

    let n = match (a_rows.first().or(b_rows.first()).map(Vec::len), declared) {
        (Some(found), Some(n)) if found != n => {
            return Err(CliError::Input(format!(
                "rows have length {found} but \"n\" is {n}"
            )))
        }
        (Some(found), _) => found,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(CliError::Input(
                "no rows to infer the dimension from; add \"n\"".into(),
            ))
        }
    };
    let rhs = match rhs {
        Some(rhs) => rhs,
        None if b_rows.is_empty() => IntVector::default(),
        None => return Err(CliError::Input("\"B\" given without \"b\"".into())),
    };
    TruncatedArrangement::new(
        matrix(a_rows, n, "A")?,
        offsets,
        matrix(b_rows, n, "B")?,
        rhs,
    )
    .map_err(|e| CliError::Input(e.to_string()))
}

pub fn read_graph(path: &Path) -> Result<GraphFile, CliError> {
    let obj = read_object(path)?;
    let n = match obj.get("n") {
        Some(v) => count(v, "n")?,
        None => return Err(CliError::Input("missing field \"n\"".into())),
    };
    let edge_list = match obj.get("edges") {
        Some(v) => list(v, "edges")?,
        None => return Err(CliError::Input("missing field \"edges\"".into())),
    };
    let mut edges = Vec::with_capacity(edge_list.len());
    for e in edge_list {
        let ends = list(e, "edges")?;
        let [tail, head] = ends.as_slice() else {
            return Err(CliError::Input(format!("edge {e}: expected [tail, head]")));
        };
        let vertex = |v: &Value| -> Result<usize, CliError> {
            match count(v, "edges")? {
                k if (1..=n).contains(&k) => Ok(k - 1),
                k => Err(CliError::Input(format!(
                    "edge endpoint {k} outside 1..={n}"
                ))),
            }
        };
        edges.push((vertex(tail)?, vertex(head)?));
    }
    let graph = DirectedMultigraph::new(n, edges).map_err(|e| CliError::Input(e.to_string()))?;

    let weights = obj.get("w").map(|v| vector(v, "w")).transpose()?;
    if let Some(w) = &weights {
        if w.len() != graph.edge_count() {
            return Err(CliError::Input(format!(
                "\"w\" has {} entries for {} edges",
                w.len(),
                graph.edge_count()
            )));
        }
    }
    let supplies = obj.get("b").map(|v| vector(v, "b")).transpose()?;
    if let Some(b) = &supplies {
        if b.len() != n {
            return Err(CliError::Input(format!(
                "\"b\" has {} entries for {n} vertices",
                b.len()
            )));
        }
    }
    Ok(GraphFile {
        graph,
        weights,
        supplies,
    })
}
