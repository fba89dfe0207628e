//! Brute-force ground truth over `Z_q^n`.
//!
//! Every function here enumerates points in row-major lexicographic order
//! (last coordinate fastest) and refuses to start when the point count exceeds
//! the given budget. None of them touch the Smith-form machinery, so they can
//! serve as independent checks of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;

use crate::arrangement::TruncatedArrangement;
use crate::error::{self, Error, Result};
use crate::graph::DirectedMultigraph;
use crate::linalg::{IntMatrix, IntVector};

/// Integer data reduced into `0..q`.
struct Reduced {
    q: u64,
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
}

impl Reduced {
    fn new(m: &IntMatrix, c: &IntVector, q: u64) -> Self {
        let qb = BigInt::from(q);
        let red = |x: &BigInt| x.mod_floor(&qb).to_u64().expect("reduced below q");
        Self {
            q,
            rows: m
                .row_vectors()
                .map(|r| r.iter().map(red).collect())
                .collect(),
            rhs: c.iter().map(red).collect(),
        }
    }

    fn row_value(&self, i: usize, x: &[u64]) -> u64 {
        let q = self.q as u128;
        let v = self.rows[i]
            .iter()
            .zip(x)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % q);
        v as u64
    }

    fn holds(&self, i: usize, x: &[u64]) -> bool {
        self.row_value(i, x) == self.rhs[i]
    }

    fn all_hold(&self, x: &[u64]) -> bool {
        (0..self.rows.len()).all(|i| self.holds(i, x))
    }
}

/// Checks `q^n` against the budget and returns `(q, q^n)` as machine
/// integers. `q` itself must also fit the budget, which only matters for
/// `n = 0`.
fn point_count(q: &BigInt, n: usize, budget: u64) -> Result<(u64, u64)> {
    let points: BigInt = Pow::pow(q, n as u32);
    let fits = |x: &BigInt| x.to_u64().filter(|&v| v <= budget);
    match (fits(q), fits(&points)) {
        (Some(q), Some(p)) => Ok((q, p)),
        _ => Err(Error::EnumerationBudget {
            points: points.max(q.clone()),
            budget,
        }),
    }
}

fn decode(mut index: u64, q: u64, out: &mut [u64]) {
    for x in out.iter_mut().rev() {
        *x = index % q;
        index /= q;
    }
}

/// Counts points of `Z_q^n` accepted by `keep`, in parallel over index ranges.
fn count_points<F>(n: usize, q: u64, points: u64, keep: F) -> BigInt
where
    F: Fn(&[u64]) -> bool + Sync,
{
    let q = q.max(1);
    let hits = (0..points)
        .into_par_iter()
        .map_init(
            || vec![0u64; n],
            |buf, idx| {
                decode(idx, q, buf);
                keep(buf)
            },
        )
        .filter(|&hit| hit)
        .count();
    BigInt::from(hits)
}

/// `#{ x in Z_q^n : M x = c (mod q) }` by exhaustive enumeration.
pub fn brute_count_solutions(
    m: &IntMatrix,
    c: &IntVector,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<BigInt> {
    check_system(m, c)?;
    let q = error::modulus(q)?;
    let (q, points) = point_count(&q, m.cols(), budget)?;
    let sys = Reduced::new(m, c, q);
    Ok(count_points(m.cols(), q, points, |x| sys.all_hold(x)))
}

/// All solutions of `M x = c` over `Z_q`, in enumeration order.
pub fn brute_solutions(
    m: &IntMatrix,
    c: &IntVector,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<Vec<Vec<u64>>> {
    check_system(m, c)?;
    let q = error::modulus(q)?;
    let (q, points) = point_count(&q, m.cols(), budget)?;
    let sys = Reduced::new(m, c, q);
    let mut buf = vec![0u64; m.cols()];
    let mut out = Vec::new();
    for idx in 0..points {
        decode(idx, q, &mut buf);
        if sys.all_hold(&buf) {
            out.push(buf.clone());
        }
    }
    Ok(out)
}

/// Points of `Z_q^n` satisfying `B x = b` and lying on none of the reduced
/// hyperplanes `A_i x = a_i`.
pub fn brute_count_complement(
    arr: &TruncatedArrangement,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<BigInt> {
    let q = error::modulus(q)?;
    let n = arr.dim();
    let (q, points) = point_count(&q, n, budget)?;
    let constraints = Reduced::new(arr.constraints(), arr.constraint_rhs(), q);
    let hyperplanes = Reduced::new(arr.normals(), arr.offsets(), q);
    Ok(count_points(n, q, points, |x| {
        constraints.all_hold(x) && (0..hyperplanes.rows.len()).all(|i| !hyperplanes.holds(i, x))
    }))
}

/// Vertex colorings `c: V -> Z_q` with `c(head) - c(tail) != w(e)` on every
/// edge, enumerated directly on the graph.
pub fn brute_count_colorings(
    g: &DirectedMultigraph,
    w: &IntVector,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<BigInt> {
    g.check_edge_labels(w)?;
    let q = error::modulus(q)?;
    let (q, points) = point_count(&q, g.vertex_count(), budget)?;
    let qb = BigInt::from(q);
    let weights: Vec<u64> = w
        .iter()
        .map(|x| x.mod_floor(&qb).to_u64().expect("reduced"))
        .collect();
    Ok(count_points(g.vertex_count(), q, points, |c| {
        g.edges()
            .iter()
            .zip(&weights)
            .all(|(&(tail, head), &we)| (c[head] + q - c[tail]) % q != we)
    }))
}

/// Edge labelings `f: E -> Z_q \ {0}` whose net inflow at every vertex `v`
/// equals `b(v)`, enumerated directly on the graph.
pub fn brute_count_flows(
    g: &DirectedMultigraph,
    b: &IntVector,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<BigInt> {
    g.check_vertex_labels(b)?;
    let q = error::modulus(q)?;
    let m = g.edge_count();
    let (q, points) = point_count(&q, m, budget)?;
    let qb = BigInt::from(q);
    let supply: Vec<u64> = b
        .iter()
        .map(|x| x.mod_floor(&qb).to_u64().expect("reduced"))
        .collect();
    Ok(count_points(m, q, points, |f| {
        if f.contains(&0) {
            return false;
        }
        let mut net = vec![0u64; g.vertex_count()];
        for (&(tail, head), &x) in g.edges().iter().zip(f) {
            net[head] = (net[head] + x) % q;
            net[tail] = (net[tail] + q - x) % q;
        }
        net == supply
    }))
}

fn check_system(m: &IntMatrix, c: &IntVector) -> Result<()> {
    if m.rows() != c.len() {
        return Err(Error::Shape(format!(
            "right-hand side has length {} but the matrix has {} rows",
            c.len(),
            m.rows()
        )));
    }
    Ok(())
}
