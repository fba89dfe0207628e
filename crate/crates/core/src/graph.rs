//! Colorings and flows of directed multigraphs as truncated arrangements.
//!
//! Vertices and edges are indexed from 0. Loops and parallel edges are allowed;
//! the edge order fixes the orientation and the order of the hyperplanes.

use num_bigint::BigInt;

use crate::arrangement::{Limits, QuasiPolynomial, TruncatedArrangement};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedMultigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl DirectedMultigraph {
    /// `edges` are `(tail, head)` pairs of vertex indices below `vertex_count`.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = edges
            .iter()
            .find(|&&(t, h)| t >= vertex_count || h >= vertex_count)
        {
            return Err(Error::Shape(format!(
                "edge ({t}, {h}) leaves the vertex range 0..{vertex_count}"
            )));
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `n x m`: `+1` at the head and `-1` at the tail of each link, a zero
    /// column for each loop.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let (n, m) = (self.vertex_count, self.edges.len());
        let mut entries = vec![BigInt::from(0); n * m];
        for (e, &(tail, head)) in self.edges.iter().enumerate() {
            if tail != head {
                entries[head * m + e] = BigInt::from(1);
                entries[tail * m + e] = BigInt::from(-1);
            }
        }
        IntMatrix::new(n, m, entries).expect("entry count matches shape")
    }

    pub(crate) fn check_edge_labels(&self, w: &IntVector) -> Result<()> {
        if w.len() != self.edge_count() {
            return Err(Error::Shape(format!(
                "{} edge weights for {} edges",
                w.len(),
                self.edge_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_vertex_labels(&self, b: &IntVector) -> Result<()> {
        if b.len() != self.vertex_count {
            return Err(Error::Shape(format!(
                "{} vertex supplies for {} vertices",
                b.len(),
                self.vertex_count
            )));
        }
        Ok(())
    }
}

/// Hyperplanes `x_head - x_tail = w_e`, one per edge, without truncation.
pub fn affinographic_arrangement(
    g: &DirectedMultigraph,
    w: &IntVector,
) -> Result<TruncatedArrangement> {
    g.check_edge_labels(w)?;
    TruncatedArrangement::untruncated(g.incidence_matrix().transpose(), w.clone())
}

/// Coordinate hyperplanes `f_e = 0` in `R^m`, truncated by the conservation
/// equations `M_G f = b`.
pub fn flow_arrangement(g: &DirectedMultigraph, b: &IntVector) -> Result<TruncatedArrangement> {
    g.check_vertex_labels(b)?;
    let m = g.edge_count();
    TruncatedArrangement::new(
        IntMatrix::identity(m),
        IntVector::zeros(m),
        g.incidence_matrix(),
        b.clone(),
    )
}

/// Number of colorings `c: V -> Z_q` with `c(head) - c(tail) != w_e` on
/// every edge.
pub fn count_colorings(
    g: &DirectedMultigraph,
    w: &IntVector,
    q: impl Into<BigInt>,
    limits: &Limits,
) -> Result<BigInt> {
    affinographic_arrangement(g, w)?
        .profiles_with(limits)?
        .count_complement(q)
}

/// Number of nowhere-zero flows `f: E -> Z_q \ {0}` with net inflow `b_v` at
/// every vertex. Zero when the supplies admit no flow mod `q`.
pub fn count_flows(
    g: &DirectedMultigraph,
    b: &IntVector,
    q: impl Into<BigInt>,
    limits: &Limits,
) -> Result<BigInt> {
    flow_arrangement(g, b)?
        .profiles_with(limits)?
        .count_complement(q)
}

/// The counting quasi-polynomial of weighted colorings, its first
/// constituent `chi(G, w; t)` and the threshold `q_w` above which it counts.
pub fn modular_chromatic_polynomial(
    g: &DirectedMultigraph,
    w: &IntVector,
    limits: &Limits,
) -> Result<(QuasiPolynomial, Polynomial, BigInt)> {
    Ok(split(
        affinographic_arrangement(g, w)?
            .profiles_with(limits)?
            .quasi_polynomial(),
    ))
}

/// The counting quasi-polynomial of nowhere-zero flows with supply `b`, its
/// first constituent `tau(G, b; t)` and the threshold `q_b`.
pub fn flow_polynomial(
    g: &DirectedMultigraph,
    b: &IntVector,
    limits: &Limits,
) -> Result<(QuasiPolynomial, Polynomial, BigInt)> {
    Ok(split(
        flow_arrangement(g, b)?
            .profiles_with(limits)?
            .quasi_polynomial(),
    ))
}

fn split(qp: QuasiPolynomial) -> (QuasiPolynomial, Polynomial, BigInt) {
    let poly = qp.characteristic_polynomial().clone();
    let threshold = qp.threshold().clone();
    (qp, poly, threshold)
}
