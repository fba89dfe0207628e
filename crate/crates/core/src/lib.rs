//! Exact counting for truncated integral hyperplane arrangements over `Z_q`.
//!
//! For hyperplanes `[A, a]` restricted to `B x = b`, the number of points of
//! `Z_q^n` on the reduced truncation but off every reduced hyperplane is
//! computed from Smith normal forms of the subset systems, and assembled into
//! a quasi-polynomial in `q` with the gcd property. Brute-force oracles,
//! coefficient analysis and graph colorings/flows are built on top.
//!
//! ```
//! use truncarr::{IntMatrix, IntVector, TruncatedArrangement};
//!
//! let arr = TruncatedArrangement::new(
//!     IntMatrix::from_rows(2, [[2, 2]]).unwrap(),
//!     IntVector::from([3]),
//!     IntMatrix::from_rows(2, [[2, 0]]).unwrap(),
//!     IntVector::from([0]),
//! )
//! .unwrap();
//! assert_eq!(arr.count_complement(6).unwrap(), 12.into());
//! let qp = arr.characteristic_quasi_polynomial().unwrap();
//! assert_eq!(qp.to_string(), "period 2; q0 0; g=1: t - 1; g=2: 2t");
//! ```

pub mod analysis;
pub mod arrangement;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod polynomial;

pub use arrangement::{
    divisors, Limits, ProfileTable, QuasiPolynomial, Subset, SubsetProfile, TruncatedArrangement,
    DEFAULT_MAX_HYPERPLANES, DEFAULT_ORACLE_BUDGET,
};
pub use error::{Error, Result};
pub use graph::DirectedMultigraph;
pub use linalg::{IntMatrix, IntVector, ModqFactors, SmithForm};
pub use polynomial::Polynomial;
