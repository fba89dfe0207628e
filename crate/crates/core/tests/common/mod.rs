#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use truncarr::{DirectedMultigraph, IntMatrix, IntVector, TruncatedArrangement};

pub const BUDGET: u64 = 10_000_000;

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn worked_example() -> TruncatedArrangement {
    TruncatedArrangement::new(
        IntMatrix::from_rows(2, [[2, 2]]).unwrap(),
        IntVector::from([3]),
        IntMatrix::from_rows(2, [[2, 0]]).unwrap(),
        IntVector::from([0]),
    )
    .unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, len: usize, bound: i64) -> IntVector {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// `n <= 3`, `m <= 4`, `l <= 2`, entries in `[-3, 3]`.
pub fn random_instance(rng: &mut impl Rng) -> TruncatedArrangement {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(0..=4);
    let l = rng.gen_range(0..=2);
    TruncatedArrangement::new(
        random_matrix(rng, m, n, 3),
        random_vector(rng, m, 3),
        random_matrix(rng, l, n, 3),
        random_vector(rng, l, 3),
    )
    .unwrap()
}

/// The deterministic instance list shared by the sweeps.
pub fn sweep(seed: u64, count: usize) -> Vec<TruncatedArrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng)).collect()
}

/// Same normals and constraints with both right-hand sides zeroed.
pub fn centralize(arr: &TruncatedArrangement) -> TruncatedArrangement {
    TruncatedArrangement::new(
        arr.normals().clone(),
        IntVector::zeros(arr.num_hyperplanes()),
        arr.constraints().clone(),
        IntVector::zeros(arr.num_constraints()),
    )
    .unwrap()
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
        IntMatrix::new(rows, cols, xs.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn vector_strategy(len: usize) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-3i64..=3, len).prop_map(IntVector::from_iter)
}

pub fn arrangement_strategy() -> impl Strategy<Value = TruncatedArrangement> {
    (1usize..=3, 0usize..=4, 0usize..=2).prop_flat_map(|(n, m, l)| {
        (
            matrix_strategy(m, n),
            vector_strategy(m),
            matrix_strategy(l, n),
            vector_strategy(l),
        )
            .prop_map(|(a, av, b, bv)| TruncatedArrangement::new(a, av, b, bv).unwrap())
    })
}

/// Directed multigraphs with `n <= 4` vertices and `m <= 5` edges, loops and
/// parallel edges included.
pub fn graph_strategy() -> impl Strategy<Value = DirectedMultigraph> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=5)
            .prop_map(move |edges| DirectedMultigraph::new(n, edges).unwrap())
    })
}
