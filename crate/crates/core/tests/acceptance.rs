//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use truncarr::analysis::{
    beta, check_main3, check_main4, check_main5, deletion_restriction, surjectivity_check,
    surjectivity_predicate,
};
use truncarr::graph::{
    count_colorings, count_flows, flow_polynomial, modular_chromatic_polynomial,
};
use truncarr::linalg::{gcd_of_minors, smith_normal_form};
use truncarr::oracle::{brute_count_colorings, brute_count_complement, brute_count_flows};
use truncarr::{
    divisors, DirectedMultigraph, IntMatrix, IntVector, Limits, Polynomial, TruncatedArrangement,
};

use common::{big, random_matrix, sweep, worked_example, BUDGET};

const SWEEP_SEED: u64 = 0x5eed_2024;
const SWEEP_SIZE: usize = 200;
const SNF_SEED: u64 = 0x0005_1f00;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn worked_example_counts() -> Outcome {
    let start = Instant::now();
    let t = worked_example().profiles().map_err(|e| e.to_string())?;
    for q in 3..=12i64 {
        let expected = if q % 2 == 0 { 2 * q } else { q - 1 };
        let got = t.count_complement(q).map_err(|e| e.to_string())?;
        ensure(got == big(expected), || {
            format!("q = {q}: got {got}, expected {expected}")
        })?;
    }
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("q = 3..12 exact, {took:.2?}"))
}

fn worked_example_coefficients() -> Outcome {
    let t = worked_example().profiles().map_err(|e| e.to_string())?;
    let b3 = beta(&t, 3).map_err(|e| e.to_string())?;
    let b6 = beta(&t, 6).map_err(|e| e.to_string())?;
    ensure(b3.lower() == 1 && b3.values() == [big(1), big(1)], || {
        format!("beta(3) = {b3}")
    })?;
    ensure(b6.lower() == 1 && b6.values() == [big(2), big(0)], || {
        format!("beta(6) = {b6}")
    })?;
    let v = check_main3(&t, 3, 6).map_err(|e| e.to_string())?;
    ensure(!v.hypotheses_hold, || {
        format!("main3(3, 6) hypotheses reported true: {v:?}")
    })?;
    Ok(format!(
        "beta(3) = {b3}, beta(6) = {b6}, main3(3, 6) hypotheses false"
    ))
}

fn oracle_sweep(instances: &[TruncatedArrangement]) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, arr)| {
            let t = arr.profiles().unwrap();
            (1..=10u32).filter_map(move |q| {
                let formula = t.count_complement(q).unwrap();
                let brute = brute_count_complement(arr, q, BUDGET).unwrap();
                (formula != brute).then(|| format!("instance {k}, q = {q}: {formula} vs {brute}"))
            })
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} instances x q = 1..10, {took:.2?}",
        instances.len()
    ))
}

fn gcd_property(instances: &[TruncatedArrangement]) -> Outcome {
    let pairs: Result<Vec<usize>, String> = instances
        .iter()
        .enumerate()
        .map(|(k, arr)| {
            let t = arr.profiles().unwrap();
            let rho = t.lcm_period();
            let by_gcd: BTreeMap<BigInt, Polynomial> = divisors(&rho)
                .into_iter()
                .map(|g| {
                    let f = t.residue_constituent(&g);
                    (g, f)
                })
                .collect();
            let rho_u = rho.to_u64().expect("period fits in u64");
            (1..=rho_u)
                .into_par_iter()
                .map(|a| {
                    let a = BigInt::from(a);
                    let f = t.residue_constituent(&a);
                    let seen = &by_gcd[&a.gcd(&rho)];
                    ensure(*seen == f, || {
                        format!("instance {k}: residue {a} gives {f}, its gcd class gives {seen}")
                    })
                })
                .collect::<Result<(), String>>()?;
            Ok(rho_u as usize - by_gcd.len())
        })
        .collect();
    let pairs: usize = pairs?.iter().sum();
    Ok(format!("{pairs} residues checked against their gcd class"))
}

fn deletion_restriction_sweep(instances: &[TruncatedArrangement]) -> Outcome {
    let mut checks = 0usize;
    for (k, arr) in instances.iter().enumerate() {
        let t = arr.profiles().unwrap();
        for i in 0..arr.num_hyperplanes() {
            let (del, res) = deletion_restriction(arr, i).unwrap();
            let (td, tr) = (del.profiles().unwrap(), res.profiles().unwrap());
            for q in 1..=10u32 {
                let lhs = t.count_complement(q).unwrap();
                let rhs = td.count_complement(q).unwrap() - tr.count_complement(q).unwrap();
                ensure(lhs == rhs, || {
                    format!("instance {k}, index {i}, q = {q}: {lhs} vs {rhs}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} identities"))
}

fn next_prime(after: &BigInt) -> BigInt {
    let mut p = after + 1u32;
    loop {
        let mut d = BigInt::from(2);
        let mut prime = p > BigInt::one();
        while prime && &d * &d <= p {
            prime = !p.is_multiple_of(&d);
            d += 1;
        }
        if prime {
            return p;
        }
        p += 1;
    }
}

fn prime_evaluation(instances: &[TruncatedArrangement]) -> Outcome {
    for (k, arr) in instances.iter().enumerate() {
        let t = arr.profiles().unwrap();
        let chi = t.quasi_polynomial().characteristic_polynomial().clone();
        let mut p = t.q_zero().max(t.lcm_period());
        for _ in 0..3 {
            p = next_prime(&p);
            let count = t.count_complement(p.clone()).unwrap();
            ensure(count == chi.eval(&p), || {
                format!(
                    "instance {k}, p = {p}: count {count}, chi(p) = {}",
                    chi.eval(&p)
                )
            })?;
        }
    }
    Ok(format!("{} instances x 3 primes", instances.len()))
}

fn theorem_checkers(instances: &[TruncatedArrangement]) -> Outcome {
    let counts: Vec<Result<[usize; 3], String>> = instances
        .par_iter()
        .enumerate()
        .map(|(k, arr)| {
            let t = arr.profiles().unwrap();
            let (rho, q0) = (t.lcm_period(), t.q_zero());
            let mut held = [0usize; 3];
            for a in 1..=12u32 {
                for b in 1..=12u32 {
                    let (ba, bb) = (BigInt::from(a), BigInt::from(b));
                    if ba > q0 && bb > q0 {
                        let v = check_main3(&t, a, b).unwrap();
                        ensure(!v.is_counterexample(), || {
                            format!("instance {k}: main3({a}, {b}) {v:?}")
                        })?;
                        held[0] += v.hypotheses_hold as usize;
                    }
                    if ba <= rho && bb <= rho {
                        let v = check_main4(&t, a, b).unwrap();
                        ensure(!v.is_counterexample(), || {
                            format!("instance {k}: main4({a}, {b}) {v:?}")
                        })?;
                        held[1] += v.hypotheses_hold as usize;
                    }
                }
            }
            for p in 1..=4u32 {
                for q in 1..=4u32 {
                    let v = check_main5(&t, p, q).unwrap();
                    ensure(!v.is_counterexample(), || {
                        format!("instance {k}: main5({p}, {q}) {v:?}")
                    })?;
                    held[2] += v.hypotheses_hold as usize;
                }
            }
            Ok(held)
        })
        .collect();
    let mut total = [0usize; 3];
    for c in counts {
        let c = c?;
        for i in 0..3 {
            total[i] += c[i];
        }
    }
    Ok(format!(
        "no counterexample; hypotheses held {} / {} / {} times",
        total[0], total[1], total[2]
    ))
}

fn square_matrices(size: usize) -> Vec<IntMatrix> {
    let cells = size * size;
    let mut out = Vec::new();
    let mut digits = vec![-6i64; cells];
    loop {
        out.push(
            IntMatrix::new(
                size,
                size,
                digits.iter().map(|&x| BigInt::from(x)).collect(),
            )
            .unwrap(),
        );
        let Some(k) = digits.iter().rposition(|&x| x < 6) else {
            return out;
        };
        digits[k] += 1;
        for x in &mut digits[k + 1..] {
            *x = -6;
        }
    }
}

fn surjectivity_lemma() -> Outcome {
    let mut matrices = square_matrices(1);
    matrices.extend(square_matrices(2));
    let checked: Result<Vec<usize>, String> = matrices
        .par_iter()
        .map(|m| {
            let c = IntVector::zeros(m.rows());
            let mut n = 0;
            for p in 1..=4u32 {
                for q in 1..=4u32 {
                    let brute =
                        surjectivity_check(m, &c, p, q, BUDGET).map_err(|e| e.to_string())?;
                    let predicate = surjectivity_predicate(m, p, q).unwrap();
                    ensure(brute == predicate, || {
                        format!(
                            "M = {m}, p = {p}, q = {q}: enumeration {brute}, predicate {predicate}"
                        )
                    })?;
                    n += 1;
                }
            }
            Ok(n)
        })
        .collect();
    let n: usize = checked?.iter().sum();
    Ok(format!("{} matrices, {n} (M, p, q) cases", matrices.len()))
}

fn graph_sanity() -> Outcome {
    let lim = Limits::default();
    let triangle = DirectedMultigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let w = IntVector::zeros(3);
    let (qp, chi, _) = modular_chromatic_polynomial(&triangle, &w, &lim).unwrap();
    ensure(chi == Polynomial::from_coeffs([0, 2, -3, 1]), || {
        format!("chromatic {chi}")
    })?;
    ensure(qp.period().is_one(), || format!("period {}", qp.period()))?;
    let cycle = DirectedMultigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    let b = IntVector::zeros(3);
    let (_, tau, _) = flow_polynomial(&cycle, &b, &lim).unwrap();
    ensure(tau == Polynomial::from_coeffs([-1, 1]), || {
        format!("flow {tau}")
    })?;
    for q in 1..=6u32 {
        let qb = BigInt::from(q);
        let colorings = brute_count_colorings(&triangle, &w, q, BUDGET).unwrap();
        ensure(
            count_colorings(&triangle, &w, q, &lim).unwrap() == colorings
                && chi.eval(&qb) == colorings,
            || format!("colorings at q = {q}"),
        )?;
        let flows = brute_count_flows(&cycle, &b, q, BUDGET).unwrap();
        ensure(
            count_flows(&cycle, &b, q, &lim).unwrap() == flows && tau.eval(&qb) == flows,
            || format!("flows at q = {q}"),
        )?;
    }
    Ok(format!(
        "chromatic {chi}, flow {tau}, q = 1..6 match enumeration"
    ))
}

fn smith_chain() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    for k in 0..300 {
        let rows = rand::Rng::gen_range(&mut rng, 1..=4);
        let cols = rand::Rng::gen_range(&mut rng, 1..=4);
        let m = random_matrix(&mut rng, rows, cols, 9);
        let sf = smith_normal_form(&m);
        for w in sf.factors().windows(2) {
            ensure(w[1].is_multiple_of(&w[0]), || {
                format!("matrix {k}: chain broken at {w:?}")
            })?;
        }
        let mut product = BigInt::one();
        for j in 1..=rows.min(cols) {
            product *= sf
                .factors()
                .get(j - 1)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            let g = gcd_of_minors(&m, j).unwrap();
            ensure(product == g, || {
                format!("matrix {k}, j = {j}: {product} vs {g}")
            })?;
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("300 matrices, {took:.2?}"))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome =
        panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
    let took = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {id:>2} PASS  {name}: {detail} [{took:.1?}]");
            true
        }
        Err(detail) => {
            println!("criterion {id:>2} FAIL  {name}: {detail} [{took:.1?}]");
            false
        }
    }
}

fn main() -> ExitCode {
    let instances = sweep(SWEEP_SEED, SWEEP_SIZE);
    let results = [
        run(1, "worked example counts", worked_example_counts),
        run(
            2,
            "worked example coefficients",
            worked_example_coefficients,
        ),
        run(3, "formula vs enumeration sweep", || {
            oracle_sweep(&instances)
        }),
        run(4, "gcd property of constituents", || {
            gcd_property(&instances)
        }),
        run(5, "deletion-restriction", || {
            deletion_restriction_sweep(&instances)
        }),
        run(6, "prime evaluation", || prime_evaluation(&instances)),
        run(7, "comparison theorems never falsified", || {
            theorem_checkers(&instances)
        }),
        run(8, "surjectivity lemma", surjectivity_lemma),
        run(9, "graph sanity", graph_sanity),
        run(10, "Smith form vs minors", smith_chain),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
