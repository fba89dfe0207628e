//! Coefficient extraction, combinatorial equivalence of moduli, and
//! executable checks of the comparison theorems for complement counts.
//!
//! The checkers report verdicts rather than asserting, so a failed hypothesis
//! is ordinary output. A verdict with true hypotheses and a false conclusion
//! would be a counterexample.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arrangement::{ProfileTable, Subset, TruncatedArrangement};
use crate::error::{self, Error, Result};
use crate::linalg::{is_solvable_mod_q, smith_normal_form, IntMatrix, IntVector};
use crate::oracle::brute_solutions;

/// Values `x_r, ..., x_s` indexed from `r = rank(B)` to `s = rank([B; A])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    lower: usize,
    values: Vec<BigInt>,
}

impl CoefficientVector {
    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.lower + self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// The value at index `j`, or `None` outside `r..=s`.
    pub fn get(&self, j: usize) -> Option<&BigInt> {
        j.checked_sub(self.lower).and_then(|k| self.values.get(k))
    }

    /// `(j, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (self.lower + k, v))
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

fn coefficients(table: &ProfileTable, x: &BigInt) -> CoefficientVector {
    let (r, s) = (table.lower_rank(), table.upper_rank());
    let mut values = vec![BigInt::zero(); s - r + 1];
    for p in table.profiles().iter().filter(|p| p.is_consistent()) {
        let d = p.tilde_d_unchecked(x);
        if !d.is_zero() {
            values[p.rank() - r] += p.subset.sign() * d;
        }
    }
    for (k, v) in values.iter_mut().enumerate() {
        if k % 2 == 1 {
            *v = -&*v;
        }
    }
    CoefficientVector { lower: r, values }
}

/// `beta_j(q) = (-1)^(j-r) * sum over J with r̄(J) = r(J) = j of
/// (-1)^#J d̃_J(q)`, for `j = r..=s`.
pub fn beta(table: &ProfileTable, q: impl Into<BigInt>) -> Result<CoefficientVector> {
    Ok(coefficients(table, &error::modulus(q)?))
}

/// The same sum evaluated at a residue `a`. Agrees with `beta` at every `q`
/// with `gcd(q, rho) = gcd(a, rho)`.
pub fn gamma(table: &ProfileTable, a: impl Into<BigInt>) -> Result<CoefficientVector> {
    Ok(coefficients(table, &error::residue(a)?))
}

/// For every `J` with a real solution, `C_J x = c_J` is solvable mod `a`
/// exactly when it is solvable mod `b`.
pub fn combinatorially_equivalent(
    table: &ProfileTable,
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
) -> Result<bool> {
    let (a, b) = (error::modulus(a)?, error::modulus(b)?);
    for p in table.profiles().iter().filter(|p| p.is_consistent()) {
        if p.solvable_mod(a.clone())? != p.solvable_mod(b.clone())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One-directional form: every `C_J x = c_J` solvable mod `a` is also
/// solvable mod `b`. Above the threshold and when `gcd(a, rho)` divides
/// `gcd(b, rho)`, this coincides with [`combinatorially_equivalent`].
pub fn equivalent_by_implication(
    table: &ProfileTable,
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
) -> Result<bool> {
    let (a, b) = (error::modulus(a)?, error::modulus(b)?);
    for p in table.profiles() {
        if p.solvable_mod(a.clone())? && !p.solvable_mod(b.clone())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What falsified a conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A coefficient index `j` where the inequality fails.
    Index(usize),
    /// Complement counts at `q` and `pq` with the first larger.
    Counts { at_q: BigInt, at_pq: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    /// Present exactly when the conclusion fails.
    pub witness: Option<Witness>,
}

impl ComparisonVerdict {
    /// Hypotheses hold but the conclusion does not.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }
}

fn compare_vectors(
    hypotheses_hold: bool,
    x: &CoefficientVector,
    y: &CoefficientVector,
) -> ComparisonVerdict {
    let witness = x
        .iter()
        .zip(y.values())
        .find(|((_, u), v)| u.is_negative() || u > v)
        .map(|((j, _), _)| Witness::Index(j));
    ComparisonVerdict {
        hypotheses_hold,
        conclusion_holds: witness.is_none(),
        witness,
    }
}

/// Moduli `a, b` above the threshold: if `gcd(a, rho) | gcd(b, rho)` and
/// `a, b` are combinatorially equivalent, then `0 <= beta_j(a) <= beta_j(b)`
/// for all `j`.
pub fn check_main3(
    table: &ProfileTable,
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
) -> Result<ComparisonVerdict> {
    let (a, b) = (error::modulus(a)?, error::modulus(b)?);
    let q0 = table.q_zero();
    for x in [&a, &b] {
        if *x <= q0 {
            return Err(Error::Precondition(format!(
                "modulus {x} must exceed the threshold {q0}"
            )));
        }
    }
    let rho = table.lcm_period();
    let hypotheses = b.gcd(&rho).is_multiple_of(&a.gcd(&rho))
        && combinatorially_equivalent(table, a.clone(), b.clone())?;
    Ok(compare_vectors(
        hypotheses,
        &coefficients(table, &a),
        &coefficients(table, &b),
    ))
}

/// Residues `1 <= a, b <= rho`: with `g = gcd(a, rho)` and `h = gcd(b, rho)`,
/// if `g | h` and `g, h` are combinatorially equivalent, then
/// `0 <= gamma_j(a) <= gamma_j(b)` for all `j`.
pub fn check_main4(
    table: &ProfileTable,
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
) -> Result<ComparisonVerdict> {
    let rho = table.lcm_period();
    let (a, b) = (in_residue_range(a, &rho)?, in_residue_range(b, &rho)?);
    let (g, h) = (a.gcd(&rho), b.gcd(&rho));
    let hypotheses = h.is_multiple_of(&g) && combinatorially_equivalent(table, g, h)?;
    Ok(compare_vectors(
        hypotheses,
        &coefficients(table, &a),
        &coefficients(table, &b),
    ))
}

fn in_residue_range(a: impl Into<BigInt>, rho: &BigInt) -> Result<BigInt> {
    let a = a.into();
    if a < BigInt::from(1) || a > *rho {
        return Err(Error::OutOfRange {
            what: "residue",
            value: a,
            min: BigInt::from(1),
            max: rho.clone(),
        });
    }
    Ok(a)
}

/// If `gcd(p, d_i) gcd(q, d_i) | d_i` for every invariant factor `d_i` of `B`
/// and `B x = b` is solvable mod `pq`, then the complement count at `q` is at
/// most the count at `pq`.
pub fn check_main5(
    table: &ProfileTable,
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<ComparisonVerdict> {
    let (p, q) = (error::modulus(p)?, error::modulus(q)?);
    let pq = &p * &q;
    let base = table.profile(Subset(0));
    let hypotheses =
        gcd_product_divides(base.factors.factors(), &p, &q) && base.solvable_mod(pq.clone())?;
    let at_q = table.count_complement(q)?;
    let at_pq = table.count_complement(pq)?;
    let conclusion = at_q <= at_pq;
    Ok(ComparisonVerdict {
        hypotheses_hold: hypotheses,
        conclusion_holds: conclusion,
        witness: (!conclusion).then_some(Witness::Counts { at_q, at_pq }),
    })
}

fn gcd_product_divides(factors: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    factors
        .iter()
        .all(|d| d.is_multiple_of(&(p.gcd(d) * q.gcd(d))))
}

/// `gcd(p, d_i) gcd(q, d_i) | d_i` over the invariant factors of `M`; the
/// zero factors beyond the rank satisfy it trivially.
pub fn surjectivity_predicate(
    m: &IntMatrix,
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<bool> {
    let (p, q) = (error::modulus(p)?, error::modulus(q)?);
    Ok(gcd_product_divides(smith_normal_form(m).factors(), &p, &q))
}

/// Whether reducing mod `q` maps the solutions of `M x = c` over `Z_pq`
/// onto the solutions over `Z_q`, decided by enumerating both sets.
pub fn surjectivity_check(
    m: &IntMatrix,
    c: &IntVector,
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
    budget: u64,
) -> Result<bool> {
    let (p, q) = (error::modulus(p)?, error::modulus(q)?);
    let pq = &p * &q;
    if !is_solvable_mod_q(m, c, pq.clone())? {
        return Err(Error::Precondition(format!(
            "system is not solvable mod {pq}"
        )));
    }
    let upstairs = brute_solutions(m, c, pq, budget)?;
    let downstairs = brute_solutions(m, c, q.clone(), budget)?;
    let q = u64::try_from(q).expect("q fits once enumeration succeeded");
    let image: HashSet<Vec<u64>> = upstairs
        .into_iter()
        .map(|x| x.into_iter().map(|v| v % q).collect())
        .collect();
    Ok(image.len() == downstairs.len())
}

/// Splits off hyperplane `i` (0-based): the deletion drops it, the
/// restriction moves it into the truncating system. For every modulus,
/// `count(arr) = count(deletion) - count(restriction)`.
pub fn deletion_restriction(
    arr: &TruncatedArrangement,
    i: usize,
) -> Result<(TruncatedArrangement, TruncatedArrangement)> {
    let m = arr.num_hyperplanes();
    if i >= m {
        return Err(Error::OutOfRange {
            what: "hyperplane index",
            value: BigInt::from(i),
            min: BigInt::zero(),
            max: BigInt::from(m) - 1,
        });
    }
    let normals = arr.normals().without_row(i);
    let offsets = arr.offsets().without(i);
    let deletion = TruncatedArrangement::new(
        normals.clone(),
        offsets.clone(),
        arr.constraints().clone(),
        arr.constraint_rhs().clone(),
    )?;
    let constraints = arr.constraints().stack(&arr.normals().select_rows([i]))?;
    let rhs = arr.constraint_rhs().concat(&arr.offsets().select([i]));
    let restriction = TruncatedArrangement::new(normals, offsets, constraints, rhs)?;
    Ok((deletion, restriction))
}
