//! Truncated integral arrangements and their characteristic quasi-polynomials.
//!
//! An arrangement is given by hyperplanes `A_i . x = a_i` (rows of `[A, a]`)
//! restricted to the solution set of `B x = b`. For each subset `J` of the
//! hyperplanes, the stacked system `C_J = [B; A_J]`, `c_J = [b; a_J]` carries
//! everything the counting formula needs through the Smith forms of `C_J` and
//! `[C_J, c_J]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{self, Error, Result};
use crate::linalg::{smith_normal_form, solvable_from_forms, IntMatrix, IntVector, SmithForm};
use crate::polynomial::Polynomial;

pub const DEFAULT_MAX_HYPERPLANES: usize = 24;
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Size caps for the exponential parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `m` for which all `2^m` hyperplane subsets are enumerated.
    pub max_hyperplanes: usize,
    /// Largest number of points a brute-force oracle may visit.
    pub oracle_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_hyperplanes: DEFAULT_MAX_HYPERPLANES,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

/// Hyperplanes `[A, a]` in `R^n` truncated by the system `[B, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedArrangement {
    normals: IntMatrix,
    offsets: IntVector,
    constraints: IntMatrix,
    constraint_rhs: IntVector,
}

impl TruncatedArrangement {
    pub fn new(
        normals: IntMatrix,
        offsets: IntVector,
        constraints: IntMatrix,
        constraint_rhs: IntVector,
    ) -> Result<Self> {
        if normals.cols() != constraints.cols() {
            return Err(Error::Shape(format!(
                "hyperplanes live in dimension {} but constraints in dimension {}",
                normals.cols(),
                constraints.cols()
            )));
        }
        if offsets.len() != normals.rows() {
            return Err(Error::Shape(format!(
                "{} hyperplane offsets for {} hyperplanes",
                offsets.len(),
                normals.rows()
            )));
        }
        if constraint_rhs.len() != constraints.rows() {
            return Err(Error::Shape(format!(
                "{} right-hand sides for {} constraints",
                constraint_rhs.len(),
                constraints.rows()
            )));
        }
        Ok(Self {
            normals,
            offsets,
            constraints,
            constraint_rhs,
        })
    }

    /// Arrangement without truncation (`l = 0`).
    pub fn untruncated(normals: IntMatrix, offsets: IntVector) -> Result<Self> {
        let n = normals.cols();
        Self::new(
            normals,
            offsets,
            IntMatrix::zeros(0, n),
            IntVector::default(),
        )
    }

    /// No hyperplanes and no constraints in dimension `n`.
    pub fn empty(n: usize) -> Self {
        Self {
            normals: IntMatrix::zeros(0, n),
            offsets: IntVector::default(),
            constraints: IntMatrix::zeros(0, n),
            constraint_rhs: IntVector::default(),
        }
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.normals.cols()
    }

    /// Number of hyperplanes `m`.
    pub fn num_hyperplanes(&self) -> usize {
        self.normals.rows()
    }

    /// Number of truncating equations `l`.
    pub fn num_constraints(&self) -> usize {
        self.constraints.rows()
    }

    pub fn normals(&self) -> &IntMatrix {
        &self.normals
    }

    pub fn offsets(&self) -> &IntVector {
        &self.offsets
    }

    pub fn constraints(&self) -> &IntMatrix {
        &self.constraints
    }

    pub fn constraint_rhs(&self) -> &IntVector {
        &self.constraint_rhs
    }

    /// Both right-hand sides vanish.
    pub fn is_central(&self) -> bool {
        self.offsets.is_zero() && self.constraint_rhs.is_zero()
    }

    /// `(C_J, c_J)`: the constraints stacked over the hyperplanes in `subset`.
    pub fn subset_system(&self, subset: Subset) -> (IntMatrix, IntVector) {
        let rows: Vec<usize> = subset.indices().collect();
        let matrix = self
            .constraints
            .stack(&self.normals.select_rows(rows.iter().copied()))
            .expect("column counts agree by construction");
        let rhs = self.constraint_rhs.concat(&self.offsets.select(rows));
        (matrix, rhs)
    }

    pub fn profiles(&self) -> Result<ProfileTable> {
        self.profiles_with(&Limits::default())
    }

    /// Smith forms of `C_J` and `[C_J, c_J]` for every subset `J`, computed in
    /// parallel.
    pub fn profiles_with(&self, limits: &Limits) -> Result<ProfileTable> {
        let m = self.num_hyperplanes();
        if m > limits.max_hyperplanes || m >= u64::BITS as usize {
            return Err(Error::TooManyHyperplanes {
                m,
                cap: limits.max_hyperplanes,
            });
        }
        let profiles: Vec<SubsetProfile> = (0..1usize << m)
            .into_par_iter()
            .with_min_len(16)
            .map(|mask| {
                let subset = Subset(mask as u64);
                let (matrix, rhs) = self.subset_system(subset);
                let augmented = matrix.augment(&rhs).expect("lengths agree by construction");
                SubsetProfile {
                    subset,
                    factors: smith_normal_form(&matrix),
                    aug_factors: smith_normal_form(&augmented),
                }
            })
            .collect();
        Ok(ProfileTable {
            dim: self.dim(),
            profiles,
        })
    }

    pub fn count_complement(&self, q: impl Into<BigInt>) -> Result<BigInt> {
        self.profiles()?.count_complement(q)
    }

    pub fn lcm_period(&self) -> Result<BigInt> {
        Ok(self.profiles()?.lcm_period())
    }

    pub fn q_zero(&self) -> Result<BigInt> {
        Ok(self.profiles()?.q_zero())
    }

    pub fn characteristic_quasi_polynomial(&self) -> Result<QuasiPolynomial> {
        Ok(self.profiles()?.quasi_polynomial())
    }

    /// The first constituent, which is the characteristic polynomial of the
    /// real arrangement.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial> {
        Ok(self.profiles()?.residue_constituent(&BigInt::one()))
    }
}

/// A subset `J` of the hyperplane indices, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// `(-1)^#J`.
    pub fn sign(self) -> BigInt {
        if self.len().is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Smith data for one subset `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProfile {
    pub subset: Subset,
    /// Invariant factors of `C_J`.
    pub factors: SmithForm,
    /// Invariant factors of `[C_J, c_J]`.
    pub aug_factors: SmithForm,
}

impl SubsetProfile {
    /// `r(J)`.
    pub fn rank(&self) -> usize {
        self.factors.rank()
    }

    /// `r̄(J)`, which is `r(J)` or `r(J) + 1`.
    pub fn aug_rank(&self) -> usize {
        self.aug_factors.rank()
    }

    /// The system `C_J x = c_J` has a real solution.
    pub fn is_consistent(&self) -> bool {
        self.rank() == self.aug_rank()
    }

    /// Number of solutions of `C_J x = c_J` over `Z_q`, divided by
    /// `q^(n - r(J))`: the product of `gcd(d_{J,j}, q)` when the mod-`q`
    /// invariant factors of `C_J` and `[C_J, c_J]` agree, else 0.
    pub fn tilde_d(&self, q: impl Into<BigInt>) -> Result<BigInt> {
        Ok(self.tilde_d_unchecked(&error::modulus(q)?))
    }

    pub(crate) fn tilde_d_unchecked(&self, q: &BigInt) -> BigInt {
        let len = self.aug_rank();
        if self.factors.gcds_with(q, len) != self.aug_factors.gcds_with(q, len) {
            return BigInt::zero();
        }
        self.factors
            .factors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d.gcd(q))
    }

    /// Solvability of `C_J x = c_J` over `Z_q`, decided on the truncated
    /// mod-`q` factor lists rather than the padded gcd comparison used by
    /// [`Self::tilde_d`].
    pub fn solvable_mod(&self, q: impl Into<BigInt>) -> Result<bool> {
        let q = error::modulus(q)?;
        Ok(solvable_from_forms(&self.factors, &self.aug_factors, &q))
    }
}

/// All `2^m` subset profiles of an arrangement, indexed by mask.
#[derive(Clone, Debug)]
pub struct ProfileTable {
    dim: usize,
    profiles: Vec<SubsetProfile>,
}

impl ProfileTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn profiles(&self) -> &[SubsetProfile] {
        &self.profiles
    }

    pub fn profile(&self, subset: Subset) -> &SubsetProfile {
        &self.profiles[subset.0 as usize]
    }

    pub fn into_profiles(self) -> Vec<SubsetProfile> {
        self.profiles
    }

    /// `r = rank(B)`.
    pub fn lower_rank(&self) -> usize {
        self.profiles[0].rank()
    }

    /// `s = rank([B; A])`.
    pub fn upper_rank(&self) -> usize {
        self.profiles[self.profiles.len() - 1].rank()
    }

    /// `B x = b` has no real solution, so the characteristic polynomial is 0
    /// even though solutions may exist modulo some `q`.
    pub fn real_space_empty(&self) -> bool {
        !self.profiles[0].is_consistent()
    }

    /// Exact size of the complement of the arrangement reduced mod `q`,
    /// by inclusion-exclusion over all subsets.
    pub fn count_complement(&self, q: impl Into<BigInt>) -> Result<BigInt> {
        let q = error::modulus(q)?;
        let powers = self.powers(&q);
        Ok(self
            .profiles
            .par_iter()
            .with_min_len(64)
            .map(|p| {
                let d = p.tilde_d_unchecked(&q);
                if d.is_zero() {
                    d
                } else {
                    p.subset.sign() * d * &powers[self.dim - p.rank()]
                }
            })
            .reduce(BigInt::zero, |a, b| a + b))
    }

    fn powers(&self, q: &BigInt) -> Vec<BigInt> {
        std::iter::successors(Some(BigInt::one()), |x| Some(x * q))
            .take(self.dim + 1)
            .collect()
    }

    /// lcm of `d_{J,r(J)}` over consistent `J`; 1 when no consistent `J` has
    /// positive rank.
    pub fn lcm_period(&self) -> BigInt {
        self.profiles
            .iter()
            .filter(|p| p.is_consistent())
            .filter_map(|p| p.factors.max_factor())
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    /// Threshold beyond which the count is quasi-polynomial: the largest
    /// maximal invariant factor of `[C_J, c_J]` over inconsistent `J`, or 0.
    pub fn q_zero(&self) -> BigInt {
        self.profiles
            .iter()
            .filter(|p| !p.is_consistent())
            .filter_map(|p| p.aug_factors.max_factor())
            .max()
            .cloned()
            .unwrap_or_default()
    }

    /// `sum over consistent J of (-1)^#J d̃_J(a) t^(n - r(J))`, evaluated
    /// directly at residue `a` without reducing it modulo the period.
    pub fn residue_constituent(&self, a: &BigInt) -> Polynomial {
        let mut poly = Polynomial::zero();
        for p in self.profiles.iter().filter(|p| p.is_consistent()) {
            let d = p.tilde_d_unchecked(a);
            if !d.is_zero() {
                poly.add_term(&(p.subset.sign() * d), self.dim - p.rank());
            }
        }
        poly
    }

    pub fn checked_residue_constituent(&self, a: impl Into<BigInt>) -> Result<Polynomial> {
        Ok(self.residue_constituent(&error::residue(a)?))
    }

    pub fn quasi_polynomial(&self) -> QuasiPolynomial {
        let period = self.lcm_period();
        let constituents = divisors(&period)
            .into_iter()
            .map(|g| {
                let f = self.residue_constituent(&g);
                (g, f)
            })
            .collect();
        QuasiPolynomial {
            period,
            threshold: self.q_zero(),
            constituents,
            real_space_empty: self.real_space_empty(),
        }
    }
}

/// A quasi-polynomial with the gcd property: one constituent per divisor `g`
/// of the period, and residue `a` uses the constituent at `gcd(a, period)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: BigInt,
    threshold: BigInt,
    constituents: BTreeMap<BigInt, Polynomial>,
    real_space_empty: bool,
}

impl QuasiPolynomial {
    pub fn period(&self) -> &BigInt {
        &self.period
    }

    /// The quasi-polynomial agrees with the counting function for every
    /// `q` strictly above this value.
    pub fn threshold(&self) -> &BigInt {
        &self.threshold
    }

    pub fn real_space_empty(&self) -> bool {
        self.real_space_empty
    }

    /// `(g, f_g)` pairs by increasing divisor `g`.
    pub fn constituents(&self) -> impl Iterator<Item = (&BigInt, &Polynomial)> {
        self.constituents.iter()
    }

    pub fn constituent(&self, a: impl Into<BigInt>) -> Result<&Polynomial> {
        let a = error::residue(a)?;
        Ok(&self.constituents[&a.gcd(&self.period)])
    }

    pub fn characteristic_polynomial(&self) -> &Polynomial {
        &self.constituents[&BigInt::one()]
    }

    /// Value of the constituent selected by `q`, at `q`. Equals the
    /// complement count for `q` above the threshold.
    pub fn eval(&self, q: impl Into<BigInt>) -> Result<BigInt> {
        let q = error::modulus(q)?;
        Ok(self.constituents[&q.gcd(&self.period)].eval(&q))
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "period {}; q0 {}", self.period, self.threshold)?;
        for (g, p) in &self.constituents {
            write!(f, "; g={g}: {p}")?;
        }
        Ok(())
    }
}

/// Positive divisors of `n > 0` in increasing order, by trial division.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut rest = n.clone();
    let mut divs = vec![BigInt::one()];
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            extend_divisors(&mut divs, &p, e);
        }
        p += 1;
    }
    if rest > BigInt::one() {
        extend_divisors(&mut divs, &rest, 1);
    }
    divs.sort();
    divs
}

fn extend_divisors(divs: &mut Vec<BigInt>, p: &BigInt, e: u32) {
    let base = divs.clone();
    for k in 1..=e {
        let pk: BigInt = Pow::pow(p, k);
        divs.extend(base.iter().map(|d| d * &pk));
    }
}
