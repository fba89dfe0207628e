//! Exact integer matrices, Smith normal forms, and linear systems over `Z_q`.
//!
//! Everything here works on arbitrary-precision integers. Intermediate values
//! of the elimination can outgrow machine words even for tiny inputs, so no
//! fixed-width fast path is attempted.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{self, Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-row and zero-column matrices are legal: a `0 x n` matrix stands for an
/// empty system of constraints on `n` unknowns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested rows. `cols` fixes the width so that
    /// matrices without rows still know their column count.
    ///
    /// ```
    /// use truncarr::IntMatrix;
    /// let m = IntMatrix::from_rows(2, [[2, 0], [2, 2]]).unwrap();
    /// assert_eq!(m.rows(), 2);
    /// ```
    pub fn from_rows<I, R, T>(cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        let mut count = 0;
        for (i, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            if entries.len() - before != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    entries.len() - before
                )));
            }
            count += 1;
        }
        Self::new(count, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(
        &self,
    ) -> impl DoubleEndedIterator<Item = &[BigInt]> + ExactSizeIterator + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Vertical concatenation `[self; below]`.
    pub fn stack(&self, below: &IntMatrix) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::Shape(format!(
                "cannot stack a {}-column matrix on a {}-column matrix",
                self.cols, below.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Horizontal augmentation `[self, column]`.
    pub fn augment(&self, column: &IntVector) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::Shape(format!(
                "column of length {} does not augment a matrix with {} rows",
                column.len(),
                self.rows
            )));
        }
        let cols = self.cols + 1;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for (row, c) in self.row_vectors().zip(column.iter()) {
            entries.extend_from_slice(row);
            entries.push(c.clone());
        }
        Ok(Self {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Submatrix formed by the listed rows, in the given order.
    pub fn select_rows(&self, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut entries = Vec::new();
        let mut rows = 0;
        for i in indices {
            entries.extend_from_slice(self.row(i));
            rows += 1;
        }
        Self {
            rows,
            cols: self.cols,
            entries,
        }
    }

    /// Drops row `i`.
    pub fn without_row(&self, i: usize) -> Self {
        self.select_rows((0..self.rows).filter(|&k| k != i))
    }

    pub fn mul_vector(&self, x: &[BigInt]) -> Result<IntVector> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} cannot multiply a matrix with {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .row_vectors()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<BigInt>())
            .collect())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                entries.push((0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum());
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_vectors().map(<[BigInt]>::to_vec).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_vectors().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", row.iter().join(" "))?;
        }
        write!(f, "]")
    }
}

/// Integer vector, used as the right-hand side of a system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().map(|i| self.0[i].clone()).collect()
    }

    pub fn without(&self, i: usize) -> Self {
        self.select((0..self.len()).filter(|&k| k != i))
    }

    pub fn concat(&self, tail: &IntVector) -> Self {
        self.0.iter().chain(tail.0.iter()).cloned().collect()
    }
}

impl<T: Into<BigInt>> FromIterator<T> for IntVector {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<BigInt>, const N: usize> From<[T; N]> for IntVector {
    fn from(entries: [T; N]) -> Self {
        entries.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a IntVector {
    type Item = &'a BigInt;
    type IntoIter = std::slice::Iter<'a, BigInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SmithForm {
    factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// The maximal invariant factor `d_r`, or `None` for rank zero.
    pub fn max_factor(&self) -> Option<&BigInt> {
        self.factors.last()
    }

    /// `gcd(q, d_j)` for `j = 1..=len`, reading factors past the rank as 0 so
    /// that `gcd(q, 0) = q`.
    pub fn gcds_with(&self, q: &BigInt, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|j| match self.factors.get(j) {
                Some(d) => q.gcd(d),
                None => q.clone(),
            })
            .collect()
    }
}

/// Invariant factors of a matrix reduced modulo `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModqFactors {
    pub modulus: BigInt,
    pub factors: Vec<BigInt>,
}

impl ModqFactors {
    /// Number of nonzero invariant factors over `Z_q`.
    pub fn count(&self) -> usize {
        self.factors.len()
    }
}

/// Smith normal form by fraction-free elimination.
///
/// Each step moves the entry of least absolute value into the pivot, clears
/// its row and column with Euclidean division, and restarts whenever a
/// remainder survives or some entry of the trailing block is not divisible by
/// the pivot.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut factors = Vec::new();

    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = min_abs_position(&a, (t..nr).cartesian_product(t..nc)) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            let mut residue = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let quot = &a[i][t] / &a[t][t];
                let (top, rest) = a.split_at_mut(i);
                for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &quot * p;
                }
                residue |= !a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let quot = &a[t][j] / &a[t][t];
                for row in a[t..].iter_mut() {
                    let p = row[t].clone();
                    row[j] -= &quot * p;
                }
                residue |= !a[t][j].is_zero();
            }

            if residue {
                let border = (t + 1..nr)
                    .map(|i| (i, t))
                    .chain((t + 1..nc).map(|j| (t, j)));
                let (bi, bj) = min_abs_position(&a, border).expect("a residue is nonzero");
                a.swap(t, bi);
                swap_cols(&mut a, t, bj);
                continue;
            }

            let pivot = a[t][t].clone();
            let offender =
                (t + 1..nr).find(|&i| a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (p, x) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *p += x;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }

    SmithForm { factors }
}

fn min_abs_position(
    a: &[Vec<BigInt>],
    cells: impl IntoIterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .into_iter()
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].magnitude().cmp(a[k][l].magnitude()))
}

fn swap_cols(a: &mut [Vec<BigInt>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
    }
}

/// Invariant factors of `[M']_q` from those of an integer lift `M'`.
pub fn modq_factors(sf: &SmithForm, q: impl Into<BigInt>) -> Result<ModqFactors> {
    let q = error::modulus(q)?;
    let factors = sf
        .factors
        .iter()
        .take_while(|d| !d.is_multiple_of(&q))
        .map(|d| q.gcd(d))
        .collect();
    Ok(ModqFactors {
        modulus: q,
        factors,
    })
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

/// Whether `M x = c` has a solution over `Z_q`, decided by comparing the
/// mod-`q` invariant factors of `[M, c]` and `[M, 0]`.
pub fn is_solvable_mod_q(m: &IntMatrix, c: &IntVector, q: impl Into<BigInt>) -> Result<bool> {
    check_system(m, c)?;
    let q = error::modulus(q)?;
    Ok(solvable_from_forms(
        &smith_normal_form(m),
        &smith_normal_form(&m.augment(c)?),
        &q,
    ))
}

/// `[c]_q` lies in `Col_q(M)` iff `[M]_q` and `[M, c]_q` share invariant
/// factors. Appending the zero column leaves the Smith form of `M` unchanged.
pub(crate) fn solvable_from_forms(plain: &SmithForm, augmented: &SmithForm, q: &BigInt) -> bool {
    let lhs = modq_factors(plain, q.clone()).expect("validated modulus");
    let rhs = modq_factors(augmented, q.clone()).expect("validated modulus");
    lhs == rhs
}

/// Number of solutions of `M x = c` in `Z_q^n`.
pub fn count_solutions_mod_q(m: &IntMatrix, c: &IntVector, q: impl Into<BigInt>) -> Result<BigInt> {
    check_system(m, c)?;
    let q = error::modulus(q)?;
    let plain = smith_normal_form(m);
    if !solvable_from_forms(&plain, &smith_normal_form(&m.augment(c)?), &q) {
        return Ok(BigInt::zero());
    }
    Ok(kernel_size(&plain, m.cols(), &q))
}

/// `q^(n - r) * prod_j gcd(q, d_j)`: the size of the solution set of a
/// solvable system with `n` unknowns.
pub(crate) fn kernel_size(sf: &SmithForm, n: usize, q: &BigInt) -> BigInt {
    let free: BigInt = Pow::pow(q, (n - sf.rank()) as u32);
    sf.factors.iter().fold(free, |acc, d| acc * q.gcd(d))
}

/// gcd of the absolute values of all `j x j` minors of `m`. Exponential in the
/// matrix size; it exists to cross-check [`smith_normal_form`].
pub fn gcd_of_minors(m: &IntMatrix, j: usize) -> Result<BigInt> {
    let max = m.rows().min(m.cols());
    if j < 1 || j > max {
        return Err(Error::OutOfRange {
            what: "minor size",
            value: j.into(),
            min: 1.into(),
            max: max.into(),
        });
    }
    let mut g = BigInt::zero();
    for rows in (0..m.rows()).combinations(j) {
        for cols in (0..m.cols()).combinations(j) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            g = g.gcd(&determinant(sub));
        }
    }
    Ok(g)
}

/// Bareiss fraction-free determinant of a square matrix.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
