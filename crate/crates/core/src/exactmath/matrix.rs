use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{inv_mod, is_prime, mul_mod, BigRat};
use crate::error::{Error, Result};

/// Two primes above 2^31 used for the modular rank fast path.
pub const DEFAULT_PRIMES: [u64; 2] = [2_147_483_659, 4_294_967_291];

#[derive(Clone, Debug)]
enum Layout {
    Dense(Vec<BigRat>),
    /// One ordered map per row, zero entries never stored.
    Sparse(Vec<BTreeMap<usize, BigRat>>),
}

/// Exact rational matrix with either a dense or a sparse row layout.
///
/// Equality, rank and solving do not depend on the layout.
#[derive(Clone, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    layout: Layout,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigRat::zero())
    }

    pub fn identity(s: usize) -> Self {
        Self::from_fn(s, s, |i, j| if i == j { BigRat::one() } else { BigRat::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, layout: Layout::Dense(data) }
    }

    pub fn from_rows(rows: Vec<Vec<BigRat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let nrows = rows.len();
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            layout: Layout::Dense(rows.into_iter().flatten().collect()),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Sparse constructor; repeated positions are summed.
    pub fn from_sparse(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigRat)>,
    ) -> Result<Self> {
        let mut data: Vec<BTreeMap<usize, BigRat>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            let slot = data[i].entry(j).or_insert_with(BigRat::zero);
            *slot += v;
            if slot.is_zero() {
                data[i].remove(&j);
            }
        }
        Ok(RationalMatrix { rows, cols, layout: Layout::Sparse(data) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.layout, Layout::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigRat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.layout {
            Layout::Dense(d) => d[i * self.cols + j].clone(),
            Layout::Sparse(s) => s[i].get(&j).cloned().unwrap_or_else(BigRat::zero),
        }
    }

    pub fn row(&self, i: usize) -> Vec<BigRat> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<BigRat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn nnz(&self) -> usize {
        match &self.layout {
            Layout::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Layout::Sparse(s) => s.iter().map(BTreeMap::len).sum(),
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = self.to_dense_rows();
        let b = other.to_dense_rows();
        Ok(RationalMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRat::zero();
            for (t, a_it) in a[i].iter().enumerate() {
                if !a_it.is_zero() {
                    acc += a_it * &b[t][j];
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[BigRat]) -> Result<Vec<BigRat>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = BigRat::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    /// `[self | col]`.
    pub fn augment(&self, col: &[BigRat]) -> Result<RationalMatrix> {
        if col.len() != self.rows {
            return Err(Error::DimensionMismatch("augmenting column length".into()));
        }
        let mut rows = self.to_dense_rows();
        for (r, c) in rows.iter_mut().zip(col) {
            r.push(c.clone());
        }
        if rows.is_empty() {
            return Ok(RationalMatrix::zeros(0, self.cols + 1));
        }
        RationalMatrix::from_rows(rows)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stacking matrices".into()));
        }
        let mut rows = self.to_dense_rows();
        rows.extend(other.to_dense_rows());
        if rows.is_empty() {
            return Ok(RationalMatrix::zeros(0, self.cols));
        }
        RationalMatrix::from_rows(rows)
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank_exact(&self) -> usize {
        let mut m = integer_rows(self);
        bareiss_echelon(&mut m, self.cols)
    }

    /// Rank over `F_p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        rank_mod_p(self, p)
    }

    /// Rank at every prime in [`DEFAULT_PRIMES`]; the exact rank is used
    /// instead when the primes disagree, when a denominator vanishes mod p,
    /// or when `verify_exact` is set.
    pub fn rank(&self, verify_exact: bool) -> usize {
        if verify_exact {
            return self.rank_exact();
        }
        let ranks: Result<Vec<usize>> = DEFAULT_PRIMES.iter().map(|&p| rank_mod_p(self, p)).collect();
        match ranks {
            Ok(r) if r.windows(2).all(|w| w[0] == w[1]) => r[0],
            _ => self.rank_exact(),
        }
    }
}

impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

impl Eq for RationalMatrix {}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scales every row by the lcm of its denominators.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense_rows()
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect()
}

/// In-place fraction-free forward elimination. Returns the rank; the first
/// `rank` rows are left in echelon form.
fn bareiss_echelon(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                for j in c + 1..cols {
                    let v = &m[r][c] * &m[i][j];
                    m[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact solution of `m x = v`.
///
/// Accepts square invertible systems and consistent overdetermined systems
/// whose solution is unique; anything else is [`Error::SingularSystem`].
pub fn solve_exact(m: &RationalMatrix, v: &[BigRat]) -> Result<Vec<BigRat>> {
    let aug = m.augment(v)?;
    let cols = m.cols();
    let mut rows = integer_rows(&aug);
    let rank_aug = bareiss_echelon(&mut rows, cols + 1);
    // Rank of the coefficient part: rows whose leading entry is not in the last column.
    let rank = rows[..rank_aug]
        .iter()
        .filter(|r| r[..cols].iter().any(|x| !x.is_zero()))
        .count();
    if rank != cols || rank_aug != rank {
        return Err(Error::SingularSystem);
    }
    let mut x = vec![BigRat::zero(); cols];
    for i in (0..cols).rev() {
        let row = &rows[i];
        debug_assert!(!row[i].is_zero());
        let mut acc = BigRat::from_integer(row[cols].clone());
        for j in i + 1..cols {
            acc -= BigRat::from_integer(row[j].clone()) * &x[j];
        }
        x[i] = acc / BigRat::from_integer(row[i].clone());
    }
    Ok(x)
}

fn to_mod_p(v: &BigRat, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = u64::try_from(v.numer().mod_floor(&pb)).expect("reduced below p");
    let den = u64::try_from(v.denom().mod_floor(&pb)).expect("reduced below p");
    if den == 0 {
        return Err(Error::DenominatorVanishesModP(p));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

/// Rank over the prime field `F_p`. Never exceeds the rational rank.
pub fn rank_mod_p(m: &RationalMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    match &m.layout {
        Layout::Dense(_) => {
            for row in m.to_dense_rows() {
                a.push(row.iter().map(|v| to_mod_p(v, p)).collect::<Result<_>>()?);
            }
        }
        Layout::Sparse(s) => {
            for row in s {
                let mut dense = vec![0u64; m.cols()];
                for (&j, v) in row {
                    dense[j] = to_mod_p(v, p)?;
                }
                a.push(dense);
            }
        }
    }
    let rows = a.len();
    let cols = m.cols();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        for i in r + 1..rows {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, a[r][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Rank of a small integer matrix: modular at both [`DEFAULT_PRIMES`], exact
/// Bareiss when they disagree or when `verify_exact` is set.
pub fn rank_small_int(rows: &[Vec<i64>], cols: usize, verify_exact: bool) -> usize {
    let exact = || {
        let mut m: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        bareiss_echelon(&mut m, cols)
    };
    if verify_exact {
        return exact();
    }
    let r: Vec<usize> = DEFAULT_PRIMES.iter().map(|&p| rank_i64_mod_p(rows, cols, p)).collect();
    if r[0] == r[1] {
        r[0]
    } else {
        exact()
    }
}

fn rank_i64_mod_p(rows: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
    let n = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        for i in r + 1..n {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, a[r][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

/// Nullity of `m` acting on column vectors.
pub fn nullity(m: &RationalMatrix) -> usize {
    m.cols() - m.rank_exact()
}
