//! Monomials and monomial ideals in `k[x1, ..., xn]`.

mod constructors;
mod exchange;
mod io;

pub use constructors::{
    squarefree_ideal, squarefree_power_direct, transversal_ideal, transversal_nm1_power_direct,
    transversal_nm2_direct, transversal_nm2_power_direct,
};
pub use exchange::{exchange_fails, ExchangeViolation};
pub use io::IdealJson;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::binom_nn;

/// Exponent vector with a cached total degree. Ordered by grlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1^2*x3`; the constant monomial prints as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `j` in `nvars` variables, in descending grlex order.
pub fn monomials_of_degree(nvars: usize, j: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if j == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, j, &mut vec![0; nvars], &mut out);
    out
}

/// Number of monomials of degree `j` in `nvars` variables.
pub fn count_monomials(nvars: usize, j: u32) -> BigInt {
    if nvars == 0 {
        return BigInt::from((j == 0) as u8);
    }
    binom_nn(nvars as u64 + j as u64 - 1, nvars as i64 - 1)
}

/// Monomial ideal given by its minimal generators, stored in descending
/// grlex order (leading generator first).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes, deduplicates and sorts `raw`.
    pub fn from_generators(nvars: usize, raw: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::InconsistentLength { expected: nvars, found: bad.nvars() });
        }
        let mut sorted = raw;
        sorted.sort();
        sorted.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
        for m in sorted {
            // ascending degree: only earlier (lower or equal degree) monomials can divide m
            if !kept.iter().any(|g| g.degree() < m.degree() && g.divides(&m)) {
                kept.push(m);
            }
        }
        kept.reverse();
        Ok(MonomialIdeal { nvars, gens: kept })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    /// `(x1, ..., xn)`.
    pub fn maximal(nvars: usize) -> Self {
        MonomialIdeal::from_generators(nvars, (0..nvars).map(|i| Monomial::var(nvars, i)).collect())
            .expect("consistent")
    }

    pub fn from_exponents(nvars: usize, exps: &[Vec<u32>]) -> Result<Self> {
        MonomialIdeal::from_generators(nvars, exps.iter().cloned().map(Monomial::new).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Common degree of all generators, if there is one.
    pub fn is_equigenerated(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    /// Componentwise maximum of all generators.
    pub fn lcm_all(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Krull dimension of `S/I`: the largest set of variables containing
    /// the support of no generator. Exhaustive over subsets, so `n <= 20`.
    pub fn krull_dim(&self) -> usize {
        assert!(self.nvars <= 20, "krull_dim enumerates all variable subsets");
        let supports: Vec<u32> = self
            .gens
            .iter()
            .map(|g| g.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |acc, (i, _)| acc | 1 << i))
            .collect();
        (0u32..1 << self.nvars)
            .filter(|&f| supports.iter().all(|&s| s & !f != 0))
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn check_same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InconsistentLength { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        let products: Vec<Monomial> =
            self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        if let (Some(_), Some(_)) = (self.is_equigenerated(), other.is_equigenerated()) {
            let d = products.first().map(Monomial::degree);
            assert!(products.iter().all(|m| Some(m.degree()) == d));
            let mut set: Vec<Monomial> =
                products.into_iter().collect::<HashSet<_>>().into_iter().collect();
            set.sort_by(|a, b| b.cmp(a));
            return Ok(MonomialIdeal { nvars: self.nvars, gens: set });
        }
        MonomialIdeal::from_generators(self.nvars, products)
    }

    /// `I^k` by iterated multiplication, minimalized after every step.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::InvalidArgument("power exponent must be positive".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Linear scan over the generators.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `dim_k (S/I)_j` by enumerating every monomial of degree `j`.
    pub fn hilbert_dim(&self, j: u32) -> u64 {
        monomials_of_degree(self.nvars, j).iter().filter(|m| !self.contains(m)).count() as u64
    }

    /// Degree slices of `I` up to `jmax`, for fast membership and counting.
    pub fn strata(&self, jmax: u32) -> IdealStrata {
        IdealStrata::new(self, jmax)
    }

    /// `dim_k (S/I)_j` for `j = 0..=jmax`.
    pub fn hilbert_function(&self, jmax: u32) -> Vec<BigInt> {
        let strata = self.strata(jmax);
        (0..=jmax)
            .map(|j| count_monomials(self.nvars, j) - BigInt::from(strata.slice(j).len()))
            .collect()
    }

    /// Monomials `m` with `jlo <= deg m <= jhi`, `m` not in `I` and `x_i m` in
    /// `I` for every `i`; ascending degree, descending grlex within a degree.
    pub fn socle_monomials(&self, jlo: u32, jhi: u32) -> Vec<Monomial> {
        if jlo > jhi {
            return Vec::new();
        }
        let strata = self.strata(jhi + 1);
        let mut out = Vec::new();
        for j in jlo..=jhi {
            for m in monomials_of_degree(self.nvars, j) {
                if strata.contains(&m) {
                    continue;
                }
                if (0..self.nvars).all(|i| strata.contains(&m.times_var(i))) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Polymatroidal exchange axiom, with the first violation found.
    pub fn polymatroidal_violation(&self) -> Option<ExchangeViolation> {
        exchange::first_violation(self, false)
    }

    pub fn is_polymatroidal(&self) -> bool {
        self.is_equigenerated().is_some() && self.polymatroidal_violation().is_none()
    }

    pub fn sep_violation(&self) -> Option<ExchangeViolation> {
        exchange::first_violation(self, true)
    }

    /// Strong exchange property (requires equigeneration).
    pub fn has_sep(&self) -> bool {
        self.is_equigenerated().is_some() && self.sep_violation().is_none()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// The monomials of `I` in each degree `0..=jmax`.
///
/// Built degree by degree: `I_j = x * I_{j-1}` together with the generators
/// of degree `j`.
#[derive(Clone, Debug)]
pub struct IdealStrata {
    slices: Vec<HashSet<Monomial>>,
}

impl IdealStrata {
    pub fn new(ideal: &MonomialIdeal, jmax: u32) -> Self {
        let n = ideal.nvars();
        let mut slices: Vec<HashSet<Monomial>> = Vec::with_capacity(jmax as usize + 1);
        for j in 0..=jmax {
            let mut cur: HashSet<Monomial> = HashSet::new();
            if let Some(prev) = slices.last() {
                for m in prev {
                    for i in 0..n {
                        cur.insert(m.times_var(i));
                    }
                }
            }
            cur.extend(ideal.gens().iter().filter(|g| g.degree() == j).cloned());
            slices.push(cur);
        }
        IdealStrata { slices }
    }

    pub fn jmax(&self) -> u32 {
        self.slices.len() as u32 - 1
    }

    pub fn slice(&self, j: u32) -> &HashSet<Monomial> {
        &self.slices[j as usize]
    }

    /// Panics above `jmax`.
    pub fn contains(&self, m: &Monomial) -> bool {
        assert!(m.degree() <= self.jmax(), "degree {} above strata bound", m.degree());
        self.slices[m.degree() as usize].contains(m)
    }
}
