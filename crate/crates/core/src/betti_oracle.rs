//! Graded Betti numbers of `S/I` from first principles.
//!
//! [`koszul_betti`] takes homology of the Koszul complex of `S/I`, one
//! multidegree at a time. [`kpoly_betti`] reads the Betti numbers off the
//! Hilbert numerator and is only valid for linear resolutions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{binom, interpolate, rank_small_int, BigRat, UniPoly};
use crate::monomials::{IdealStrata, Monomial, MonomialIdeal};

/// Default budget of nonzero differential entries per strand `(i, j)`.
pub const DEFAULT_STRAND_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of nonzero entries in the differential leaving one strand.
    pub strand_cap: usize,
    /// Skip the modular fast path and compute every rank exactly.
    pub verify_exact: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { strand_cap: DEFAULT_STRAND_CAP, verify_exact: false }
    }
}

/// `β_{i,j}(S/I)` for `0 <= i <= n` and `j <= jmax`; zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    jmax: u32,
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Largest internal degree that was computed.
    pub fn jmax(&self) -> u32 {
        self.jmax
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, u32::MAX)).map(|(_, v)| v).sum()
    }

    /// `(β_1, ..., β_n)`.
    pub fn totals(&self) -> BettiVector {
        BettiVector::new((1..=self.n).map(|i| self.total(i)).collect())
    }

    /// True when every entry with `i >= 1` sits at `j = d + i - 1`.
    pub fn is_linear_in(&self, d: u32) -> bool {
        self.entries.keys().all(|&(i, j)| i == 0 || j + 1 == d + i as u32)
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            entries: Vec<[u64; 3]>,
            jmax: u32,
            nvars: usize,
        }
        Wire {
            entries: self.entries.iter().map(|(&(i, j), &v)| [i as u64, j as u64, v]).collect(),
            jmax: self.jmax,
            nvars: self.n,
        }
        .serialize(s)
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay2-style layout: row `r` holds `β_{i, i+r}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<u32> = {
            let mut r: Vec<u32> = self.entries.keys().map(|&(i, j)| j - i as u32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|&r| {
                (0..=self.n)
                    .map(|i| match self.get(i, r + i as u32) {
                        0 => ".".to_string(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let totals: Vec<String> = (0..=self.n).map(|i| self.total(i).to_string()).collect();
        let width = cells.iter().flatten().chain(totals.iter()).map(String::len).max().unwrap_or(1);
        let lw = rows.iter().map(|r| r.to_string().len()).max().unwrap_or(1).max("total".len());
        write!(f, "{:>lw$}:", "")?;
        for i in 0..=self.n {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>lw$}:", "total")?;
        for t in &totals {
            write!(f, " {:>width$}", t)?;
        }
        writeln!(f)?;
        for (r, row) in rows.iter().zip(&cells) {
            write!(f, "{:>lw$}:", r)?;
            for c in row {
                write!(f, " {:>width$}", c)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Total Betti numbers `β_1, ..., β_n` of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiVector {
    values: Vec<u64>,
}

impl BettiVector {
    pub fn new(values: Vec<u64>) -> Self {
        BettiVector { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `β_i`, 1-based.
    pub fn get(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `Σ_{i>=1} (-1)^i β_i`.
    pub fn alternating_sum(&self) -> i128 {
        self.values
            .iter()
            .enumerate()
            .map(|(t, &b)| if t % 2 == 0 { -(b as i128) } else { b as i128 })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// Exponent vectors `alpha <= bound` with `lo <= |alpha| <= hi`.
fn box_vectors(bound: &[u32], lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn rec(bound: &[u32], pos: usize, left_hi: u32, cur: &mut Vec<u32>, lo: u32, hi: u32, out: &mut Vec<Vec<u32>>) {
        if pos == bound.len() {
            if hi - left_hi >= lo {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=bound[pos].min(left_hi) {
            cur.push(a);
            rec(bound, pos + 1, left_hi - a, cur, lo, hi, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(bound, 0, hi, &mut Vec::new(), lo, hi, &mut out);
    out
}

struct Block {
    /// Basis of `C_i(alpha)` as bitmasks over the support, per `i`.
    basis: Vec<Vec<u32>>,
}

impl Block {
    fn new(alpha: &[u32], strata: &IdealStrata) -> Block {
        let support: Vec<usize> = (0..alpha.len()).filter(|&l| alpha[l] > 0).collect();
        let s = support.len();
        let mut basis = vec![Vec::new(); s + 1];
        for mask in 0u32..(1 << s) {
            let mut e = alpha.to_vec();
            for (b, &l) in support.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    e[l] -= 1;
                }
            }
            if !strata.contains(&Monomial::new(e)) {
                basis[mask.count_ones() as usize].push(mask);
            }
        }
        Block { basis }
    }

    fn dim(&self, i: usize) -> usize {
        self.basis.get(i).map_or(0, Vec::len)
    }

    /// Differential `C_i -> C_{i-1}` as dense rows (one per target), plus its
    /// number of nonzero entries.
    fn differential(&self, i: usize) -> (Vec<Vec<i64>>, usize) {
        if i == 0 || self.dim(i) == 0 || self.dim(i - 1) == 0 {
            return (Vec::new(), 0);
        }
        let src = &self.basis[i];
        let tgt = &self.basis[i - 1];
        let index: BTreeMap<u32, usize> = tgt.iter().enumerate().map(|(r, &m)| (m, r)).collect();
        let mut rows = vec![vec![0i64; src.len()]; tgt.len()];
        let mut nnz = 0;
        for (c, &mask) in src.iter().enumerate() {
            let mut pos = 0;
            for b in 0..32 {
                if mask >> b & 1 == 0 {
                    continue;
                }
                if let Some(&r) = index.get(&(mask & !(1 << b))) {
                    rows[r][c] = if pos % 2 == 0 { 1 } else { -1 };
                    nnz += 1;
                }
                pos += 1;
            }
        }
        (rows, nnz)
    }
}

/// [`koszul_betti_with`] under the default configuration.
pub fn koszul_betti(ideal: &MonomialIdeal, jmax: u32) -> Result<BettiTable> {
    koszul_betti_with(ideal, jmax, &OracleConfig::default())
}

/// Graded Betti numbers of `S/I` up to internal degree `jmax` as homology of
/// the Koszul complex `K(x; S/I)`.
///
/// The complex splits by multidegree `alpha`: its degree-`alpha` part in
/// homological degree `i` has basis `e_F ⊗ x^(alpha - F)` over `i`-subsets `F`
/// of the support of `alpha` with `x^(alpha - F)` outside `I`. Only `alpha`
/// below the lcm of the generators and inside `I` can carry homology for
/// `i >= 1`.
pub fn koszul_betti_with(ideal: &MonomialIdeal, jmax: u32, cfg: &OracleConfig) -> Result<BettiTable> {
    let n = ideal.nvars();
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    if ideal.is_zero() {
        return Ok(BettiTable { n, jmax, entries });
    }
    if ideal.gens().iter().any(|g| g.degree() == 0) {
        // I = S, the quotient vanishes
        return Ok(BettiTable { n, jmax, entries: BTreeMap::new() });
    }
    let strata = ideal.strata(jmax);
    let lo = ideal.gens().iter().map(Monomial::degree).min().unwrap_or(0);
    let mut nnz: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    for alpha in box_vectors(ideal.lcm_all().exps(), lo, jmax) {
        let m = Monomial::new(alpha);
        if !strata.contains(&m) {
            continue;
        }
        let j = m.degree();
        let block = Block::new(m.exps(), &strata);
        let top = block.basis.len() - 1;
        let mut ranks = vec![0usize; top + 2];
        for i in 1..=top {
            let (rows, count) = block.differential(i);
            if count == 0 {
                continue;
            }
            let used = nnz.entry((i, j)).or_insert(0);
            *used += count;
            if *used > cfg.strand_cap {
                return Err(Error::ResourceCap {
                    what: format!("Koszul strand (i = {i}, j = {j})"),
                    needed: *used,
                    cap: cfg.strand_cap,
                });
            }
            ranks[i] = rank_small_int(&rows, block.dim(i), cfg.verify_exact);
        }
        for i in 1..=top {
            let b = block.dim(i) - ranks[i] - ranks[i + 1];
            if b > 0 {
                *entries.entry((i, j)).or_insert(0) += b as u64;
            }
        }
    }
    Ok(BettiTable { n, jmax, entries })
}

/// Internal degree bound used for linearity certification: `D + n`.
pub fn certification_jmax(ideal: &MonomialIdeal) -> u32 {
    ideal.max_gen_degree() + ideal.nvars() as u32
}

/// Linear resolution, certified by Koszul homology up to degree `D + n`.
/// The zero ideal counts as linear; non-equigenerated ideals never do.
pub fn is_linear(ideal: &MonomialIdeal) -> Result<bool> {
    is_linear_with(ideal, &OracleConfig::default())
}

pub fn is_linear_with(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<bool> {
    if ideal.is_zero() {
        return Ok(true);
    }
    let Some(d) = ideal.is_equigenerated() else {
        return Ok(false);
    };
    Ok(koszul_betti_with(ideal, certification_jmax(ideal), cfg)?.is_linear_in(d))
}

/// `I^k` linear for every `k` in `1..=kmax`.
pub fn has_linear_powers_up_to(ideal: &MonomialIdeal, kmax: u32) -> Result<bool> {
    has_linear_powers_up_to_with(ideal, kmax, &OracleConfig::default())
}

pub fn has_linear_powers_up_to_with(ideal: &MonomialIdeal, kmax: u32, cfg: &OracleConfig) -> Result<bool> {
    if ideal.is_zero() {
        return Ok(true);
    }
    for k in 1..=kmax {
        if !is_linear_with(&ideal.power(k)?, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients `c_0..=c_top` of `(1-t)^n Σ_j dim(S/I)_j t^j`.
pub fn hilbert_numerator(ideal: &MonomialIdeal, top: u32) -> Vec<BigInt> {
    let n = ideal.nvars() as i64;
    let h = ideal.hilbert_function(top);
    (0..=top as i64)
        .map(|m| {
            (0..=n.min(m)).fold(BigInt::zero(), |acc, r| {
                let term = binom(n, r).expect("n >= 0") * &h[(m - r) as usize];
                if r % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Total Betti numbers from the Hilbert numerator, for an ideal generated in
/// one degree `D` whose resolution is linear.
///
/// The numerator must read `1 + Σ (-1)^i β_i t^(D+i-1)` with `β_i >= 0`; the
/// coefficients are checked up to `t^(D+2n-1)`, so a nonzero tail just past
/// the linear range is also caught.
pub fn kpoly_betti(ideal: &MonomialIdeal) -> Result<BettiVector> {
    let n = ideal.nvars();
    let Some(d) = ideal.is_equigenerated() else {
        return Err(Error::InvalidArgument("kpoly_betti needs an equigenerated ideal".into()));
    };
    if d == 0 {
        return Err(Error::InvalidArgument("ideal is the whole ring".into()));
    }
    let top = d + 2 * n as u32 - 1;
    let c = hilbert_numerator(ideal, top);
    let shape_err = |m: usize| {
        Error::NotLinearShape(format!("coefficient of t^{m} is {} (generator degree {d})", c[m]))
    };
    if c[0] != BigInt::from(1) {
        return Err(shape_err(0));
    }
    let mut values = Vec::with_capacity(n);
    for (m, cm) in c.iter().enumerate().skip(1) {
        let m32 = m as u32;
        if m32 >= d && m32 < d + n as u32 {
            let i = (m32 - d + 1) as usize;
            let signed = if i % 2 == 0 { cm.clone() } else { -cm };
            if signed.is_negative() {
                return Err(shape_err(m));
            }
            values.push(signed.to_u64().ok_or_else(|| Error::Overflow(signed.to_string()))?);
        } else if !cm.is_zero() {
            return Err(shape_err(m));
        }
    }
    Ok(BettiVector::new(values))
}

/// Fits `β_i(S/I_k)` for the family `k -> I_k` as a polynomial in `k`
/// through the points of `krange`, then checks one more point past its end.
pub fn betti_fit<F>(family: F, i: usize, krange: RangeInclusive<u32>) -> Result<UniPoly>
where
    F: Fn(u32) -> Result<MonomialIdeal>,
{
    Ok(betti_fit_all(family, krange)?.swap_remove(i - 1))
}

/// [`betti_fit`] for every `i` at once.
pub fn betti_fit_all<F>(family: F, krange: RangeInclusive<u32>) -> Result<Vec<UniPoly>>
where
    F: Fn(u32) -> Result<MonomialIdeal>,
{
    if krange.is_empty() {
        return Err(Error::InvalidArgument("empty k range".into()));
    }
    let held_out = *krange.end() + 1;
    let mut samples: Vec<(i64, BettiVector)> = Vec::new();
    for k in krange {
        samples.push((k as i64, kpoly_betti(&family(k)?)?));
    }
    let check = kpoly_betti(&family(held_out)?)?;
    let n = check.n();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let points: Vec<(i64, BigRat)> =
            samples.iter().map(|(k, b)| (*k, BigRat::from_integer(b.get(i).into()))).collect();
        let p = interpolate(&points)?;
        let fitted = p.eval_int(held_out as i64);
        let observed = BigRat::from_integer(check.get(i).into());
        if fitted != observed {
            return Err(Error::HeldOutMismatch {
                k: held_out as i64,
                fitted: fitted.to_string(),
                observed: observed.to_string(),
            });
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_frac;
    use crate::monomials::squarefree_ideal;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn koszul_small_cases() {
        let t = koszul_betti(&squarefree_ideal(4, 2).unwrap(), 6).unwrap();
        assert_eq!(t.totals().values(), &[6, 8, 3, 0]);
        assert_eq!((t.get(1, 2), t.get(2, 3), t.get(3, 4)), (6, 8, 3));
        assert!(t.is_linear_in(2));

        let x1 = ideal(3, &[&[1, 0, 0]]);
        assert_eq!(koszul_betti(&x1, 4).unwrap().totals().values(), &[1, 0, 0]);

        let t = koszul_betti(&squarefree_ideal(3, 2).unwrap(), 5).unwrap();
        assert_eq!(t.totals().values(), &[3, 2, 0]);
    }

    #[test]
    fn complete_intersection_is_not_linear() {
        let ci = ideal(2, &[&[2, 0], &[0, 2]]);
        let t = koszul_betti(&ci, 4).unwrap();
        assert_eq!(t.get(2, 4), 1);
        assert!(!is_linear(&ci).unwrap());
        assert!(matches!(kpoly_betti(&ci), Err(Error::NotLinearShape(_))));
    }

    #[test]
    fn table_invariants() {
        let t = koszul_betti(&squarefree_ideal(4, 3).unwrap().power(2).unwrap(), 10).unwrap();
        assert_eq!(t.get(0, 0), 1);
        for ((i, j), v) in t.entries() {
            assert!(v > 0);
            assert!(j >= i as u32);
            assert!(i > 0 || j == 0);
        }
    }

    #[test]
    fn kpoly_examples() {
        let sq = squarefree_ideal(4, 2).unwrap().power(2).unwrap();
        assert_eq!(kpoly_betti(&sq).unwrap().values(), &[19, 36, 22, 4]);
        assert_eq!(kpoly_betti(&ideal(2, &[&[1, 1]])).unwrap().values(), &[1, 0]);
        assert_eq!(kpoly_betti(&squarefree_ideal(5, 3).unwrap()).unwrap().values(), &[10, 15, 6, 0, 0]);
    }

    #[test]
    fn exact_and_modular_agree() {
        let i = squarefree_ideal(4, 2).unwrap().power(2).unwrap();
        let exact = OracleConfig { verify_exact: true, ..OracleConfig::default() };
        assert_eq!(koszul_betti(&i, 8).unwrap(), koszul_betti_with(&i, 8, &exact).unwrap());
    }

    #[test]
    fn strand_cap_is_enforced() {
        let i = squarefree_ideal(4, 2).unwrap().power(2).unwrap();
        let tiny = OracleConfig { strand_cap: 10, verify_exact: false };
        assert!(matches!(koszul_betti_with(&i, 8, &tiny), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn numerator_stable_in_jmax() {
        let i = squarefree_ideal(4, 2).unwrap().power(2).unwrap();
        let a = hilbert_numerator(&i, 7);
        let b = hilbert_numerator(&i, 12);
        assert_eq!(a[..], b[..8]);
        assert!(b[8..].iter().all(Zero::is_zero));
    }

    #[test]
    fn fit_squarefree_family() {
        let fam = |k| squarefree_ideal(4, 2)?.power(k);
        let p4 = betti_fit(fam, 4, 1..=5).unwrap();
        let expect = UniPoly::new(vec![rat_frac(0, 1), rat_frac(-2, 3), rat_frac(0, 1), rat_frac(2, 3)]);
        assert_eq!(p4, expect);
        let p1 = betti_fit(fam, 1, 1..=5).unwrap();
        assert_eq!(p1, UniPoly::from_i64(&[3, 7, 6, 2]).scale(&rat_frac(1, 3)));
        let x1 = |k| MonomialIdeal::from_exponents(2, &[vec![k, 0]]);
        assert_eq!(betti_fit(x1, 1, 1..=2).unwrap(), UniPoly::from_int(1));
    }

    #[test]
    fn fit_detects_short_range() {
        let fam = |k| squarefree_ideal(4, 2)?.power(k);
        assert!(matches!(betti_fit(fam, 1, 1..=2), Err(Error::HeldOutMismatch { .. })));
    }

    #[test]
    fn display_table() {
        let t = koszul_betti(&squarefree_ideal(3, 2).unwrap(), 5).unwrap();
        let s = t.to_string();
        assert!(s.contains("total: 1 3 2 0"), "{s}");
    }
}
