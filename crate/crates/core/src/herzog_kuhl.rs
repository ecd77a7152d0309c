//! Herzog–Kühl equations for `S/I^k` when `I^k` has a linear resolution.
//!
//! Column `j` of every system pairs with `β_{j+1}`, so a system for `n`
//! variables always has `n` columns.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::betti_oracle::BettiVector;
use crate::error::{Error, Result};
use crate::exactmath::{binom, binom_poly, pascal, BigRat, RationalMatrix, UniPoly};
use crate::monomials::MonomialIdeal;

fn check_shape(n: usize, delta: usize, d: u32, k: u32) -> Result<()> {
    if delta >= n {
        return Err(Error::InvalidArgument(format!("need delta < n, got delta = {delta}, n = {n}")));
    }
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument("d and k must be positive".into()));
    }
    Ok(())
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The `n - delta` equations in falling-factorial form: row `r`, column
/// `i - 1` holds `(-1)^i (dk+i-1)(dk+i-2)...(dk+i-r)`; the right side is
/// `(-1, 0, ..., 0)`.
pub fn hk_raw_system(n: usize, delta: usize, d: u32, k: u32) -> Result<(RationalMatrix, Vec<BigRat>)> {
    check_shape(n, delta, d, k)?;
    let dk = (d as i64) * (k as i64);
    let m = RationalMatrix::from_fn(n - delta, n, |r, c| {
        let i = c as i64 + 1;
        let falling: BigInt = (0..r as i64).map(|t| BigInt::from(dk + i - 1 - t)).product();
        BigRat::from_integer(falling * sign(c + 1))
    });
    let mut rhs = vec![BigRat::zero(); n - delta];
    rhs[0] = -BigRat::one();
    Ok((m, rhs))
}

/// Pascal form: entry `(i, j)` is `(-1)^(i+j) C(j, i)`, right side `C(dk+i-1, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKSystem {
    pub n: usize,
    pub delta: usize,
    pub d: u32,
    pub k: u32,
    pub matrix: RationalMatrix,
    pub rhs: Vec<BigRat>,
}

fn pascal_form_matrix(n: usize, delta: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n - delta, n, |i, j| {
        BigRat::from_integer(binom(j as i64, i as i64).expect("j >= 0") * sign(i + j))
    })
}

pub fn hk_system(n: usize, delta: usize, d: u32, k: u32) -> Result<HKSystem> {
    check_shape(n, delta, d, k)?;
    let dk = (d as i64) * (k as i64);
    let rhs = (0..(n - delta) as i64)
        .map(|i| binom(dk + i - 1, i).map(BigRat::from_integer))
        .collect::<Result<Vec<_>>>()?;
    Ok(HKSystem { n, delta, d, k, matrix: pascal_form_matrix(n, delta), rhs })
}

/// Right-hand side of [`hk_system`] as polynomials in `k`.
pub fn hk_system_rhs_poly(n: usize, delta: usize, d: u32) -> Result<Vec<UniPoly>> {
    check_shape(n, delta, d, 1)?;
    Ok((0..(n - delta) as u32).map(|i| binom_poly(d as i64, i as i64 - 1, i)).collect())
}

fn satisfies(m: &RationalMatrix, rhs: &[BigRat], beta: &[BigRat]) -> Result<bool> {
    Ok(m.mul_vec(beta)? == rhs)
}

/// True iff `beta` satisfies both the raw and the Pascal-form system.
pub fn hk_verify(beta: &BettiVector, n: usize, delta: usize, d: u32, k: u32) -> Result<bool> {
    if beta.n() != n {
        return Err(Error::InconsistentLength { expected: n, found: beta.n() });
    }
    let b: Vec<BigRat> = beta.values().iter().map(|&v| BigRat::from_integer(v.into())).collect();
    let (raw, raw_rhs) = hk_raw_system(n, delta, d, k)?;
    let sys = hk_system(n, delta, d, k)?;
    Ok(satisfies(&raw, &raw_rhs, &b)? && satisfies(&sys.matrix, &sys.rhs, &b)?)
}

/// True when `a x = u` and `b x = v` are both consistent and have the same
/// solutions, decided by comparing ranks of the augmented matrices.
pub fn solution_sets_equal(a: &RationalMatrix, u: &[BigRat], b: &RationalMatrix, v: &[BigRat]) -> Result<bool> {
    let au = a.augment(u)?;
    let bv = b.augment(v)?;
    let (ra, rau, rb, rbv) = (a.rank_exact(), au.rank_exact(), b.rank_exact(), bv.rank_exact());
    if ra != rau || rb != rbv {
        return Ok(false);
    }
    let both = au.stack(&bv)?.rank_exact();
    Ok(rau == rbv && both == rau)
}

fn apply_pascal(s: usize, col: &[BigRat]) -> Vec<BigRat> {
    pascal(s).mul_vec(col).expect("square of matching size")
}

fn apply_pascal_poly(s: usize, col: &[UniPoly]) -> Vec<UniPoly> {
    (0..s)
        .map(|i| {
            (i..s).fold(UniPoly::zero(), |acc, j| {
                let c = BigRat::from_integer(binom(j as i64, i as i64).expect("j >= 0"));
                &acc + &col[j].scale(&c)
            })
        })
        .collect()
}

fn dk_binom(d: u32, k: u32, i: usize) -> BigRat {
    BigRat::from_integer(binom((d * k) as i64 + i as i64, i as i64).expect("nonnegative"))
}

/// `β_2, ..., β_n` of a dimension-one family from `β_1`:
/// `[C(j,i)] · [β_1 - C(dk+i, i)]` over `0 <= i, j <= n-2`.
pub fn solve_dim1(n: usize, d: u32, k: u32, beta1: &BigRat) -> Result<Vec<BigRat>> {
    if n < 2 {
        return Err(Error::InvalidArgument("solve_dim1 needs n >= 2".into()));
    }
    let col: Vec<BigRat> = (0..n - 1).map(|i| beta1 - dk_binom(d, k, i)).collect();
    Ok(apply_pascal(n - 1, &col))
}

pub fn solve_dim1_poly(n: usize, d: u32, beta1: &UniPoly) -> Result<Vec<UniPoly>> {
    if n < 2 {
        return Err(Error::InvalidArgument("solve_dim1 needs n >= 2".into()));
    }
    let col: Vec<UniPoly> = (0..n - 1).map(|i| beta1 - &binom_poly(d as i64, i as i64, i as u32)).collect();
    Ok(apply_pascal_poly(n - 1, &col))
}

fn dim2_correction(n: usize, i: usize) -> BigRat {
    BigRat::from_integer(binom(n as i64 - 2, i as i64).expect("n >= 2") * sign(n + i))
}

/// `β_2, ..., β_{n-1}` of a dimension-two family from `β_1` and `β_n`:
/// `[C(j,i)] · [β_1 - (-1)^(n+i) C(n-2,i) β_n - C(dk+i, i)]` over `0 <= i, j <= n-3`.
pub fn solve_dim2(n: usize, d: u32, k: u32, beta1: &BigRat, betan: &BigRat) -> Result<Vec<BigRat>> {
    if n < 3 {
        return Err(Error::InvalidArgument("solve_dim2 needs n >= 3".into()));
    }
    let col: Vec<BigRat> =
        (0..n - 2).map(|i| beta1 - dim2_correction(n, i) * betan - dk_binom(d, k, i)).collect();
    Ok(apply_pascal(n - 2, &col))
}

pub fn solve_dim2_poly(n: usize, d: u32, beta1: &UniPoly, betan: &UniPoly) -> Result<Vec<UniPoly>> {
    if n < 3 {
        return Err(Error::InvalidArgument("solve_dim2 needs n >= 3".into()));
    }
    let col: Vec<UniPoly> = (0..n - 2)
        .map(|i| &(beta1 - &betan.scale(&dim2_correction(n, i))) - &binom_poly(d as i64, i as i64, i as u32))
        .collect();
    Ok(apply_pascal_poly(n - 2, &col))
}

/// `β_n(S/I)` as the number of socle monomials of `S/I` with degree in `window`.
pub fn betan_from_socle(ideal: &MonomialIdeal, window: RangeInclusive<u32>) -> u64 {
    ideal.socle_monomials(*window.start(), *window.end()).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac};
    use proptest::prelude::*;

    fn bv(v: &[u64]) -> BettiVector {
        BettiVector::new(v.to_vec())
    }

    fn ints(v: &[i64]) -> Vec<BigRat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn raw_rows() {
        let (m, rhs) = hk_raw_system(4, 1, 2, 1).unwrap();
        assert_eq!(m.row(0), ints(&[-1, 1, -1, 1]));
        assert_eq!(rhs, ints(&[-1, 0, 0]));
        assert_eq!(m.mul_vec(&ints(&[6, 8, 3, 0])).unwrap(), rhs);
        assert_eq!(m.row(1), ints(&[-2, 3, -4, 5]));
    }

    #[test]
    fn pascal_form() {
        let s = hk_system(4, 1, 2, 1).unwrap();
        assert_eq!(s.rhs, ints(&[1, 2, 3]));
        assert_eq!(s.matrix.row(0), ints(&[1, -1, 1, -1]));
        assert_eq!(s.matrix.mul_vec(&ints(&[6, 8, 3, 0])).unwrap(), s.rhs);
        let poly = hk_system_rhs_poly(4, 1, 2).unwrap();
        for k in 1..5 {
            let num = hk_system(4, 1, 2, k).unwrap().rhs;
            let at: Vec<BigRat> = poly.iter().map(|p| p.eval_int(k as i64)).collect();
            assert_eq!(num, at);
        }
    }

    #[test]
    fn verify_examples() {
        assert!(hk_verify(&bv(&[6, 8, 3, 0]), 4, 1, 2, 1).unwrap());
        assert!(!hk_verify(&bv(&[6, 7, 3, 0]), 4, 1, 2, 1).unwrap());
        assert!(hk_verify(&bv(&[10, 15, 6, 0, 0]), 5, 2, 3, 1).unwrap());
        assert!(hk_verify(&bv(&[1, 2]), 3, 1, 1, 1).is_err());
    }

    #[test]
    fn raw_and_pascal_forms_agree() {
        for n in 1..=7 {
            for delta in 0..n.min(4) {
                for d in 1..=4 {
                    for k in 1..=4 {
                        let (raw, raw_rhs) = hk_raw_system(n, delta, d, k).unwrap();
                        let sys = hk_system(n, delta, d, k).unwrap();
                        assert!(
                            solution_sets_equal(&raw, &raw_rhs, &sys.matrix, &sys.rhs).unwrap(),
                            "n={n} delta={delta} d={d} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn misaligned_columns_are_detected() {
        // pairing column j with β_j instead of β_{j+1} is a different system
        let sys = hk_system(4, 1, 2, 1).unwrap();
        let shifted = RationalMatrix::from_fn(3, 4, |i, j| {
            BigRat::from_integer(binom(j as i64 + 1, i as i64).unwrap() * sign(i + j + 1))
        });
        let (raw, rhs) = hk_raw_system(4, 1, 2, 1).unwrap();
        assert!(!solution_sets_equal(&raw, &rhs, &shifted, &sys.rhs).unwrap());
    }

    #[test]
    fn dim1_examples() {
        assert_eq!(solve_dim1(4, 2, 1, &rat(6)).unwrap(), ints(&[8, 3, 0]));
        assert_eq!(solve_dim1(3, 3, 1, &rat(7)).unwrap(), ints(&[9, 3]));
        let beta1 = UniPoly::from_i64(&[3, 7, 6, 2]).scale(&rat_frac(1, 3));
        let rest = solve_dim1_poly(4, 2, &beta1).unwrap();
        assert_eq!(rest[0], UniPoly::from_i64(&[0, 2, 4, 2]));
        assert_eq!(rest[1], UniPoly::from_i64(&[0, -1, 2, 2]));
        assert_eq!(rest[2], UniPoly::from_i64(&[0, -2, 0, 2]).scale(&rat_frac(1, 3)));
    }

    #[test]
    fn dim2_examples() {
        assert_eq!(solve_dim2(5, 3, 1, &rat(10), &rat(0)).unwrap(), ints(&[15, 6, 0]));
        let beta1 = UniPoly::from_i64(&[24, 70, 85, 50, 11]).scale(&rat_frac(1, 24));
        let beta5 = UniPoly::from_i64(&[0, 18, -11, -18, 11]).scale(&rat_frac(1, 24));
        let mid = solve_dim2_poly(5, 3, &beta1, &beta5).unwrap();
        let b2 = UniPoly::new(vec![rat(0), rat(2), rat_frac(17, 3), rat_frac(11, 2), rat_frac(11, 6)]);
        let b3 = UniPoly::new(vec![rat(0), rat(-1), rat_frac(1, 4), rat(4), rat_frac(11, 4)]);
        assert_eq!(mid[0], b2);
        assert_eq!(mid[1], b3);
        let b4 = UniPoly::new(vec![rat(0), rat_frac(2, 3), rat_frac(-7, 3), rat_frac(-1, 6), rat_frac(11, 6)]);
        assert_eq!(mid[2], b4);
    }

    proptest! {
        #[test]
        fn symbolic_and_numeric_commute(n in 3usize..8, d in 1u32..5, k in 1u32..7,
                                        c in proptest::collection::vec(-20i64..20, 1..5),
                                        e in proptest::collection::vec(-20i64..20, 1..5)) {
            let b1 = UniPoly::from_i64(&c);
            let bn = UniPoly::from_i64(&e);
            let kk = k as i64;
            let p1: Vec<BigRat> = solve_dim1_poly(n, d, &b1).unwrap().iter().map(|p| p.eval_int(kk)).collect();
            prop_assert_eq!(p1, solve_dim1(n, d, k, &b1.eval_int(kk)).unwrap());
            let p2: Vec<BigRat> = solve_dim2_poly(n, d, &b1, &bn).unwrap().iter().map(|p| p.eval_int(kk)).collect();
            prop_assert_eq!(p2, solve_dim2(n, d, k, &b1.eval_int(kk), &bn.eval_int(kk)).unwrap());
        }

        #[test]
        fn dim1_output_solves_the_system(n in 2usize..8, d in 1u32..5, k in 1u32..5, b1 in 0i64..500) {
            let rest = solve_dim1(n, d, k, &rat(b1)).unwrap();
            let mut beta = vec![rat(b1)];
            beta.extend(rest);
            let s = hk_system(n, 1, d, k).unwrap();
            prop_assert_eq!(s.matrix.mul_vec(&beta).unwrap(), s.rhs);
        }
    }
}
