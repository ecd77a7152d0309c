use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::BigRat;
use crate::error::{Error, Result};

/// Univariate polynomial in `k` with exact rational coefficients.
///
/// `coeffs[e]` is the coefficient of `k^e`; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        UniPoly::constant(BigRat::from_integer(c.into()))
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        UniPoly::new(vec![BigRat::zero(), BigRat::one()])
    }

    /// `c*k + shift`.
    pub fn linear(c: i64, shift: i64) -> Self {
        UniPoly::new(vec![BigRat::from_integer(shift.into()), BigRat::from_integer(c.into())])
    }

    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigRat {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, k: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * k + c;
        }
        acc
    }

    pub fn eval_int(&self, k: i64) -> BigRat {
        self.eval(&BigRat::from_integer(k.into()))
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|e| self.coeff(e) - rhs.coeff(e)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders like `2/3*k^3 - 2/3*k`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "k".to_string(),
                _ => format!("k^{e}"),
            };
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `C(c*k + shift, i)` as a polynomial in `k`.
pub fn binom_poly(c: i64, shift: i64, i: u32) -> UniPoly {
    let mut acc = UniPoly::from_int(1);
    let mut fact = BigInt::one();
    for t in 0..i as i64 {
        acc = &acc * &UniPoly::linear(c, shift - t);
        fact *= t + 1;
    }
    acc.scale(&BigRat::new(BigInt::one(), fact))
}

/// Lagrange interpolation through `(k, value)` points with distinct `k`.
pub fn interpolate(points: &[(i64, BigRat)]) -> Result<UniPoly> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("interpolation needs at least one point".into()));
    }
    let mut seen = BTreeSet::new();
    for (k, _) in points {
        if !seen.insert(*k) {
            return Err(Error::DuplicateAbscissa(*k));
        }
    }
    let mut result = UniPoly::zero();
    for (i, (ki, vi)) in points.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::from_int(1);
        let mut denom = BigRat::one();
        for (j, (kj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &UniPoly::linear(1, -kj);
            denom *= BigRat::from_integer((ki - kj).into());
        }
        result = &result + &basis.scale(&(vi / denom));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{binom, rat, rat_frac};
    use proptest::prelude::*;

    #[test]
    fn trimming_and_degree() {
        let p = UniPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_i64(&[0, 0]).degree(), None);
        assert!(UniPoly::zero().is_zero());
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(2, 1, 2), UniPoly::from_i64(&[0, 1, 2]));
        assert_eq!(binom_poly(3, 2, 2).eval_int(1), rat(10));
        assert_eq!(binom_poly(2, 0, 0), UniPoly::from_int(1));
    }

    #[test]
    fn binom_poly_matches_binom_on_grid() {
        for c in 0..=4i64 {
            for shift in -4..=6i64 {
                for i in 0..=5u32 {
                    let p = binom_poly(c, shift, i);
                    for k in 0..=6i64 {
                        let top = c * k + shift;
                        if top >= 0 {
                            let expect = BigRat::from_integer(binom(top, i as i64).unwrap());
                            assert_eq!(p.eval_int(k), expect, "c={c} shift={shift} i={i} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interpolate_examples() {
        let sq = interpolate(&[(1, rat(1)), (2, rat(4)), (3, rat(9))]).unwrap();
        assert_eq!(sq, UniPoly::from_i64(&[0, 0, 1]));
        let c = interpolate(&[(1, rat(5)), (4, rat(5)), (9, rat(5))]).unwrap();
        assert_eq!(c, UniPoly::from_int(5));
        assert_eq!(c.degree(), Some(0));
        assert_eq!(
            interpolate(&[(1, rat(1)), (1, rat(2))]),
            Err(Error::DuplicateAbscissa(1))
        );
        assert!(interpolate(&[]).is_err());
    }

    #[test]
    fn display() {
        let p = UniPoly::new(vec![rat(0), rat_frac(-2, 3), rat(0), rat_frac(2, 3)]);
        assert_eq!(p.to_string(), "2/3*k^3 - 2/3*k");
        assert_eq!(UniPoly::from_i64(&[-1, 1]).to_string(), "k - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::from_i64(&[0, -1]).to_string(), "-k");
    }

    proptest! {
        #[test]
        fn interpolation_round_trips(coeffs in proptest::collection::vec((-50i64..50, 1i64..7), 0..7),
                                     start in -5i64..5) {
            let p = UniPoly::new(coeffs.iter().map(|&(n, d)| rat_frac(n, d)).collect());
            let m = p.degree().unwrap_or(0);
            let points: Vec<(i64, BigRat)> = (0..=m as i64).map(|t| (start + 2 * t, p.eval_int(start + 2 * t))).collect();
            prop_assert_eq!(interpolate(&points).unwrap(), p);
        }

        #[test]
        fn ring_laws(a in proptest::collection::vec(-9i64..9, 0..5),
                     b in proptest::collection::vec(-9i64..9, 0..5),
                     k in -6i64..6) {
            let (pa, pb) = (UniPoly::from_i64(&a), UniPoly::from_i64(&b));
            prop_assert_eq!((&pa * &pb).eval_int(k), pa.eval_int(k) * pb.eval_int(k));
            prop_assert_eq!((&pa - &pb).eval_int(k), pa.eval_int(k) - pb.eval_int(k));
            prop_assert_eq!(&(&pa + &pb) - &pb, pa);
        }
    }
}
