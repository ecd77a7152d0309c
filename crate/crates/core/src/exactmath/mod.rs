//! Exact arithmetic: big rationals, binomial coefficients, Pascal matrices,
//! fraction-free linear algebra and univariate polynomials in `k`.
//!
//! Nothing in this crate touches floating point.

mod matrix;
mod poly;

pub use matrix::{rank_mod_p, rank_small_int, solve_exact, nullity, RationalMatrix, DEFAULT_PRIMES};
pub use poly::{binom_poly, interpolate, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// `C(top, bottom)`, zero when `bottom < 0` or `bottom > top`.
pub fn binom(top: i64, bottom: i64) -> Result<BigInt> {
    if top < 0 {
        return Err(Error::NegativeBinomialTop(top));
    }
    if bottom < 0 || bottom > top {
        return Ok(BigInt::zero());
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for t in 0..bottom {
        acc *= top - t;
        acc /= t + 1;
    }
    Ok(acc)
}

/// `binom` for callers that have already established `top >= 0`.
pub(crate) fn binom_nn(top: u64, bottom: i64) -> BigInt {
    binom(top as i64, bottom).expect("nonnegative top")
}

/// Upper unitriangular `[C(j, i)]` for `0 <= i, j < s`.
pub fn pascal(s: usize) -> RationalMatrix {
    RationalMatrix::from_fn(s, s, |i, j| {
        BigRat::from_integer(binom_nn(j as u64, i as i64))
    })
}

/// `[(-1)^(i+j) C(j, i)]`, the inverse of [`pascal`].
pub fn pascal_signed(s: usize) -> RationalMatrix {
    RationalMatrix::from_fn(s, s, |i, j| {
        let c = BigRat::from_integer(binom_nn(j as u64, i as i64));
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    })
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if p == b {
            return true;
        }
        if p % b == 0 {
            return false;
        }
    }
    let mut d = p - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, p);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Converts an exact value that is known to be a nonnegative integer.
pub fn to_u64(v: &BigRat) -> Result<u64> {
    if !v.is_integer() {
        return Err(Error::Overflow(format!("{v} is not an integer")));
    }
    u64::try_from(v.to_integer()).map_err(|_| Error::Overflow(v.to_string()))
}

pub fn big_to_u64(v: &BigInt) -> Result<u64> {
    u64::try_from(v.clone()).map_err(|_| Error::Overflow(v.to_string()))
}
