use super::{monomials_of_degree, Monomial, MonomialIdeal};
use crate::error::{Error, Result};

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < s - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, t| acc * (n - t) / (t + 1))
}

fn check_range(what: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::InvalidArgument(format!("{what} = {v} outside {lo}..={hi}")));
    }
    Ok(())
}

/// All square-free monomials of degree `d` in `n` variables.
pub fn squarefree_ideal(n: usize, d: usize) -> Result<MonomialIdeal> {
    check_range("d", d, 1, n)?;
    let gens = subsets(n, d)
        .into_iter()
        .map(|sub| {
            let mut e = vec![0; n];
            for i in sub {
                e[i] = 1;
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::from_generators(n, gens)
}

fn degree_bounded(n: usize, degree: u32, cap: u32, min_support: usize) -> Result<MonomialIdeal> {
    let gens = monomials_of_degree(n, degree)
        .into_iter()
        .filter(|m| m.exps().iter().all(|&e| e <= cap) && m.support_size() >= min_support)
        .collect();
    MonomialIdeal::from_generators(n, gens)
}

/// `(squarefree_ideal(n, d))^k` described directly: degree `dk`, every
/// exponent at most `k`.
pub fn squarefree_power_direct(n: usize, d: usize, k: u32) -> Result<MonomialIdeal> {
    check_range("d", d, 1, n)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    degree_bounded(n, d as u32 * k, k, 0)
}

/// Product of the ideals `(x_i : i in A)` over all `s`-subsets `A`.
pub fn transversal_ideal(n: usize, s: usize) -> Result<MonomialIdeal> {
    check_range("s", s, 1, n)?;
    let mut acc: Option<MonomialIdeal> = None;
    for sub in subsets(n, s) {
        let factor =
            MonomialIdeal::from_generators(n, sub.iter().map(|&i| Monomial::var(n, i)).collect())?;
        acc = Some(match acc {
            None => factor,
            Some(a) => a.product(&factor)?,
        });
    }
    Ok(acc.expect("at least one subset"))
}

/// `(transversal_ideal(n, n-1))^k`: degree `nk`, every exponent at most `k(n-1)`.
pub fn transversal_nm1_power_direct(n: usize, k: u32) -> Result<MonomialIdeal> {
    check_range("n", n, 2, usize::MAX)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    degree_bounded(n, n as u32 * k, k * (n as u32 - 1), 0)
}

/// `transversal_ideal(n, n-2)`: degree `C(n,2)`, exponents at most
/// `C(n-1,2)`, at least three variables present.
pub fn transversal_nm2_direct(n: usize) -> Result<MonomialIdeal> {
    transversal_nm2_power_direct(n, 1)
}

/// `(transversal_ideal(n, n-2))^k` described directly: degree `k C(n,2)`,
/// every exponent at most `k C(n-1,2)`, and any `n-2` of the variables carry
/// total degree at least `k` (equivalently `a_i + a_j <= k C(n,2) - k` for
/// every pair). For `k = 1` the last condition says at least three
/// exponents are positive; for `k >= 2` it is strictly stronger than that.
pub fn transversal_nm2_power_direct(n: usize, k: u32) -> Result<MonomialIdeal> {
    check_range("n", n, 3, usize::MAX)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let deg = k * binom_usize(n, 2) as u32;
    let cap = k * binom_usize(n - 1, 2) as u32;
    let gens = monomials_of_degree(n, deg)
        .into_iter()
        .filter(|m| {
            let e = m.exps();
            e.iter().all(|&a| a <= cap)
                && (0..n).all(|i| (i + 1..n).all(|j| e[i] + e[j] + k <= deg))
        })
        .collect();
    MonomialIdeal::from_generators(n, gens)
}
