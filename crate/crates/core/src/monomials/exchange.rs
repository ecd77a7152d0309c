use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{Monomial, MonomialIdeal};

/// A pair of generators `u`, `v` and an index `i` with `u_i > v_i` for which
/// the required exchange `(x_j / x_i) u` is missing from the generators.
/// For the strong form `j` names the specific failing index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub u: String,
    pub v: String,
    /// 1-based variable index that `u` gives up.
    pub i: usize,
    /// 1-based variable index `u` failed to take (strong form only).
    pub j: Option<usize>,
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j {
            Some(j) => write!(f, "u = {}, v = {}: (x{}/x{})*u is not a generator", self.u, self.v, j, self.i),
            None => write!(
                f,
                "u = {}, v = {}: no j with u_j < v_j makes (x_j/x{})*u a generator",
                self.u, self.v, self.i
            ),
        }
    }
}

fn exchanged(u: &Monomial, i: usize, j: usize) -> Monomial {
    u.div_var(i).expect("u_i > 0").times_var(j)
}

/// True when `u`, `v`, `i` witness a failure of the ordinary exchange axiom
/// for the generating set `gens`.
pub fn exchange_fails(gens: &[Monomial], u: &Monomial, v: &Monomial, i: usize) -> bool {
    let set: HashSet<&Monomial> = gens.iter().collect();
    u.exps()[i] > v.exps()[i]
        && !(0..u.nvars())
            .filter(|&j| u.exps()[j] < v.exps()[j])
            .any(|j| set.contains(&exchanged(u, i, j)))
}

pub(super) fn first_violation(ideal: &MonomialIdeal, strong: bool) -> Option<ExchangeViolation> {
    let gens = ideal.gens();
    let set: HashSet<&Monomial> = gens.iter().collect();
    let n = ideal.nvars();
    for u in gens {
        for v in gens {
            if u == v {
                continue;
            }
            for i in (0..n).filter(|&i| u.exps()[i] > v.exps()[i]) {
                let mut candidates = (0..n).filter(|&j| u.exps()[j] < v.exps()[j]);
                if strong {
                    if let Some(j) = candidates.find(|&j| !set.contains(&exchanged(u, i, j))) {
                        return Some(ExchangeViolation {
                            u: u.to_string(),
                            v: v.to_string(),
                            i: i + 1,
                            j: Some(j + 1),
                        });
                    }
                } else if !candidates.any(|j| set.contains(&exchanged(u, i, j))) {
                    return Some(ExchangeViolation { u: u.to_string(), v: v.to_string(), i: i + 1, j: None });
                }
            }
        }
    }
    None
}
