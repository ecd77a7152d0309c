//! Text and JSON forms of monomial ideals.
//!
//! Text: one generator per line written like `x1^2*x3`, `#` starts a comment.
//! A `# nvars: N` line fixes the number of variables; without it the largest
//! variable index seen is used. JSON: `{"generators": [[..], ..], "nvars": N}`.
//! Both are emitted with generators in descending grlex order.

use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub generators: Vec<Vec<u32>>,
    pub nvars: usize,
}

fn parse_factor(tok: &str) -> Result<(usize, u32)> {
    let (var, exp) = match tok.split_once('^') {
        Some((v, e)) => {
            let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            (v.trim(), e)
        }
        None => (tok, 1),
    };
    let idx = var
        .strip_prefix('x')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| Error::Parse(format!("bad variable {var:?}")))?;
    Ok((idx, exp))
}

fn parse_monomial_line(line: &str) -> Result<Vec<(usize, u32)>> {
    if line == "1" {
        return Ok(Vec::new());
    }
    line.split('*').map(|t| parse_factor(t.trim())).collect()
}

impl MonomialIdeal {
    pub fn parse_text(text: &str) -> Result<MonomialIdeal> {
        let mut declared: Option<usize> = None;
        let mut raw: Vec<Vec<(usize, u32)>> = Vec::new();
        for line in text.lines() {
            let (body, comment) = match line.split_once('#') {
                Some((b, c)) => (b, Some(c)),
                None => (line, None),
            };
            if let Some(c) = comment {
                if let Some(v) = c.trim().strip_prefix("nvars:") {
                    let n = v.trim().parse().map_err(|_| Error::Parse(format!("bad nvars line {line:?}")))?;
                    declared = Some(n);
                }
            }
            let body = body.trim();
            if !body.is_empty() {
                raw.push(parse_monomial_line(body)?);
            }
        }
        let max_idx = raw.iter().flatten().map(|&(i, _)| i).max().unwrap_or(0);
        let nvars = match declared {
            Some(n) if n < max_idx => {
                return Err(Error::Parse(format!("variable x{max_idx} exceeds nvars = {n}")))
            }
            Some(n) => n,
            None => max_idx,
        };
        if nvars == 0 {
            return Err(Error::Parse("ideal has no variables".into()));
        }
        let gens = raw
            .into_iter()
            .map(|factors| {
                let mut e = vec![0; nvars];
                for (i, x) in factors {
                    e[i - 1] += x;
                }
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::from_generators(nvars, gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# nvars: {}\n", self.nvars());
        for g in self.gens() {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            generators: self.gens().iter().map(|g| g.exps().to_vec()).collect(),
            nvars: self.nvars(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<MonomialIdeal> {
        MonomialIdeal::from_exponents(j.nvars, &j.generators)
    }

    pub fn parse_json(text: &str) -> Result<MonomialIdeal> {
        let j: IdealJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        MonomialIdeal::from_json(&j)
    }
}
