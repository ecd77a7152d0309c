//! Bigraded pieces of the Rees ideal `J = ker(T -> S[t])` of an
//! equigenerated monomial ideal `I = (f_1, .., f_m)`, where
//! `T = S[y_1, .., y_m]` and `y_i -> f_i t`.
//!
//! Every graded piece of `J` is spanned by differences of `T`-monomials with
//! the same image, so a piece is described by its fibers, and the part of it
//! generated by lower-degree binomials is described by connected components
//! inside each fiber. All results hold up to an explicit bidegree bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomials::{count_monomials, monomials_of_degree, Monomial, MonomialIdeal};

/// Default limit on the number of `T`-monomials in one bidegree.
pub const DEFAULT_COMPONENT_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiDegree {
    pub a: u32,
    pub b: u32,
}

impl BiDegree {
    pub fn new(a: u32, b: u32) -> Self {
        BiDegree { a, b }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &BiDegree) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    /// All bidegrees in the box `[0, a] x [0, b]`, in sweep order.
    pub fn sweep(&self) -> Vec<BiDegree> {
        let mut out: Vec<BiDegree> =
            (0..=self.a).flat_map(|a| (0..=self.b).map(move |b| BiDegree::new(a, b))).collect();
        out.sort();
        out
    }
}

impl Ord for BiDegree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.a).cmp(&(other.total(), other.a))
    }
}

impl PartialOrd for BiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for BiDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl std::str::FromStr for BiDegree {
    type Err = Error;

    /// `a,b` or `(a,b)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(|| Error::Parse(format!("bad bidegree {s:?}")))?;
        let p = |v: &str| v.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad bidegree {s:?}")));
        Ok(BiDegree::new(p(a)?, p(b)?))
    }
}

/// Parses `(0,2),(1,1)` or `0,2;1,1`.
pub fn parse_degree_set(s: &str) -> Result<BTreeSet<BiDegree>> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    let parts: Vec<String> = if t.contains('(') {
        t.split(')')
            .map(|p| p.trim().trim_start_matches(',').trim().trim_start_matches('(').to_string())
            .filter(|p| !p.is_empty())
            .collect()
    } else {
        t.split(';').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
    };
    parts.iter().map(|p| p.parse()).collect()
}

pub fn format_degree_set(set: &BTreeSet<BiDegree>) -> String {
    let v: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// A monomial `x^alpha y^gamma` of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TMonomial {
    pub alpha: Monomial,
    pub gamma: Monomial,
}

impl TMonomial {
    pub fn new(alpha: Monomial, gamma: Monomial) -> Self {
        TMonomial { alpha, gamma }
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.alpha.degree(), self.gamma.degree())
    }

    pub fn divides(&self, other: &TMonomial) -> bool {
        self.alpha.divides(&other.alpha) && self.gamma.divides(&other.gamma)
    }

    pub fn mul(&self, other: &TMonomial) -> TMonomial {
        TMonomial::new(self.alpha.mul(&other.alpha), self.gamma.mul(&other.gamma))
    }

    pub fn div(&self, other: &TMonomial) -> Option<TMonomial> {
        Some(TMonomial::new(self.alpha.div(&other.alpha)?, self.gamma.div(&other.gamma)?))
    }

    /// Renders `y_i` as `y(f_i)` so the output is readable without the
    /// generator numbering.
    pub fn render(&self, ideal: &MonomialIdeal) -> String {
        let mut parts = Vec::new();
        if self.alpha.degree() > 0 {
            parts.push(self.alpha.to_string());
        }
        for (i, &e) in self.gamma.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let y = format!("y({})", ideal.gens()[i]);
            parts.push(if e == 1 { y } else { format!("{y}^{e}") });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Grlex on the concatenated exponent vector `(alpha, gamma)`.
impl Ord for TMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.alpha.degree() + self.gamma.degree())
            .cmp(&(other.alpha.degree() + other.gamma.degree()))
            .then_with(|| self.alpha.exps().cmp(other.alpha.exps()))
            .then_with(|| self.gamma.exps().cmp(other.gamma.exps()))
    }
}

impl PartialOrd for TMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `phi(t) = x^alpha * prod f_i^gamma_i`, together with the power of `t`.
pub fn phi_image(ideal: &MonomialIdeal, t: &TMonomial) -> Result<(Monomial, u32)> {
    if t.gamma.nvars() != ideal.num_gens() {
        return Err(Error::InconsistentLength { expected: ideal.num_gens(), found: t.gamma.nvars() });
    }
    if t.alpha.nvars() != ideal.nvars() {
        return Err(Error::InconsistentLength { expected: ideal.nvars(), found: t.alpha.nvars() });
    }
    Ok((image(ideal, t), t.gamma.degree()))
}

fn image(ideal: &MonomialIdeal, t: &TMonomial) -> Monomial {
    let mut e = t.alpha.exps().to_vec();
    for (g, &c) in ideal.gens().iter().zip(t.gamma.exps()) {
        if c > 0 {
            for (x, &y) in e.iter_mut().zip(g.exps()) {
                *x += c * y;
            }
        }
    }
    Monomial::new(e)
}

/// `T`-monomials with a common image; members in descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub image: Monomial,
    pub members: Vec<TMonomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReesConfig {
    /// Maximum number of `T`-monomials enumerated in one bidegree.
    pub component_cap: usize,
}

impl Default for ReesConfig {
    fn default() -> Self {
        ReesConfig { component_cap: DEFAULT_COMPONENT_CAP }
    }
}

/// Number of `T`-monomials of bidegree `deg`.
pub fn component_size(ideal: &MonomialIdeal, deg: BiDegree) -> usize {
    let x = count_monomials(ideal.nvars(), deg.a);
    let y = count_monomials(ideal.num_gens(), deg.b);
    let n = x * y;
    num_traits::ToPrimitive::to_usize(&n).unwrap_or(usize::MAX)
}

/// All `T`-monomials of bidegree `deg`, grouped by image. Fibers are sorted
/// by image, descending.
pub fn component_fibers(ideal: &MonomialIdeal, deg: BiDegree) -> Result<Vec<Fiber>> {
    component_fibers_with(ideal, deg, &ReesConfig::default())
}

pub fn component_fibers_with(ideal: &MonomialIdeal, deg: BiDegree, cfg: &ReesConfig) -> Result<Vec<Fiber>> {
    let size = component_size(ideal, deg);
    if size > cfg.component_cap {
        return Err(Error::ResourceCap {
            what: format!("Rees component {deg}"),
            needed: size,
            cap: cfg.component_cap,
        });
    }
    let xs = monomials_of_degree(ideal.nvars(), deg.a);
    let ys = monomials_of_degree(ideal.num_gens(), deg.b);
    let mut groups: HashMap<Monomial, Vec<TMonomial>> = HashMap::new();
    for x in &xs {
        for y in &ys {
            let t = TMonomial::new(x.clone(), y.clone());
            groups.entry(image(ideal, &t)).or_default().push(t);
        }
    }
    let mut fibers: Vec<Fiber> = groups
        .into_iter()
        .map(|(image, mut members)| {
            members.sort_by(|a, b| b.cmp(a));
            Fiber { image, members }
        })
        .collect();
    fibers.sort_by(|a, b| b.image.cmp(&a.image));
    Ok(fibers)
}

/// `dim J_deg`.
pub fn component_dimension(fibers: &[Fiber]) -> usize {
    fibers.iter().map(|f| f.members.len() - 1).sum()
}

/// A binomial `lhs - rhs` of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesGenerator {
    pub degree: BiDegree,
    pub lhs: TMonomial,
    pub rhs: TMonomial,
}

/// Edges `{u, (u / g+) g-}` inside one fiber, as index pairs into
/// `fiber.members`, for every binomial `g+ - g-` in `gens`.
pub fn fiber_edges(ideal: &MonomialIdeal, fiber: &Fiber, gens: &[ReesGenerator]) -> Vec<(usize, usize)> {
    let index: HashMap<&TMonomial, usize> = fiber.members.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let deg = fiber.members[0].bidegree();
    let mut edges = Vec::new();
    for g in gens.iter().filter(|g| g.degree.le(&deg)) {
        for (i, u) in fiber.members.iter().enumerate() {
            if let Some(m) = u.div(&g.lhs) {
                let v = m.mul(&g.rhs);
                let j = *index.get(&v).unwrap_or_else(|| {
                    panic!("edge leaves its fiber: {} has image {}", v.render(ideal), image(ideal, &v))
                });
                edges.push((i, j));
            }
        }
    }
    edges
}

/// `T`-monomials per component, number of new generators, and generators.
#[derive(Clone, Debug, Default)]
struct Sweep {
    gens: Vec<ReesGenerator>,
    dims: BTreeMap<BiDegree, usize>,
}

fn sweep(ideal: &MonomialIdeal, bound: BiDegree, cfg: &ReesConfig) -> Result<Sweep> {
    let mut out = Sweep::default();
    for deg in bound.sweep() {
        if deg.b < 2 && deg.a == 0 || deg.b == 0 {
            continue;
        }
        let fibers = component_fibers_with(ideal, deg, cfg)?;
        out.dims.insert(deg, component_dimension(&fibers));
        let mut fresh = Vec::new();
        for fiber in fibers.iter().filter(|f| f.members.len() > 1) {
            let mut uf = UnionFind::<usize>::new(fiber.members.len());
            for (i, j) in fiber_edges(ideal, fiber, &out.gens) {
                uf.union(i, j);
            }
            for j in 1..fiber.members.len() {
                if uf.union(0, j) {
                    fresh.push(ReesGenerator {
                        degree: deg,
                        lhs: fiber.members[0].clone(),
                        rhs: fiber.members[j].clone(),
                    });
                }
            }
        }
        out.gens.extend(fresh);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationCheck {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_degree: Option<BiDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: BiDegree,
    pub lhs: String,
    pub rhs: String,
}

/// Minimal generator bidegrees of `J` inside a box.
#[derive(Clone, Debug, Serialize)]
pub struct ReesGeneratorReport {
    pub ideal: String,
    pub bound: BiDegree,
    #[serde(serialize_with = "ser_degrees")]
    pub generator_degrees: BTreeMap<BiDegree, usize>,
    pub witnesses: Vec<Witness>,
    pub checks: BTreeMap<String, GenerationCheck>,
    #[serde(skip)]
    pub generators: Vec<ReesGenerator>,
    #[serde(skip)]
    pub component_dims: BTreeMap<BiDegree, usize>,
}

fn ser_degrees<S: Serializer>(m: &BTreeMap<BiDegree, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (d, c) in m {
        seq.serialize_element(&[d.a as usize, d.b as usize, *c])?;
    }
    seq.end()
}

impl ReesGeneratorReport {
    pub fn total_generators(&self) -> usize {
        self.generator_degrees.values().sum()
    }

    /// First generator degree (in sweep order) outside `degrees`.
    pub fn first_outside(&self, degrees: &BTreeSet<BiDegree>) -> Option<BiDegree> {
        self.generator_degrees.keys().find(|d| !degrees.contains(d)).copied()
    }

    /// Records and returns the outcome of a generation check.
    pub fn check(&mut self, degrees: &BTreeSet<BiDegree>) -> GenerationCheck {
        let failure_degree = self.first_outside(degrees);
        let c = GenerationCheck { pass: failure_degree.is_none(), failure_degree };
        self.checks.insert(format_degree_set(degrees), c.clone());
        c
    }

    pub fn is_fiber_type(&self) -> bool {
        self.generator_degrees.keys().all(|d| d.a == 0 || d.b == 1)
    }
}

impl fmt::Display for ReesGeneratorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ideal: {}", self.ideal)?;
        writeln!(f, "bound: {} (results hold for bidegrees inside this box only)", self.bound)?;
        if self.generator_degrees.is_empty() {
            writeln!(f, "no minimal generators")?;
        }
        for (d, c) in &self.generator_degrees {
            let w = self.witnesses.iter().find(|w| w.degree == *d).expect("witness per degree");
            writeln!(f, "{d}  x{c}  e.g. {} - {}", w.lhs, w.rhs)?;
        }
        for (set, c) in &self.checks {
            match c.failure_degree {
                None => writeln!(f, "generated in {set}: pass")?,
                Some(d) => writeln!(f, "generated in {set}: FAIL at {d}")?,
            }
        }
        Ok(())
    }
}

/// Sweeps the box `[0, bound.a] x [0, bound.b]` in order and records
/// minimal generators of `J`, with the grlex-largest member of each fiber
/// as the left-hand side of every witness.
pub fn minimal_generator_degrees(ideal: &MonomialIdeal, bound: BiDegree) -> Result<ReesGeneratorReport> {
    minimal_generator_degrees_with(ideal, bound, &ReesConfig::default())
}

pub fn minimal_generator_degrees_with(
    ideal: &MonomialIdeal,
    bound: BiDegree,
    cfg: &ReesConfig,
) -> Result<ReesGeneratorReport> {
    if ideal.is_zero() || ideal.is_equigenerated().is_none() {
        return Err(Error::InvalidArgument("Rees analysis needs a nonzero equigenerated ideal".into()));
    }
    let sw = sweep(ideal, bound, cfg)?;
    let mut generator_degrees = BTreeMap::new();
    let mut witnesses = Vec::new();
    for g in &sw.gens {
        let c = generator_degrees.entry(g.degree).or_insert(0);
        if *c == 0 {
            witnesses.push(Witness { degree: g.degree, lhs: g.lhs.render(ideal), rhs: g.rhs.render(ideal) });
        }
        *c += 1;
    }
    Ok(ReesGeneratorReport {
        ideal: ideal.to_string(),
        bound,
        generator_degrees,
        witnesses,
        checks: BTreeMap::new(),
        generators: sw.gens,
        component_dims: sw.dims,
    })
}

/// `D` being the generator degree, the box `(2D, 4)`.
pub fn default_bound(ideal: &MonomialIdeal) -> BiDegree {
    BiDegree::new(2 * ideal.max_gen_degree(), 4)
}

pub fn is_generated_in(
    ideal: &MonomialIdeal,
    degrees: &BTreeSet<BiDegree>,
    bound: BiDegree,
) -> Result<GenerationCheck> {
    Ok(minimal_generator_degrees(ideal, bound)?.check(degrees))
}

/// Every minimal generator inside the box has `a = 0` or `b = 1`.
pub fn fiber_type_check(ideal: &MonomialIdeal, bound: BiDegree) -> Result<bool> {
    Ok(minimal_generator_degrees(ideal, bound)?.is_fiber_type())
}

/// Minimal generators in the column `(*, k)` with `a <= bound_s` all have
/// `a <= 1`.
pub fn linear_syzygy_check(ideal: &MonomialIdeal, k: u32, bound_s: u32) -> Result<bool> {
    let r = minimal_generator_degrees(ideal, BiDegree::new(bound_s, k))?;
    Ok(r.generator_degrees.keys().filter(|d| d.b == k).all(|d| d.a <= 1))
}
