//! Simple and bipartite graphs, chordality with certificates, Ferrers
//! graphs, and edge ideals.
//!
//! Vertices are `0..n` internally; text and JSON forms are 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomials::{Monomial, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    nverts: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(nverts: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {}", u + 1)));
            }
            if u >= nverts || v >= nverts {
                return Err(Error::InvalidArgument(format!("edge ({}, {}) outside {nverts} vertices", u + 1, v + 1)));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SimpleGraph { nverts, edges: set })
    }

    pub fn empty(nverts: usize) -> Self {
        SimpleGraph { nverts, edges: BTreeSet::new() }
    }

    pub fn complete(nverts: usize) -> Self {
        complement(&SimpleGraph::empty(nverts))
    }

    pub fn cycle(nverts: usize) -> Result<Self> {
        if nverts < 3 {
            return Err(Error::InvalidArgument("a cycle needs at least 3 vertices".into()));
        }
        SimpleGraph::new(nverts, (0..nverts).map(|i| (i, (i + 1) % nverts)))
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.nverts).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }

    /// Edge list, `u v` per line, 1-based. `# nverts: N` fixes the vertex
    /// count; otherwise the largest label is used.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut raw = Vec::new();
        for line in text.lines() {
            let (body, comment) = match line.split_once('#') {
                Some((b, c)) => (b, Some(c)),
                None => (line, None),
            };
            if let Some(n) = comment.and_then(|c| c.trim().strip_prefix("nverts:")) {
                declared = Some(n.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad line {line:?}")))?);
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                [u, v] => raw.push((parse_label(u)?, parse_label(v)?)),
                _ => return Err(Error::Parse(format!("expected `u v`, got {line:?}"))),
            }
        }
        let max = raw.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        let n = match declared {
            Some(n) if n < max => return Err(Error::Parse(format!("vertex {max} exceeds nverts = {n}"))),
            Some(n) => n,
            None => max,
        };
        SimpleGraph::new(n, raw.into_iter().map(|(u, v)| (u - 1, v - 1)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# nverts: {}\n", self.nverts);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { nverts: self.nverts, edges: self.edges().map(|(u, v)| [u + 1, v + 1]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        if j.edges.iter().flatten().any(|&x| x == 0) {
            return Err(Error::Parse("vertex labels are 1-based".into()));
        }
        SimpleGraph::new(j.nverts, j.edges.iter().map(|e| (e[0] - 1, e[1] - 1)))
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        SimpleGraph::from_json(&j)
    }

    /// Accepts either the text form or the JSON form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            SimpleGraph::parse_json(text)
        } else {
            SimpleGraph::parse_text(text)
        }
    }
}

fn parse_label(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .ok()
        .filter(|&x| x >= 1)
        .ok_or_else(|| Error::Parse(format!("bad vertex label {s:?}")))
}

/// `{"nverts": N, "edges": [[u, v], ..]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nverts: usize,
    pub edges: Vec<[usize; 2]>,
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges().map(|(u, v)| format!("{}{}", u + 1, v + 1)).collect();
        write!(f, "{} vertices, edges {{{}}}", self.nverts, e.join(", "))
    }
}

pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    let n = g.nverts;
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !g.has_edge(i, j)).collect();
    SimpleGraph { nverts: n, edges }
}

/// Outcome of a chordality test, with a certificate either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chordality {
    /// Perfect elimination ordering: the later neighbours of each vertex
    /// form a clique.
    Chordal { peo: Vec<usize> },
    /// A cycle of length at least 4 without chords, in cyclic order.
    NotChordal { cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

/// Maximum cardinality search; the reverse of the visiting order.
pub fn mcs_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.nverts;
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).expect("vertex left");
        done[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

/// First vertex of `order` whose later neighbours are not a clique, with a
/// nonadjacent pair among them.
fn peo_failure(g: &SimpleGraph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let mut pos = vec![0; g.nverts];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).into_iter().filter(|&u| pos[u] > pos[v]).collect();
        for (a, &u) in later.iter().enumerate() {
            for &w in &later[a + 1..] {
                if !g.has_edge(u, w) {
                    return Some((v, u, w));
                }
            }
        }
    }
    None
}

/// Shortest `u`-`w` path avoiding the closed neighbourhood of `v` except
/// for `u` and `w` themselves.
fn path_around(g: &SimpleGraph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let n = g.nverts;
    let blocked: Vec<bool> = (0..n).map(|x| x == v || (g.has_edge(x, v) && x != u && x != w)).collect();
    let mut prev = vec![usize::MAX; n];
    prev[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == w {
            let mut path = vec![w];
            let mut y = w;
            while y != u {
                y = prev[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Chordless cycle through `v` and two of its nonadjacent neighbours.
fn chordless_cycle(g: &SimpleGraph, hint: (usize, usize, usize)) -> Vec<usize> {
    let try_at = |v: usize, u: usize, w: usize| {
        path_around(g, v, u, w).map(|p| {
            let mut c = vec![v];
            c.extend(p);
            c
        })
    };
    if let Some(c) = try_at(hint.0, hint.1, hint.2) {
        return c;
    }
    for v in 0..g.nverts {
        let nb = g.neighbors(v);
        for (a, &u) in nb.iter().enumerate() {
            for &w in &nb[a + 1..] {
                if !g.has_edge(u, w) {
                    if let Some(c) = try_at(v, u, w) {
                        return c;
                    }
                }
            }
        }
    }
    unreachable!("a graph without a perfect elimination ordering has a chordless cycle")
}

pub fn chordality(g: &SimpleGraph) -> Chordality {
    let order = mcs_order(g);
    match peo_failure(g, &order) {
        None => Chordality::Chordal { peo: order },
        Some(hint) => Chordality::NotChordal { cycle: chordless_cycle(g, hint) },
    }
}

pub fn is_chordal(g: &SimpleGraph) -> bool {
    chordality(g).is_chordal()
}

/// Checks a certificate from scratch.
pub fn validate_certificate(g: &SimpleGraph, c: &Chordality) -> bool {
    match c {
        Chordality::Chordal { peo } => {
            let mut seen = vec![false; g.nverts];
            if peo.len() != g.nverts || peo.iter().any(|&v| v >= g.nverts || std::mem::replace(&mut seen[v], true)) {
                return false;
            }
            (0..peo.len()).all(|i| {
                let later: Vec<usize> = peo[i + 1..].iter().copied().filter(|&u| g.has_edge(peo[i], u)).collect();
                later.iter().all(|&a| later.iter().all(|&b| a == b || g.has_edge(a, b)))
            })
        }
        Chordality::NotChordal { cycle } => {
            let k = cycle.len();
            let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
            if k < 4 || distinct.len() != k || cycle.iter().any(|&v| v >= g.nverts) {
                return false;
            }
            (0..k).all(|i| {
                (i + 1..k).all(|j| {
                    let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                    g.has_edge(cycle[i], cycle[j]) == consecutive
                })
            })
        }
    }
}

/// The ideal generated by `x_i x_j` over the edges.
pub fn edge_ideal(g: &SimpleGraph) -> MonomialIdeal {
    let gens = g
        .edges()
        .map(|(u, v)| {
            let mut e = vec![0; g.nverts];
            e[u] = 1;
            e[v] = 1;
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::from_generators(g.nverts, gens).expect("edges are consistent")
}

/// Linear resolution of the edge ideal, read off the complement.
pub fn froberg_linear(g: &SimpleGraph) -> bool {
    is_chordal(&complement(g))
}

/// Bipartite graph with `left` and `right` vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= left || j >= right) {
            return Err(Error::InvalidArgument(format!("edge ({}, {}) outside {left} x {right}", i + 1, j + 1)));
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (0..left).flat_map(|i| (0..right).map(move |j| (i, j))).collect();
        BipartiteGraph { left, right, edges }
    }

    /// Row `i` joined to the first `rows[i]` right vertices.
    pub fn ferrers(rows: &[usize]) -> Result<Self> {
        check_rows(rows)?;
        let edges = rows.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j))).collect();
        Ok(BipartiteGraph { left: rows.len(), right: rows[0], edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighborhood(&self, i: usize) -> BTreeSet<usize> {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j).collect()
    }

    /// The same graph on `left + right` vertices, left ones first.
    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::new(self.left + self.right, self.edges().map(|(i, j)| (i, self.left + j)))
            .expect("bipartite edges are in range")
    }

    /// `# left: n right: m` then `i j` per line, 1-based within each class.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut shape = None;
        let mut raw = Vec::new();
        for line in text.lines() {
            let (body, comment) = match line.split_once('#') {
                Some((b, c)) => (b, Some(c)),
                None => (line, None),
            };
            if let Some(c) = comment.map(str::trim).filter(|c| c.starts_with("left:")) {
                let toks: Vec<&str> = c.split_whitespace().collect();
                match toks.as_slice() {
                    ["left:", l, "right:", r] => {
                        let p = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad line {line:?}")));
                        shape = Some((p(l)?, p(r)?));
                    }
                    _ => return Err(Error::Parse(format!("bad line {line:?}"))),
                }
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                [u, v] => raw.push((parse_label(u)? - 1, parse_label(v)? - 1)),
                _ => return Err(Error::Parse(format!("expected `i j`, got {line:?}"))),
            }
        }
        let (l, r) = match shape {
            Some(s) => s,
            None => (
                raw.iter().map(|e| e.0 + 1).max().unwrap_or(0),
                raw.iter().map(|e| e.1 + 1).max().unwrap_or(0),
            ),
        };
        BipartiteGraph::new(l, r, raw)
    }
}

fn check_rows(rows: &[usize]) -> Result<()> {
    if rows.is_empty() || rows.iter().any(|&r| r == 0) || rows.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!("row lengths {rows:?} must be positive and weakly decreasing")));
    }
    Ok(())
}

/// Result of Ferrers recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FerrersCheck {
    /// Left vertices in staircase order and the row lengths of the diagram.
    Ferrers { left_order: Vec<usize>, rows: Vec<usize> },
    /// Two left vertices whose neighbourhoods are incomparable.
    Incomparable { u: usize, v: usize },
}

impl FerrersCheck {
    pub fn is_ferrers(&self) -> bool {
        matches!(self, FerrersCheck::Ferrers { .. })
    }
}

/// Sorts left vertices by degree (ties by neighbourhood) and checks that
/// the neighbourhoods are nested.
pub fn ferrers_check(b: &BipartiteGraph) -> FerrersCheck {
    let nbhd: Vec<BTreeSet<usize>> = (0..b.left).map(|i| b.neighborhood(i)).collect();
    let mut order: Vec<usize> = (0..b.left).collect();
    order.sort_by(|&x, &y| nbhd[y].len().cmp(&nbhd[x].len()).then_with(|| nbhd[x].cmp(&nbhd[y])).then(x.cmp(&y)));
    for w in order.windows(2) {
        if !nbhd[w[1]].is_subset(&nbhd[w[0]]) {
            return FerrersCheck::Incomparable { u: w[0], v: w[1] };
        }
    }
    let rows = order.iter().map(|&i| nbhd[i].len()).filter(|&r| r > 0).collect();
    FerrersCheck::Ferrers { left_order: order, rows }
}

pub fn is_ferrers(b: &BipartiteGraph) -> bool {
    ferrers_check(b).is_ferrers()
}

/// Edge ideal of the Ferrers graph with the given row lengths, in variables
/// `x_1..x_n` (rows) followed by `y_1..y_m` (columns).
pub fn ferrers_ideal(rows: &[usize]) -> Result<MonomialIdeal> {
    Ok(edge_ideal(&BipartiteGraph::ferrers(rows)?.to_simple()))
}
