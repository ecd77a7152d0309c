use std::collections::{BTreeMap, BTreeSet, HashMap};

use linpow::exactmath::{rat, RationalMatrix};
use linpow::graphs::{edge_ideal, ferrers_ideal, SimpleGraph};
use linpow::monomials::{squarefree_ideal, transversal_ideal, MonomialIdeal};
use linpow::rees::*;

fn g6() -> SimpleGraph {
    let e = [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 5), (3, 6), (4, 5), (5, 6)];
    SimpleGraph::new(6, e.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
}

fn corpus() -> Vec<(String, MonomialIdeal)> {
    vec![
        ("squarefree(3,2)".into(), squarefree_ideal(3, 2).unwrap()),
        ("squarefree(4,2)".into(), squarefree_ideal(4, 2).unwrap()),
        ("squarefree(4,3)".into(), squarefree_ideal(4, 3).unwrap()),
        ("transversal(3,2)".into(), transversal_ideal(3, 2).unwrap()),
        ("ferrers(2,1)".into(), ferrers_ideal(&[2, 1]).unwrap()),
        ("ferrers(3,2,1)".into(), ferrers_ideal(&[3, 2, 1]).unwrap()),
        ("edge6".into(), edge_ideal(&g6())),
        ("C5".into(), edge_ideal(&SimpleGraph::cycle(5).unwrap())),
    ]
}

/// Connected components among the touched vertices, by plain DFS.
fn touched_minus_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    let mut touched = BTreeSet::new();
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
        touched.insert(u);
        touched.insert(v);
    }
    let mut seen = vec![false; n];
    let mut comps = 0;
    for &s in &touched {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    touched.len() - comps
}

fn difference_rank(n: usize, edges: &[(usize, usize)]) -> usize {
    let entries = edges.iter().enumerate().flat_map(|(r, &(u, v))| [(r, u, rat(1)), (r, v, rat(-1))]);
    RationalMatrix::from_sparse(edges.len(), n, entries).unwrap().rank_exact()
}

#[test]
fn rank_law_and_substitution_nullity_on_small_components() {
    let mut checked = 0;
    for (name, ideal) in corpus() {
        let bound = BiDegree::new(3, 3);
        let report = minimal_generator_degrees(&ideal, bound).unwrap();
        for deg in bound.sweep() {
            if component_size(&ideal, deg) > 300 {
                continue;
            }
            let fibers = component_fibers(&ideal, deg).unwrap();
            let basis: Vec<_> = fibers.iter().flat_map(|f| f.members.iter().cloned()).collect();
            let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();

            // substitution matrix: one column per T-monomial, one row per image
            let images: BTreeMap<_, usize> =
                fibers.iter().enumerate().map(|(i, f)| (f.image.clone(), i)).collect();
            let entries = basis.iter().enumerate().map(|(c, t)| (images[&phi_image(&ideal, t).unwrap().0], c, rat(1)));
            let sub = RationalMatrix::from_sparse(images.len(), basis.len(), entries).unwrap();
            let nullity = basis.len() - sub.rank_exact();
            assert_eq!(nullity, component_dimension(&fibers), "{name} {deg}");

            // lower-degree generators
            let older: Vec<ReesGenerator> = report.generators.iter().filter(|g| g.degree != deg).cloned().collect();
            let mut edges = Vec::new();
            let mut offset = 0;
            for f in &fibers {
                for (i, j) in fiber_edges(&ideal, f, &older) {
                    assert_eq!(
                        phi_image(&ideal, &f.members[i]).unwrap(),
                        phi_image(&ideal, &f.members[j]).unwrap()
                    );
                    edges.push((offset + i, offset + j));
                }
                offset += f.members.len();
            }
            assert_eq!(difference_rank(basis.len(), &edges), touched_minus_components(basis.len(), &edges), "{name} {deg}");

            // adding the new generators fills the whole component
            for g in report.generators.iter().filter(|g| g.degree == deg) {
                edges.push((index[&g.lhs], index[&g.rhs]));
            }
            let fresh = report.generator_degrees.get(&deg).copied().unwrap_or(0);
            assert_eq!(difference_rank(basis.len(), &edges), component_dimension(&fibers), "{name} {deg}");
            assert!(fresh <= component_dimension(&fibers));
            checked += 1;
        }
    }
    assert!(checked >= 60, "only {checked} components checked");
}

#[test]
fn witnesses_lie_in_one_fiber() {
    for (name, ideal) in corpus() {
        let r = minimal_generator_degrees(&ideal, BiDegree::new(2, 3)).unwrap();
        for g in &r.generators {
            assert_eq!(g.lhs.bidegree(), g.degree, "{name}");
            assert_eq!(g.rhs.bidegree(), g.degree, "{name}");
            assert_eq!(phi_image(&ideal, &g.lhs).unwrap(), phi_image(&ideal, &g.rhs).unwrap(), "{name}");
            assert!(g.lhs > g.rhs);
        }
        assert!(r.generator_degrees.values().all(|&m| m >= 1));
        assert_eq!(r.witnesses.len(), r.generator_degrees.len());
    }
}

#[test]
fn squarefree_top_degree_has_linear_relations_only() {
    for n in 3..=5 {
        let i = squarefree_ideal(n, n - 1).unwrap();
        let r = minimal_generator_degrees(&i, BiDegree::new(3, 3)).unwrap();
        let want: BTreeMap<BiDegree, usize> = [(BiDegree::new(1, 1), n - 1)].into();
        assert_eq!(r.generator_degrees, want, "n={n}");
    }
}

#[test]
fn edge6_cubic_relation() {
    let i = edge_ideal(&g6());
    let mut r = minimal_generator_degrees(&i, BiDegree::new(2, 4)).unwrap();
    let d03 = BiDegree::new(0, 3);
    assert!(r.generator_degrees.get(&d03).copied().unwrap_or(0) >= 1);
    let w = r.witnesses.iter().find(|w| w.degree == d03).unwrap();
    assert_eq!(w.lhs, "y(x1*x2)*y(x3*x6)*y(x4*x5)");
    assert_eq!(w.rhs, "y(x1*x3)*y(x2*x4)*y(x5*x6)");
    let quad = parse_degree_set("(0,2),(1,1)").unwrap();
    assert_eq!(r.check(&quad), GenerationCheck { pass: false, failure_degree: Some(d03) });
    assert!(r.is_fiber_type());
    let c = is_generated_in(&i, &quad, BiDegree::new(1, 3)).unwrap();
    assert_eq!(c.failure_degree, Some(d03));
    assert!(linear_syzygy_check(&i, 2, 3).unwrap());
}

#[test]
fn quadratic_generation_examples() {
    let quad = parse_degree_set("(0,2),(1,1)").unwrap();
    let b = BiDegree::new(3, 3);
    assert!(is_generated_in(&squarefree_ideal(5, 4).unwrap(), &quad, b).unwrap().pass);
    assert!(is_generated_in(&transversal_ideal(3, 2).unwrap(), &quad, b).unwrap().pass);
    for rows in [vec![2, 1], vec![3, 2, 1], vec![3, 3, 1]] {
        assert!(is_generated_in(&ferrers_ideal(&rows).unwrap(), &quad, b).unwrap().pass, "{rows:?}");
    }
}

#[test]
fn ferrers_pure_relations_are_quadratic() {
    for rows in [vec![2, 1], vec![2, 2], vec![3, 1], vec![3, 2, 1], vec![3, 3, 2], vec![4, 2, 2, 1]] {
        let i = ferrers_ideal(&rows).unwrap();
        let r = minimal_generator_degrees(&i, BiDegree::new(0, 4)).unwrap();
        assert!(r.generator_degrees.keys().all(|d| *d == BiDegree::new(0, 2)), "{rows:?}");
        let r = minimal_generator_degrees(&i, BiDegree::new(2, 2)).unwrap();
        assert!(r.generator_degrees.keys().filter(|d| d.a >= 1).all(|d| *d == BiDegree::new(1, 1)), "{rows:?}");
    }
}

#[test]
fn default_bound_is_twice_degree() {
    assert_eq!(default_bound(&squarefree_ideal(4, 3).unwrap()), BiDegree::new(6, 4));
}
