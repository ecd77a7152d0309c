use linpow::betti_oracle::is_linear;
use linpow::graphs::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    SimpleGraph::new(n, edges).unwrap()
}

#[test]
fn froberg_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut linear = 0;
    let mut total = 0;
    for _ in 0..240 {
        let n = rng.gen_range(3..=6);
        let p = rng.gen_range(0.3..0.9);
        let g = random_graph(&mut rng, n, p);
        let want = froberg_linear(&g);
        assert_eq!(is_linear(&edge_ideal(&g)).unwrap(), want, "{g}");
        linear += want as usize;
        total += 1;
    }
    assert!(total >= 200);
    assert!(linear > 20 && linear < total - 20, "corpus is lopsided: {linear}/{total}");
}

fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            SimpleGraph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn arb_bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(l, r)| {
        proptest::collection::vec(any::<bool>(), l * r).prop_map(move |bits| {
            let pairs = (0..l).flat_map(|i| (0..r).map(move |j| (i, j)));
            BipartiteGraph::new(l, r, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_validate(g in arb_graph()) {
        let c = chordality(&g);
        prop_assert!(validate_certificate(&g, &c));
        let h = complement(&g);
        prop_assert!(validate_certificate(&h, &chordality(&h)));
        prop_assert_eq!(complement(&h), g);
    }

    #[test]
    fn text_and_json_round_trip(g in arb_graph()) {
        prop_assert_eq!(SimpleGraph::parse_text(&g.to_text()).unwrap(), g.clone());
        let j = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(SimpleGraph::parse_any(&j).unwrap(), g);
    }

    #[test]
    fn ferrers_instances_are_staircases(b in arb_bipartite()) {
        match ferrers_check(&b) {
            FerrersCheck::Ferrers { left_order, rows } => {
                // re-index columns by degree and compare with the staircase
                let mut col_deg = vec![0usize; b.right()];
                for (_, j) in b.edges() {
                    col_deg[j] += 1;
                }
                let mut cols: Vec<usize> = (0..b.right()).collect();
                cols.sort_by_key(|&j| (std::cmp::Reverse(col_deg[j]), j));
                let mut col_pos = vec![0; b.right()];
                for (p, &j) in cols.iter().enumerate() {
                    col_pos[j] = p;
                }
                let mut row_pos = vec![0; b.left()];
                for (p, &i) in left_order.iter().enumerate() {
                    row_pos[i] = p;
                }
                let mut got: Vec<(usize, usize)> = b.edges().map(|(i, j)| (row_pos[i], col_pos[j])).collect();
                got.sort();
                let want: Vec<(usize, usize)> =
                    rows.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j))).collect();
                prop_assert_eq!(got, want);
            }
            FerrersCheck::Incomparable { u, v } => {
                let (a, c) = (b.neighborhood(u), b.neighborhood(v));
                prop_assert!(!a.is_subset(&c) && !c.is_subset(&a));
            }
        }
    }
}

#[test]
fn staircase_rows_round_trip() {
    for rows in [vec![1], vec![3, 1], vec![4, 4, 2, 1], vec![2, 2, 2]] {
        match ferrers_check(&BipartiteGraph::ferrers(&rows).unwrap()) {
            FerrersCheck::Ferrers { rows: got, .. } => assert_eq!(got, rows),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn ferrers_edge_ideals_are_linear() {
    for rows in [vec![2, 1], vec![3, 2, 2], vec![3, 3, 1]] {
        let b = BipartiteGraph::ferrers(&rows).unwrap();
        assert!(froberg_linear(&b.to_simple()), "{rows:?}");
        assert!(is_linear(&ferrers_ideal(&rows).unwrap()).unwrap());
    }
}
