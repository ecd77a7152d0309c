use linpow::betti_oracle::*;
use linpow::families::*;
use linpow::herzog_kuhl::{betan_from_socle, hk_verify};
use linpow::monomials::*;
use num_bigint::BigInt;

#[test]
fn squarefree_generator_and_socle_counts() {
    for n in 1..=6 {
        for d in 1..=n.min(3) {
            let base = squarefree_ideal(n, d).unwrap();
            for k in 1..=4u32 {
                let p = base.power(k).unwrap();
                assert_eq!(BigInt::from(p.num_gens()), sqfree_beta1(n, d, k).unwrap(), "n={n} d={d} k={k}");
                if d == n {
                    continue;
                }
                let dk = d as u32 * k;
                let soc = p.socle_monomials(0, dk + n as u32);
                assert!(soc.iter().all(|m| m.degree() == dk - 1), "n={n} d={d} k={k}");
                assert_eq!(BigInt::from(soc.len()), sqfree_betan(n, d, k).unwrap(), "n={n} d={d} k={k}");
            }
        }
    }
}

fn corpus() -> Vec<(String, MonomialIdeal)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for d in 1..=n {
            out.push((format!("squarefree({n},{d})"), squarefree_ideal(n, d).unwrap()));
        }
        for s in 1..=n {
            out.push((format!("transversal({n},{s})"), transversal_ideal(n, s).unwrap()));
        }
    }
    out.push(("mixed".into(), MonomialIdeal::from_exponents(3, &[vec![2, 1, 0], vec![0, 1, 1], vec![1, 0, 2]]).unwrap()));
    out.push(("c4".into(), MonomialIdeal::from_exponents(4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1], vec![1, 0, 0, 1]]).unwrap()));
    out
}

#[test]
fn sep_implies_polymatroidal() {
    for (name, i) in corpus() {
        for k in 1..=2 {
            let p = i.power(k).unwrap();
            if p.has_sep() {
                assert!(p.is_polymatroidal(), "{name}^{k}");
            }
        }
    }
}

#[test]
fn koszul_and_kpoly_agree_on_linear_instances() {
    let mut certified = 0;
    for (name, i) in corpus() {
        for k in 1..=2 {
            let p = i.power(k).unwrap();
            let n = p.nvars();
            let jmax = certification_jmax(&p);
            let Ok(table) = koszul_betti(&p, jmax) else { continue };
            let d = p.max_gen_degree();
            if !table.is_linear_in(d) {
                continue;
            }
            certified += 1;
            let totals = table.totals();
            assert_eq!(kpoly_betti(&p).unwrap(), totals, "{name}^{k}");
            assert_eq!(betan_from_socle(&p, 0..=jmax), totals.get(n), "{name}^{k}");
        }
    }
    assert!(certified >= 25, "only {certified} certified instances");
}

#[test]
fn closed_forms_match_oracle() {
    let mut specs = Vec::new();
    for n in 2..=5 {
        for d in 1..=n.min(3) {
            specs.push((FamilySpec::new_squarefree(n, d).unwrap(), 3));
        }
        specs.push((FamilySpec::new_squarefree(n, n - 1).unwrap(), 3));
    }
    for n in 2..=4 {
        specs.push((FamilySpec::new_transversal(n, n - 1).unwrap(), 3));
    }
    specs.push((FamilySpec::new_transversal(4, 2).unwrap(), 3));
    specs.push((FamilySpec::new_transversal(5, 3).unwrap(), 2));
    for (spec, kmax) in specs {
        for k in 1..=kmax {
            let Some(cf) = spec.closed_form(k).unwrap() else { panic!("{spec} has no closed form") };
            let oracle = kpoly_betti(&spec.power(k).unwrap()).unwrap();
            assert_eq!(cf, oracle, "{spec} k={k}");
            assert!(hk_verify(&cf, spec.nvars(), spec.delta(), spec.degree(), k).unwrap(), "{spec} k={k}");
            let polys = spec.closed_form_poly().unwrap().unwrap();
            let at_k: Vec<u64> = polys.iter().map(|p| p.eval_int(k as i64).to_string().parse().unwrap()).collect();
            assert_eq!(at_k, cf.values(), "{spec} k={k}");
        }
    }
}

#[test]
fn family_delta_is_krull_dim() {
    for n in 2..=6 {
        for d in 1..=n {
            let spec = FamilySpec::new_squarefree(n, d).unwrap();
            assert_eq!(spec.ideal().unwrap().krull_dim(), spec.delta(), "{spec}");
        }
    }
    for n in 2..=5 {
        for s in 1..=n {
            let spec = FamilySpec::new_transversal(n, s).unwrap();
            for k in 1..=2 {
                assert_eq!(spec.power(k).unwrap().krull_dim(), spec.delta(), "{spec} k={k}");
            }
        }
    }
}

#[test]
fn numerator_independent_of_jmax() {
    for (name, i) in corpus().into_iter().take(12) {
        let d = i.max_gen_degree();
        let top = d + i.nvars() as u32 - 1;
        let a = hilbert_numerator(&i, top);
        let b = hilbert_numerator(&i, top + 3);
        assert_eq!(a[..], b[..a.len()], "{name}");
        assert!(b[a.len()..].iter().all(|c| c == &BigInt::from(0)), "{name}");
    }
}
