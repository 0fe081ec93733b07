use proptest::prelude::*;

use strictcat::categorification::{complete, normal_form, Budget, Completion};
use strictcat::category::{nerve, FinCat};
use strictcat::homotopy::homology;
use strictcat::io::{fincat_doc, from_json, parse_fincat, to_json, FinCatDoc};
use strictcat::simplicial::standard::{codegeneracy, coface, compose_monotone, monotone_maps};
use strictcat::simplicial::validate;

/// Reflexive-transitive closure of a random relation on `0..n`, with `0`
/// below everything.
fn rooted_preorder(n: usize, bits: &[bool]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for i in 0..n {
        r[i][i] = true;
        r[0][i] = true;
        for j in 0..n {
            if bits[i * n + j] {
                r[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn build(n: usize, bits: &[bool]) -> FinCat {
    let r = rooted_preorder(n, bits);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    FinCat::preorder(&names, |i, j| r[i][j]).unwrap()
}

fn preorders() -> impl Strategy<Value = FinCat> {
    (1usize..5).prop_flat_map(|n| proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| build(n, &bits)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nerve_satisfies_simplicial_identities(c in preorders()) {
        prop_assert!(validate(&nerve(&c, 3)).is_empty());
    }

    #[test]
    fn nerve_of_rooted_preorder_is_acyclic(c in preorders()) {
        let h = homology(&nerve(&c, 3), 2).unwrap();
        prop_assert_eq!(h.groups[0].to_string(), "Z");
        prop_assert!(h.groups[1..].iter().all(|g| g.is_zero()));
    }

    #[test]
    fn fincat_json_round_trip(c in preorders()) {
        let text = to_json(&fincat_doc(&c));
        let doc: FinCatDoc = from_json(&text).unwrap();
        prop_assert_eq!(parse_fincat(&doc).unwrap(), c);
    }

    #[test]
    fn monotone_composition_is_associative(m in 0usize..3, n in 0usize..3, k in 0usize..3, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let f = monotone_maps(m, n);
        let g = monotone_maps(n, k);
        let h = monotone_maps(k, 2);
        let (f, g, h) = (&f[a % f.len()], &g[b % g.len()], &h[c % h.len()]);
        prop_assert_eq!(compose_monotone(h, &compose_monotone(g, f)), compose_monotone(&compose_monotone(h, g), f));
    }

    #[test]
    fn cosimplicial_identities(n in 1usize..5, i in 0usize..6, j in 0usize..6) {
        let (i, j) = (i % (n + 1), j % (n + 1));
        // d^j d^i = d^i d^{j-1} for i < j, maps [n-1] → [n+1]
        if i < j {
            prop_assert_eq!(compose_monotone(&coface(n + 1, j), &coface(n, i)), compose_monotone(&coface(n + 1, i), &coface(n, j - 1)));
        }
        // s^j d^j = s^j d^{j+1} = id on [n]
        if j < n + 1 {
            let id: Vec<usize> = (0..=n).collect();
            prop_assert_eq!(compose_monotone(&codegeneracy(n, j), &coface(n + 1, j)), id.clone());
            prop_assert_eq!(compose_monotone(&codegeneracy(n, j), &coface(n + 1, j + 1)), id);
        }
    }

    #[test]
    fn completed_rules_give_stable_normal_forms(
        eqs in proptest::collection::vec((proptest::collection::vec(0usize..2, 1..4), proptest::collection::vec(0usize..2, 0..3)), 1..3),
        w in proptest::collection::vec(0usize..2, 0..8),
    ) {
        if let Completion::Confluent(rules) = complete(&eqs, &Budget::default()) {
            let nf = normal_form(&rules, &w);
            prop_assert_eq!(normal_form(&rules, &nf), nf.clone());
            for (l, r) in &eqs {
                prop_assert_eq!(normal_form(&rules, l), normal_form(&rules, r));
            }
        }
    }
}
