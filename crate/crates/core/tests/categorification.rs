mod common;

use std::sync::Arc;

use common::{arc, circle, sample_sets};
use strictcat::categorification::{c2_of, c_of, realize, realize_2, thomason_generators, Budget, Presentation, Realized};
use strictcat::category::{enumerate_functors, find_isomorphism, nerve, FinCat};
use strictcat::simplicial::standard::{horn, simplex};
use strictcat::simplicial::{count_maps, SimplicialSet};
use strictcat::subdivision::sd;
use strictcat::twocat::{delta_tilde, enumerate_two_functors, find_two_isomorphism, geometric_nerve, iota, Fin2Cat};

fn targets() -> Vec<(&'static str, FinCat)> {
    vec![
        ("[0]", FinCat::ordinal(1)),
        ("[1]", FinCat::ordinal(2)),
        ("[2]", FinCat::ordinal(3)),
        ("idempotent", FinCat::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]], 0).unwrap()),
        ("Z/2", FinCat::monoid(&["1", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap()),
        ("span", FinCat::preorder(&["a", "b", "c"], |x, y| x == y || x == 0).unwrap()),
    ]
}

fn loop_free() -> Vec<(&'static str, FinCat)> {
    let mut out: Vec<_> = targets().into_iter().filter(|(_, c)| c.is_loop_free()).collect();
    out.push(("discrete 2", FinCat::discrete(&["p", "q"])));
    out.push(("[3]", FinCat::ordinal(4)));
    let parallel = FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("1a".into(), 0, 0), ("1b".into(), 1, 1), ("f".into(), 0, 1), ("g".into(), 0, 1)],
        vec![0, 1],
        |g, f| if g <= 1 { f } else { g },
    )
    .unwrap();
    out.push(("parallel pair", parallel));
    out
}

fn sources(bound: usize) -> Vec<(String, Arc<SimplicialSet>)> {
    let mut out = sample_sets(bound);
    out.push(("Λ²₁".into(), arc(horn(2, 1, bound).unwrap())));
    out.push(("Δ2".into(), arc(simplex(2, bound).unwrap())));
    out.push(("Sd Δ1".into(), sd(&arc(simplex(1, bound).unwrap())).object));
    out
}

#[test]
fn counit_on_loop_free_categories() {
    for (name, c) in loop_free() {
        let p = c_of(&nerve(&c, 2));
        let r = realize(&p, &Budget::default()).unwrap().finite().unwrap_or_else(|| panic!("{name} did not realize"));
        assert!(find_isomorphism(&Arc::new(r), &Arc::new(c)).is_some(), "{name}");
    }
}

#[test]
fn counit_on_monoids_realizes_back() {
    // nerves of monoids present the monoid: each triangle is a multiplication
    for (name, c) in targets().into_iter().filter(|(_, c)| !c.is_loop_free()) {
        let p = c_of(&nerve(&c, 2));
        let r = realize(&p, &Budget::default()).unwrap().finite().unwrap_or_else(|| panic!("{name}"));
        assert!(find_isomorphism(&Arc::new(r), &Arc::new(c)).is_some(), "{name}");
    }
}

#[test]
fn adjunction_counts_for_c() {
    for (xname, x) in sources(3) {
        let Realized::Finite { value, .. } = realize(&c_of(&x), &Budget::default()).unwrap() else { continue };
        let cx = Arc::new(value);
        for (cname, c) in targets() {
            let left = enumerate_functors(&cx, &Arc::new(c.clone())).len();
            let right = count_maps(&x, &nerve(&c, x.dim_bound()));
            assert_eq!(left, right, "{xname} → N({cname})");
        }
    }
}

#[test]
fn circle_has_infinite_categorification() {
    let r = realize(&c_of(&circle(2)), &Budget::default()).unwrap();
    let Realized::Infinite { witness } = r else { panic!("expected Infinite, got {r:?}") };
    assert!(witness.contains("^k"), "{witness}");
}

fn two_targets() -> Vec<(&'static str, Fin2Cat)> {
    vec![
        ("Δ̃1", delta_tilde(1)),
        ("Δ̃2", delta_tilde(2)),
        ("ι[1]", iota(&FinCat::ordinal(2))),
        ("ι idempotent", iota(&FinCat::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]], 0).unwrap())),
    ]
}

#[test]
fn adjunction_counts_for_c2() {
    for (xname, x) in sources(3) {
        let Realized::Finite { value, .. } = realize_2(&c2_of(&x), &Budget::default()).unwrap() else { continue };
        let cx = Arc::new(value);
        for (cname, c) in two_targets() {
            let left = enumerate_two_functors(&cx, &Arc::new(c.clone())).len();
            let right = count_maps(&x, &geometric_nerve(&c, x.dim_bound()));
            assert_eq!(left, right, "{xname} → N₂({cname})");
        }
    }
}

#[test]
fn c2_of_simplices_is_delta_tilde() {
    for n in 0..=3 {
        let p = c2_of(&simplex(n, 3).unwrap());
        let r = Arc::new(realize_2(&p, &Budget::default()).unwrap().finite().unwrap());
        assert!(find_two_isomorphism(&r, &Arc::new(delta_tilde(n))).is_some(), "n = {n}");
    }
}

#[test]
fn realize_is_deterministic() {
    let p = c2_of(&simplex(3, 3).unwrap());
    let a = realize_2(&p, &Budget::default()).unwrap();
    let b = realize_2(&p, &Budget::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn thomason_level_one_counts() {
    let gens = thomason_generators(2, 1).unwrap();
    let Presentation::Cat(src) = &gens[2].source else { panic!() };
    let Presentation::Cat(tgt) = &gens[2].target else { panic!() };
    // oracle: cell counts of the iterated subdivisions
    let b = sd(&sd(&arc(strictcat::simplicial::standard::boundary(2, 2).unwrap())).object).object;
    let s = sd(&sd(&arc(simplex(2, 2).unwrap())).object).object;
    assert_eq!(src.objects.len(), b.level_size(0));
    assert_eq!(src.generators.len(), b.nondegenerate(1).count());
    assert!(src.relations.is_empty());
    assert_eq!(tgt.objects.len(), s.level_size(0));
    assert_eq!(tgt.generators.len(), s.nondegenerate(1).count());
    assert_eq!(tgt.relations.len(), s.nondegenerate(2).count());
    // the hexagon, subdivided once more
    assert_eq!(src.generators.len(), 12);
}

#[test]
fn thomason_maps_send_generators_to_paths() {
    for level in 1..=2 {
        for g in thomason_generators(3, level).unwrap() {
            let objects = match &g.target {
                Presentation::Cat(p) => p.objects.len(),
                Presentation::TwoCat(p) => p.objects.len(),
            };
            assert!(g.objects.iter().all(|&o| o < objects));
            assert!(g.one_cells.iter().all(|p| p.arrows.len() == 1));
        }
    }
}
