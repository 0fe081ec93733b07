mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::{arc, circle, sample_sets};
use strictcat::homotopy::{homology, weak_equivalence_evidence, Verdict};
use strictcat::simplicial::standard::{boundary, monotone_maps, simplex};
use strictcat::simplicial::{coproduct, enumerate_maps, find_isomorphism, pushout, validate, SimplicialMap, SimplicialSet};
use strictcat::subdivision::{alpha, beta, ex, ex_map, sd, sd_map, SdSimplex};

/// `Sd X` rebuilt by attaching one `Sd Δ_k` per nondegenerate cell along
/// `Sd ∂Δ_k`, using only generic pushouts.
fn sd_by_attaching(x: &SimplicialSet) -> Arc<SimplicialSet> {
    let bound = x.dim_bound();
    let mut stage = arc(SimplicialSet::empty(bound));
    // characteristic maps of attached cells, as functions on chains
    let mut chi: HashMap<(usize, usize), (SdSimplex, SimplicialMap)> = HashMap::new();
    for k in 0..=bound {
        for y in x.nondegenerate(k).collect::<Vec<_>>() {
            let model = SdSimplex::new(k, bound);
            let full: u64 = (1 << (k + 1)) - 1;
            // Sd ∂Δ_k: chains whose top is a proper subset
            let keep: Vec<Vec<usize>> = (0..=bound)
                .map(|m| (0..model.object().level_size(m)).filter(|&c| *model.chain(m, c).last().unwrap() != full).collect())
                .collect();
            let sub = arc(restrict(model.object(), &keep));
            let incl = SimplicialMap::inclusion(sub.clone(), model.object().clone()).unwrap();
            let attach_levels: Vec<Vec<usize>> = (0..=bound)
                .map(|m| {
                    keep[m]
                        .iter()
                        .map(|&c| {
                            let chain = model.chain(m, c);
                            let top = *chain.last().unwrap();
                            let support: Vec<usize> = (0..=k).filter(|&b| top >> b & 1 == 1).collect();
                            let (kz, z, eps) = x.normalize(support.len() - 1, x.apply_monotone(k, y, &support));
                            let pushed: Vec<u64> = chain
                                .iter()
                                .map(|&s| {
                                    support.iter().enumerate().filter(|(_, &b)| s >> b & 1 == 1).fold(0u64, |a, (p, _)| a | 1 << eps[p])
                                })
                                .collect();
                            let (zm, zmap) = &chi[&(kz, z)];
                            zmap.apply(m, zm.index(&pushed))
                        })
                        .collect()
                })
                .collect();
            let attach = SimplicialMap::new(sub, stage.clone(), attach_levels).unwrap();
            let p = pushout(&attach, &incl).unwrap();
            for (_, map) in chi.values_mut() {
                *map = map.then(&p.left).unwrap();
            }
            chi.insert((k, y), (model, p.right.clone()));
            stage = p.object.clone();
        }
    }
    stage
}

fn restrict(x: &SimplicialSet, keep: &[Vec<usize>]) -> SimplicialSet {
    let levels: Vec<Vec<usize>> = keep.to_vec();
    SimplicialSet::from_keys(
        x.dim_bound(),
        levels,
        |n, &c| x.id(n, c).to_string(),
        |n, i, &c| x.face(n, i, c),
        |n, i, &c| x.degeneracy(n, i, c),
    )
    .unwrap()
}

#[test]
fn normal_form_agrees_with_skeletal_attachment() {
    for (name, x) in sample_sets(2) {
        let direct = sd(&x).object;
        let attached = sd_by_attaching(&x);
        assert!(find_isomorphism(&direct, &attached).is_some(), "{name}");
    }
}

#[test]
fn subdivisions_are_valid_with_one_vertex_per_cell() {
    for (name, x) in sample_sets(3) {
        let s = sd(&x);
        assert!(validate(&s.object).is_empty(), "{name}");
        assert_eq!(s.object.level_size(0), x.nondegenerate_counts().iter().sum::<usize>(), "{name}");
        assert!(s.verify_gluing(), "{name}");
    }
}

#[test]
fn homology_is_invariant() {
    for (name, x) in sample_sets(3) {
        let s = sd(&x);
        assert_eq!(homology(&s.object, 2).unwrap(), homology(&x, 2).unwrap(), "{name}");
    }
}

#[test]
fn alpha_is_a_homology_equivalence_through_degree_two() {
    for (name, x) in sample_sets(4) {
        let r = weak_equivalence_evidence(&alpha(&sd(&x)), 2).unwrap();
        for i in 0..=2 {
            assert_eq!(r.check(&format!("H{i}")).unwrap().verdict, Verdict::Pass, "{name}: {r:?}");
        }
        assert_eq!(r.check("pi0").unwrap().verdict, Verdict::Pass, "{name}");
    }
}

#[test]
fn alpha_is_natural() {
    let sets = [arc(simplex(1, 2).unwrap()), arc(boundary(2, 2).unwrap()), arc(simplex(2, 2).unwrap()), circle(2)];
    let subs: Vec<_> = sets.iter().map(sd).collect();
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            for f in enumerate_maps(x, y).into_iter().take(40) {
                let sf = sd_map(&f, &subs[i], &subs[j]).unwrap();
                assert_eq!(sf.then(&alpha(&subs[j])).unwrap(), alpha(&subs[i]).then(&f).unwrap());
            }
        }
    }
}

#[test]
fn beta_is_natural() {
    let sets = [arc(simplex(1, 2).unwrap()), arc(boundary(2, 2).unwrap()), circle(2)];
    let exs: Vec<_> = sets.iter().map(|x| ex(x, 2)).collect();
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            for f in enumerate_maps(x, y).into_iter().take(40) {
                let ef = ex_map(&f, &exs[i], &exs[j]).unwrap();
                assert_eq!(beta(&exs[i]).then(&ef).unwrap(), f.then(&beta(&exs[j])).unwrap());
            }
        }
    }
}

#[test]
fn sd_is_functorial_on_cosimplicial_operators() {
    let simplices: Vec<_> = (0..=2).map(|n| arc(simplex(n, 2).unwrap())).collect();
    let subs: Vec<_> = simplices.iter().map(sd).collect();
    for (m, n) in [(0, 1), (1, 2), (0, 2)] {
        for phi in monotone_maps(m, n) {
            let f = strictcat::simplicial::SimplicialMap::new(
                simplices[m].clone(),
                simplices[n].clone(),
                (0..=2)
                    .map(|l| {
                        (0..simplices[m].level_size(l))
                            .map(|c| {
                                let cell: Vec<usize> = simplices[m].id(l, c).chars().map(|d| phi[d.to_digit(10).unwrap() as usize]).collect();
                                let id: String = cell.iter().map(|d| d.to_string()).collect();
                                simplices[n].index_of(l, &id).unwrap()
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            assert!(sd_map(&f, &subs[m], &subs[n]).unwrap().is_simplicial());
        }
    }
}

#[test]
fn subdividing_a_disjoint_union() {
    let parts = [arc(simplex(1, 2).unwrap()), arc(boundary(2, 2).unwrap())];
    let u = coproduct(&parts, 2);
    let s = sd(&u.object);
    assert_eq!(s.object.nondegenerate_counts(), vec![3 + 6, 2 + 6, 0]);
}
