use std::sync::Arc;

use super::{Fin2Cat, TwoFunctor};
use crate::category::FinCat;
use crate::error::{Error, Result};

pub(crate) fn subset_name(mask: u64) -> String {
    let elems: Vec<String> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b.to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

pub(crate) fn parse_subset(name: &str) -> u64 {
    name.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| 1u64 << s.parse::<u32>().expect("subset element"))
        .fold(0, |a, b| a | b)
}

/// Subsets of `{i, …, j}` containing `i` and `j`.
fn admissible(i: usize, j: usize) -> Vec<u64> {
    if i > j {
        return Vec::new();
    }
    if i == j {
        return vec![1 << i];
    }
    let inner = j - i - 1;
    (0..1u64 << inner).map(|bits| (1 << i) | (1 << j) | (bits << (i + 1))).collect()
}

fn hom_category(i: usize, j: usize) -> FinCat {
    let subsets = admissible(i, j);
    let names: Vec<String> = subsets.iter().map(|&s| subset_name(s)).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    // an arrow S → T exists iff T ⊆ S
    FinCat::preorder(&refs, |s, t| subsets[t] & !subsets[s] == 0).unwrap()
}

/// The 2-category `Δ̃ₙ`: objects `0, …, n`; `hom(i, j)` is the poset of
/// subsets of `{i, …, j}` containing both ends, with an arrow `S → T` when
/// `T ⊆ S`; horizontal composition is union and the unit at `i` is `{i}`.
/// Subsets are named like `{0,2}`.
pub fn delta_tilde(n: usize) -> Fin2Cat {
    assert!(n < 63, "Δ̃ₙ is only built for n < 63");
    let k = n + 1;
    let homs: Vec<FinCat> = (0..k).flat_map(|i| (0..k).map(move |j| hom_category(i, j))).collect();
    let units = (0..k).map(|i| homs[i * k + i].object_index(&subset_name(1 << i)).unwrap()).collect();
    let comp1 = |a: usize, b: usize, c: usize, f: usize, g: usize| {
        let s = parse_subset(homs[a * k + b].object_id(f)) | parse_subset(homs[b * k + c].object_id(g));
        homs[a * k + c].object_index(&subset_name(s)).unwrap()
    };
    let comp2 = |a: usize, b: usize, c: usize, al: usize, be: usize| {
        let (hab, hbc, hac) = (&homs[a * k + b], &homs[b * k + c], &homs[a * k + c]);
        let s = comp1(a, b, c, hab.src(al), hbc.src(be));
        let t = comp1(a, b, c, hab.dst(al), hbc.dst(be));
        hac.hom(s, t)[0]
    };
    let objects = (0..k).map(|i| i.to_string()).collect();
    Fin2Cat::build(objects, homs.clone(), units, comp1, comp2).expect("Δ̃ₙ is well typed")
}

/// The strict 2-functor `Δ̃ₘ → Δ̃ₙ` induced by a monotone `φ: [m] → [n]`
/// (given as its value list): `i ↦ φ(i)` and `S ↦ φ(S)`.
pub fn cosimplicial_operator(phi: &[usize], n: usize) -> Result<TwoFunctor> {
    cosimplicial_operator_between(phi, Arc::new(delta_tilde(phi.len().saturating_sub(1))), Arc::new(delta_tilde(n)))
}

/// As [`cosimplicial_operator`], with prebuilt source and target.
pub fn cosimplicial_operator_between(phi: &[usize], source: Arc<Fin2Cat>, target: Arc<Fin2Cat>) -> Result<TwoFunctor> {
    let m = source.object_count().checked_sub(1).ok_or_else(|| Error::Domain("empty source".into()))?;
    let n = target.object_count() - 1;
    if phi.len() != m + 1 || phi.windows(2).any(|w| w[0] > w[1]) || phi.iter().any(|&v| v > n) {
        return Err(Error::Domain(format!("{phi:?} is not a monotone map [{m}] → [{n}]")));
    }
    let image = |s: u64| (0..=m).filter(|&b| s >> b & 1 == 1).fold(0u64, |acc, b| acc | 1 << phi[b]);
    let sidx = |i: usize| source.object_index(&i.to_string()).unwrap();
    let tidx = |i: usize| target.object_index(&i.to_string()).unwrap();
    let mut objects = vec![0; m + 1];
    for i in 0..=m {
        objects[sidx(i)] = tidx(phi[i]);
    }
    let k = m + 1;
    let mut one = vec![Vec::new(); k * k];
    let mut two = vec![Vec::new(); k * k];
    for i in 0..=m {
        for j in 0..=m {
            let h = source.hom(sidx(i), sidx(j));
            let th = target.hom(tidx(phi[i]), tidx(phi[j]));
            let p = sidx(i) * k + sidx(j);
            one[p] = (0..h.object_count())
                .map(|x| th.object_index(&subset_name(image(parse_subset(h.object_id(x))))).unwrap())
                .collect();
            two[p] = (0..h.arrow_count())
                .map(|al| th.hom(one[p][h.src(al)], one[p][h.dst(al)])[0])
                .collect();
        }
    }
    TwoFunctor::new_unchecked(source, target, objects, one, two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{compose_monotone, monotone_maps};

    #[test]
    fn delta_tilde_shapes() {
        let d1 = delta_tilde(1);
        d1.check_laws().unwrap();
        assert_eq!(d1.hom(0, 1).object_count(), 1);
        let d2 = delta_tilde(2);
        d2.check_laws().unwrap();
        let h = d2.hom(0, 2);
        assert_eq!(h.object_count(), 2);
        let non_id: Vec<usize> = (0..h.arrow_count()).filter(|&f| !h.is_identity(f)).collect();
        assert_eq!(non_id.len(), 1);
        assert_eq!(h.object_id(h.src(non_id[0])), "{0,1,2}");
        assert_eq!(h.object_id(h.dst(non_id[0])), "{0,2}");
        let d3 = delta_tilde(3);
        d3.check_laws().unwrap();
        let h = d3.hom(0, 3);
        assert_eq!(h.object_count(), 4);
        // a commuting square: 4 identities, 4 edges, 1 diagonal
        assert_eq!(h.arrow_count(), 9);
        assert!(d3.hom(2, 1).object_count() == 0);
    }

    #[test]
    fn coface_skipping_one() {
        let f = cosimplicial_operator(&[0, 2], 2).unwrap();
        assert!(f.is_two_functor());
        let (s, t) = (f.source().clone(), f.target().clone());
        let x = s.hom(0, 1).object_index("{0,1}").unwrap();
        let y = f.one_cell(0, 1, x);
        assert_eq!(t.hom(0, 2).object_id(y), "{0,2}");
    }

    #[test]
    fn identity_operator_is_identity() {
        let f = cosimplicial_operator(&[0, 1, 2], 2).unwrap();
        assert_eq!(f, TwoFunctor::identity(Arc::new(delta_tilde(2))));
    }

    #[test]
    fn non_monotone_is_rejected() {
        assert!(matches!(cosimplicial_operator(&[1, 0], 1), Err(Error::Domain(_))));
    }

    #[test]
    fn functorial_in_phi() {
        let cats: Vec<Arc<Fin2Cat>> = (0..=3).map(|n| Arc::new(delta_tilde(n))).collect();
        for m in 0..=3 {
            for n in 0..=3 {
                for p in 0..=3 {
                    for phi in monotone_maps(m, n) {
                        let f = cosimplicial_operator_between(&phi, cats[m].clone(), cats[n].clone()).unwrap();
                        assert!(f.is_two_functor());
                        for psi in monotone_maps(n, p) {
                            let g = cosimplicial_operator_between(&psi, cats[n].clone(), cats[p].clone()).unwrap();
                            let gf = cosimplicial_operator_between(&compose_monotone(&psi, &phi), cats[m].clone(), cats[p].clone()).unwrap();
                            assert_eq!(f.then(&g).unwrap(), gf);
                        }
                    }
                }
            }
        }
    }
}
