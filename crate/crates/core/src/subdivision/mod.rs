//! Barycentric subdivision, Kan's `Ex`, and the maps `α: Sd → id`,
//! `β: id → Ex`.

mod ex;
mod model;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

pub use ex::{beta, ex, ex_map, transpose_from_ex, transpose_to_ex, Ex};
pub use model::SdSimplex;

use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};
use model::{chain_name, full_chains, image, last_vertices};

/// A cell of `Sd X` in normal form: a nondegenerate `dim`-cell of `X` and
/// a chain of subsets of `[dim]` whose top is all of `[dim]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct SdKey {
    pub dim: usize,
    pub cell: usize,
    pub chain: Vec<u64>,
}

/// Reduces `(y, chain)` for any `k`-cell `y` and any chain in `[k]` to
/// normal form: restrict `y` to the top of the chain, split off the
/// degeneracy, and push the chain forward along it.
pub(crate) fn canonical(x: &SimplicialSet, k: usize, y: usize, chain: &[u64]) -> SdKey {
    let top = *chain.last().expect("nonempty chain");
    let support: Vec<usize> = (0..=k).filter(|&b| top >> b & 1 == 1).collect();
    let face = x.apply_monotone(k, y, &support);
    let (dim, cell, eps) = x.normalize(support.len() - 1, face);
    let through: Vec<usize> = (0..=k).map(|b| support.iter().position(|&s| s == b).map_or(usize::MAX, |p| eps[p])).collect();
    let chain = chain
        .iter()
        .map(|&s| (0..=k).filter(|&b| s >> b & 1 == 1).fold(0u64, |acc, b| acc | 1 << through[b]))
        .collect();
    SdKey { dim, cell, chain }
}

/// The colimit decomposition of `Sd X`: one copy of `Sd Δ_k` glued in for
/// each nondegenerate `k`-cell, in order of dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionCertificate {
    pub dim_bound: usize,
    /// `(dimension, cell id)` of each glued copy.
    pub cells: Vec<(usize, String)>,
}

#[derive(Debug, Clone)]
pub struct Subdivision {
    pub base: Arc<SimplicialSet>,
    pub object: Arc<SimplicialSet>,
    pub certificate: SubdivisionCertificate,
    keys: Vec<Vec<SdKey>>,
    lookup: Vec<HashMap<SdKey, usize>>,
    cells: Vec<(usize, usize)>,
}

/// `Sd X` at the bound of `X`, with cells named `y@S_0<…<S_m`.
pub fn sd(x: &Arc<SimplicialSet>) -> Subdivision {
    let bound = x.dim_bound();
    let cells: Vec<(usize, usize)> = (0..=bound).flat_map(|k| x.nondegenerate(k).map(move |y| (k, y))).collect();
    let mut full: HashMap<(usize, usize), Vec<Vec<u64>>> = HashMap::new();
    let mut levels = Vec::with_capacity(bound + 1);
    for m in 0..=bound {
        let mut level = Vec::new();
        for &(k, y) in &cells {
            let chains = full.entry((k, m)).or_insert_with(|| full_chains(k, m));
            level.extend(chains.iter().map(|c| SdKey { dim: k, cell: y, chain: c.clone() }));
        }
        levels.push(level);
    }
    let id = |_: usize, key: &SdKey| format!("{}@{}", x.id(key.dim, key.cell), chain_name(&key.chain));
    let object = SimplicialSet::from_keys(
        bound,
        levels.clone(),
        id,
        |_, i, key| {
            let mut c = key.chain.clone();
            c.remove(i);
            canonical(x, key.dim, key.cell, &c)
        },
        |_, i, key| {
            let mut c = key.chain.clone();
            c.insert(i, c[i]);
            SdKey { chain: c, ..key.clone() }
        },
    )
    .expect("normal forms are closed under the operators");
    let mut keys: Vec<Vec<SdKey>> = (0..=bound).map(|m| Vec::with_capacity(object.level_size(m))).collect();
    for (m, level) in levels.into_iter().enumerate() {
        let mut sorted: Vec<(usize, SdKey)> = level.into_iter().map(|k| (object.index_of(m, &id(m, &k)).unwrap(), k)).collect();
        sorted.sort_by_key(|p| p.0);
        keys[m] = sorted.into_iter().map(|p| p.1).collect();
    }
    let lookup = keys.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()).collect();
    let certificate = SubdivisionCertificate { dim_bound: bound, cells: cells.iter().map(|&(k, y)| (k, x.id(k, y).to_string())).collect() };
    Subdivision { base: x.clone(), object: Arc::new(object), certificate, keys, lookup, cells }
}

impl Subdivision {
    pub(crate) fn key(&self, m: usize, c: usize) -> &SdKey {
        &self.keys[m][c]
    }

    pub(crate) fn index(&self, key: &SdKey) -> usize {
        self.lookup[key.chain.len() - 1][key]
    }

    /// The cell `(y, chain)` of `Sd X` for any `k`-cell `y` of `X` and any
    /// chain of nonempty subsets of `[k]`.
    pub(crate) fn locate(&self, k: usize, y: usize, chain: &[u64]) -> usize {
        self.index(&canonical(&self.base, k, y, chain))
    }

    /// The gluing map `Sd Δ_k → Sd X` of the `j`-th certificate cell, with
    /// `model` a copy of `Sd Δ_k`.
    pub fn gluing_map(&self, j: usize, model: &SdSimplex) -> Result<SimplicialMap> {
        let (k, y) = self.cells[j];
        if model.n() != k {
            return Err(Error::Parameter(format!("gluing map of a {k}-cell needs Sd Δ{k}")));
        }
        let bound = model.object().dim_bound().min(self.object.dim_bound());
        let levels = (0..=bound)
            .map(|m| (0..model.object().level_size(m)).map(|c| self.locate(k, y, model.chain(m, c))).collect())
            .collect();
        SimplicialMap::new(model.object().clone(), self.object.clone(), levels)
    }

    /// Checks that the gluing maps agree along faces: for each cell `y` and
    /// coface `δ^i`, the restriction of `y`'s copy equals the copy of
    /// `d_i y` precomposed with `Sd` of its degeneracy.
    pub fn verify_gluing(&self) -> bool {
        let x = &self.base;
        let bound = x.dim_bound();
        self.cells.iter().filter(|(k, _)| *k >= 1).all(|&(k, y)| {
            (0..=k).all(|i| {
                let coface: Vec<usize> = (0..k).map(|v| if v < i { v } else { v + 1 }).collect();
                let (kf, z, eps) = x.normalize(k - 1, x.face(k, i, y));
                (0..=bound).all(|m| {
                    model::chains(k - 1, m).iter().all(|c| {
                        let up: Vec<u64> = c.iter().map(|&s| image(s, &coface)).collect();
                        let down: Vec<u64> = c.iter().map(|&s| image(s, &eps)).collect();
                        self.locate(k, y, &up) == self.locate(kf, z, &down)
                    })
                })
            })
        })
    }
}

/// `Sd f: Sd X → Sd Y`.
pub fn sd_map(f: &SimplicialMap, source: &Subdivision, target: &Subdivision) -> Result<SimplicialMap> {
    if !Arc::ptr_eq(f.source(), &source.base) && **f.source() != *source.base
        || !Arc::ptr_eq(f.target(), &target.base) && **f.target() != *target.base
    {
        return Err(Error::Contract("subdivisions do not match the map".into()));
    }
    let bound = f.bound().min(source.object.dim_bound()).min(target.object.dim_bound());
    let levels = (0..=bound)
        .map(|m| {
            source.keys[m].iter().map(|key| target.locate(key.dim, f.apply(key.dim, key.cell), &key.chain)).collect()
        })
        .collect();
    SimplicialMap::new(source.object.clone(), target.object.clone(), levels)
}

/// The last-vertex map `α: Sd X → X`, sending `(y, S_0 ⊆ … ⊆ S_m)` to
/// `y` restricted along `j ↦ max S_j`.
pub fn alpha(s: &Subdivision) -> SimplicialMap {
    let x = &s.base;
    let levels = s
        .keys
        .iter()
        .map(|level| level.iter().map(|key| x.apply_monotone(key.dim, key.cell, &last_vertices(&key.chain))).collect())
        .collect();
    SimplicialMap::new(s.object.clone(), x.clone(), levels).expect("the last-vertex map is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};
    use crate::simplicial::{find_isomorphism, validate};

    #[test]
    fn point_and_interval() {
        let p = sd(&Arc::new(simplex(0, 2).unwrap()));
        assert_eq!(p.object.nondegenerate_counts(), vec![1, 0, 0]);
        let i = sd(&Arc::new(simplex(1, 1).unwrap()));
        assert_eq!(i.object.nondegenerate_counts(), vec![3, 2]);
        assert!(validate(&i.object).is_empty());
    }

    #[test]
    fn hexagon() {
        let h = sd(&Arc::new(boundary(2, 2).unwrap()));
        assert_eq!(h.object.nondegenerate_counts(), vec![6, 6, 0]);
        assert!(validate(&h.object).is_empty());
        assert!(h.verify_gluing());
    }

    #[test]
    fn simplex_matches_model() {
        for n in 0..=2 {
            let s = sd(&Arc::new(simplex(n, 2).unwrap()));
            let model = SdSimplex::new(n, 2);
            assert!(find_isomorphism(&s.object, model.object()).is_some(), "Sd Δ{n}");
            let j = s.certificate.cells.len() - 1;
            assert!(s.gluing_map(j, &model).unwrap().is_bijective());
        }
    }

    #[test]
    fn alpha_on_interval_sends_barycenter_to_one() {
        let x = Arc::new(simplex(1, 1).unwrap());
        let s = sd(&x);
        let a = alpha(&s);
        let b = s.object.index_of(0, "01@{0,1}").unwrap();
        assert_eq!(x.id(0, a.apply(0, b)), "1");
        let p = Arc::new(simplex(0, 1).unwrap());
        let sp = sd(&p);
        assert!(alpha(&sp).is_bijective());
    }

    #[test]
    fn twice_subdivided_interval() {
        let s = sd(&Arc::new(simplex(1, 1).unwrap()));
        let ss = sd(&s.object);
        assert_eq!(ss.object.nondegenerate_counts(), vec![5, 4]);
    }

    #[test]
    fn degenerate_faces_glue_correctly() {
        // a 2-simplex with one collapsed edge: Δ₂ / Δ{0,1}
        let d2 = Arc::new(simplex(2, 2).unwrap());
        let edge = Arc::new(simplex(1, 2).unwrap());
        let point = Arc::new(simplex(0, 2).unwrap());
        let incl = SimplicialMap::new(edge.clone(), d2.clone(), (0..=2).map(|m| (0..edge.level_size(m)).map(|c| d2.index_of(m, edge.id(m, c)).unwrap()).collect()).collect()).unwrap();
        let collapse = SimplicialMap::to_point(edge, point).unwrap();
        let q = crate::simplicial::pushout(&incl, &collapse).unwrap();
        let s = sd(&q.object);
        assert!(validate(&s.object).is_empty());
        assert!(s.verify_gluing());
        assert_eq!(s.object.level_size(0), q.object.nondegenerate_counts().iter().sum::<usize>());
    }
}
