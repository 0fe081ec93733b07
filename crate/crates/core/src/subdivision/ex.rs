use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::model::{last_vertices, SdSimplex};
use super::Subdivision;
use crate::error::{Error, Result};
use crate::simplicial::standard::{codegeneracy, coface};
use crate::simplicial::{for_each_map, MapConstraints, SimplicialMap, SimplicialSet};

/// `Ex X` truncated at `bound`: level `n` is the set of maps `Sd Δₙ → X`.
#[derive(Debug, Clone)]
pub struct Ex {
    pub base: Arc<SimplicialSet>,
    pub object: Arc<SimplicialSet>,
    models: Vec<SdSimplex>,
    /// `maps[n][x]` holds the level tables of the `n`-cell `x`.
    maps: Vec<Vec<Vec<Vec<usize>>>>,
    lookup: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

/// `Ex X` at bound `min(d, bound of X)`. Cells are named by the images of
/// the maximal chains of `Sd Δₙ`, in the model's cell order.
pub fn ex(x: &Arc<SimplicialSet>, d: usize) -> Ex {
    let bound = d.min(x.dim_bound());
    let models: Vec<SdSimplex> = (0..=bound).map(|n| SdSimplex::new(n, bound)).collect();
    let mut levels: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(bound + 1);
    for model in &models {
        let mut level = Vec::new();
        for_each_map(model.object(), x, &MapConstraints::default(), |tables| {
            level.push(tables.to_vec());
            ControlFlow::Continue(())
        });
        levels.push(level);
    }
    let id = |n: usize, tables: &Vec<Vec<usize>>| {
        let model = models[n].object();
        let tops: Vec<&str> = model.nondegenerate(n).map(|c| x.id(n, tables[n][c])).collect();
        format!("[{}]", tops.join(" , "))
    };
    let along = |n: usize, phi: &[usize], tables: &Vec<Vec<usize>>, to: usize| -> Vec<Vec<usize>> {
        let (src, dst) = (&models[n], &models[to]);
        (0..=dst.object().dim_bound())
            .map(|m| {
                (0..dst.object().level_size(m))
                    .map(|c| {
                        let chain: Vec<u64> = dst.chain(m, c).iter().map(|&s| super::model::image(s, phi)).collect();
                        tables[m][src.index(&chain)]
                    })
                    .collect()
            })
            .collect()
    };
    let object = SimplicialSet::from_keys(
        bound,
        levels.clone(),
        id,
        |n, i, t| along(n, &coface(n, i), t, n - 1),
        |n, i, t| along(n, &codegeneracy(n, i), t, n + 1),
    )
    .expect("precomposition keeps maps inside Ex");
    let mut maps: Vec<Vec<Vec<Vec<usize>>>> = (0..=bound).map(|n| vec![Vec::new(); object.level_size(n)]).collect();
    for (n, level) in levels.into_iter().enumerate() {
        for t in level {
            let c = object.index_of(n, &id(n, &t)).unwrap();
            maps[n][c] = t;
        }
    }
    let lookup = maps.iter().map(|l| l.iter().enumerate().map(|(c, t)| (t.clone(), c)).collect()).collect();
    Ex { base: x.clone(), object: Arc::new(object), models, maps, lookup }
}

impl Ex {
    pub fn model(&self, n: usize) -> &SdSimplex {
        &self.models[n]
    }

    /// The map `Sd Δₙ → X` of the `n`-cell `c`.
    pub fn cell_map(&self, n: usize, c: usize) -> SimplicialMap {
        SimplicialMap::new_unchecked(self.models[n].object().clone(), self.base.clone(), self.maps[n][c].clone())
            .expect("stored tables have the model's shape")
    }

    fn index_of_tables(&self, n: usize, tables: &Vec<Vec<usize>>) -> Result<usize> {
        self.lookup[n].get(tables).copied().ok_or_else(|| Error::Contract(format!("not a map Sd Δ{n} → X")))
    }

    /// Level tables of the map `Sd Δₙ → X` given by `value(m, chain)`.
    fn tables(&self, n: usize, value: impl Fn(usize, &[u64]) -> usize) -> Vec<Vec<usize>> {
        let model = &self.models[n];
        (0..=model.object().dim_bound())
            .map(|m| (0..model.object().level_size(m)).map(|c| value(m, model.chain(m, c))).collect())
            .collect()
    }
}

/// `Ex f: Ex X → Ex Y`, postcomposition with `f`.
pub fn ex_map(f: &SimplicialMap, source: &Ex, target: &Ex) -> Result<SimplicialMap> {
    let bound = source.object.dim_bound().min(target.object.dim_bound()).min(f.bound());
    let mut levels = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level = Vec::with_capacity(source.object.level_size(n));
        for t in &source.maps[n] {
            let image: Vec<Vec<usize>> = t.iter().enumerate().map(|(m, row)| row.iter().map(|&v| f.apply(m, v)).collect()).collect();
            level.push(target.index_of_tables(n, &image)?);
        }
        levels.push(level);
    }
    SimplicialMap::new(source.object.clone(), target.object.clone(), levels)
}

/// `β: X → Ex X`, the transpose of the last-vertex map: an `n`-cell `x`
/// goes to the composite `Sd Δₙ → Δₙ → X`.
pub fn beta(e: &Ex) -> SimplicialMap {
    let x = &e.base;
    let bound = e.object.dim_bound();
    let levels = (0..=bound)
        .map(|n| {
            (0..x.level_size(n))
                .map(|c| {
                    let t = e.tables(n, |_, chain| x.apply_monotone(n, c, &last_vertices(chain)));
                    e.index_of_tables(n, &t).expect("β lands in Ex")
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(x.clone(), e.object.clone(), levels).expect("β is simplicial")
}

/// The transpose `X → Ex Y` of `g: Sd X → Y`: `x ↦ g ∘ Sd(x)`.
pub fn transpose_to_ex(g: &SimplicialMap, s: &Subdivision, e: &Ex) -> Result<SimplicialMap> {
    if **g.source() != *s.object || **g.target() != *e.base {
        return Err(Error::Contract("transpose needs g: Sd X → Y with matching Sd X and Ex Y".into()));
    }
    let x = &s.base;
    let bound = e.object.dim_bound().min(x.dim_bound()).min(g.bound());
    let mut levels = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        if e.models[n].object().dim_bound() > g.bound() {
            return Err(Error::Bound { requested: e.models[n].object().dim_bound(), bound: g.bound() });
        }
        let mut level = Vec::with_capacity(x.level_size(n));
        for c in 0..x.level_size(n) {
            let t = e.tables(n, |m, chain| g.apply(m, s.locate(n, c, chain)));
            level.push(e.index_of_tables(n, &t)?);
        }
        levels.push(level);
    }
    SimplicialMap::new(x.clone(), e.object.clone(), levels)
}

/// The transpose `Sd X → Y` of `h: X → Ex Y`: the cell `(y, chain)` goes to
/// the map `h(y)` evaluated at `chain`.
pub fn transpose_from_ex(h: &SimplicialMap, s: &Subdivision, e: &Ex) -> Result<SimplicialMap> {
    if **h.source() != *s.base || **h.target() != *e.object {
        return Err(Error::Contract("transpose needs h: X → Ex Y with matching Sd X and Ex Y".into()));
    }
    let top = s.certificate.cells.iter().map(|c| c.0).max().unwrap_or(0);
    if top > h.bound() {
        return Err(Error::Bound { requested: top, bound: h.bound() });
    }
    let bound = s.object.dim_bound().min(e.base.dim_bound());
    let levels = (0..=bound)
        .map(|m| {
            (0..s.object.level_size(m))
                .map(|c| {
                    let key = s.key(m, c);
                    let cell = h.apply(key.dim, key.cell);
                    let model = &e.models[key.dim];
                    e.maps[key.dim][cell][m][model.index(&key.chain)]
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(s.object.clone(), e.base.clone(), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::count_maps;
    use crate::simplicial::standard::{boundary, simplex};
    use crate::simplicial::validate;
    use crate::subdivision::{alpha, sd};

    #[test]
    fn ex_of_point_is_point() {
        let e = ex(&Arc::new(simplex(0, 3).unwrap()), 3);
        assert_eq!(e.object.level_sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn ex_of_interval_has_five_edges() {
        let e = ex(&Arc::new(simplex(1, 2).unwrap()), 1);
        assert_eq!(e.object.level_size(1), 5);
        let e = ex(&Arc::new(simplex(1, 3).unwrap()), 3);
        assert!(validate(&e.object).is_empty());
    }

    #[test]
    fn adjunction_counts() {
        let xs = [simplex(0, 2).unwrap(), simplex(1, 2).unwrap(), boundary(2, 2).unwrap()];
        let ys = [simplex(1, 3).unwrap(), boundary(2, 3).unwrap()];
        for x in &xs {
            let s = sd(&Arc::new(x.clone()));
            for y in &ys {
                let e = ex(&Arc::new(y.clone()), 2);
                assert_eq!(count_maps(&s.object, y), count_maps(x, &e.object));
            }
        }
    }

    #[test]
    fn beta_transposes_to_alpha() {
        for x in [simplex(1, 2).unwrap(), boundary(2, 2).unwrap(), simplex(2, 2).unwrap()] {
            let x = Arc::new(x);
            let s = sd(&x);
            let e = ex(&x, 2);
            let b = beta(&e);
            assert_eq!(transpose_from_ex(&b, &s, &e).unwrap(), alpha(&s));
            assert_eq!(transpose_to_ex(&alpha(&s), &s, &e).unwrap(), b);
        }
    }
}
