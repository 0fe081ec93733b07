//! Coproducts, pushouts and products of truncated simplicial sets.
//!
//! Colimits are computed levelwise: a pushout level is the quotient of the
//! disjoint union by the equivalence generated by `f(a) ~ g(a)`, found with
//! union-find. Each class is named after its lexicographically smallest
//! member, members of the left leg being tagged `x.` and of the right leg
//! `y.`.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::search::{for_each_map, MapConstraints};
use super::{SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Disjoint union with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<SimplicialSet>,
    pub injections: Vec<SimplicialMap>,
}

/// Coproduct of a list of simplicial sets; cell `c` of summand `k` is named
/// `k.c`. The bound is the minimum of the summands' bounds (or `bound` when
/// the list is empty).
pub fn coproduct(parts: &[Arc<SimplicialSet>], bound: usize) -> Coproduct {
    let bound = parts.iter().map(|p| p.dim_bound()).min().unwrap_or(bound);
    let levels: Vec<Vec<(usize, usize)>> = (0..=bound)
        .map(|n| {
            parts
                .iter()
                .enumerate()
                .flat_map(|(k, p)| (0..p.level_size(n)).map(move |x| (k, x)))
                .collect()
        })
        .collect();
    let object = Arc::new(
        SimplicialSet::from_keys(
            bound,
            levels,
            |n, &(k, x)| format!("{k}.{}", parts[k].id(n, x)),
            |n, i, &(k, x)| (k, parts[k].face(n, i, x)),
            |n, i, &(k, x)| (k, parts[k].degeneracy(n, i, x)),
        )
        .expect("coproduct tables are closed"),
    );
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let levels = (0..=bound)
                .map(|n| {
                    (0..p.level_size(n))
                        .map(|x| object.index_of(n, &format!("{k}.{}", p.id(n, x))).unwrap())
                        .collect()
                })
                .collect();
            SimplicialMap::new_unchecked(Arc::new(p.truncate(bound)), object.clone(), levels).unwrap()
        })
        .collect();
    Coproduct { object, injections }
}

/// A pushout square `X → P ← Y` under `A`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    f: SimplicialMap,
    g: SimplicialMap,
}

/// Pushout of `X ←f– A –g→ Y`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if **f.source() != **g.source() {
        return Err(Error::Contract("pushout legs must share their source".into()));
    }
    let (x, y) = (f.target().clone(), g.target().clone());
    let bound = f.bound().min(g.bound()).min(x.dim_bound()).min(y.dim_bound());
    let a = f.source();
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    let mut names: Vec<Vec<String>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let nx = x.level_size(n);
        let mut uf = UnionFind::new(nx + y.level_size(n));
        for c in 0..a.level_size(n) {
            uf.union(f.apply(n, c), nx + g.apply(n, c));
        }
        let tag = |e: usize| {
            if e < nx {
                format!("x.{}", x.id(n, e))
            } else {
                format!("y.{}", y.id(n, e - nx))
            }
        };
        let total = nx + y.level_size(n);
        let mut best: HashMap<usize, String> = HashMap::new();
        for e in 0..total {
            let r = uf.find(e);
            let t = tag(e);
            best.entry(r).and_modify(|b| if t < *b { *b = t.clone() }).or_insert(t);
        }
        let mut roots: Vec<(String, usize)> = best.into_iter().map(|(r, s)| (s, r)).collect();
        roots.sort();
        let root_index: HashMap<usize, usize> = roots.iter().enumerate().map(|(k, (_, r))| (*r, k)).collect();
        class_of.push((0..total).map(|e| root_index[&uf.find(e)]).collect());
        names.push(roots.into_iter().map(|(s, _)| s).collect());
    }
    // representatives for operators
    let mut face = vec![Vec::new(); bound + 1];
    let mut degeneracy = vec![Vec::new(); bound + 1];
    for n in 0..=bound {
        let nx = x.level_size(n);
        let mut rep = vec![usize::MAX; names[n].len()];
        for (e, &c) in class_of[n].iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = e;
            }
        }
        let op = |e: usize, on_x: &dyn Fn(usize) -> usize, on_y: &dyn Fn(usize) -> usize, m: usize| -> usize {
            let raw = if e < nx { on_x(e) } else { x.level_size(m) + on_y(e - nx) };
            class_of[m][raw]
        };
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| {
                    rep.iter()
                        .map(|&e| op(e, &|c| x.face(n, i, c), &|c| y.face(n, i, c), n - 1))
                        .collect()
                })
                .collect();
        }
        if n < bound {
            degeneracy[n] = (0..=n)
                .map(|i| {
                    rep.iter()
                        .map(|&e| op(e, &|c| x.degeneracy(n, i, c), &|c| y.degeneracy(n, i, c), n + 1))
                        .collect()
                })
                .collect();
        }
    }
    let object = Arc::new(SimplicialSet::from_tables(bound, names, face, degeneracy)?);
    let left_levels = (0..=bound).map(|n| class_of[n][..x.level_size(n)].to_vec()).collect();
    let right_levels = (0..=bound)
        .map(|n| class_of[n][x.level_size(n)..].to_vec())
        .collect();
    let left = SimplicialMap::new_unchecked(Arc::new(x.truncate(bound)), object.clone(), left_levels)?;
    let right = SimplicialMap::new_unchecked(Arc::new(y.truncate(bound)), object.clone(), right_levels)?;
    Ok(Pushout { object, left, right, f: f.clone(), g: g.clone() })
}

impl Pushout {
    /// The induced map `P → Z` from maps `h: X → Z`, `k: Y → Z` agreeing on
    /// `A`.
    pub fn copair(&self, h: &SimplicialMap, k: &SimplicialMap) -> Result<SimplicialMap> {
        if **h.target() != **k.target() {
            return Err(Error::Contract("copair legs must share their target".into()));
        }
        let z = h.target().clone();
        let bound = self.object.dim_bound().min(z.dim_bound());
        let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; self.object.level_size(n)]).collect();
        for n in 0..=bound {
            for (c, &p) in self.left.levels()[n].iter().enumerate() {
                let v = h.apply(n, c);
                if levels[n][p] != usize::MAX && levels[n][p] != v {
                    return Err(Error::Contract("copair legs disagree".into()));
                }
                levels[n][p] = v;
            }
            for (c, &p) in self.right.levels()[n].iter().enumerate() {
                let v = k.apply(n, c);
                if levels[n][p] != usize::MAX && levels[n][p] != v {
                    return Err(Error::Contract("copair legs disagree".into()));
                }
                levels[n][p] = v;
            }
        }
        let src = if bound == self.object.dim_bound() { self.object.clone() } else { Arc::new(self.object.truncate(bound)) };
        SimplicialMap::new(src, z, levels)
    }

    /// Exhaustively checks the universal property against a test object:
    /// every compatible pair factors uniquely and every map out of `P`
    /// arises this way.
    pub fn verify_universal_property(&self, z: &Arc<SimplicialSet>) -> bool {
        let x = self.left.source();
        let y = self.right.source();
        let mut pairs = 0usize;
        let xs = super::enumerate_maps(x, z);
        let ys = super::enumerate_maps(y, z);
        for h in &xs {
            for k in &ys {
                let (Ok(hf), Ok(kg)) = (self.f.then(h), self.g.then(k)) else { continue };
                if hf.levels() != kg.levels() {
                    continue;
                }
                pairs += 1;
                let Ok(u) = self.copair(h, k) else { return false };
                if self.left.then(&u).map(|m| m.levels().to_vec()).ok() != Some(h.levels().to_vec())
                    || self.right.then(&u).map(|m| m.levels().to_vec()).ok() != Some(k.levels().to_vec())
                {
                    return false;
                }
            }
        }
        let mut out_maps = 0usize;
        for_each_map(&self.object, z, &MapConstraints::default(), |_| {
            out_maps += 1;
            ControlFlow::Continue(())
        });
        pairs == out_maps
    }
}

/// Levelwise product, truncated at the smaller bound. Cells are `(x,y)`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let bound = x.dim_bound().min(y.dim_bound());
    let levels = (0..=bound)
        .map(|n| {
            (0..x.level_size(n))
                .flat_map(|a| (0..y.level_size(n)).map(move |b| (a, b)))
                .collect()
        })
        .collect();
    SimplicialSet::from_keys(
        bound,
        levels,
        |n, &(a, b)| format!("({},{})", x.id(n, a), y.id(n, b)),
        |n, i, &(a, b)| (x.face(n, i, a), y.face(n, i, b)),
        |n, i, &(a, b)| (x.degeneracy(n, i, a), y.degeneracy(n, i, b)),
    )
    .expect("product tables are closed")
}

/// Projections out of [`product`].
pub fn product_projections(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>, p: &Arc<SimplicialSet>) -> (SimplicialMap, SimplicialMap) {
    let bound = p.dim_bound();
    let mut first = Vec::with_capacity(bound + 1);
    let mut second = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut pair_of: HashMap<String, (usize, usize)> = HashMap::new();
        for a in 0..x.level_size(n) {
            for b in 0..y.level_size(n) {
                pair_of.insert(format!("({},{})", x.id(n, a), y.id(n, b)), (a, b));
            }
        }
        let (f, s): (Vec<usize>, Vec<usize>) = (0..p.level_size(n)).map(|c| pair_of[p.id(n, c)]).unzip();
        first.push(f);
        second.push(s);
    }
    let xt = if x.dim_bound() == bound { x.clone() } else { Arc::new(x.truncate(bound)) };
    let yt = if y.dim_bound() == bound { y.clone() } else { Arc::new(y.truncate(bound)) };
    (
        SimplicialMap::new_unchecked(p.clone(), xt, first).unwrap(),
        SimplicialMap::new_unchecked(p.clone(), yt, second).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::search::find_isomorphism;
    use crate::simplicial::standard::{boundary, simplex};
    use crate::simplicial::validate;

    fn endpoints_inclusion(bound: usize) -> SimplicialMap {
        let a = Arc::new(boundary(1, bound).unwrap());
        let b = Arc::new(simplex(1, bound).unwrap());
        let levels = (0..=bound)
            .map(|n| (0..a.level_size(n)).map(|c| b.index_of(n, a.id(n, c)).unwrap()).collect())
            .collect();
        SimplicialMap::new(a, b, levels).unwrap()
    }

    #[test]
    fn circle_from_collapsing_endpoints() {
        let i = endpoints_inclusion(2);
        let pt = Arc::new(simplex(0, 2).unwrap());
        let c = SimplicialMap::to_point(i.source().clone(), pt).unwrap();
        let p = pushout(&c, &i).unwrap();
        assert!(validate(&p.object).is_empty());
        assert_eq!(p.object.nondegenerate_counts(), vec![1, 1, 0]);
    }

    #[test]
    fn gluing_two_edges_end_to_start() {
        let bound = 2;
        let pt = Arc::new(simplex(0, bound).unwrap());
        let e = Arc::new(simplex(1, bound).unwrap());
        let at = |v: &str| {
            let levels = (0..=bound)
                .map(|n| vec![e.index_of(n, &v.repeat(n + 1)).unwrap()])
                .collect();
            SimplicialMap::new(pt.clone(), e.clone(), levels).unwrap()
        };
        let p = pushout(&at("1"), &at("0")).unwrap();
        assert_eq!(p.object.nondegenerate_counts(), vec![3, 2, 0]);
    }

    #[test]
    fn pushout_along_identities() {
        let y = Arc::new(boundary(2, 3).unwrap());
        let id = SimplicialMap::identity(y.clone());
        let p = pushout(&id, &id).unwrap();
        assert!(find_isomorphism(&p.object, &y).is_some());
    }

    #[test]
    fn pushout_is_symmetric_up_to_iso() {
        let i = endpoints_inclusion(2);
        let pt = Arc::new(simplex(0, 2).unwrap());
        let c = SimplicialMap::to_point(i.source().clone(), pt).unwrap();
        let p = pushout(&c, &i).unwrap();
        let q = pushout(&i, &c).unwrap();
        assert!(find_isomorphism(&p.object, &q.object).is_some());
    }

    #[test]
    fn universal_property_holds_on_circle() {
        let i = endpoints_inclusion(2);
        let pt = Arc::new(simplex(0, 2).unwrap());
        let c = SimplicialMap::to_point(i.source().clone(), pt).unwrap();
        let p = pushout(&c, &i).unwrap();
        for z in [boundary(2, 2).unwrap(), simplex(1, 2).unwrap(), p.object.as_ref().clone()] {
            assert!(p.verify_universal_property(&Arc::new(z)));
        }
    }

    #[test]
    fn product_counts() {
        let e = simplex(1, 2).unwrap();
        let sq = product(&e, &e);
        assert_eq!(sq.level_size(1), 9);
        assert_eq!(sq.nondegenerate_counts()[2], 2);
        assert!(validate(&sq).is_empty());
    }

    #[test]
    fn product_with_point_is_identity() {
        let x = Arc::new(boundary(2, 3).unwrap());
        let pt = simplex(0, 3).unwrap();
        let p = Arc::new(product(&x, &pt));
        assert!(find_isomorphism(&p, &x).is_some());
        let (pr, _) = product_projections(&x, &Arc::new(pt), &p);
        assert!(pr.is_simplicial() && pr.is_bijective());
    }
}
