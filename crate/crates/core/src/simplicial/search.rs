//! Backtracking enumeration of simplicial maps.
//!
//! A map out of a truncated simplicial set is determined by its values on
//! nondegenerate cells, so the search walks nondegenerate source cells level
//! by level. Candidates for a cell are looked up by the tuple of images of
//! its faces; degenerate cells are filled in from the level below.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{SimplicialMap, SimplicialSet};

const UNSET: usize = usize::MAX;

/// Optional restrictions on the maps produced by [`for_each_map`].
#[derive(Default)]
pub struct MapConstraints<'a> {
    /// Pre-assigned values, `fixed[n][x]`.
    pub fixed: Option<Vec<Vec<Option<usize>>>>,
    /// Extra predicate `(level, source cell, target cell)` checked on
    /// nondegenerate source cells.
    pub filter: Option<&'a dyn Fn(usize, usize, usize) -> bool>,
    /// Require nondegenerate cells to go injectively to nondegenerate cells.
    pub injective: bool,
}

struct Search<'a> {
    source: &'a SimplicialSet,
    target: &'a SimplicialSet,
    bound: usize,
    nondeg: Vec<Vec<usize>>,
    degenerate: Vec<Vec<(usize, usize, usize)>>, // (cell, i, lower cell)
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
    c: &'a MapConstraints<'a>,
}

impl<'a> Search<'a> {
    fn new(source: &'a SimplicialSet, target: &'a SimplicialSet, c: &'a MapConstraints<'a>) -> Self {
        let bound = source.dim_bound().min(target.dim_bound());
        let nondeg = (0..=bound).map(|n| source.nondegenerate(n).collect()).collect();
        let degenerate = (0..=bound)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..source.level_size(n))
                    .filter(|&x| !source.is_nondegenerate(n, x))
                    .map(|x| {
                        let i = (0..n)
                            .find(|&i| source.degeneracy(n - 1, i, source.face(n, i, x)) == x)
                            .unwrap();
                        (x, i, source.face(n, i, x))
                    })
                    .collect()
            })
            .collect();
        let by_faces = (0..=bound)
            .map(|n| {
                let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                if n >= 1 {
                    for y in 0..target.level_size(n) {
                        if c.injective && !target.is_nondegenerate(n, y) {
                            continue;
                        }
                        let key = (0..=n).map(|i| target.face(n, i, y)).collect();
                        m.entry(key).or_default().push(y);
                    }
                }
                m
            })
            .collect();
        Self { source, target, bound, nondeg, degenerate, by_faces, c }
    }

    fn run<F>(&self, visit: &mut F)
    where
        F: FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    {
        let mut assign: Vec<Vec<usize>> = (0..=self.bound).map(|n| vec![UNSET; self.source.level_size(n)]).collect();
        let mut used: Vec<Vec<bool>> = (0..=self.bound).map(|n| vec![false; self.target.level_size(n)]).collect();
        let _ = self.rec(0, 0, &mut assign, &mut used, visit);
    }

    fn rec<F>(&self, level: usize, pos: usize, assign: &mut Vec<Vec<usize>>, used: &mut Vec<Vec<bool>>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    {
        if level > self.bound {
            return visit(assign);
        }
        if pos == 0 && level > 0 {
            for &(x, i, y) in &self.degenerate[level] {
                let v = self.target.degeneracy(level - 1, i, assign[level - 1][y]);
                if let Some(fixed) = &self.c.fixed {
                    if let Some(f) = fixed[level][x] {
                        if f != v {
                            return ControlFlow::Continue(());
                        }
                    }
                }
                assign[level][x] = v;
            }
        }
        let nd = &self.nondeg[level];
        if pos == nd.len() {
            return self.rec(level + 1, 0, assign, used, visit);
        }
        let x = nd[pos];
        let fixed = self.c.fixed.as_ref().and_then(|f| f[level][x]);
        let all;
        let candidates: &[usize] = if level == 0 {
            all = (0..self.target.level_size(0)).collect::<Vec<_>>();
            &all
        } else {
            let key: Vec<usize> = (0..=level).map(|i| assign[level - 1][self.source.face(level, i, x)]).collect();
            match self.by_faces[level].get(&key) {
                Some(v) => v,
                None => return ControlFlow::Continue(()),
            }
        };
        for &y in candidates {
            if fixed.is_some_and(|f| f != y) {
                continue;
            }
            if self.c.injective && used[level][y] {
                continue;
            }
            if let Some(filter) = self.c.filter {
                if !filter(level, x, y) {
                    continue;
                }
            }
            assign[level][x] = y;
            used[level][y] = true;
            let flow = self.rec(level, pos + 1, assign, used, visit);
            used[level][y] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the level tables of every map `source → target`
/// satisfying the constraints, in canonical (lexicographic) order.
pub fn for_each_map<F>(source: &SimplicialSet, target: &SimplicialSet, constraints: &MapConstraints<'_>, mut visit: F)
where
    F: FnMut(&[Vec<usize>]) -> ControlFlow<()>,
{
    Search::new(source, target, constraints).run(&mut visit);
}

pub fn enumerate_maps(source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    let mut out = Vec::new();
    for_each_map(source, target, &MapConstraints::default(), |levels| {
        out.push(SimplicialMap::new_unchecked(source.clone(), target.clone(), levels.to_vec()).unwrap());
        ControlFlow::Continue(())
    });
    out
}

pub fn count_maps(source: &SimplicialSet, target: &SimplicialSet) -> usize {
    let mut count = 0;
    for_each_map(source, target, &MapConstraints::default(), |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// An isomorphism `x → y` if one exists. Both must share the bound.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    if x.dim_bound() != y.dim_bound()
        || x.level_sizes() != y.level_sizes()
        || x.nondegenerate_counts() != y.nondegenerate_counts()
    {
        return None;
    }
    let c = MapConstraints { injective: true, ..Default::default() };
    let mut found = None;
    for_each_map(x, y, &c, |levels| {
        found = Some(levels.to_vec());
        ControlFlow::Break(())
    });
    found.map(|l| SimplicialMap::new_unchecked(x.clone(), y.clone(), l).unwrap())
}
