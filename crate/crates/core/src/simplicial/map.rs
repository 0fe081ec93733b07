use std::sync::Arc;

use super::SimplicialSet;
use crate::error::{Error, Result};

/// A map of truncated simplicial sets, defined on levels up to the smaller
/// of the two bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Checked constructor: the assignment must commute with faces and
    /// degeneracies.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, levels)?;
        if let Some(msg) = map.first_defect() {
            return Err(Error::Contract(msg));
        }
        Ok(map)
    }

    /// Shape-checked constructor that skips the commutation check.
    pub fn new_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let bound = source.dim_bound().min(target.dim_bound());
        if levels.len() != bound + 1 {
            return Err(Error::Malformed(format!("map needs {} levels, got {}", bound + 1, levels.len())));
        }
        for (n, l) in levels.iter().enumerate() {
            if l.len() != source.level_size(n) {
                return Err(Error::Malformed(format!("map level {n} has wrong length")));
            }
            if l.iter().any(|&y| y >= target.level_size(n)) {
                return Err(Error::Malformed(format!("map level {n} points outside the target")));
            }
        }
        Ok(Self { source, target, levels })
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let levels = (0..=x.dim_bound()).map(|n| (0..x.level_size(n)).collect()).collect();
        Self { source: x.clone(), target: x, levels }
    }

    /// The unique map from the empty simplicial set.
    pub fn from_empty(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<Self> {
        let bound = source.dim_bound().min(target.dim_bound());
        Self::new(source, target, vec![Vec::new(); bound + 1])
    }

    /// The unique map to a simplicial set with exactly one cell per level.
    pub fn to_point(source: Arc<SimplicialSet>, point: Arc<SimplicialSet>) -> Result<Self> {
        if point.level_sizes().iter().any(|&s| s != 1) {
            return Err(Error::Domain("target is not a point".into()));
        }
        let bound = source.dim_bound().min(point.dim_bound());
        let levels = (0..=bound).map(|n| vec![0; source.level_size(n)]).collect();
        Self::new(source, point, levels)
    }

    /// The map sending each cell to the target cell with the same id, as for
    /// `∂Δₙ ↪ Δₙ` or a horn inclusion.
    pub fn inclusion(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<Self> {
        let bound = source.dim_bound().min(target.dim_bound());
        let mut levels = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let level = (0..source.level_size(n))
                .map(|x| {
                    let id = source.id(n, x);
                    target.index_of(n, id).ok_or_else(|| Error::UnknownId { id: id.to_string(), context: format!("target level {n}") })
                })
                .collect::<Result<Vec<usize>>>()?;
            levels.push(level);
        }
        Self::new(source, target, levels)
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::Contract("composite of non-composable maps".into()));
        }
        let bound = self.bound().min(other.bound());
        let levels = (0..=bound)
            .map(|n| self.levels[n].iter().map(|&y| other.levels[n][y]).collect())
            .collect();
        let src = if bound == self.source.dim_bound() { self.source.clone() } else { Arc::new(self.source.truncate(bound)) };
        let tgt = if bound == other.target.dim_bound() { other.target.clone() } else { Arc::new(other.target.truncate(bound)) };
        Self::new_unchecked(src, tgt, levels)
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, l)| {
            let mut seen = vec![false; self.target.level_size(n)];
            l.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective()
            && self.levels.iter().enumerate().all(|(n, l)| l.len() == self.target.level_size(n))
    }

    /// Description of the first operator that fails to commute, if any.
    pub fn first_defect(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        for n in 0..=self.bound() {
            for x in 0..s.level_size(n) {
                let fx = self.levels[n][x];
                if n >= 1 {
                    for i in 0..=n {
                        if self.levels[n - 1][s.face(n, i, x)] != t.face(n, i, fx) {
                            return Some(format!("d{i} at level {n} on `{}`", s.id(n, x)));
                        }
                    }
                }
                if n < self.bound() {
                    for i in 0..=n {
                        if self.levels[n + 1][s.degeneracy(n, i, x)] != t.degeneracy(n, i, fx) {
                            return Some(format!("s{i} at level {n} on `{}`", s.id(n, x)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_simplicial(&self) -> bool {
        self.first_defect().is_none()
    }

    /// Assignment as `(level, source id, target id)` triples.
    pub fn id_triples(&self) -> Vec<(usize, String, String)> {
        let mut out = Vec::new();
        for (n, l) in self.levels.iter().enumerate() {
            for (x, &y) in l.iter().enumerate() {
                out.push((n, self.source.id(n, x).to_string(), self.target.id(n, y).to_string()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn identity_is_bijective_and_simplicial() {
        let x = Arc::new(boundary(2, 3).unwrap());
        let id = SimplicialMap::identity(x);
        assert!(id.is_simplicial());
        assert!(id.is_bijective());
    }

    #[test]
    fn non_commuting_assignment_is_rejected() {
        let x = Arc::new(simplex(1, 1).unwrap());
        // swap vertices, keep edges: breaks d0/d1
        let levels = vec![vec![1, 0], vec![0, 1, 2]];
        assert!(matches!(SimplicialMap::new(x.clone(), x, levels), Err(Error::Contract(_))));
    }
}
