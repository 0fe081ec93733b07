//! Levelwise-finite, dimension-truncated simplicial sets.
//!
//! A [`SimplicialSet`] stores every cell up to its `dim_bound`, degenerate
//! cells included, together with complete face and degeneracy tables. Cells
//! are addressed by `(level, index)`; indices follow the lexicographic order
//! of the string identifiers, so two structurally identical constructions
//! always produce identical tables.
//!
//! Operators above the bound are absent: `face` is defined on levels
//! `1..=dim_bound` and `degeneracy` on levels `0..dim_bound`.

mod colimit;
mod map;
mod search;
pub mod standard;
mod validate;

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use colimit::{coproduct, product, product_projections, pushout, Coproduct, Pushout};
pub use map::SimplicialMap;
pub use search::{count_maps, enumerate_maps, find_isomorphism, for_each_map, MapConstraints};
pub use standard::{generate_cell, CellKind};
pub use validate::{validate, Identity, Violation};

/// A dimension-truncated simplicial set with materialized degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    dim_bound: usize,
    ids: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, usize>>,
    face: Vec<Vec<Vec<usize>>>,
    degeneracy: Vec<Vec<Vec<usize>>>,
    nondegenerate: Vec<Vec<bool>>,
}

impl SimplicialSet {
    /// The empty simplicial set truncated at `dim_bound`.
    pub fn empty(dim_bound: usize) -> Self {
        let face = (0..=dim_bound).map(|n| if n == 0 { Vec::new() } else { vec![Vec::new(); n + 1] }).collect();
        let degeneracy = (0..=dim_bound).map(|n| if n < dim_bound { vec![Vec::new(); n + 1] } else { Vec::new() }).collect();
        Self::from_tables(dim_bound, vec![Vec::new(); dim_bound + 1], face, degeneracy)
            .expect("empty tables are well formed")
    }

    /// Builds a simplicial set from per-level keys and operator closures.
    ///
    /// `face(n, i, k)` must return a key present at level `n - 1` and
    /// `degeneracy(n, i, k)` a key present at level `n + 1`. Cells are
    /// reordered by identifier.
    pub fn from_keys<K, I, F, S>(
        dim_bound: usize,
        levels: Vec<Vec<K>>,
        id: I,
        face: F,
        degeneracy: S,
    ) -> Result<Self>
    where
        K: Clone + Eq + Hash,
        I: Fn(usize, &K) -> String,
        F: Fn(usize, usize, &K) -> K,
        S: Fn(usize, usize, &K) -> K,
    {
        if levels.len() != dim_bound + 1 {
            return Err(Error::Malformed(format!(
                "expected {} levels, got {}",
                dim_bound + 1,
                levels.len()
            )));
        }
        let mut sorted: Vec<Vec<(String, K)>> = Vec::with_capacity(levels.len());
        for (n, keys) in levels.into_iter().enumerate() {
            let mut level: Vec<(String, K)> = keys.into_iter().map(|k| (id(n, &k), k)).collect();
            level.sort_by(|a, b| a.0.cmp(&b.0));
            for w in level.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Malformed(format!(
                        "duplicate cell id `{}` at level {n}",
                        w[0].0
                    )));
                }
            }
            sorted.push(level);
        }
        let key_index: Vec<HashMap<K, usize>> = sorted
            .iter()
            .map(|level| level.iter().enumerate().map(|(x, (_, k))| (k.clone(), x)).collect())
            .collect();
        let mut face_t = vec![Vec::new(); dim_bound + 1];
        let mut degen_t = vec![Vec::new(); dim_bound + 1];
        for n in 0..=dim_bound {
            if n >= 1 {
                let mut rows = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let mut row = Vec::with_capacity(sorted[n].len());
                    for (cid, k) in &sorted[n] {
                        let fk = face(n, i, k);
                        let fx = *key_index[n - 1].get(&fk).ok_or_else(|| {
                            Error::Malformed(format!("face d{i} of `{cid}` is not a cell at level {}", n - 1))
                        })?;
                        row.push(fx);
                    }
                    rows.push(row);
                }
                face_t[n] = rows;
            }
            if n < dim_bound {
                let mut rows = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let mut row = Vec::with_capacity(sorted[n].len());
                    for (cid, k) in &sorted[n] {
                        let sk = degeneracy(n, i, k);
                        let sx = *key_index[n + 1].get(&sk).ok_or_else(|| {
                            Error::Malformed(format!("degeneracy s{i} of `{cid}` is not a cell at level {}", n + 1))
                        })?;
                        row.push(sx);
                    }
                    rows.push(row);
                }
                degen_t[n] = rows;
            }
        }
        let ids = sorted.into_iter().map(|l| l.into_iter().map(|(s, _)| s).collect()).collect();
        Self::assemble(dim_bound, ids, face_t, degen_t)
    }

    /// Builds a simplicial set from raw tables. `face[n][i][x]` for `n ≥ 1`
    /// and `degeneracy[n][i][x]` for `n < dim_bound`. The tables are only
    /// checked for shape and range; identities are checked by [`validate`].
    pub fn from_tables(
        dim_bound: usize,
        ids: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        degeneracy: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if ids.len() != dim_bound + 1 || face.len() != dim_bound + 1 || degeneracy.len() != dim_bound + 1 {
            return Err(Error::Malformed("table count does not match dim_bound".into()));
        }
        // canonical order: sort each level by id and remap
        let perms: Vec<Vec<usize>> = ids
            .iter()
            .map(|level| {
                let mut order: Vec<usize> = (0..level.len()).collect();
                order.sort_by(|&a, &b| level[a].cmp(&level[b]));
                order
            })
            .collect();
        let inverse: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (new, &old) in p.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            })
            .collect();
        let mut new_ids = Vec::with_capacity(ids.len());
        for (n, level) in ids.iter().enumerate() {
            new_ids.push(perms[n].iter().map(|&old| level[old].clone()).collect::<Vec<_>>());
        }
        let remap = |n: usize, m: usize, table: &Vec<Vec<usize>>, rows: usize, what: &str| -> Result<Vec<Vec<usize>>> {
            if table.len() != rows {
                return Err(Error::Malformed(format!("{what} table at level {n} has {} rows, expected {rows}", table.len())));
            }
            let mut out = Vec::with_capacity(rows);
            for row in table {
                if row.len() != ids[n].len() {
                    return Err(Error::Malformed(format!("{what} row at level {n} has wrong length")));
                }
                let mut r = vec![0; row.len()];
                for (old, &val) in row.iter().enumerate() {
                    if val >= ids[m].len() {
                        return Err(Error::Malformed(format!("{what} at level {n} points outside level {m}")));
                    }
                    r[inverse[n][old]] = inverse[m][val];
                }
                out.push(r);
            }
            Ok(out)
        };
        let mut face_t = vec![Vec::new(); dim_bound + 1];
        let mut degen_t = vec![Vec::new(); dim_bound + 1];
        for n in 0..=dim_bound {
            if n >= 1 {
                face_t[n] = remap(n, n - 1, &face[n], n + 1, "face")?;
            } else if !face[0].is_empty() {
                return Err(Error::Malformed("level 0 has no faces".into()));
            }
            if n < dim_bound {
                degen_t[n] = remap(n, n + 1, &degeneracy[n], n + 1, "degeneracy")?;
            } else if !degeneracy[n].is_empty() {
                return Err(Error::Malformed("no degeneracies at the dimension bound".into()));
            }
        }
        for (n, level) in new_ids.iter().enumerate() {
            for w in level.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Malformed(format!("duplicate cell id `{}` at level {n}", w[0])));
                }
            }
        }
        Self::assemble(dim_bound, new_ids, face_t, degen_t)
    }

    fn assemble(
        dim_bound: usize,
        ids: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        degeneracy: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let lookup = ids
            .iter()
            .map(|l| l.iter().enumerate().map(|(x, s)| (s.clone(), x)).collect())
            .collect();
        let mut nondegenerate = Vec::with_capacity(dim_bound + 1);
        for n in 0..=dim_bound {
            let flags = (0..ids[n].len())
                .map(|x| n == 0 || (0..n).all(|i| degeneracy[n - 1][i][face[n][i][x]] != x))
                .collect();
            nondegenerate.push(flags);
        }
        Ok(Self { dim_bound, ids, lookup, face, degeneracy, nondegenerate })
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.ids.get(n).map_or(0, Vec::len)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.ids.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.level_size(0) == 0
    }

    pub fn id(&self, n: usize, x: usize) -> &str {
        &self.ids[n][x]
    }

    pub fn ids(&self, n: usize) -> &[String] {
        &self.ids[n]
    }

    pub fn index_of(&self, n: usize, id: &str) -> Option<usize> {
        self.lookup.get(n)?.get(id).copied()
    }

    /// `d_i` applied to cell `x` at level `n ≥ 1`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.face[n][i][x]
    }

    /// `s_i` applied to cell `x` at level `n < dim_bound`.
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracy[n][i][x]
    }

    pub fn is_nondegenerate(&self, n: usize, x: usize) -> bool {
        self.nondegenerate[n][x]
    }

    pub fn nondegenerate(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.nondegenerate[n].iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x)
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.dim_bound).map(|n| self.nondegenerate(n).count()).collect()
    }

    /// Largest level carrying a nondegenerate cell, `None` when empty.
    pub fn top_dimension(&self) -> Option<usize> {
        (0..=self.dim_bound).rev().find(|&n| self.nondegenerate(n).next().is_some())
    }

    /// Replaces one face entry without any checking. Intended for building
    /// deliberately broken inputs for [`validate`].
    pub fn with_face_entry(&self, n: usize, i: usize, x: usize, value: usize) -> Self {
        let mut face = self.face.clone();
        face[n][i][x] = value;
        Self::assemble(self.dim_bound, self.ids.clone(), face, self.degeneracy.clone())
            .expect("assembly never fails")
    }

    /// Applies the simplicial operator of a monotone map `phi: [m] → [n]`
    /// (given as its value list) to a cell at level `n`.
    pub fn apply_monotone(&self, n: usize, x: usize, phi: &[usize]) -> usize {
        debug_assert!(phi.windows(2).all(|w| w[0] <= w[1]));
        let mut image: Vec<usize> = phi.to_vec();
        image.dedup();
        let mut cur = x;
        let mut level = n;
        for j in (0..=n).rev() {
            if image.binary_search(&j).is_err() {
                cur = self.face(level, j, cur);
                level -= 1;
            }
        }
        // now at level |image| - 1; insert repeats
        let rank: Vec<usize> = phi.iter().map(|v| image.binary_search(v).unwrap()).collect();
        for i in 0..phi.len().saturating_sub(1) {
            if rank[i] == rank[i + 1] {
                cur = self.degeneracy(level, i, cur);
                level += 1;
            }
        }
        cur
    }

    /// Vertex `j` of a cell at level `n`.
    pub fn vertex(&self, n: usize, x: usize, j: usize) -> usize {
        self.apply_monotone(n, x, &[j])
    }

    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|j| self.vertex(n, x, j)).collect()
    }

    /// Eilenberg–Zilber decomposition: returns `(k, z, eps)` with `z` a
    /// nondegenerate `k`-cell and `eps: [n] → [k]` a surjection such that
    /// `x = eps^*(z)`.
    pub fn normalize(&self, n: usize, x: usize) -> (usize, usize, Vec<usize>) {
        if self.is_nondegenerate(n, x) {
            return (n, x, (0..=n).collect());
        }
        let i = (0..n)
            .find(|&i| self.degeneracy(n - 1, i, self.face(n, i, x)) == x)
            .expect("degenerate cell has a degeneracy witness");
        let (k, z, inner) = self.normalize(n - 1, self.face(n, i, x));
        // x = s_i(y), y = inner^*(z); eps = inner ∘ sigma_i
        let eps = (0..=n).map(|v| inner[if v <= i { v } else { v - 1 }]).collect();
        (k, z, eps)
    }

    /// Total number of cells over all levels.
    pub fn total_cells(&self) -> usize {
        self.ids.iter().map(Vec::len).sum()
    }

    /// The same data truncated at a lower bound.
    pub fn truncate(&self, bound: usize) -> Self {
        if bound >= self.dim_bound {
            return self.clone();
        }
        let ids = self.ids[..=bound].to_vec();
        let face = self.face[..=bound].to_vec();
        let mut degeneracy = self.degeneracy[..=bound].to_vec();
        degeneracy[bound] = Vec::new();
        Self::assemble(bound, ids, face, degeneracy).expect("truncation keeps tables well formed")
    }
}

/// Formats a sequence of small naturals as a digit string, falling back to a
/// comma-separated list once a value needs more than one digit.
pub(crate) fn digits(values: &[usize]) -> String {
    if values.iter().all(|&v| v < 10) {
        values.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}
