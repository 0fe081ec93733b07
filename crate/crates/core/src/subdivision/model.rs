use std::collections::HashMap;
use std::sync::Arc;

use crate::simplicial::{SimplicialMap, SimplicialSet};
use crate::twocat::subset_name;

/// Weakly increasing chains `S_0 ⊆ … ⊆ S_m` of nonempty subsets of `[n]`,
/// as bit masks.
pub(crate) fn chains(n: usize, m: usize) -> Vec<Vec<u64>> {
    let full: u64 = (1 << (n + 1)) - 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(full: u64, m: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let floor = cur.last().copied().unwrap_or(0);
        let free = full & !floor;
        // every superset of `floor` inside `full`
        let mut extra = free;
        loop {
            let s = floor | extra;
            if s != 0 {
                cur.push(s);
                go(full, m, cur, out);
                cur.pop();
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
    }
    go(full, m, &mut cur, &mut out);
    out.sort();
    out
}

/// Chains whose top is all of `[n]`.
pub(crate) fn full_chains(n: usize, m: usize) -> Vec<Vec<u64>> {
    let full: u64 = (1 << (n + 1)) - 1;
    chains(n, m).into_iter().filter(|c| c[m] == full).collect()
}

pub(crate) fn chain_name(chain: &[u64]) -> String {
    chain.iter().map(|&s| subset_name(s)).collect::<Vec<_>>().join("<")
}

pub(crate) fn image(mask: u64, phi: &[usize]) -> u64 {
    (0..phi.len()).filter(|&b| mask >> b & 1 == 1).fold(0, |acc, b| acc | 1 << phi[b])
}

/// `j ↦ max S_j`, the last-vertex operator of a chain.
pub(crate) fn last_vertices(chain: &[u64]) -> Vec<usize> {
    chain.iter().map(|&s| 63 - s.leading_zeros() as usize).collect()
}

/// `Sd Δₙ`, the nerve of the poset of nonempty subsets of `[n]`. Cells are
/// named by their chains, e.g. `{0}<{0,1}`.
#[derive(Debug, Clone)]
pub struct SdSimplex {
    n: usize,
    object: Arc<SimplicialSet>,
    chains: Vec<Vec<Vec<u64>>>,
    lookup: Vec<HashMap<Vec<u64>, usize>>,
}

impl SdSimplex {
    pub fn new(n: usize, dim_bound: usize) -> Self {
        let levels: Vec<Vec<Vec<u64>>> = (0..=dim_bound).map(|m| chains(n, m)).collect();
        let object = SimplicialSet::from_keys(
            dim_bound,
            levels,
            |_, c| chain_name(c),
            |_, i, c| {
                let mut c = c.clone();
                c.remove(i);
                c
            },
            |_, i, c| {
                let mut c = c.clone();
                c.insert(i, c[i]);
                c
            },
        )
        .expect("chains are closed under faces and degeneracies");
        let mut by_index: Vec<Vec<Vec<u64>>> = (0..=dim_bound).map(|m| vec![Vec::new(); object.level_size(m)]).collect();
        for m in 0..=dim_bound {
            for c in chains(n, m) {
                let x = object.index_of(m, &chain_name(&c)).unwrap();
                by_index[m][x] = c;
            }
        }
        let lookup = by_index.iter().map(|l| l.iter().enumerate().map(|(x, c)| (c.clone(), x)).collect()).collect();
        SdSimplex { n, object: Arc::new(object), chains: by_index, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn object(&self) -> &Arc<SimplicialSet> {
        &self.object
    }

    pub fn chain(&self, m: usize, x: usize) -> &[u64] {
        &self.chains[m][x]
    }

    /// The cell with the given chain; the level is the chain length minus one.
    pub fn index(&self, chain: &[u64]) -> usize {
        self.lookup[chain.len() - 1][chain]
    }

    /// `Sd(φ): Sd Δₘ → Sd Δₙ` for a monotone `φ: [m] → [n]` with `self` the
    /// source model.
    pub fn operator(&self, phi: &[usize], target: &SdSimplex) -> SimplicialMap {
        assert_eq!(phi.len(), self.n + 1);
        let bound = self.object.dim_bound().min(target.object.dim_bound());
        let levels = (0..=bound)
            .map(|m| {
                self.chains[m].iter().map(|c| target.index(&c.iter().map(|&s| image(s, phi)).collect::<Vec<_>>())).collect()
            })
            .collect();
        SimplicialMap::new(self.object.clone(), target.object.clone(), levels).expect("Sd of a monotone map is simplicial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::monotone_maps;
    use crate::simplicial::validate;

    #[test]
    fn small_models() {
        let s1 = SdSimplex::new(1, 1);
        assert_eq!(s1.object().nondegenerate_counts(), vec![3, 2]);
        assert!(validate(s1.object()).is_empty());
        let s2 = SdSimplex::new(2, 2);
        assert_eq!(s2.object().nondegenerate_counts(), vec![7, 12, 6]);
    }

    #[test]
    fn operators_compose() {
        let models: Vec<SdSimplex> = (0..=2).map(|n| SdSimplex::new(n, 2)).collect();
        for phi in monotone_maps(1, 2) {
            for psi in monotone_maps(0, 1) {
                let a = models[0].operator(&psi, &models[1]).then(&models[1].operator(&phi, &models[2])).unwrap();
                let psi_phi: Vec<usize> = psi.iter().map(|&v| phi[v]).collect();
                assert_eq!(a, models[0].operator(&psi_phi, &models[2]));
            }
        }
    }

    #[test]
    fn last_vertex() {
        assert_eq!(last_vertices(&[0b001, 0b011, 0b101]), vec![0, 1, 2]);
    }
}
