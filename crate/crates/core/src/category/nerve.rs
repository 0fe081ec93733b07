use std::sync::Arc;

use super::{CatFunctor, FinCat};
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// Separator between arrow identifiers in nerve cell ids.
pub(crate) const CHAIN_SEP: &str = "|";

/// Composable chains of length `n` (first arrow first); for `n = 0` the
/// one-element "chains" are the objects.
pub(crate) fn chains(c: &FinCat, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return (0..c.object_count()).map(|o| vec![o]).collect();
    }
    let mut out: Vec<Vec<usize>> = (0..c.arrow_count()).map(|f| vec![f]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for ch in &out {
            for &g in c.arrows_from(c.dst(*ch.last().unwrap())) {
                let mut e = ch.clone();
                e.push(g);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn chain_id(c: &FinCat, n: usize, chain: &[usize]) -> String {
    if n == 0 {
        return c.object_id(chain[0]).to_string();
    }
    chain.iter().map(|&f| c.arrow_id(f)).collect::<Vec<_>>().join(CHAIN_SEP)
}

fn chain_face(c: &FinCat, n: usize, i: usize, ch: &[usize]) -> Vec<usize> {
    if n == 1 {
        return vec![if i == 0 { c.dst(ch[0]) } else { c.src(ch[0]) }];
    }
    let mut out = Vec::with_capacity(n - 1);
    for (k, &f) in ch.iter().enumerate() {
        if i == 0 && k == 0 || i == n && k == n - 1 {
            continue;
        }
        if i > 0 && i < n && k == i {
            let last = out.pop().unwrap();
            out.push(c.compose(f, last).unwrap());
            continue;
        }
        out.push(f);
    }
    out
}

fn chain_degeneracy(c: &FinCat, n: usize, i: usize, ch: &[usize]) -> Vec<usize> {
    if n == 0 {
        return vec![c.identity(ch[0])];
    }
    // object c_i of the chain c_0 → c_1 → … → c_n
    let obj = if i == 0 { c.src(ch[0]) } else { c.dst(ch[i - 1]) };
    let mut out = ch.to_vec();
    out.insert(i, c.identity(obj));
    out
}

/// The nerve of `c`, truncated at `dim_bound`. Level-`n` cells are chains
/// of `n` composable arrows written as `f1|f2|…|fn`; vertices are objects.
pub fn nerve(c: &FinCat, dim_bound: usize) -> SimplicialSet {
    let levels = (0..=dim_bound).map(|n| chains(c, n)).collect();
    SimplicialSet::from_keys(
        dim_bound,
        levels,
        |n, ch| chain_id(c, n, ch),
        |n, i, ch| chain_face(c, n, i, ch),
        |n, i, ch| chain_degeneracy(c, n, i, ch),
    )
    .expect("nerve operators stay inside the nerve")
}

/// The simplicial map `N(f)` between given nerves of the source and target.
pub fn nerve_map(f: &CatFunctor, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let (a, b) = (f.source(), f.target());
    let bound = source.dim_bound().min(target.dim_bound());
    let mut levels = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level = vec![usize::MAX; source.level_size(n)];
        for ch in chains(a, n) {
            let x = source
                .index_of(n, &chain_id(a, n, &ch))
                .ok_or_else(|| Error::Contract("source is not the nerve of the functor's source".into()))?;
            let image: Vec<usize> = if n == 0 { vec![f.object(ch[0])] } else { ch.iter().map(|&g| f.arrow(g)).collect() };
            level[x] = target
                .index_of(n, &chain_id(b, n, &image))
                .ok_or_else(|| Error::Contract("target is not the nerve of the functor's target".into()))?;
        }
        if level.contains(&usize::MAX) {
            return Err(Error::Contract("source is not the nerve of the functor's source".into()));
        }
        levels.push(level);
    }
    SimplicialMap::new_unchecked(source, target, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::simplex;
    use crate::simplicial::{find_isomorphism, validate};

    #[test]
    fn nerve_of_terminal_is_a_point() {
        let n = nerve(&FinCat::terminal(), 3);
        assert_eq!(n.level_sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn nerve_of_arrow_is_delta_one() {
        let n = Arc::new(nerve(&FinCat::ordinal(1), 2));
        assert!(validate(&n).is_empty());
        let d1 = Arc::new(simplex(1, 2).unwrap());
        assert!(find_isomorphism(&n, &d1).is_some());
    }

    #[test]
    fn nerve_of_z2_counts_tuples() {
        let z2 = FinCat::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap();
        let n = nerve(&z2, 3);
        assert_eq!(n.level_sizes(), vec![1, 2, 4, 8]);
        assert!(validate(&n).is_empty());
        // nondegenerate chains avoid the identity
        assert_eq!(n.nondegenerate_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn faces_compose_inner_arrows() {
        let c = FinCat::ordinal(2);
        let n = nerve(&c, 2);
        let x = n.index_of(2, "0<=1|1<=2").unwrap();
        assert_eq!(n.id(1, n.face(2, 1, x)), "0<=2");
        assert_eq!(n.id(1, n.face(2, 0, x)), "1<=2");
        assert_eq!(n.id(1, n.face(2, 2, x)), "0<=1");
    }

    #[test]
    fn nerve_map_of_identity_is_identity() {
        let c = Arc::new(FinCat::ordinal(2));
        let n = Arc::new(nerve(&c, 3));
        let m = nerve_map(&CatFunctor::identity(c), n.clone(), n.clone()).unwrap();
        assert_eq!(m, SimplicialMap::identity(n));
    }
}
