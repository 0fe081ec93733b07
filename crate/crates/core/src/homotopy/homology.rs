use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::chains::{normalized_chains, ChainComplex};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialSet;

/// A finitely generated abelian group `ℤ^betti ⊕ ⊕ ℤ/t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    pub betti: usize,
    /// Torsion coefficients, each dividing the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { betti: 0, torsion: Vec::new() }
    }

    pub fn free(betti: usize) -> Self {
        AbelianGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    /// `groups[i]` is `H_i`.
    pub groups: Vec<AbelianGroup>,
}

impl HomologyReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }

    pub fn is_acyclic_through(&self, k: usize) -> bool {
        self.groups.iter().take(k + 1).all(AbelianGroup::is_zero)
    }
}

/// `H_0 … H_k` of a chain complex that reaches degree `k + 1`.
pub fn complex_homology(c: &ChainComplex, k: usize) -> Result<HomologyReport> {
    if c.len() < k + 2 {
        return Err(Error::Bound { requested: k + 1, bound: c.len().saturating_sub(1) });
    }
    let factors: Vec<Vec<BigInt>> = (0..=k + 1).map(|n| c.boundary(n).invariant_factors()).collect();
    let groups = (0..=k)
        .map(|i| {
            let betti = c.rank(i) - factors[i].len() - factors[i + 1].len();
            let torsion = factors[i + 1].iter().filter(|t| !t.is_one()).cloned().collect();
            AbelianGroup { betti, torsion }
        })
        .collect();
    Ok(HomologyReport { groups })
}

/// Integral homology `H_0 … H_k`; needs the dimension bound to be at least `k + 1`.
pub fn homology(x: &SimplicialSet, k: usize) -> Result<HomologyReport> {
    if x.dim_bound() < k + 1 {
        return Err(Error::Bound { requested: k + 1, bound: x.dim_bound() });
    }
    complex_homology(&normalized_chains(x), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn boundary_of_tetrahedron() {
        let h = homology(&boundary(3, 3).unwrap(), 2).unwrap();
        assert_eq!(h.groups, vec![AbelianGroup::free(1), AbelianGroup::zero(), AbelianGroup::free(1)]);
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..=4 {
            let h = homology(&simplex(n, 4).unwrap(), 3).unwrap();
            assert_eq!(h.groups[0], AbelianGroup::free(1));
            assert!(h.groups[1..].iter().all(AbelianGroup::is_zero));
        }
    }

    #[test]
    fn empty_set_has_no_homology() {
        let h = homology(&SimplicialSet::empty(3), 2).unwrap();
        assert!(h.groups.iter().all(AbelianGroup::is_zero));
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(homology(&simplex(1, 2).unwrap(), 2), Err(Error::Bound { requested: 3, bound: 2 }));
    }

    #[test]
    fn display() {
        let g = AbelianGroup { betti: 2, torsion: vec![BigInt::from(2)] };
        assert_eq!(g.to_string(), "Z^2 + Z/2");
        assert_eq!(AbelianGroup::zero().to_string(), "0");
    }
}
