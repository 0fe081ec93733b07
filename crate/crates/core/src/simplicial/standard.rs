//! Standard simplices, their boundaries and horns.

use serde::{Deserialize, Serialize};

use super::{digits, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Standard,
    Boundary,
    Horn,
}

/// All monotone maps `[m] → [n]` as value lists, in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

/// Coface `δ_i: [n-1] → [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|v| if v < i { v } else { v + 1 }).collect()
}

/// Codegeneracy `σ_i: [n+1] → [n]` hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect()
}

/// Composite `psi ∘ phi` of value lists.
pub fn compose_monotone(psi: &[usize], phi: &[usize]) -> Vec<usize> {
    phi.iter().map(|&v| psi[v]).collect()
}

/// `Δ_n`, `∂Δ_n` or the horn `Λ^n_k`, truncated at `dim_bound`. Cells are
/// monotone maps `[m] → [n]` written as digit strings.
pub fn generate_cell(kind: CellKind, n: usize, k: Option<usize>, dim_bound: usize) -> Result<SimplicialSet> {
    if n > dim_bound {
        return Err(Error::Bound { requested: n, bound: dim_bound });
    }
    let keep: Box<dyn Fn(&[usize]) -> bool> = match kind {
        CellKind::Standard => Box::new(|_| true),
        CellKind::Boundary => Box::new(move |phi: &[usize]| !(0..=n).all(|v| phi.contains(&v))),
        CellKind::Horn => {
            let k = k.ok_or_else(|| Error::Parameter("horn requires k".into()))?;
            if k > n {
                return Err(Error::Parameter(format!("horn index {k} exceeds {n}")));
            }
            Box::new(move |phi: &[usize]| !(0..=n).all(|v| v == k || phi.contains(&v)))
        }
    };
    let levels = (0..=dim_bound)
        .map(|m| monotone_maps(m, n).into_iter().filter(|phi| keep(phi)).collect())
        .collect();
    SimplicialSet::from_keys(
        dim_bound,
        levels,
        |_, phi: &Vec<usize>| digits(phi),
        |_, i, phi| {
            let mut f = phi.clone();
            f.remove(i);
            f
        },
        |_, i, phi| {
            let mut s = phi.clone();
            s.insert(i, phi[i]);
            s
        },
    )
}

pub fn simplex(n: usize, dim_bound: usize) -> Result<SimplicialSet> {
    generate_cell(CellKind::Standard, n, None, dim_bound)
}

pub fn boundary(n: usize, dim_bound: usize) -> Result<SimplicialSet> {
    generate_cell(CellKind::Boundary, n, None, dim_bound)
}

pub fn horn(n: usize, k: usize, dim_bound: usize) -> Result<SimplicialSet> {
    generate_cell(CellKind::Horn, n, Some(k), dim_bound)
}

/// Number of monotone maps `[m] → [n]`, i.e. `C(m + n + 1, m + 1)`.
pub fn monotone_count(m: usize, n: usize) -> usize {
    let (top, k) = (m + n + 1, m + 1);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (top - j) as u128 / (j + 1) as u128;
    }
    acc as usize
}
