use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::smith::smith_generic;
use crate::error::{Error, Result};

/// A column-sparse integer matrix; `cols[j]` lists `(row, value)` pairs
/// sorted by row with no zero values.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from unsorted `(row, col, value)` triples, summing repeats.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (i, j, v) in triples {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}×{cols}");
            *acc[j].entry(i).or_insert(0) += v;
        }
        let cols = acc.into_iter().map(|c| c.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Matrix<BigInt> {
        let entries = self.triples().map(|(i, j, v)| (i, j, BigInt::from(v)));
        Matrix::from_entries(self.rows, self.cols(), entries).expect("no overflow in arbitrary precision")
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    /// `self · other`, or `None` on `i64` overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let mut cols = Vec::with_capacity(other.cols());
        for c in &other.cols {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in c {
                for &(i, a) in &self.cols[k] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            cols.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        Some(SparseMatrix { rows: self.rows, cols })
    }

    /// Nonzero Smith invariants (a divisibility chain, ones first).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        match eliminate::<i64>(self) {
            Ok(f) => f.into_iter().map(BigInt::from).collect(),
            Err(_) => eliminate::<BigInt>(self).expect("arbitrary precision cannot overflow"),
        }
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Pivots on unit entries (least fill first), which leaves the Smith
/// invariants of the rest unchanged, then finishes the residue densely.
fn eliminate<T: Scalar>(m: &SparseMatrix) -> Result<Vec<T>> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, j, v) in m.triples() {
        rows[i].insert(j, T::from_i64(v).ok_or(Error::Overflow)?);
        col_rows[j].insert(i);
    }
    let mut units = 0;
    while let Some((r, c)) = unit_pivot(&rows, &col_rows) {
        let pivot_row = std::mem::take(&mut rows[r]);
        let u = pivot_row[&c].clone();
        for &c2 in pivot_row.keys() {
            col_rows[c2].remove(&r);
        }
        let others: Vec<usize> = col_rows[c].iter().copied().collect();
        for r2 in others {
            let factor = rows[r2][&c].clone() * u.clone();
            for (&c2, v) in &pivot_row {
                let cur = rows[r2].get(&c2).cloned().unwrap_or_else(T::zero);
                let next = cur.checked_sub(&factor.checked_mul(v).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                if next.is_zero() {
                    rows[r2].remove(&c2);
                    col_rows[c2].remove(&r2);
                } else {
                    rows[r2].insert(c2, next);
                    col_rows[c2].insert(r2);
                }
            }
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&j| !col_rows[j].is_empty()).collect();
    let mut factors = vec![T::one(); units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
        let mut dense = Matrix::zeros(live_rows.len(), live_cols.len());
        for (p, &i) in live_rows.iter().enumerate() {
            for (j, v) in &rows[i] {
                dense.set(p, col_pos[j], v.clone());
            }
        }
        factors.extend(smith_generic(&dense)?.invariant_factors());
    }
    Ok(factors)
}

fn unit_pivot<T: Scalar>(rows: &[BTreeMap<usize, T>], col_rows: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (r, row) in rows.iter().enumerate() {
        for (&c, v) in row {
            if !v.abs().is_one() {
                continue;
            }
            let cost = (row.len() - 1) * (col_rows[c].len() - 1);
            if best.is_none_or(|b| cost < b.2) {
                best = Some((r, c, cost));
                if cost == 0 {
                    return Some((r, c));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::smith::smith_normal_form;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_dense_smith(rows in 0usize..6, cols in 0usize..6, seed in proptest::collection::vec(-3i64..=3, 36)) {
            let m = SparseMatrix::from_triples(rows, cols, (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, seed[i * 6 + j])));
            let dense = smith_normal_form(&m.to_dense());
            prop_assert!(dense.verify(&m.to_dense()));
            prop_assert_eq!(m.invariant_factors(), dense.invariant_factors());
        }
    }

    #[test]
    fn product_of_sparse_matrices() {
        let a = SparseMatrix::from_triples(2, 2, [(0, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let b = SparseMatrix::from_triples(2, 1, [(0, 0, 1), (1, 0, -1)]);
        assert_eq!(a.mul(&b).unwrap(), SparseMatrix::from_triples(2, 1, [(1, 0, -1)]));
    }
}
