use std::collections::HashMap;

use serde::Serialize;

use super::sparse::SparseMatrix;
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// Free abelian groups `C_0 … C_top` with boundaries; `boundary(n)` maps
/// `C_n → C_{n-1}` and `boundary(0)` is the zero map to the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    basis: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(basis: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Self {
        assert_eq!(basis.len(), boundaries.len(), "one boundary per degree");
        for (n, d) in boundaries.iter().enumerate() {
            assert_eq!(d.cols(), basis[n].len());
            assert_eq!(d.rows(), if n == 0 { 0 } else { basis[n - 1].len() });
        }
        ChainComplex { basis, boundaries }
    }

    /// Highest degree present, plus one.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.iter().all(Vec::is_empty)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, n: usize) -> &[String] {
        &self.basis[n]
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }

    /// The first degree `n` with `∂_{n-1} ∘ ∂_n ≠ 0`, if any.
    pub fn first_square_defect(&self) -> Option<usize> {
        (2..self.len()).find(|&n| match self.boundaries[n - 1].mul(&self.boundaries[n]) {
            Some(p) => !p.is_zero(),
            None => true,
        })
    }
}

/// Position of each nondegenerate `n`-cell in the chain basis.
pub(crate) struct CellBasis {
    pub cells: Vec<Vec<usize>>,
    pub position: Vec<HashMap<usize, usize>>,
}

impl CellBasis {
    pub fn of(x: &SimplicialSet) -> Self {
        let cells: Vec<Vec<usize>> = (0..=x.dim_bound()).map(|n| x.nondegenerate(n).collect()).collect();
        let position = cells.iter().map(|c| c.iter().enumerate().map(|(p, &x)| (x, p)).collect()).collect();
        CellBasis { cells, position }
    }
}

/// Normalized chains: nondegenerate cells up to the dimension bound, with
/// the alternating face sum and degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSet) -> ChainComplex {
    let basis = CellBasis::of(x);
    let mut boundaries = Vec::new();
    for n in 0..=x.dim_bound() {
        if n == 0 {
            boundaries.push(SparseMatrix::zeros(0, basis.cells[0].len()));
            continue;
        }
        let triples = basis.cells[n].iter().enumerate().flat_map(|(col, &c)| {
            let basis = &basis;
            (0..=n).filter_map(move |i| {
                let f = x.face(n, i, c);
                basis.position[n - 1].get(&f).map(|&row| (row, col, if i % 2 == 0 { 1 } else { -1 }))
            })
        });
        boundaries.push(SparseMatrix::from_triples(basis.cells[n - 1].len(), basis.cells[n].len(), triples));
    }
    let names = basis.cells.iter().enumerate().map(|(n, c)| c.iter().map(|&x0| x.id(n, x0).to_string()).collect()).collect();
    ChainComplex::new(names, boundaries)
}

/// The induced chain map in degree `n` (nondegenerate cells going to
/// degenerate ones are sent to zero).
pub(crate) fn chain_map_matrix(f: &SimplicialMap, n: usize, src: &CellBasis, dst: &CellBasis) -> SparseMatrix {
    let triples = src.cells[n]
        .iter()
        .enumerate()
        .filter_map(|(col, &c)| dst.position[n].get(&f.apply(n, c)).map(|&row| (row, col, 1)));
    SparseMatrix::from_triples(dst.cells[n].len(), src.cells[n].len(), triples)
}

/// The mapping cone of `f_*: N(X) → N(Y)` through degree `top`:
/// `Cone_n = N_{n-1}(X) ⊕ N_n(Y)`, `∂(x, y) = (−∂x, f x + ∂y)`.
/// Needs the bound of both sides to be at least `top`.
pub fn mapping_cone(f: &SimplicialMap, top: usize) -> ChainComplex {
    let (x, y) = (f.source(), f.target());
    assert!(x.dim_bound() >= top && y.dim_bound() >= top, "cone through degree {top} exceeds the bound");
    let (cx, cy) = (normalized_chains(x), normalized_chains(y));
    let (bx, by) = (CellBasis::of(x), CellBasis::of(y));
    let rank_x = |n: isize| if n < 0 { 0 } else { cx.rank(n as usize) };
    let mut basis = Vec::new();
    let mut boundaries = Vec::new();
    for n in 0..=top {
        let mut names: Vec<String> = Vec::new();
        if n > 0 {
            names.extend(cx.basis(n - 1).iter().map(|s| format!("x:{s}")));
        }
        names.extend(cy.basis(n).iter().map(|s| format!("y:{s}")));
        basis.push(names);
        if n == 0 {
            boundaries.push(SparseMatrix::zeros(0, cy.rank(0)));
            continue;
        }
        // rows: X_{n-2} then Y_{n-1}; columns: X_{n-1} then Y_n
        let (xr, xc) = (rank_x(n as isize - 2), cx.rank(n - 1));
        let mut triples: Vec<(usize, usize, i64)> = Vec::new();
        if n >= 2 {
            triples.extend(cx.boundary(n - 1).triples().map(|(i, j, v)| (i, j, -v)));
        }
        triples.extend(chain_map_matrix(f, n - 1, &bx, &by).triples().map(|(i, j, v)| (xr + i, j, v)));
        triples.extend(cy.boundary(n).triples().map(|(i, j, v)| (xr + i, xc + j, v)));
        boundaries.push(SparseMatrix::from_triples(xr + cy.rank(n - 1), xc + cy.rank(n), triples));
    }
    ChainComplex::new(basis, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn ranks_of_small_sets() {
        assert_eq!(normalized_chains(&simplex(0, 0).unwrap()).ranks(), vec![1]);
        assert_eq!(normalized_chains(&boundary(2, 2).unwrap()).ranks(), vec![3, 3, 0]);
        assert_eq!(normalized_chains(&boundary(2, 3).unwrap()).ranks(), vec![3, 3, 0, 0]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for n in 0..=4 {
            for x in [simplex(n, 5).unwrap(), boundary(n, 5).unwrap()] {
                assert_eq!(normalized_chains(&x).first_square_defect(), None);
            }
        }
    }

    #[test]
    fn cone_is_a_complex() {
        use std::sync::Arc;
        let x = Arc::new(boundary(2, 4).unwrap());
        let id = SimplicialMap::identity(x);
        assert_eq!(mapping_cone(&id, 4).first_square_defect(), None);
    }
}
