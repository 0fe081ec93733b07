use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::Result;

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    /// The nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Re-checks the certificate against `m` in arbitrary precision.
    pub fn verify(&self, m: &Matrix<T>) -> bool {
        let (d, u, v, m) = (self.d.to_big(), self.u.to_big(), self.v.to_big(), m.to_big());
        let Ok(umv) = u.mul(&m).and_then(|um| um.mul(&v)) else { return false };
        if umv != d || !d.is_diagonal() || !u.is_unimodular() || !v.is_unimodular() {
            return false;
        }
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).collect();
        diag.iter().all(|x| *x >= BigInt::zero())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
    }

    fn to_big(&self) -> SmithForm<BigInt> {
        SmithForm { d: self.d.to_big(), u: self.u.to_big(), v: self.v.to_big() }
    }
}

/// Smith normal form with certificates. Runs in `i64` with checked
/// arithmetic and restarts in arbitrary precision on overflow.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> SmithForm<BigInt> {
    let small: Option<Vec<i64>> = m.to_rows().iter().flatten().map(<i64 as Scalar>::from_big).collect();
    if let Some(values) = small {
        let rows = (0..m.rows()).map(|i| values[i * m.cols()..(i + 1) * m.cols()].to_vec()).collect();
        let mm = Matrix::from_rows(rows).expect("rectangular");
        let mm = if m.rows() == 0 { Matrix::zeros(0, m.cols()) } else { mm };
        if let Ok(f) = smith_generic(&mm) {
            return f.to_big();
        }
    }
    smith_generic(m).expect("arbitrary precision cannot overflow")
}

/// The certified reduction over any exact scalar type.
pub fn smith_generic<T: Scalar>(m: &Matrix<T>) -> Result<SmithForm<T>> {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(r);
    let mut v = Matrix::identity(c);
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = smallest_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut moved = false;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).clone() / d.get(t, t).clone();
                d.add_row_multiple(i, t, &-q.clone())?;
                u.add_row_multiple(i, t, &-q)?;
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    moved = true;
                }
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).clone() / d.get(t, t).clone();
                d.add_col_multiple(j, t, &-q.clone())?;
                v.add_col_multiple(j, t, &-q)?;
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    moved = true;
                }
            }
            if moved {
                continue;
            }
            // the pivot must divide the whole trailing block
            let p = d.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(d.get(i, j).clone() % p.clone()).is_zero()));
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &T::one())?;
                    u.add_row_multiple(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SmithForm { d, u, v })
}

fn smallest_entry<T: Scalar>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|b| a < b.2) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::error::Error;

    fn big(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = big(vec![vec![2, 0], vec![0, 3]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.d, big(vec![vec![1, 0], vec![0, 6]]));
        assert!(f.verify(&m));
    }

    #[test]
    fn rectangular_and_zero() {
        for rows in [vec![vec![0, 0, 0]], vec![vec![4, 6, 8], vec![6, 9, 12]], vec![vec![1], vec![2], vec![3]]] {
            let m = big(rows);
            let f = smith_normal_form(&m);
            assert!(f.verify(&m), "{m:?}");
        }
        let m = big(vec![vec![4, 6, 8], vec![6, 9, 12]]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![BigInt::from(1)]);
        let m = big(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let x = i64::MAX / 2;
        let m = big(vec![vec![x, x - 1], vec![x - 3, x]]);
        let f = smith_normal_form(&m);
        assert!(f.verify(&m));
        let det = m.determinant().unwrap();
        let prod: BigInt = f.invariant_factors().iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn fixed_width_reports_overflow() {
        let m = Matrix::from_rows(vec![vec![i64::MAX, 1], vec![2, 3]]).unwrap();
        assert_eq!(m.mul(&m), Err(Error::Overflow));
    }

    #[test]
    fn empty_matrix() {
        let m: Matrix<BigInt> = Matrix::zeros(0, 3);
        let f = smith_normal_form(&m);
        assert!(f.invariant_factors().is_empty());
        assert!(f.verify(&m));
    }
}
