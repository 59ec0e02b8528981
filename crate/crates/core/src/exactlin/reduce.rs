//! Exact Gauss–Jordan elimination and the routines built on it.
//!
//! Pivoting is fixed: scan columns left to right (or in a caller-supplied
//! order) and take the topmost remaining row with a nonzero entry. Free
//! variables are always set to zero.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::par::if_rayon;

/// Reduced row echelon form together with its pivot columns (in pivot-row order).
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row reduction with the canonical left-to-right column scan.
pub fn rref(m: &Matrix) -> Echelon {
    let order: Vec<usize> = (0..m.cols()).collect();
    rref_in_order(m, &order)
}

/// Row reduction that visits candidate pivot columns in `order`.
///
/// `order` must be a permutation of a subset of the column indices; columns
/// not listed never become pivots.
pub fn rref_in_order(m: &Matrix, order: &[usize]) -> Echelon {
    let (rows, cols) = (m.rows(), m.cols());
    let mut data: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for &c in order {
        if next_row == rows {
            break;
        }
        let Some(found) = (next_row..rows).find(|&r| !data[r][c].is_zero()) else {
            continue;
        };
        data.swap(next_row, found);
        let inv = data[next_row][c].recip();
        if !inv.is_one() {
            for x in data[next_row].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = data[next_row].clone();
        let pr = next_row;
        let eliminate = |(r, row): (usize, &mut Vec<Scalar>)| {
            if r == pr || row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        };
        if_rayon!(
            data.par_iter_mut().enumerate().for_each(eliminate),
            data.iter_mut().enumerate().for_each(eliminate)
        );
        pivots.push(c);
        next_row += 1;
    }
    let entries = data.into_iter().flatten().collect();
    let reduced = Matrix::new(rows, cols, entries).expect("shape preserved");
    Echelon { reduced, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != b.rows() {
        return Err(Error::input(format!(
            "solve: lhs has {} rows, rhs has {}",
            a.rows(),
            b.rows()
        )));
    }
    let aug = a.hstack(b);
    let order: Vec<usize> = (0..a.cols()).collect();
    let ech = rref_in_order(&aug, &order);
    let r = ech.rank();
    for i in r..aug.rows() {
        if (a.cols()..aug.cols()).any(|j| !ech.reduced[(i, j)].is_zero()) {
            return Ok(None);
        }
    }
    let mut x = Matrix::zeros(a.cols(), b.cols());
    for (i, &c) in ech.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(c, j)] = ech.reduced[(i, a.cols() + j)].clone();
        }
    }
    Ok(Some(x))
}

/// Columns form a basis of `{x : m·x = 0}`, one per free column in increasing order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let ech = rref(m);
    kernel_from_echelon(&ech, m.cols())
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Matrix {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Scalar::one();
        for (i, &p) in ech.pivots.iter().enumerate() {
            let v = &ech.reduced[(i, f)];
            if !v.is_zero() {
                basis[(p, k)] = -v;
            }
        }
    }
    basis
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let x = solve(m, &Matrix::identity(n)).ok()??;
    (rank(m) == n).then_some(x)
}

/// Canonical basis of the column space: the nonzero rows of `rref(mᵀ)`, as columns.
pub fn column_space(m: &Matrix) -> Matrix {
    let t = m.transpose();
    let order: Vec<usize> = (0..t.cols()).collect();
    column_space_in_order(m, &order)
}

/// Column-space basis whose pivots are chosen by visiting coordinates in `order`.
pub fn column_space_in_order(m: &Matrix, order: &[usize]) -> Matrix {
    let ech = rref_in_order(&m.transpose(), order);
    let r = ech.rank();
    ech.reduced.block(0, 0, r, m.rows()).transpose()
}

/// A splitting `p = g·f`, `f·g = id` of an exact idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSplit {
    pub p: Matrix,
    /// Surjection onto the image, `rank × n`.
    pub f: Matrix,
    /// Injection of the image, `n × rank`.
    pub g: Matrix,
}

impl IdempotentSplit {
    pub fn rank(&self) -> usize {
        self.f.rows()
    }

    /// Re-checks all three invariants exactly.
    pub fn verify(&self) -> bool {
        let r = self.rank();
        &self.p * &self.p == self.p
            && &self.f * &self.g == Matrix::identity(r)
            && &self.g * &self.f == self.p
    }
}

/// Splits an exact idempotent with the canonical image basis.
pub fn split_idempotent(p: &Matrix) -> Result<IdempotentSplit> {
    let order: Vec<usize> = (0..p.rows()).collect();
    split_idempotent_in_order(p, &order)
}

/// Splits `p`, choosing the image basis by pivoting over coordinates in `order`
/// (a permutation of `0..n`). Different orders give different, isomorphic splittings.
pub fn split_idempotent_in_order(p: &Matrix, order: &[usize]) -> Result<IdempotentSplit> {
    if !p.is_square() {
        return Err(Error::precondition(format!(
            "split_idempotent: {}x{} is not square",
            p.rows(),
            p.cols()
        )));
    }
    let defect = &(p * p) - p;
    let nnz = defect.nonzero_count();
    if nnz != 0 {
        return Err(Error::precondition(format!(
            "split_idempotent: not idempotent, p^2 - p has {nnz} nonzero entries"
        )));
    }
    let g = column_space_in_order(p, order);
    // Every column of p lies in span(g), so g·f = p is consistent and unique.
    let f = solve(&g, p)?.ok_or_else(|| Error::internal("image basis does not span p"))?;
    let split = IdempotentSplit { p: p.clone(), f, g };
    debug_assert!(split.verify());
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 5)), 0);
        assert_eq!(rank(&Matrix::from_ints(&[[1, 2], [2, 4]])), 1);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(&[[3, 1], [-2, 7]]);
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap().unwrap(), b);

        let x = solve(&Matrix::from_ints(&[[1, 1]]), &Matrix::from_ints(&[[2]]))
            .unwrap()
            .unwrap();
        assert_eq!(x, Matrix::from_ints(&[[2], [0]]));

        let none = solve(
            &Matrix::from_ints(&[[1], [0]]),
            &Matrix::from_ints(&[[0], [1]]),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn solve_rejects_row_mismatch() {
        let err = solve(&Matrix::identity(2), &Matrix::zeros(3, 1)).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).cols(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)), Matrix::identity(3));
        let k = kernel_basis(&Matrix::from_ints(&[[1, 2], [2, 4]]));
        assert_eq!(k, Matrix::from_ints(&[[-2], [1]]));
    }

    #[test]
    fn split_examples() {
        let s = split_idempotent(&Matrix::from_ints(&[[1, 0], [0, 0]])).unwrap();
        assert_eq!(s.f, Matrix::from_ints(&[[1, 0]]));
        assert_eq!(s.g, Matrix::from_ints(&[[1], [0]]));

        let s = split_idempotent(&Matrix::identity(3)).unwrap();
        assert_eq!(s.f, Matrix::identity(3));
        assert_eq!(s.g, Matrix::identity(3));

        let half = q(1, 2);
        let p = Matrix::new(
            2,
            2,
            vec![half.clone(), half.clone(), half.clone(), half.clone()],
        )
        .unwrap();
        let s = split_idempotent(&p).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.g, Matrix::from_ints(&[[1], [1]]));
        assert_eq!(s.f, Matrix::new(1, 2, vec![half.clone(), half]).unwrap());
        assert!(s.verify());
    }

    #[test]
    fn split_reports_defect() {
        let err = split_idempotent(&Matrix::from_ints(&[[2, 0], [0, 1]])).unwrap_err();
        assert_eq!(
            err,
            Error::precondition("split_idempotent: not idempotent, p^2 - p has 1 nonzero entries")
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_ints(&[[2, 1], [1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(inverse(&Matrix::from_ints(&[[1, 2], [2, 4]])).is_none());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            Matrix::identity(2).kron(&Matrix::identity(3)),
            Matrix::identity(6)
        );
        let m = Matrix::from_ints(&[[1, -2], [0, 5]]);
        assert_eq!(
            Matrix::from_ints(&[[2]]).kron(&m),
            m.scale(&Scalar::from_int(2))
        );
        let k = Matrix::from_ints(&[[0, 1], [0, 0]]).kron(&Matrix::identity(2));
        assert_eq!(k.nonzero_count(), 2);
        assert!(k[(0, 2)].is_one() && k[(1, 3)].is_one());
    }
}
