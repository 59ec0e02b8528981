//! Exact linear algebra over ℚ: dense matrices, echelon forms, idempotent
//! splitting, and sparse operators on tensor-product spaces.

mod matrix;
mod reduce;
mod scalar;
mod sparse;

pub use matrix::Matrix;
pub use reduce::{
    column_space, column_space_in_order, inverse, kernel_basis, rank, rref, rref_in_order, solve,
    split_idempotent, split_idempotent_in_order, Echelon, IdempotentSplit,
};
pub use scalar::Scalar;
pub use sparse::{common_image, ProductSpace, SparseEchelon, SparseMatrix, SparseVec};

/// Intersection of the column spans of `a` and `b` (same row count), as a column basis.
pub fn intersect_spans(a: &Matrix, b: &Matrix) -> Matrix {
    // x in span(a) ∩ span(b)  <=>  x = a·u = b·v  <=>  [a | -b]·(u;v) = 0
    let stacked = a.hstack(&-b);
    let ker = kernel_basis(&stacked);
    let u = ker.block(0, 0, a.cols(), ker.cols());
    column_space(&(a * &u))
}

/// The symmetry `V ⊗ W → W ⊗ V` for `dim V = n1`, `dim W = n2`.
pub fn swap_matrix(n1: usize, n2: usize) -> Matrix {
    let mut s = Matrix::zeros(n1 * n2, n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            s[(j * n1 + i, i * n2 + j)] = Scalar::one();
        }
    }
    s
}

/// `a ⊗ b ⊗ c`.
pub fn kron3(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    a.kron(b).kron(c)
}
