use std::sync::Arc;

use super::{ensure_valid, CondensationBimodule};
use crate::algebra::{find_unit, CondensationAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{rank, split_idempotent_in_order, IdempotentSplit, Matrix, SparseMatrix};

fn check_middle(m1: &CondensationBimodule, m2: &CondensationBimodule) -> Result<()> {
    if m1.right.same_structure(&m2.left) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "middle algebras differ: {:?} vs {:?}",
            m1.right.label(),
            m2.left.label()
        )))
    }
}

/// The condensation monad `ε = (id ⊗ lact₂)(rcoact₁ ⊗ id)` on `M₁ ⊗ M₂`.
pub fn tensor_epsilon(m1: &CondensationBimodule, m2: &CondensationBimodule) -> Result<Matrix> {
    check_middle(m1, m2)?;
    let left = SparseMatrix::identity(m1.dim).kron(&SparseMatrix::from_dense(&m2.lact));
    let right = SparseMatrix::from_dense(&m1.rcoact).kron(&SparseMatrix::identity(m2.dim));
    let eps = &left * &right;
    if &eps * &eps != eps {
        return Err(Error::internal("tensor ε is not idempotent"));
    }
    Ok(eps.to_dense())
}

/// The other restriction, `(ract₁ ⊗ id)(id ⊗ lcoact₂)`; equal to [`tensor_epsilon`]
/// for valid bimodules.
pub fn tensor_epsilon_alt(m1: &CondensationBimodule, m2: &CondensationBimodule) -> Result<Matrix> {
    check_middle(m1, m2)?;
    Ok(&m1.ract.kron(&Matrix::identity(m2.dim)) * &Matrix::identity(m1.dim).kron(&m2.lcoact))
}

/// A relative tensor product together with the splitting that realizes it.
#[derive(Clone, Debug)]
pub struct Composite {
    pub module: CondensationBimodule,
    /// Splitting of ε on `M₁ ⊗ M₂`: `f` projects onto the product, `g` includes it.
    pub split: IdempotentSplit,
}

/// `m₁ ⊗_E m₂` with the canonical image basis.
pub fn tensor_over(m1: &CondensationBimodule, m2: &CondensationBimodule) -> Result<Composite> {
    let order: Vec<usize> = (0..m1.dim * m2.dim).collect();
    tensor_over_in_order(m1, m2, &order)
}

/// `m₁ ⊗_E m₂`, choosing the image basis of ε by pivoting in `order`.
pub fn tensor_over_in_order(
    m1: &CondensationBimodule,
    m2: &CondensationBimodule,
    order: &[usize],
) -> Result<Composite> {
    let eps = tensor_epsilon(m1, m2)?;
    let split = split_idempotent_in_order(&eps, order)?;
    let sp = SparseMatrix::from_dense;
    let (f, g) = (sp(&split.f), sp(&split.g));
    let (a, b) = (m1.left.dim(), m2.right.dim());
    let id = SparseMatrix::identity;
    let (i1, i2, ia, ib) = (id(m1.dim), id(m2.dim), id(a), id(b));
    let lact = (&(&f * &sp(&m1.lact).kron(&i2)) * &ia.kron(&g)).to_dense();
    let ract = (&(&f * &i1.kron(&sp(&m2.ract))) * &g.kron(&ib)).to_dense();
    let lcoact = (&(&ia.kron(&f) * &sp(&m1.lcoact).kron(&i2)) * &g).to_dense();
    let rcoact = (&(&f.kron(&ib) * &i1.kron(&sp(&m2.rcoact))) * &g).to_dense();
    let module = CondensationBimodule::from_matrices(
        m1.left.clone(),
        m2.right.clone(),
        lact,
        ract,
        lcoact,
        rcoact,
    )?;
    ensure_valid(&module, "tensor_over")?;
    Ok(Composite { module, split })
}

/// Dimension of the classical relative tensor product over a unital middle
/// algebra: `M₁ ⊗ M₂` modulo `x·e ⊗ y − x ⊗ e·y`.
pub fn coequalizer_oracle(m1: &CondensationBimodule, m2: &CondensationBimodule) -> Result<usize> {
    check_middle(m1, m2)?;
    let e = &m1.right;
    let unit = find_unit(e)?.ok_or_else(|| {
        Error::precondition(format!("middle algebra {:?} is not unital", e.label()))
    })?;
    let u = Matrix::column_vector(unit);
    let (d1, d2) = (m1.dim, m2.dim);
    let (i1, i2) = (Matrix::identity(d1), Matrix::identity(d2));
    if &m1.ract * &i1.kron(&u) != i1 || &m2.lact * &u.kron(&i2) != i2 {
        return Err(Error::precondition(
            "unit of the middle algebra does not act as the identity",
        ));
    }
    let relations = &m1.ract.kron(&i2) - &i1.kron(&m2.lact);
    Ok(d1 * d2 - rank(&relations))
}

/// `A ⊗_A N ⊗_B B` for a plain associative bimodule `N` (actions only): splits
/// the product of the two commuting idempotents on `A ⊗ N ⊗ B` and equips the
/// image with the outer (co)actions of the regular bimodules.
pub fn induced_bimodule(
    left: Arc<CondensationAlgebra>,
    right: Arc<CondensationAlgebra>,
    lact: &Matrix,
    ract: &Matrix,
) -> Result<CondensationBimodule> {
    let (a, b, n) = (left.dim(), right.dim(), lact.rows());
    if lact.cols() != a * n || ract.rows() != n || ract.cols() != n * b {
        return Err(Error::input("induced_bimodule: action shapes do not match"));
    }
    let (ia, ib, in_) = (
        Matrix::identity(a),
        Matrix::identity(b),
        Matrix::identity(n),
    );
    let eps_l = &ia.kron(lact).kron(&ib) * &left.comult().kron(&in_).kron(&ib);
    let eps_r = &ia.kron(&ract.kron(&ib)) * &ia.kron(&in_.kron(right.comult()));
    let eps = &eps_l * &eps_r;
    if eps != &eps_r * &eps_l {
        return Err(Error::precondition("left and right actions do not commute"));
    }
    let order: Vec<usize> = (0..eps.rows()).collect();
    let split = split_idempotent_in_order(&eps, &order)?;
    let (f, g) = (&split.f, &split.g);
    let lact_t = &(f * &left.mult().kron(&in_).kron(&ib)) * &ia.kron(g);
    let lcoact_t = &(&ia.kron(f) * &left.comult().kron(&in_).kron(&ib)) * g;
    let ract_t = &(f * &ia.kron(&in_).kron(right.mult())) * &g.kron(&ib);
    let rcoact_t = &(&f.kron(&ib) * &ia.kron(&in_).kron(right.comult())) * g;
    let m = CondensationBimodule::from_matrices(left, right, lact_t, ract_t, lcoact_t, rcoact_t)?;
    ensure_valid(&m, "induced_bimodule")?;
    Ok(m)
}
