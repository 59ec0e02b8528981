use serde::Serialize;

use super::SigmaObject;
use crate::algebra::{check_condensation_algebra, AxiomReport, CondensationAlgebra};
use crate::bimodule::{check_condensation_bimodule, tensor_epsilon, CondensationBimodule};
use crate::check::{compare_sparse, Check};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseMatrix};

/// A bimodule `E` over `(e, e)` with a multiplication `E⊗E → E` and
/// comultiplication `E → E⊗E` that should descend to `E ⊗_e E`.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub bimodule: CondensationBimodule,
    pub mult: Matrix,
    pub comult: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CondenseReport {
    pub bimodule: Check,
    /// `mult∘ε = mult` and `ε∘comult = comult`.
    pub balance: Check,
    /// Both structure maps commute with the outer actions.
    pub commutation: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<SigmaObject>,
}

impl CondenseReport {
    pub fn passed(&self) -> bool {
        self.object.is_some()
    }
}

/// The condensate of a monad `E` on `e` inside ΣVect: the underlying space of
/// `E` with its own structure maps, once they are shown to be balanced and
/// compatible with the actions of `e`.
pub fn condense_in_sigma(e: &SigmaObject, data: &MonadData) -> Result<CondenseReport> {
    let m = &data.bimodule;
    if !(m.left().same_structure(e.algebra()) && m.right().same_structure(e.algebra())) {
        return Err(Error::input(
            "condense_in_sigma: E must be a bimodule over (e, e)",
        ));
    }
    let (a, d) = (e.dim(), m.dim());
    if data.mult.rows() != d
        || data.mult.cols() != d * d
        || data.comult.rows() != d * d
        || data.comult.cols() != d
    {
        return Err(Error::input(format!(
            "condense_in_sigma: structure maps must be {d}x{} and {}x{d}",
            d * d,
            d * d
        )));
    }
    let bimodule = match check_condensation_bimodule(m).first_failure() {
        Some(c) => c.clone(),
        None => Check::pass(),
    };
    if !bimodule.passed {
        return Ok(CondenseReport {
            bimodule,
            balance: Check::pass(),
            commutation: Check::pass(),
            axioms: None,
            object: None,
        });
    }
    let sp = SparseMatrix::from_dense;
    let eps = sp(&tensor_epsilon(m, m)?);
    let (mu, delta) = (sp(&data.mult), sp(&data.comult));
    let balance = compare_sparse("mult∘ε", "mult", &(&mu * &eps), &mu, &[d], &[d, d]).and(|| {
        compare_sparse(
            "ε∘comult",
            "comult",
            &(&eps * &delta),
            &delta,
            &[d, d],
            &[d],
        )
    });

    let (ia, id) = (SparseMatrix::identity(a), SparseMatrix::identity(d));
    let (l, r) = (sp(m.lact()), sp(m.ract()));
    let commutation = compare_sparse(
        "mult(lact⊗id)",
        "lact(id⊗mult)",
        &(&mu * &l.kron(&id)),
        &(&l * &ia.kron(&mu)),
        &[d],
        &[a, d, d],
    )
    .and(|| {
        compare_sparse(
            "mult(id⊗ract)",
            "ract(mult⊗id)",
            &(&mu * &id.kron(&r)),
            &(&r * &mu.kron(&ia)),
            &[d],
            &[d, d, a],
        )
    })
    .and(|| {
        compare_sparse(
            "comult∘lact",
            "(lact⊗id)(id⊗comult)",
            &(&delta * &l),
            &(&l.kron(&id) * &ia.kron(&delta)),
            &[d, d],
            &[a, d],
        )
    })
    .and(|| {
        compare_sparse(
            "comult∘ract",
            "(id⊗ract)(comult⊗id)",
            &(&delta * &r),
            &(&id.kron(&r) * &delta.kron(&ia)),
            &[d, d],
            &[d, a],
        )
    });
    if !(balance.passed && commutation.passed) {
        return Ok(CondenseReport {
            bimodule,
            balance,
            commutation,
            axioms: None,
            object: None,
        });
    }
    let label = format!("{}⋉{}", e.label(), m.dim());
    let alg = CondensationAlgebra::from_matrices(label, data.mult.clone(), data.comult.clone())?;
    let axioms = check_condensation_algebra(&alg);
    let object = if axioms.passed() {
        Some(SigmaObject::new(alg)?)
    } else {
        None
    };
    Ok(CondenseReport {
        bimodule,
        balance,
        commutation,
        axioms: Some(axioms),
        object,
    })
}
