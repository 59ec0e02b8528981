//! ΣVect: condensation algebras as objects, condensation bimodules as
//! 1-morphisms. Unitalization, Morita comparison, condensates of monads inside
//! ΣVect and dual objects.

mod condense;
mod dual_object;
mod morita;
mod unitalize;

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::algebra::{check_condensation_algebra, CondensationAlgebra};
use crate::anchors::anchor;
use crate::bimodule::{regular_bimodule, tensor_over, CondensationBimodule, Intertwiner};
use crate::error::{Error, Result};

pub use condense::{condense_in_sigma, CondenseReport, MonadData};
pub use dual_object::{
    dual_object, dual_object_dense, dual_object_factorized, DualObject, ZigzagPath,
};
pub use morita::{
    decompose_regular, morita_equivalent, morita_from_profiles, morita_profile, MoritaProfile,
    MoritaVerdict, SimpleClass,
};
pub use unitalize::{coaction_solution_dims, unitalize, Unitalization};

/// An object of ΣVect: a validated condensation algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaObject {
    algebra: Arc<CondensationAlgebra>,
}

impl SigmaObject {
    pub fn new(algebra: CondensationAlgebra) -> Result<Self> {
        Self::from_arc(Arc::new(algebra))
    }

    pub fn from_arc(algebra: Arc<CondensationAlgebra>) -> Result<Self> {
        let report = check_condensation_algebra(&algebra);
        if let Some(c) = [
            &report.specialness,
            &report.associativity,
            &report.coassociativity,
            &report.frobenius,
        ]
        .into_iter()
        .find(|c| !c.passed)
        {
            return Err(Error::precondition(format!(
                "{:?} is not a condensation algebra: {}",
                algebra.label(),
                c.witness.as_ref().map_or("", |w| w.summary.as_str())
            )));
        }
        Ok(SigmaObject { algebra })
    }

    pub fn algebra(&self) -> &Arc<CondensationAlgebra> {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        self.algebra.label()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

impl Serialize for SigmaObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.algebra.serialize(s)
    }
}

/// Bimodules `m` over `(A, B)` and `n` over `(B, A)` with invertible
/// intertwiners `m ⊗_B n ≅ A` and `n ⊗_A m ≅ B`.
#[derive(Clone, Debug, Serialize)]
pub struct MoritaWitness {
    pub m: CondensationBimodule,
    pub n: CondensationBimodule,
    pub iso1: Intertwiner,
    pub iso2: Intertwiner,
}

impl MoritaWitness {
    /// Builds both composites and asks for isomorphisms with the regular bimodules.
    pub fn construct(m: CondensationBimodule, n: CondensationBimodule) -> Result<Self> {
        let iso = |x: &CondensationBimodule, y: &CondensationBimodule| -> Result<Intertwiner> {
            let t = tensor_over(x, y)?.module;
            let reg = regular_bimodule(x.left());
            let v = crate::bimodule::are_isomorphic(&t, &reg)?;
            v.witness.ok_or_else(|| {
                Error::internal(format!(
                    "composite over {:?} is not isomorphic to the regular bimodule (Hom dims {:?})",
                    x.left().label(),
                    v.hom_dims
                ))
            })
        };
        let iso1 = iso(&m, &n)?;
        let iso2 = iso(&n, &m)?;
        Ok(MoritaWitness { m, n, iso1, iso2 })
    }

    /// Recomputes both composites and re-checks the intertwiners exactly.
    pub fn verify(&self) -> bool {
        let side = |x: &CondensationBimodule, y: &CondensationBimodule, iso: &Intertwiner| {
            let Ok(t) = tensor_over(x, y) else {
                return false;
            };
            t.module == iso.source
                && iso.target == regular_bimodule(x.left())
                && iso.verify()
                && iso.is_invertible()
        };
        side(&self.m, &self.n, &self.iso1) && side(&self.n, &self.m, &self.iso2)
    }
}

/// The machine-readable verdict emitted for every ΣVect operation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub op: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub paper_ref: String,
}

impl VerdictReport {
    pub fn new(op: &str, verdict: bool, witness: Option<serde_json::Value>) -> Self {
        VerdictReport {
            op: op.to_string(),
            verdict,
            witness,
            paper_ref: anchor(op).to_string(),
        }
    }
}
