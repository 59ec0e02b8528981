//! Commuting-projector chains: sites carry a condensation algebra `e`, and each
//! bond `(i, i+1)` carries the projector `Δ∘m`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{center, find_unit, CondensationAlgebra};
use crate::check::Witness;
use crate::error::{Error, Result};
use crate::exactlin::{common_image, Matrix, ProductSpace, SparseEchelon, SparseMatrix, SparseVec};
use crate::par::if_rayon;

pub const DEFAULT_DIM_CAP: u128 = 10_000;
pub const DIM_CAP_VAR: &str = "CONDENSATE_DIM_CAP";

/// The cap from `CONDENSATE_DIM_CAP`, or [`DEFAULT_DIM_CAP`] when unset.
pub fn dim_cap_from_env() -> Result<u128> {
    match std::env::var(DIM_CAP_VAR) {
        Ok(s) => s
            .trim()
            .parse::<u128>()
            .map_err(|_| Error::input(format!("{DIM_CAP_VAR}={s:?} is not a nonnegative integer"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DIM_CAP),
        Err(e) => Err(Error::input(format!("{DIM_CAP_VAR}: {e}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Clone, Debug)]
pub struct ChainSpec {
    algebra: CondensationAlgebra,
    length: usize,
    boundary: Boundary,
    cap: u128,
}

impl ChainSpec {
    /// A chain with the default cap; use [`ChainSpec::with_cap`] to override.
    pub fn new(algebra: CondensationAlgebra, length: usize, boundary: Boundary) -> Result<Self> {
        if length == 0 {
            return Err(Error::input("chain length must be at least 1"));
        }
        if boundary == Boundary::Periodic && length < 2 {
            return Err(Error::input("a periodic chain needs at least 2 sites"));
        }
        Ok(ChainSpec {
            algebra,
            length,
            boundary,
            cap: DEFAULT_DIM_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn algebra(&self) -> &CondensationAlgebra {
        &self.algebra
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// `(dim e)^n`, saturating.
    pub fn space_dim(&self) -> u128 {
        let d = self.algebra.dim() as u128;
        (0..self.length).fold(1u128, |acc, _| acc.saturating_mul(d))
    }

    fn checked_dim(&self) -> Result<usize> {
        let required = self.space_dim();
        if required > self.cap {
            return Err(Error::Resource {
                required,
                cap: self.cap,
            });
        }
        usize::try_from(required).map_err(|_| Error::Resource {
            required,
            cap: self.cap,
        })
    }

    fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.length;
        let mut bonds: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic {
            bonds.push((n - 1, 0));
        }
        bonds
    }

    fn space(&self) -> ProductSpace {
        ProductSpace::new(&vec![self.algebra.dim(); self.length])
    }
}

/// One projector per bond: `(i, i+1)` for `i < n-1`, plus `(n-1, 0)` when periodic.
pub fn build_projectors(spec: &ChainSpec) -> Result<Vec<SparseMatrix>> {
    spec.checked_dim()?;
    let local = SparseMatrix::from_dense(&(spec.algebra.comult() * spec.algebra.mult()));
    let space = spec.space();
    Ok(spec
        .bonds()
        .iter()
        .map(|&(i, j)| space.embed(&[i, j], &local))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingVerdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Checks `P_i P_j = P_j P_i` for every pair; the first failing pair is the
/// lexicographically smallest `(i, j)`.
pub fn verify_commuting(projs: &[SparseMatrix]) -> CommutingVerdict {
    let pairs: Vec<(usize, usize)> = (0..projs.len())
        .flat_map(|i| (i + 1..projs.len()).map(move |j| (i, j)))
        .collect();
    let test = |&(i, j): &(usize, usize)| {
        let (a, b) = (&projs[i], &projs[j]);
        a.mul(b).first_difference(&b.mul(a)).map(|d| ((i, j), d))
    };
    let failures: Vec<_> = if_rayon!(
        pairs.par_iter().map(test).collect(),
        pairs.iter().map(test).collect()
    );
    match failures.into_iter().flatten().next() {
        None => CommutingVerdict {
            passed: true,
            first_failing_pair: None,
            witness: None,
        },
        Some(((i, j), (r, c, lhs, rhs))) => {
            let summary = format!("P{i}·P{j} ≠ P{j}·P{i} at ({r}, {c}): {lhs} vs {rhs}");
            CommutingVerdict {
                passed: false,
                first_failing_pair: Some((i, j)),
                witness: Some(Witness {
                    indices: vec![r, c],
                    lhs,
                    rhs,
                    summary,
                }),
            }
        }
    }
}

/// `P_{order[k-1]} ⋯ P_{order[0]}` as a sparse matrix.
pub fn ordered_product(projs: &[SparseMatrix], order: &[usize], n: usize) -> SparseMatrix {
    order
        .iter()
        .fold(SparseMatrix::identity(n), |acc, &k| projs[k].mul(&acc))
}

/// Rank of a sparse matrix, by inserting its columns into an echelon basis.
pub fn sparse_rank(m: &SparseMatrix) -> usize {
    let mut ech = SparseEchelon::new();
    for j in 0..m.cols() {
        ech.insert(m.column(j));
    }
    ech.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub algebra: String,
    pub length: usize,
    pub boundary: Boundary,
    pub space_dim: usize,
    pub projector_count: usize,
    pub commuting: CommutingVerdict,
    pub ground_dim: usize,
    /// Canonical (reduced echelon) basis as columns; omitted on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_basis: Option<Matrix>,
}

/// Builds the chain, checks commutation, and computes the common image of all
/// projectors in bond order.
pub fn ground_space(spec: &ChainSpec, with_basis: bool) -> Result<ChainReport> {
    let n = spec.checked_dim()?;
    let projs = build_projectors(spec)?;
    let commuting = verify_commuting(&projs);
    let image = common_image(&projs, n);
    Ok(ChainReport {
        algebra: spec.algebra.label().to_string(),
        length: spec.length,
        boundary: spec.boundary,
        space_dim: n,
        projector_count: projs.len(),
        commuting,
        ground_dim: image.len(),
        ground_basis: with_basis.then(|| image.to_dense(n)),
    })
}

/// Ground dimension with the projectors applied in `order`.
pub fn ground_dim_in_order(spec: &ChainSpec, order: &[usize]) -> Result<usize> {
    let n = spec.checked_dim()?;
    let projs = build_projectors(spec)?;
    let ordered: Vec<SparseMatrix> = order.iter().map(|&k| projs[k].clone()).collect();
    Ok(common_image(&ordered, n).len())
}

/// Closed-form ground dimension for unital `e`: `dim e` on an open chain,
/// `dim Z(e)` on a periodic one.
pub fn predicted_ground_dim(spec: &ChainSpec) -> Result<usize> {
    if find_unit(&spec.algebra)?.is_none() {
        return Err(Error::precondition(format!(
            "no closed form for nonunital {:?}; compare against the brute-force ground space",
            spec.algebra.label()
        )));
    }
    Ok(match spec.boundary {
        Boundary::Open => spec.algebra.dim(),
        Boundary::Periodic => center(&spec.algebra).cols(),
    })
}

/// The site shift `x_0 ⊗ ⋯ ⊗ x_{n-1} ↦ x_{n-1} ⊗ x_0 ⊗ ⋯`, as a permutation matrix.
pub fn cyclic_shift(spec: &ChainSpec) -> Result<SparseMatrix> {
    let n = spec.checked_dim()?;
    let sigma: Vec<usize> = (0..spec.length).map(|l| (l + 1) % spec.length).collect();
    let perm = spec.space().leg_permutation(&sigma);
    Ok(SparseMatrix::from_columns(
        n,
        perm.into_iter().map(SparseVec::unit).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, matrix_algebra, unit_algebra};

    #[test]
    fn q_chain_is_trivial() {
        for n in 1..4 {
            let spec = ChainSpec::new(unit_algebra(), n, Boundary::Open).unwrap();
            for p in build_projectors(&spec).unwrap() {
                assert_eq!(p, SparseMatrix::identity(1));
            }
        }
        let spec = ChainSpec::new(unit_algebra(), 3, Boundary::Periodic).unwrap();
        assert_eq!(ground_space(&spec, true).unwrap().ground_dim, 1);
    }

    #[test]
    fn qq_two_sites() {
        let qq = direct_sum(&unit_algebra(), &unit_algebra());
        let spec = ChainSpec::new(qq, 2, Boundary::Open).unwrap();
        let p = build_projectors(&spec).unwrap();
        assert_eq!(p.len(), 1);
        let d = p[0].to_dense();
        // P(e_i⊗e_j) = δ_ij e_i⊗e_i
        assert_eq!(
            d,
            Matrix::from_ints(&[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
        );
    }

    #[test]
    fn m2_projector_rank() {
        let spec = ChainSpec::new(matrix_algebra(2).unwrap(), 2, Boundary::Open).unwrap();
        let p = build_projectors(&spec).unwrap();
        assert_eq!(sparse_rank(&p[0]), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = ChainSpec::new(matrix_algebra(2).unwrap(), 3, Boundary::Open)
            .unwrap()
            .with_cap(63);
        assert_eq!(
            build_projectors(&spec).unwrap_err(),
            Error::Resource {
                required: 64,
                cap: 63
            }
        );
    }

    #[test]
    fn corrupted_projector_is_caught() {
        let spec = ChainSpec::new(matrix_algebra(2).unwrap(), 3, Boundary::Open).unwrap();
        let mut p = build_projectors(&spec).unwrap();
        let mut d = p[1].to_dense();
        d[(0, 1)] = crate::exactlin::Scalar::one();
        p[1] = SparseMatrix::from_dense(&d);
        let v = verify_commuting(&p);
        assert!(!v.passed);
        assert_eq!(v.first_failing_pair, Some((0, 1)));
    }

    #[test]
    fn bad_specs() {
        assert!(ChainSpec::new(unit_algebra(), 0, Boundary::Open).is_err());
        assert!(ChainSpec::new(unit_algebra(), 1, Boundary::Periodic).is_err());
    }
}
