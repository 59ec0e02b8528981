//! Exact equality checks between composed structure maps, with reproducible witnesses.

use serde::{Deserialize, Serialize};

use crate::exactlin::{Matrix, Scalar, SparseMatrix};

/// The first (lexicographic) entry where two composed maps disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Output tensor indices followed by input tensor indices.
    pub indices: Vec<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            passed: true,
            witness: None,
        }
    }

    /// Conjunction that keeps the first failure.
    pub fn and(self, other: impl FnOnce() -> Check) -> Check {
        if self.passed {
            other()
        } else {
            self
        }
    }
}

fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Whether `lhs = c · rhs` for a single scalar `c`; returns `c`.
fn proportionality(lhs: &Matrix, rhs: &Matrix) -> Option<Scalar> {
    let k = rhs.entries().iter().position(|x| !x.is_zero())?;
    let c = &lhs.entries()[k] / &rhs.entries()[k];
    lhs.entries()
        .iter()
        .zip(rhs.entries())
        .all(|(a, b)| *a == b * &c)
        .then_some(c)
}

/// Compares two maps `⊗in_dims → ⊗out_dims` given as matrices.
pub fn compare(
    lhs_name: &str,
    rhs_name: &str,
    lhs: &Matrix,
    rhs: &Matrix,
    out_dims: &[usize],
    in_dims: &[usize],
) -> Check {
    let Some((r, c, a, b)) = lhs.first_difference(rhs) else {
        return Check::pass();
    };
    let mut indices = split_index(r, out_dims);
    indices.extend(split_index(c, in_dims));
    let summary = match proportionality(lhs, rhs) {
        Some(k) => format!("{lhs_name} = {k}·{rhs_name}"),
        None => format!("{lhs_name} ≠ {rhs_name} at {indices:?}: {a} vs {b}"),
    };
    Check {
        passed: false,
        witness: Some(Witness {
            indices,
            lhs: a,
            rhs: b,
            summary,
        }),
    }
}

fn proportionality_sparse(lhs: &SparseMatrix, rhs: &SparseMatrix) -> Option<Scalar> {
    let (j, (i, r)) =
        (0..rhs.cols()).find_map(|j| rhs.column(j).entries().first().map(|e| (j, e.clone())))?;
    let l = lhs.column(j).get(i).cloned().unwrap_or_else(Scalar::zero);
    let c = &l / &r;
    (*lhs == rhs.scale(&c)).then_some(c)
}

/// [`compare`] for sparse operands; witnesses agree with the dense version.
pub fn compare_sparse(
    lhs_name: &str,
    rhs_name: &str,
    lhs: &SparseMatrix,
    rhs: &SparseMatrix,
    out_dims: &[usize],
    in_dims: &[usize],
) -> Check {
    let Some((r, c, a, b)) = lhs.first_difference(rhs) else {
        return Check::pass();
    };
    let mut indices = split_index(r, out_dims);
    indices.extend(split_index(c, in_dims));
    let summary = match proportionality_sparse(lhs, rhs) {
        Some(k) => format!("{lhs_name} = {k}·{rhs_name}"),
        None => format!("{lhs_name} ≠ {rhs_name} at {indices:?}: {a} vs {b}"),
    };
    Check {
        passed: false,
        witness: Some(Witness {
            indices,
            lhs: a,
            rhs: b,
            summary,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_identity_summary() {
        let id = Matrix::identity(4);
        let two = id.scale(&Scalar::from_int(2));
        let c = compare("m∘Δ", "id", &two, &id, &[2, 2], &[2, 2]);
        let w = c.witness.clone().unwrap();
        assert_eq!(w.summary, "m∘Δ = 2·id");
        assert_eq!(w.indices, vec![0, 0, 0, 0]);
        let s = compare_sparse(
            "m∘Δ",
            "id",
            &SparseMatrix::from_dense(&two),
            &SparseMatrix::from_dense(&id),
            &[2, 2],
            &[2, 2],
        );
        assert_eq!(s, c);
    }

    #[test]
    fn index_decomposition() {
        assert_eq!(split_index(5, &[2, 3]), vec![1, 2]);
        assert_eq!(split_index(0, &[]), Vec::<usize>::new());
    }
}
