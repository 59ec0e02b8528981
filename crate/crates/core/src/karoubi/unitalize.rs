use std::sync::Arc;

use serde::Serialize;

use super::{MoritaWitness, SigmaObject};
use crate::algebra::{
    check_condensation_algebra, find_unit, separability_idempotent, CondensationAlgebra,
};
use crate::bimodule::{check_condensation_bimodule, rcoact_from_idempotent, CondensationBimodule};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, solve, split_idempotent, IdempotentSplit, Matrix, Scalar};

/// `e'` = End_e(e) as a unital condensation algebra, with the Morita witness
/// between `e` and `e'`.
#[derive(Clone, Debug)]
pub struct Unitalization {
    pub e_prime: SigmaObject,
    pub unit: Vec<Scalar>,
    /// Splitting of the idempotent on End(e) whose image is the multiplier algebra.
    pub multipliers: IdempotentSplit,
    pub witness: MoritaWitness,
    /// For unital `e`: `b ↦ [right multiplication by b]`, an algebra isomorphism `e → e'`.
    pub algebra_iso: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitalizationSummary {
    pub source_dim: usize,
    pub unital_dim: usize,
    pub unit: Vec<Scalar>,
    pub transports_to_source: Option<bool>,
}

impl Unitalization {
    pub fn summary(&self, source: &SigmaObject) -> UnitalizationSummary {
        UnitalizationSummary {
            source_dim: source.dim(),
            unital_dim: self.e_prime.dim(),
            unit: self.unit.clone(),
            transports_to_source: self
                .algebra_iso
                .as_ref()
                .map(|t| self.transports_to(source, t)),
        }
    }

    fn transports_to(&self, source: &SigmaObject, t: &Matrix) -> bool {
        self.e_prime
            .algebra()
            .change_basis(t)
            .is_ok_and(|a| a.same_structure(source.algebra()))
    }

    /// For unital sources: `e'` re-expressed along the algebra isomorphism equals `e`.
    pub fn matches_source(&self, source: &SigmaObject) -> Option<bool> {
        self.algebra_iso
            .as_ref()
            .map(|t| self.transports_to(source, t))
    }
}

fn nonzeros(m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() {
                out.push((r, c, m[(r, c)].clone()));
            }
        }
    }
    out
}

/// `n × n` matrix from column `k` of `g`, read as `vec(φ)[c·n + x] = φ[c, x]`.
fn unvec(g: &Matrix, k: usize, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |c, x| g[(c * n + x, k)].clone())
}

fn vec_of(phi: &Matrix) -> Matrix {
    Matrix::column_vector(phi.entries().to_vec())
}

/// The idempotent `φ ↦ m ∘ (id ⊗ φ) ∘ Δ` on End(A); its image is End_A(A).
fn multiplier_projector(e: &CondensationAlgebra) -> Matrix {
    let n = e.dim();
    let (mult, comult) = (e.mult(), e.comult());
    let mut p = Matrix::zeros(n * n, n * n);
    let m_nz = nonzeros(mult);
    for (ib, x, d) in nonzeros(comult) {
        let (i, b) = (ib / n, ib % n);
        for (c, ia, m) in &m_nz {
            if ia / n != i {
                continue;
            }
            let a = ia % n;
            p[(c * n + x, a * n + b)] += &(m * &d);
        }
    }
    p
}

/// Right multiplication by basis element `j` as an `n × n` matrix.
fn right_mult(e: &CondensationAlgebra, j: usize) -> Matrix {
    let n = e.dim();
    Matrix::from_fn(n, n, |c, y| e.mult()[(c, y * n + j)].clone())
}

/// Unitalizes `e` through its multiplier algebra.
///
/// Multipliers compose on the right (`φ·ψ = ψ∘φ`) so that `e` is an
/// `(e, e')`-bimodule. The comultiplication sends `φ` to the pair of
/// multipliers `x ⊗ y ↦ Σ φ(x)' ⊗ y·φ(x)''`.
pub fn unitalize(e: &SigmaObject) -> Result<Unitalization> {
    let alg = e.algebra();
    let n = alg.dim();
    let split = split_idempotent(&multiplier_projector(alg))?;
    let (f, g) = (&split.f, &split.g);
    let r = split.rank();
    let phis: Vec<Matrix> = (0..r).map(|k| unvec(g, k, n)).collect();
    let coords = |phi: &Matrix| f * &vec_of(phi);

    let mut mult = Matrix::zeros(r, r * r);
    for p in 0..r {
        for q in 0..r {
            let c = coords(&(&phis[q] * &phis[p]));
            for k in 0..r {
                mult[(k, p * r + q)] = c[(k, 0)].clone();
            }
        }
    }

    let m_nz = nonzeros(alg.mult());
    let f_nz: Vec<Vec<(usize, Scalar)>> = (0..r)
        .map(|p| {
            (0..n * n)
                .filter(|&c| !f[(p, c)].is_zero())
                .map(|c| (c, f[(p, c)].clone()))
                .collect()
        })
        .collect();
    let mut comult = Matrix::zeros(r * r, r);
    for s in 0..r {
        // val[α, β] with α = i·n + x (first multiplier), β = k·n + y (second)
        let mut val = std::collections::BTreeMap::<(usize, usize), Scalar>::new();
        let dphi = alg.comult() * &phis[s];
        for x in 0..n {
            for ij in 0..n * n {
                let d = &dphi[(ij, x)];
                if d.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                for (k, yj, m) in &m_nz {
                    if yj % n != j {
                        continue;
                    }
                    let y = yj / n;
                    *val.entry((i * n + x, k * n + y))
                        .or_insert_with(Scalar::zero) += &(d * m);
                }
            }
        }
        for p in 0..r {
            for q in 0..r {
                let mut acc = Scalar::zero();
                for (alpha, fp) in &f_nz[p] {
                    for (beta, fq) in &f_nz[q] {
                        if let Some(v) = val.get(&(*alpha, *beta)) {
                            acc += &(&(fp * fq) * v);
                        }
                    }
                }
                comult[(p * r + q, s)] = acc;
            }
        }
    }

    let e_prime =
        CondensationAlgebra::from_matrices(format!("End({})", alg.label()), mult, comult)?;
    let report = check_condensation_algebra(&e_prime);
    if !report.passed() {
        return Err(Error::internal(format!(
            "multiplier algebra of {:?} fails the axioms",
            alg.label()
        )));
    }
    let unit =
        find_unit(&e_prime)?.ok_or_else(|| Error::internal("multiplier algebra has no unit"))?;
    if coords(&Matrix::identity(n)).column(0) != unit {
        return Err(Error::internal(
            "unit of the multiplier algebra is not the identity map",
        ));
    }
    let sep = separability_idempotent(&e_prime)?;
    let e_prime = Arc::new(e_prime);

    // e as an (e, e')-bimodule: x·φ = φ(x)
    let ract = Matrix::from_fn(n, n * r, |y, xp| phis[xp % r][(y, xp / r)].clone());
    let rcoact = rcoact_from_idempotent(&ract, &sep);
    let m = CondensationBimodule::from_matrices(
        alg.clone(),
        e_prime.clone(),
        alg.mult().clone(),
        ract,
        alg.comult().clone(),
        rcoact,
    )?;

    // e' as an (e', e)-bimodule: φ·a = R_a ∘ φ, coaction φ ↦ Σ_j (ψ_j ∘ φ) ⊗ b_j
    // where Δ(z) = Σ_j ψ_j(z) ⊗ b_j.
    let rights: Vec<Matrix> = (0..n).map(|j| right_mult(alg, j)).collect();
    let psis: Vec<Matrix> = (0..n)
        .map(|j| Matrix::from_fn(n, n, |i, z| alg.comult()[(i * n + j, z)].clone()))
        .collect();
    let mut n_ract = Matrix::zeros(r, r * n);
    let mut n_rcoact = Matrix::zeros(r * n, r);
    for p in 0..r {
        for j in 0..n {
            let c = coords(&(&rights[j] * &phis[p]));
            let d = coords(&(&psis[j] * &phis[p]));
            for k in 0..r {
                n_ract[(k, p * n + j)] = c[(k, 0)].clone();
                n_rcoact[(k * n + j, p)] = d[(k, 0)].clone();
            }
        }
    }
    let nm = CondensationBimodule::from_matrices(
        e_prime.clone(),
        alg.clone(),
        e_prime.mult().clone(),
        n_ract,
        e_prime.comult().clone(),
        n_rcoact,
    )?;
    for (name, b) in [("e over (e, e')", &m), ("e' over (e', e)", &nm)] {
        if let Some(c) = check_condensation_bimodule(b).first_failure() {
            return Err(Error::internal(format!(
                "unitalization bimodule {name} fails: {}",
                c.witness.as_ref().map_or("", |w| w.summary.as_str())
            )));
        }
    }
    let witness = MoritaWitness::construct(m, nm)?;

    let algebra_iso = match find_unit(alg)? {
        None => None,
        Some(_) => {
            let mut t = Matrix::zeros(r, n);
            for b in 0..n {
                let c = coords(&rights[b]);
                for k in 0..r {
                    t[(k, b)] = c[(k, 0)].clone();
                }
            }
            Some(t)
        }
    };
    Ok(Unitalization {
        e_prime: SigmaObject::from_arc(e_prime)?,
        unit,
        multipliers: split,
        witness,
        algebra_iso,
    })
}

/// Dimensions of the solution sets for the coactions of a bimodule given by its
/// actions: `(left exists, left kernel dim, right exists, right kernel dim)`.
/// A unique compatible pair means both exist with trivial kernels.
pub fn coaction_solution_dims(m: &CondensationBimodule) -> Result<(bool, usize, bool, usize)> {
    let (a, b, d) = (m.left().dim(), m.right().dim(), m.dim());
    let (la, lb) = (m.left(), m.right());
    let (l, r) = (m.lact(), m.ract());
    let (ia, ib, id) = (
        Matrix::identity(a),
        Matrix::identity(b),
        Matrix::identity(d),
    );

    // Left: lact·X = id, X·lact = (id⊗lact)(Δ⊗id), X·lact = (m⊗id)(id⊗X), X·ract = (id⊗ract)(X⊗id)
    let left_rhs = [
        id.clone(),
        &ia.kron(l) * &la.comult().kron(&id),
        Matrix::zeros(a * d, a * d),
        Matrix::zeros(a * d, d * b),
    ];
    let left_eqs = |x: &Matrix| {
        vec![
            l * x,
            x * l,
            &(x * l) - &(&la.mult().kron(&id) * &ia.kron(x)),
            &(x * r) - &(&ia.kron(r) * &x.kron(&ib)),
        ]
    };
    let (le, lk) = affine_solutions(a * d, d, &left_rhs, left_eqs)?;

    // Right: ract·Y = id, Y·ract = (ract⊗id)(id⊗Δ), Y·ract = (id⊗m)(Y⊗id), Y·lact = (lact⊗id)(id⊗Y)
    let right_rhs = [
        id.clone(),
        &r.kron(&ib) * &id.kron(lb.comult()),
        Matrix::zeros(d * b, d * b),
        Matrix::zeros(d * b, a * d),
    ];
    let right_eqs = |y: &Matrix| {
        vec![
            r * y,
            y * r,
            &(y * r) - &(&id.kron(lb.mult()) * &y.kron(&ib)),
            &(y * l) - &(&l.kron(&ib) * &ia.kron(y)),
        ]
    };
    let (re, rk) = affine_solutions(d * b, d, &right_rhs, right_eqs)?;
    Ok((le, lk, re, rk))
}

/// Solves the linear system `F(X) = rhs` for `X` of the given shape by
/// applying `F` to matrix units.
fn affine_solutions(
    rows: usize,
    cols: usize,
    rhs: &[Matrix],
    f: impl Fn(&Matrix) -> Vec<Matrix>,
) -> Result<(bool, usize)> {
    let unknowns = rows * cols;
    let height: usize = rhs.iter().map(|m| m.rows() * m.cols()).sum();
    let mut sys = Matrix::zeros(height, unknowns);
    for u in 0..unknowns {
        let mut x = Matrix::zeros(rows, cols);
        x[(u / cols, u % cols)] = Scalar::one();
        let mut row = 0;
        for out in f(&x) {
            for v in out.entries() {
                if !v.is_zero() {
                    sys[(row, u)] = v.clone();
                }
                row += 1;
            }
        }
    }
    let target = Matrix::column_vector(
        rhs.iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect(),
    );
    let exists = solve(&sys, &target)?.is_some();
    Ok((exists, kernel_basis(&sys).cols()))
}
