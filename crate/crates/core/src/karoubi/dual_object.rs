use std::sync::Arc;

use serde::Serialize;

use super::SigmaObject;
use crate::algebra::{find_unit, opposite, tensor_algebra, unit_algebra, CondensationAlgebra};
use crate::bimodule::{
    are_isomorphic, check_condensation_bimodule, external_tensor, regular_bimodule, tensor_over,
    CondensationBimodule, IsoVerdict,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    common_image, Matrix, ProductSpace, Scalar, SparseEchelon, SparseMatrix, SparseVec,
};

/// Largest dimension for which the zig-zags are composed with dense matrices.
pub const DENSE_ZIGZAG_MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZigzagPath {
    Dense,
    Factorized,
}

/// `a^op` with evaluation `a ⊗ a^op → ℚ` and coevaluation `ℚ → a^op ⊗ a`.
#[derive(Clone, Debug)]
pub struct DualObject {
    pub op: SigmaObject,
    pub ev: CondensationBimodule,
    pub coev: CondensationBimodule,
    pub path: ZigzagPath,
    /// `(a ⊠ coev) ⊗ (ev ⊠ a) ≅ a`.
    pub zigzag_a: IsoVerdict,
    /// `(coev ⊠ a^op) ⊗ (a^op ⊠ ev) ≅ a^op`.
    pub zigzag_op: IsoVerdict,
}

impl DualObject {
    pub fn passed(&self) -> bool {
        self.zigzag_a.isomorphic && self.zigzag_op.isomorphic
    }
}

/// `Δ²(v) = Σ v₁⊗v₂⊗v₃` as an `n³ × n` matrix.
fn double_comult(a: &CondensationAlgebra) -> Matrix {
    let n = a.dim();
    let c = a.comult();
    let mut out = Matrix::zeros(n * n * n, n);
    for v in 0..n {
        for l in 0..n {
            for k in 0..n {
                let y = &c[(l * n + k, v)];
                if y.is_zero() {
                    continue;
                }
                for ij in 0..n * n {
                    let x = &c[(ij, l)];
                    if !x.is_zero() {
                        out[(ij * n + k, v)] += &(x * y);
                    }
                }
            }
        }
    }
    out
}

/// `T[y, (x, v, w)]`: coefficient of `b_y` in `x·v·w`.
fn triple_product(a: &CondensationAlgebra) -> Vec<Vec<(usize, Scalar)>> {
    let n = a.dim();
    let m = a.mult();
    let mut out = vec![Vec::new(); n * n * n];
    for x in 0..n {
        for v in 0..n {
            for w in 0..n {
                let mut acc = vec![Scalar::zero(); n];
                for k in 0..n {
                    let xv = &m[(k, x * n + v)];
                    if xv.is_zero() {
                        continue;
                    }
                    for (y, slot) in acc.iter_mut().enumerate() {
                        let kw = &m[(y, k * n + w)];
                        if !kw.is_zero() {
                            *slot += &(xv * kw);
                        }
                    }
                }
                out[(x * n + v) * n + w] = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
            }
        }
    }
    out
}

fn evaluation(
    a: &Arc<CondensationAlgebra>,
    aop: &Arc<CondensationAlgebra>,
) -> Result<(CondensationBimodule, CondensationBimodule)> {
    let n = a.dim();
    let q = Arc::new(unit_algebra());
    let t = triple_product(a);
    let d2 = double_comult(a);
    // ev: (x⊗w)·v = x·v·w, lcoact(v) = Σ (v₁⊗v₃)⊗v₂
    let mut lact = Matrix::zeros(n, n * n * n);
    // coev: v·(w⊗x) = w·v·x, rcoact(v) = Σ v₂⊗(v₁⊗v₃)
    let mut ract = Matrix::zeros(n, n * n * n);
    for x in 0..n {
        for v in 0..n {
            for w in 0..n {
                for (y, c) in &t[(x * n + v) * n + w] {
                    lact[(*y, (x * n + w) * n + v)] = c.clone();
                    ract[(*y, v * n * n + x * n + w)] = c.clone();
                }
            }
        }
    }
    let mut lcoact = Matrix::zeros(n * n * n, n);
    let mut rcoact = Matrix::zeros(n * n * n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for v in 0..n {
                    let c = &d2[((i * n + j) * n + k, v)];
                    if !c.is_zero() {
                        lcoact[((i * n + k) * n + j, v)] = c.clone();
                        rcoact[(j * n * n + i * n + k, v)] = c.clone();
                    }
                }
            }
        }
    }
    let id = Matrix::identity(n);
    let ev = CondensationBimodule::from_matrices(
        Arc::new(tensor_algebra(a, aop)),
        q.clone(),
        lact,
        id.clone(),
        lcoact,
        id.clone(),
    )?;
    let coev = CondensationBimodule::from_matrices(
        q,
        Arc::new(tensor_algebra(aop, a)),
        id.clone(),
        ract,
        id,
        rcoact,
    )?;
    for (name, m) in [("ev", &ev), ("coev", &coev)] {
        if let Some(c) = check_condensation_bimodule(m).first_failure() {
            return Err(Error::internal(format!(
                "{name} of {:?} fails: {}",
                a.label(),
                c.witness.as_ref().map_or("", |w| w.summary.as_str())
            )));
        }
    }
    Ok((ev, coev))
}

/// Dual object with zig-zags composed densely for small algebras and through
/// factorized sparse idempotents otherwise.
pub fn dual_object(a: &SigmaObject) -> Result<DualObject> {
    if a.dim() <= DENSE_ZIGZAG_MAX_DIM {
        dual_object_dense(a)
    } else {
        dual_object_factorized(a)
    }
}

fn op_of(a: &SigmaObject) -> Result<SigmaObject> {
    let op = opposite(a.algebra());
    SigmaObject::new(op)
}

/// Zig-zags via [`external_tensor`] and [`tensor_over`] on the full spaces.
pub fn dual_object_dense(a: &SigmaObject) -> Result<DualObject> {
    let op = op_of(a)?;
    let (ev, coev) = evaluation(a.algebra(), op.algebra())?;
    let reg_a = regular_bimodule(a.algebra());
    let reg_op = regular_bimodule(op.algebra());
    let z1 = tensor_over(
        &external_tensor(&reg_a, &coev)?,
        &external_tensor(&ev, &reg_a)?,
    )?
    .module;
    let z2 = tensor_over(
        &external_tensor(&coev, &reg_op)?,
        &external_tensor(&reg_op, &ev)?,
    )?
    .module;
    let zigzag_a = are_isomorphic(&relabel(&z1, a.algebra(), a.algebra())?, &reg_a)?;
    let zigzag_op = are_isomorphic(&relabel(&z2, op.algebra(), op.algebra())?, &reg_op)?;
    Ok(DualObject {
        op,
        ev,
        coev,
        path: ZigzagPath::Dense,
        zigzag_a,
        zigzag_op,
    })
}

/// The same bimodule over structurally identical algebras (e.g. `a⊗ℚ` and `a`).
fn relabel(
    m: &CondensationBimodule,
    left: &Arc<CondensationAlgebra>,
    right: &Arc<CondensationAlgebra>,
) -> Result<CondensationBimodule> {
    if !(m.left().same_structure(left) && m.right().same_structure(right)) {
        return Err(Error::internal(
            "zig-zag composite is over unexpected algebras",
        ));
    }
    CondensationBimodule::from_matrices(
        left.clone(),
        right.clone(),
        m.lact().clone(),
        m.ract().clone(),
        m.lcoact().clone(),
        m.rcoact().clone(),
    )
}

/// Sparse local operator on legs of dimension `n` from a column generator.
fn local_op(
    legs: usize,
    n: usize,
    column: impl Fn(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
) -> SparseMatrix {
    let space = ProductSpace::new(&vec![n; legs]);
    let flat = |idx: &[usize]| idx.iter().fold(0, |acc, &i| acc * n + i);
    let cols = (0..space.dim())
        .map(|c| {
            let idx: Vec<usize> = (0..legs).map(|l| space.coord(c, l)).collect();
            SparseVec::from_pairs(column(&idx).into_iter().map(|(out, x)| (flat(&out), x)))
        })
        .collect();
    SparseMatrix::from_columns(space.dim(), cols)
}

fn column_entries(m: &Matrix, col: usize) -> Vec<(usize, Scalar)> {
    (0..m.rows())
        .filter(|&r| !m[(r, col)].is_zero())
        .map(|r| (r, m[(r, col)].clone()))
        .collect()
}

/// Applies the `n × n` matrix `local` to one leg of a sparse vector.
fn apply_on_leg(space: &ProductSpace, v: &SparseVec, leg: usize, local: &Matrix) -> SparseVec {
    let stride = space.stride(leg);
    SparseVec::from_pairs(v.entries().iter().flat_map(|(idx, x)| {
        let c = space.coord(*idx, leg);
        let base = idx - c * stride;
        column_entries(local, c)
            .into_iter()
            .map(move |(r, y)| (base + r * stride, x * &y))
    }))
}

/// Transports the regular structure of `outer` on legs `left_leg` and
/// `right_leg` to the image `ech` (which both structures preserve).
fn outer_structure(
    space: &ProductSpace,
    ech: &SparseEchelon,
    outer: &Arc<CondensationAlgebra>,
    left_leg: usize,
    right_leg: usize,
) -> Result<CondensationBimodule> {
    let n = outer.dim();
    let r = ech.len();
    let basis: Vec<SparseVec> = ech.vectors().cloned().collect();
    let coords = |v: &SparseVec| {
        ech.coordinates(v)
            .ok_or_else(|| Error::internal("outer structure leaves the zig-zag image"))
    };
    let (m, d) = (outer.mult(), outer.comult());
    let lmul = |x: usize| Matrix::from_fn(n, n, |s, u| m[(s, x * n + u)].clone());
    let rmul = |j: usize| Matrix::from_fn(n, n, |s, t| m[(s, t * n + j)].clone());
    let lco = |i: usize| Matrix::from_fn(n, n, |j, u| d[(i * n + j, u)].clone());
    let rco = |j: usize| Matrix::from_fn(n, n, |s, t| d[(s * n + j, t)].clone());
    let mut lact = Matrix::zeros(r, n * r);
    let mut ract = Matrix::zeros(r, r * n);
    let mut lcoact = Matrix::zeros(n * r, r);
    let mut rcoact = Matrix::zeros(r * n, r);
    for x in 0..n {
        let (lm, rm, lc, rc) = (lmul(x), rmul(x), lco(x), rco(x));
        for (k, g) in basis.iter().enumerate() {
            let a1 = coords(&apply_on_leg(space, g, left_leg, &lm))?;
            let a2 = coords(&apply_on_leg(space, g, right_leg, &rm))?;
            let c1 = coords(&apply_on_leg(space, g, left_leg, &lc))?;
            let c2 = coords(&apply_on_leg(space, g, right_leg, &rc))?;
            for kk in 0..r {
                lact[(kk, x * r + k)] = a1[kk].clone();
                ract[(kk, k * n + x)] = a2[kk].clone();
                lcoact[(x * r + kk, k)] = c1[kk].clone();
                rcoact[(kk * n + x, k)] = c2[kk].clone();
            }
        }
    }
    let module = CondensationBimodule::from_matrices(
        outer.clone(),
        outer.clone(),
        lact,
        ract,
        lcoact,
        rcoact,
    )?;
    if let Some(c) = check_condensation_bimodule(&module).first_failure() {
        return Err(Error::internal(format!(
            "factorized zig-zag composite fails: {}",
            c.witness.as_ref().map_or("", |w| w.summary.as_str())
        )));
    }
    Ok(module)
}

/// Zig-zags through the commuting factors of the relative-tensor idempotent
/// on the four-leg space. Needs a unit to separate the two actions on `ev`.
pub fn dual_object_factorized(a: &SigmaObject) -> Result<DualObject> {
    let alg = a.algebra();
    let n = alg.dim();
    let u = find_unit(alg)?.ok_or_else(|| {
        Error::Unsupported(format!(
            "factorized zig-zags need a unit; {:?} has dim {n} > {DENSE_ZIGZAG_MAX_DIM}",
            alg.label()
        ))
    })?;
    let op = op_of(a)?;
    let (ev, coev) = evaluation(alg, op.algebra())?;

    // ev's two actions separately: La[z, (x, v)] for x⊗1, Lo[z, (w, v)] for 1⊗w.
    let mut la = Matrix::zeros(n, n * n);
    let mut lo = Matrix::zeros(n, n * n);
    for x in 0..n {
        for w in 0..n {
            for v in 0..n {
                for z in 0..n {
                    let c = &ev.lact()[(z, (x * n + w) * n + v)];
                    if c.is_zero() {
                        continue;
                    }
                    if !u[w].is_zero() {
                        la[(z, x * n + v)] += &(c * &u[w]);
                    }
                    if !u[x].is_zero() {
                        lo[(z, w * n + v)] += &(c * &u[x]);
                    }
                }
            }
        }
    }
    let rc = coev.rcoact();
    let (ma, da) = (alg.mult(), alg.comult());
    let (mo, dop) = (op.algebra().mult(), op.algebra().comult());
    let space = ProductSpace::new(&[n; 4]);

    // coev's coaction v ↦ Σ y ⊗ (w ⊗ x), as (y, w, x, coefficient)
    let coact = |v: usize| -> Vec<(usize, usize, usize, Scalar)> {
        column_entries(rc, v)
            .into_iter()
            .map(|(row, c)| (row / (n * n), (row / n) % n, row % n, c))
            .collect()
    };
    let act = |m: &Matrix, x: usize, v: usize| column_entries(m, x * n + v);

    // legs [A1, V, W, A2]
    let eps_1 = local_op(2, n, |idx| {
        let (u1, v) = (idx[0], idx[1]);
        let mut out = Vec::new();
        for (ij, c) in column_entries(da, u1) {
            for (y, c2) in act(&la, ij % n, v) {
                out.push((vec![ij / n, y], &c * &c2));
            }
        }
        out
    });
    let eps_23 = local_op(3, n, |idx| {
        let (v, v2, t) = (idx[0], idx[1], idx[2]);
        let mut out = Vec::new();
        for (y, w, x, c) in coact(v) {
            for (z, c2) in act(&lo, w, v2) {
                for (s, c3) in act(ma, x, t) {
                    out.push((vec![y, z, s], &(&c * &c2) * &c3));
                }
            }
        }
        out
    });
    let ops = [
        space.embed(&[1, 2, 3], &eps_23),
        space.embed(&[0, 2], &eps_1),
    ];
    let image = common_image(&ops, space.dim());
    let z1 = outer_structure(&space, &image, alg, 0, 3)?;

    // legs [V, B1, B2, W]
    let eps_a = local_op(3, n, |idx| {
        let (v, t, v2) = (idx[0], idx[1], idx[2]);
        let mut out = Vec::new();
        for (y, w, x, c) in coact(v) {
            for (s, c2) in act(mo, w, t) {
                for (z, c3) in act(&la, x, v2) {
                    out.push((vec![y, s, z], &(&c * &c2) * &c3));
                }
            }
        }
        out
    });
    let eps_b = local_op(2, n, |idx| {
        let (u1, v2) = (idx[0], idx[1]);
        let mut out = Vec::new();
        for (ij, c) in column_entries(dop, u1) {
            for (z, c2) in act(&lo, ij % n, v2) {
                out.push((vec![ij / n, z], &c * &c2));
            }
        }
        out
    });
    let ops = [
        space.embed(&[0, 2, 3], &eps_a),
        space.embed(&[1, 3], &eps_b),
    ];
    let image = common_image(&ops, space.dim());
    let z2 = outer_structure(&space, &image, op.algebra(), 1, 2)?;

    let zigzag_a = are_isomorphic(&z1, &regular_bimodule(alg))?;
    let zigzag_op = are_isomorphic(&z2, &regular_bimodule(op.algebra()))?;
    Ok(DualObject {
        op,
        ev,
        coev,
        path: ZigzagPath::Factorized,
        zigzag_a,
        zigzag_op,
    })
}
