//! Condensation bimodules between condensation algebras, intertwiners, relative
//! tensor products by idempotent splitting, and duals.
//!
//! A bimodule `M` over `(A, B)` carries four structure maps, stored as matrices
//! under the left-slow Kronecker convention:
//!
//! | map      | type          | matrix entry                          |
//! |----------|---------------|---------------------------------------|
//! | `lact`   | `A⊗M → M`     | `L[m', i·dM + m] = lact[i][m][m']`    |
//! | `ract`   | `M⊗B → M`     | `R[m', m·dB + j] = ract[m][j][m']`    |
//! | `lcoact` | `M → A⊗M`     | `Lc[i·dM + m', m] = lcoact[m][i][m']` |
//! | `rcoact` | `M → M⊗B`     | `Rc[m'·dB + j, m] = rcoact[m][m'][j]` |

mod dual;
mod hom;
mod tensor;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use dual::{dual_bimodule, scale_intertwiner, zigzag_check, Dual, ZigzagReport};
pub use hom::{are_isomorphic, hom_space, is_intertwiner, lattice_search, Intertwiner, IsoVerdict};
pub(crate) use hom::{combine, hom_basis, Actions};
pub use tensor::{
    coequalizer_oracle, induced_bimodule, tensor_epsilon, tensor_epsilon_alt, tensor_over,
    tensor_over_in_order, Composite,
};

use crate::algebra::{find_unit, tensor_algebra, unit_algebra, CondensationAlgebra};
use crate::check::{compare_sparse, Check};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationBimodule {
    left: Arc<CondensationAlgebra>,
    right: Arc<CondensationAlgebra>,
    dim: usize,
    lact: Matrix,
    ract: Matrix,
    lcoact: Matrix,
    rcoact: Matrix,
}

/// Verdicts for the bimodule axioms; each combines the left and right versions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleReport {
    pub specialness: Check,
    pub associativity: Check,
    pub coassociativity: Check,
    pub frobenius: Check,
    pub commutation: Check,
}

impl BimoduleReport {
    pub fn passed(&self) -> bool {
        self.specialness.passed
            && self.associativity.passed
            && self.coassociativity.passed
            && self.frobenius.passed
            && self.commutation.passed
    }

    pub fn first_failure(&self) -> Option<&Check> {
        [
            &self.specialness,
            &self.associativity,
            &self.coassociativity,
            &self.frobenius,
            &self.commutation,
        ]
        .into_iter()
        .find(|c| !c.passed)
    }
}

impl CondensationBimodule {
    /// Assembles a bimodule from structure matrices, checking shapes only.
    pub fn from_matrices(
        left: Arc<CondensationAlgebra>,
        right: Arc<CondensationAlgebra>,
        lact: Matrix,
        ract: Matrix,
        lcoact: Matrix,
        rcoact: Matrix,
    ) -> Result<Self> {
        let dim = lact.rows();
        let (a, b) = (left.dim(), right.dim());
        let shapes = [
            ("lact", &lact, dim, a * dim),
            ("ract", &ract, dim, dim * b),
            ("lcoact", &lcoact, a * dim, dim),
            ("rcoact", &rcoact, dim * b, dim),
        ];
        for (name, m, r, c) in shapes {
            if m.rows() != r || m.cols() != c {
                return Err(Error::input(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(CondensationBimodule {
            left,
            right,
            dim,
            lact,
            ract,
            lcoact,
            rcoact,
        })
    }

    pub fn left(&self) -> &Arc<CondensationAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<CondensationAlgebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lact(&self) -> &Matrix {
        &self.lact
    }

    pub fn ract(&self) -> &Matrix {
        &self.ract
    }

    pub fn lcoact(&self) -> &Matrix {
        &self.lcoact
    }

    pub fn rcoact(&self) -> &Matrix {
        &self.rcoact
    }

    /// Whether `other` is over structurally identical algebras.
    pub fn same_algebras(&self, other: &Self) -> bool {
        self.left.same_structure(&other.left) && self.right.same_structure(&other.right)
    }

    /// Conjugates every structure map by the invertible change of basis `t`
    /// (columns are the new basis vectors).
    pub fn change_basis(&self, t: &Matrix) -> Result<Self> {
        let tinv = crate::exactlin::inverse(t)
            .ok_or_else(|| Error::input("basis change is not invertible"))?;
        let ia = Matrix::identity(self.left.dim());
        let ib = Matrix::identity(self.right.dim());
        CondensationBimodule::from_matrices(
            self.left.clone(),
            self.right.clone(),
            &(&tinv * &self.lact) * &ia.kron(t),
            &(&tinv * &self.ract) * &t.kron(&ib),
            &(&ia.kron(&tinv) * &self.lcoact) * t,
            &(&tinv.kron(&ib) * &self.rcoact) * t,
        )
    }

    /// Multiplies `lcoact` by `s`; used to build negative fixtures.
    pub fn with_scaled_lcoact(&self, s: &Scalar) -> Self {
        CondensationBimodule {
            lcoact: self.lcoact.scale(s),
            ..self.clone()
        }
    }
}

/// Checks every bimodule axiom exactly; each field reports its first failing witness.
pub fn check_condensation_bimodule(m: &CondensationBimodule) -> BimoduleReport {
    let (a, b, d) = (m.left.dim(), m.right.dim(), m.dim);
    let (ia, ib, im) = (
        SparseMatrix::identity(a),
        SparseMatrix::identity(b),
        SparseMatrix::identity(d),
    );
    let sp = SparseMatrix::from_dense;
    let (ma, da) = (&sp(m.left.mult()), &sp(m.left.comult()));
    let (mb, db) = (&sp(m.right.mult()), &sp(m.right.comult()));
    let (l, r, lc, rc) = (&sp(&m.lact), &sp(&m.ract), &sp(&m.lcoact), &sp(&m.rcoact));

    let specialness = compare_sparse("lact∘lcoact", "id", &(l * lc), &im, &[d], &[d])
        .and(|| compare_sparse("ract∘rcoact", "id", &(r * rc), &im, &[d], &[d]));

    let associativity = compare_sparse(
        "lact(m⊗id)",
        "lact(id⊗lact)",
        &(l * &ma.kron(&im)),
        &(l * &ia.kron(l)),
        &[d],
        &[a, a, d],
    )
    .and(|| {
        compare_sparse(
            "ract(ract⊗id)",
            "ract(id⊗m)",
            &(r * &r.kron(&ib)),
            &(r * &im.kron(mb)),
            &[d],
            &[d, b, b],
        )
    });

    let coassociativity = compare_sparse(
        "(Δ⊗id)lcoact",
        "(id⊗lcoact)lcoact",
        &(&da.kron(&im) * lc),
        &(&ia.kron(lc) * lc),
        &[a, a, d],
        &[d],
    )
    .and(|| {
        compare_sparse(
            "(rcoact⊗id)rcoact",
            "(id⊗Δ)rcoact",
            &(&rc.kron(&ib) * rc),
            &(&im.kron(db) * rc),
            &[d, b, b],
            &[d],
        )
    });

    let lcl = lc * l;
    let rcr = rc * r;
    let frobenius = compare_sparse(
        "lcoact∘lact",
        "(id⊗lact)(Δ⊗id)",
        &lcl,
        &(&ia.kron(l) * &da.kron(&im)),
        &[a, d],
        &[a, d],
    )
    .and(|| {
        compare_sparse(
            "lcoact∘lact",
            "(m⊗id)(id⊗lcoact)",
            &lcl,
            &(&ma.kron(&im) * &ia.kron(lc)),
            &[a, d],
            &[a, d],
        )
    })
    .and(|| {
        compare_sparse(
            "rcoact∘ract",
            "(ract⊗id)(id⊗Δ)",
            &rcr,
            &(&r.kron(&ib) * &im.kron(db)),
            &[d, b],
            &[d, b],
        )
    })
    .and(|| {
        compare_sparse(
            "rcoact∘ract",
            "(id⊗m)(rcoact⊗id)",
            &rcr,
            &(&im.kron(mb) * &rc.kron(&ib)),
            &[d, b],
            &[d, b],
        )
    });

    let commutation = compare_sparse(
        "ract(lact⊗id)",
        "lact(id⊗ract)",
        &(r * &l.kron(&ib)),
        &(l * &ia.kron(r)),
        &[d],
        &[a, d, b],
    )
    .and(|| {
        compare_sparse(
            "(lcoact⊗id)rcoact",
            "(id⊗rcoact)lcoact",
            &(&lc.kron(&ib) * rc),
            &(&ia.kron(rc) * lc),
            &[a, d, b],
            &[d],
        )
    })
    .and(|| {
        compare_sparse(
            "rcoact∘lact",
            "(lact⊗id)(id⊗rcoact)",
            &(rc * l),
            &(&l.kron(&ib) * &ia.kron(rc)),
            &[d, b],
            &[a, d],
        )
    })
    .and(|| {
        compare_sparse(
            "lcoact∘ract",
            "(id⊗ract)(lcoact⊗id)",
            &(lc * r),
            &(&ia.kron(r) * &lc.kron(&ib)),
            &[a, d],
            &[d, b],
        )
    });

    BimoduleReport {
        specialness,
        associativity,
        coassociativity,
        frobenius,
        commutation,
    }
}

/// Checks the report and converts a failure into an internal error.
pub(crate) fn ensure_valid(m: &CondensationBimodule, what: &str) -> Result<()> {
    let report = check_condensation_bimodule(m);
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::internal(format!(
            "{what} failed the bimodule check: {}",
            c.witness.as_ref().map_or("", |w| w.summary.as_str())
        ))),
    }
}

/// The algebra acting on itself from both sides.
pub fn regular_bimodule(a: &CondensationAlgebra) -> CondensationBimodule {
    let arc = Arc::new(a.clone());
    regular_over(arc)
}

pub(crate) fn regular_over(a: Arc<CondensationAlgebra>) -> CondensationBimodule {
    let (m, d) = (a.mult().clone(), a.comult().clone());
    CondensationBimodule::from_matrices(a.clone(), a, m.clone(), m, d.clone(), d)
        .expect("regular shapes agree")
}

/// The zero bimodule over `(a, b)`.
pub fn zero_bimodule(
    a: Arc<CondensationAlgebra>,
    b: Arc<CondensationAlgebra>,
) -> CondensationBimodule {
    let z = Matrix::zeros(0, 0);
    CondensationBimodule::from_matrices(a, b, z.clone(), z.clone(), z.clone(), z)
        .expect("empty shapes agree")
}

/// `(f, g)`: the algebra as a bimodule over `(a, ℚ)` and over `(ℚ, a)`.
pub fn restriction_modules(
    a: &CondensationAlgebra,
) -> (CondensationBimodule, CondensationBimodule) {
    let arc = Arc::new(a.clone());
    let q = Arc::new(unit_algebra());
    let n = a.dim();
    let id = Matrix::identity(n);
    let f = CondensationBimodule::from_matrices(
        arc.clone(),
        q.clone(),
        a.mult().clone(),
        id.clone(),
        a.comult().clone(),
        id.clone(),
    )
    .expect("left restriction shapes agree");
    let g = CondensationBimodule::from_matrices(
        q,
        arc,
        id.clone(),
        a.mult().clone(),
        id,
        a.comult().clone(),
    )
    .expect("right restriction shapes agree");
    (f, g)
}

/// A bimodule over unital algebras from its actions alone, with coactions
/// `lcoact(x) = Δ(1)·x` and `rcoact(x) = x·Δ(1)`. The result is re-checked.
pub fn from_unital_actions(
    left: Arc<CondensationAlgebra>,
    right: Arc<CondensationAlgebra>,
    lact: Matrix,
    ract: Matrix,
) -> Result<CondensationBimodule> {
    let ua = find_unit(&left)?.ok_or_else(|| Error::precondition("left algebra is not unital"))?;
    let ub =
        find_unit(&right)?.ok_or_else(|| Error::precondition("right algebra is not unital"))?;
    from_unital_actions_with_units(left, right, &ua, &ub, lact, ract)
}

/// [`from_unital_actions`] with the units supplied by the caller.
pub(crate) fn from_unital_actions_with_units(
    left: Arc<CondensationAlgebra>,
    right: Arc<CondensationAlgebra>,
    ua: &[Scalar],
    ub: &[Scalar],
    lact: Matrix,
    ract: Matrix,
) -> Result<CondensationBimodule> {
    let (d, a, b) = (lact.rows(), left.dim(), right.dim());
    if lact.cols() != a * d
        || ract.rows() != d
        || ract.cols() != d * b
        || ua.len() != a
        || ub.len() != b
    {
        return Err(Error::input(
            "from_unital_actions: action shapes do not match the algebras",
        ));
    }
    let pa = left.comult() * &Matrix::column_vector(ua.to_vec());
    let pb = right.comult() * &Matrix::column_vector(ub.to_vec());
    let lcoact = lcoact_from_idempotent(&lact, &pa);
    let rcoact = rcoact_from_idempotent(&ract, &pb);
    let m = CondensationBimodule::from_matrices(left, right, lact, ract, lcoact, rcoact)?;
    let report = check_condensation_bimodule(&m);
    match report.first_failure() {
        None => Ok(m),
        Some(c) => Err(Error::precondition(format!(
            "actions do not define a condensation bimodule: {}",
            c.witness.as_ref().map_or("", |w| w.summary.as_str())
        ))),
    }
}

/// `x ↦ p·x` for `p ∈ A⊗A` given as an `a² × 1` column.
pub(crate) fn lcoact_from_idempotent(lact: &Matrix, p: &Matrix) -> Matrix {
    let d = lact.rows();
    let a = lact.cols().checked_div(d).unwrap_or(0);
    // lcoact[(c, y), v] = Σ_c' p[c, c'] L[y, (c', v)]
    let mut lcoact = Matrix::zeros(a * d, d);
    for c in 0..a {
        for c2 in 0..a {
            let pc = &p[(c * a + c2, 0)];
            if pc.is_zero() {
                continue;
            }
            for y in 0..d {
                for v in 0..d {
                    let x = &lact[(y, c2 * d + v)];
                    if !x.is_zero() {
                        lcoact[(c * d + y, v)] += &(pc * x);
                    }
                }
            }
        }
    }
    lcoact
}

/// `x ↦ x·p` for `p ∈ B⊗B` given as a `b² × 1` column.
pub(crate) fn rcoact_from_idempotent(ract: &Matrix, p: &Matrix) -> Matrix {
    let d = ract.rows();
    let b = ract.cols().checked_div(d).unwrap_or(0);
    // rcoact[(y, j), v] = Σ_i R[y, (v, i)] p[i, j]
    let mut rcoact = Matrix::zeros(d * b, d);
    for i in 0..b {
        for j in 0..b {
            let pc = &p[(i * b + j, 0)];
            if pc.is_zero() {
                continue;
            }
            for y in 0..d {
                for v in 0..d {
                    let x = &ract[(y, v * b + i)];
                    if !x.is_zero() {
                        rcoact[(y * b + j, v)] += &(pc * x);
                    }
                }
            }
        }
    }
    rcoact
}

/// A bimodule from its actions: coactions from `Δ(1)` when both algebras are
/// unital, otherwise the image of the induced idempotent.
pub fn from_actions(
    left: Arc<CondensationAlgebra>,
    right: Arc<CondensationAlgebra>,
    lact: Matrix,
    ract: Matrix,
) -> Result<CondensationBimodule> {
    match (find_unit(&left)?, find_unit(&right)?) {
        (Some(ua), Some(ub)) => from_unital_actions_with_units(left, right, &ua, &ub, lact, ract),
        _ => induced_bimodule(left, right, &lact, &ract),
    }
}

/// `m ⊠ n` over `(A⊗C, B⊗D)`: the plain tensor product of a bimodule over
/// `(A, B)` and one over `(C, D)`.
pub fn external_tensor(
    m: &CondensationBimodule,
    n: &CondensationBimodule,
) -> Result<CondensationBimodule> {
    let left = Arc::new(tensor_algebra(&m.left, &n.left));
    let right = Arc::new(tensor_algebra(&m.right, &n.right));
    let (a, c) = (m.left.dim(), n.left.dim());
    let (b, e) = (m.right.dim(), n.right.dim());
    let (dm, dn) = (m.dim, n.dim);
    let d = dm * dn;
    let nz = |x: &Matrix| -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for r in 0..x.rows() {
            for col in 0..x.cols() {
                if !x[(r, col)].is_zero() {
                    out.push((r, col, x[(r, col)].clone()));
                }
            }
        }
        out
    };
    // (x⊗y)-products of two row-major triples (slow index, fast index).
    let pair = |p: &Matrix,
                q: &Matrix,
                out: &mut Matrix,
                place: &dyn Fn(usize, usize, usize, usize) -> (usize, usize)| {
        let qn = nz(q);
        for (r1, c1, x) in nz(p) {
            for (r2, c2, y) in &qn {
                let (r, col) = place(r1, c1, *r2, *c2);
                out[(r, col)] = &x * y;
            }
        }
    };
    let mut lact = Matrix::zeros(d, a * c * d);
    pair(&m.lact, &n.lact, &mut lact, &|y1, c1, y2, c2| {
        let (i, v1) = (c1 / dm, c1 % dm);
        let (k, v2) = (c2 / dn, c2 % dn);
        (y1 * dn + y2, (i * c + k) * d + v1 * dn + v2)
    });
    let mut ract = Matrix::zeros(d, d * b * e);
    pair(&m.ract, &n.ract, &mut ract, &|y1, c1, y2, c2| {
        let (v1, j) = (c1 / b, c1 % b);
        let (v2, l) = (c2 / e, c2 % e);
        (y1 * dn + y2, (v1 * dn + v2) * (b * e) + j * e + l)
    });
    let mut lcoact = Matrix::zeros(a * c * d, d);
    pair(&m.lcoact, &n.lcoact, &mut lcoact, &|r1, v1, r2, v2| {
        let (i, y1) = (r1 / dm, r1 % dm);
        let (k, y2) = (r2 / dn, r2 % dn);
        ((i * c + k) * d + y1 * dn + y2, v1 * dn + v2)
    });
    let mut rcoact = Matrix::zeros(d * b * e, d);
    pair(&m.rcoact, &n.rcoact, &mut rcoact, &|r1, v1, r2, v2| {
        let (y1, j) = (r1 / b, r1 % b);
        let (y2, l) = (r2 / e, r2 % e);
        ((y1 * dn + y2) * (b * e) + j * e + l, v1 * dn + v2)
    });
    CondensationBimodule::from_matrices(left, right, lact, ract, lcoact, rcoact)
}

/// `ℚⁿ` as column vectors, a bimodule over `(M_n, ℚ)` with `lcoact(e_i) = (1/n) Σ_k E_ik ⊗ e_k`.
pub fn column_module(mn: Arc<CondensationAlgebra>, n: usize) -> Result<CondensationBimodule> {
    if mn.dim() != n * n {
        return Err(Error::input("column_module: algebra is not M_n"));
    }
    let q = Arc::new(unit_algebra());
    let mut lact = Matrix::zeros(n, n * n * n);
    for i in 0..n {
        for j in 0..n {
            // E_ij · e_j = e_i
            lact[(i, (i * n + j) * n + j)] = Scalar::one();
        }
    }
    from_unital_actions(mn, q, lact, Matrix::identity(n))
}

/// `ℚⁿ` as row vectors, a bimodule over `(ℚ, M_n)`.
pub fn row_module(mn: Arc<CondensationAlgebra>, n: usize) -> Result<CondensationBimodule> {
    if mn.dim() != n * n {
        return Err(Error::input("row_module: algebra is not M_n"));
    }
    let q = Arc::new(unit_algebra());
    let mut ract = Matrix::zeros(n, n * n * n);
    for i in 0..n {
        for k in 0..n {
            // e_i · E_ik = e_k
            ract[(k, i * n * n + (i * n + k))] = Scalar::one();
        }
    }
    from_unital_actions(q, mn, Matrix::identity(n), ract)
}

/// Block-diagonal direct sum of two bimodules over the same algebra pair.
pub fn direct_sum_bimodules(
    m: &CondensationBimodule,
    n: &CondensationBimodule,
) -> Result<CondensationBimodule> {
    if !m.same_algebras(n) {
        return Err(Error::input("direct_sum_bimodules: algebra pairs differ"));
    }
    let (a, b) = (m.left.dim(), m.right.dim());
    let (p, q) = (m.dim, n.dim);
    let d = p + q;
    // Embeddings/projections of the summands.
    let inj = |off: usize, k: usize| {
        Matrix::from_fn(d, k, |i, j| {
            if i == off + j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    };
    let (i1, i2) = (inj(0, p), inj(p, q));
    let (p1, p2) = (i1.transpose(), i2.transpose());
    let (ia, ib) = (Matrix::identity(a), Matrix::identity(b));
    let sum = |x: Matrix, y: Matrix| &x + &y;
    let lact = sum(
        &(&i1 * &m.lact) * &ia.kron(&p1),
        &(&i2 * &n.lact) * &ia.kron(&p2),
    );
    let ract = sum(
        &(&i1 * &m.ract) * &p1.kron(&ib),
        &(&i2 * &n.ract) * &p2.kron(&ib),
    );
    let lcoact = sum(
        &(&ia.kron(&i1) * &m.lcoact) * &p1,
        &(&ia.kron(&i2) * &n.lcoact) * &p2,
    );
    let rcoact = sum(
        &(&i1.kron(&ib) * &m.rcoact) * &p1,
        &(&i2.kron(&ib) * &n.rcoact) * &p2,
    );
    CondensationBimodule::from_matrices(m.left.clone(), m.right.clone(), lact, ract, lcoact, rcoact)
}

/// Wire format. Tensor indices follow the table in the module docs.
#[derive(Serialize, Deserialize)]
pub struct BimoduleJson {
    pub left: AlgebraSource,
    pub right: AlgebraSource,
    pub dim: usize,
    pub lact: Vec<Vec<Vec<Scalar>>>,
    pub ract: Vec<Vec<Vec<Scalar>>>,
    pub lcoact: Vec<Vec<Vec<Scalar>>>,
    pub rcoact: Vec<Vec<Vec<Scalar>>>,
}

/// An algebra given inline or by a path to an algebra JSON file.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Inline(Box<CondensationAlgebra>),
    Ref(String),
}

fn tensor3(t: &[Vec<Vec<Scalar>>], ext: [usize; 3], name: &str) -> Result<()> {
    let ok = t.len() == ext[0]
        && t.iter()
            .all(|x| x.len() == ext[1] && x.iter().all(|y| y.len() == ext[2]));
    if ok {
        Ok(())
    } else {
        Err(Error::input(format!(
            "{name} must have extents {}x{}x{}",
            ext[0], ext[1], ext[2]
        )))
    }
}

impl BimoduleJson {
    /// Resolves algebra references with `load` and validates tensor extents.
    pub fn resolve(
        self,
        mut load: impl FnMut(&str) -> Result<CondensationAlgebra>,
    ) -> Result<CondensationBimodule> {
        let mut get = |s: AlgebraSource| -> Result<Arc<CondensationAlgebra>> {
            Ok(Arc::new(match s {
                AlgebraSource::Inline(a) => *a,
                AlgebraSource::Ref(path) => load(&path)?,
            }))
        };
        let left = get(self.left)?;
        let right = get(self.right)?;
        let (a, b, d) = (left.dim(), right.dim(), self.dim);
        tensor3(&self.lact, [a, d, d], "lact")?;
        tensor3(&self.ract, [d, b, d], "ract")?;
        tensor3(&self.lcoact, [d, a, d], "lcoact")?;
        tensor3(&self.rcoact, [d, d, b], "rcoact")?;
        let lact = Matrix::from_fn(d, a * d, |mp, im| self.lact[im / d][im % d][mp].clone());
        let ract = Matrix::from_fn(d, d * b, |mp, mj| self.ract[mj / b][mj % b][mp].clone());
        let lcoact = Matrix::from_fn(a * d, d, |imp, m| self.lcoact[m][imp / d][imp % d].clone());
        let rcoact = Matrix::from_fn(d * b, d, |mpj, m| self.rcoact[m][mpj / b][mpj % b].clone());
        CondensationBimodule::from_matrices(left, right, lact, ract, lcoact, rcoact)
    }
}

impl From<&CondensationBimodule> for BimoduleJson {
    fn from(m: &CondensationBimodule) -> Self {
        let (a, b, d) = (m.left.dim(), m.right.dim(), m.dim);
        let t3 = |x: usize, y: usize, z: usize, f: &dyn Fn(usize, usize, usize) -> Scalar| {
            (0..x)
                .map(|i| {
                    (0..y)
                        .map(|j| (0..z).map(|k| f(i, j, k)).collect())
                        .collect()
                })
                .collect()
        };
        BimoduleJson {
            left: AlgebraSource::Inline(Box::new((*m.left).clone())),
            right: AlgebraSource::Inline(Box::new((*m.right).clone())),
            dim: d,
            lact: t3(a, d, d, &|i, x, y| m.lact[(y, i * d + x)].clone()),
            ract: t3(d, b, d, &|x, j, y| m.ract[(y, x * b + j)].clone()),
            lcoact: t3(d, a, d, &|x, i, y| m.lcoact[(i * d + y, x)].clone()),
            rcoact: t3(d, d, b, &|x, y, j| m.rcoact[(y * b + j, x)].clone()),
        }
    }
}

impl Serialize for CondensationBimodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BimoduleJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CondensationBimodule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BimoduleJson::deserialize(d)?;
        raw.resolve(|path| {
            Err(Error::input(format!(
                "unresolved algebra reference {path:?}"
            )))
        })
        .map_err(serde::de::Error::custom)
    }
}
