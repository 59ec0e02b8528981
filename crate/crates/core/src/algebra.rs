//! Condensation algebras in Vect over ℚ: nonunital special Frobenius algebras
//! given by structure constants.
//!
//! Index conventions. For basis `{b_i}` of dimension `n`, the composite index
//! of `b_i ⊗ b_j` is `i·n + j`. The multiplication is stored as the `n × n²`
//! matrix `M[k, i·n+j] = mult[i][j][k]` and the comultiplication as the
//! `n² × n` matrix `Δ[i·n+j, k] = comult[k][i][j]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{compare_sparse, Check};
use crate::error::{Error, Result};
use crate::exactlin::{inverse, kernel_basis, solve, swap_matrix, Matrix, Scalar, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraJson", into = "AlgebraJson")]
pub struct CondensationAlgebra {
    label: String,
    dim: usize,
    mult: Matrix,
    comult: Matrix,
}

/// Wire format: `mult[i][j][k]`, `comult[k][i][j]`, rationals as strings.
#[derive(Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub label: String,
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub comult: Vec<Vec<Vec<Scalar>>>,
}

impl TryFrom<AlgebraJson> for CondensationAlgebra {
    type Error = Error;

    fn try_from(raw: AlgebraJson) -> Result<Self> {
        let n = raw.dim;
        let extents_ok = |t: &Vec<Vec<Vec<Scalar>>>| {
            t.len() == n
                && t.iter()
                    .all(|a| a.len() == n && a.iter().all(|b| b.len() == n))
        };
        if !extents_ok(&raw.mult) || !extents_ok(&raw.comult) {
            return Err(Error::input(format!(
                "algebra {:?}: structure tensors must have extents {n}x{n}x{n}",
                raw.label
            )));
        }
        let mult = Matrix::from_fn(n, n * n, |k, ij| raw.mult[ij / n][ij % n][k].clone());
        let comult = Matrix::from_fn(n * n, n, |ij, k| raw.comult[k][ij / n][ij % n].clone());
        CondensationAlgebra::from_matrices(raw.label, mult, comult)
    }
}

impl From<CondensationAlgebra> for AlgebraJson {
    fn from(a: CondensationAlgebra) -> Self {
        let n = a.dim;
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a.mult[(k, i * n + j)].clone()).collect())
                    .collect()
            })
            .collect();
        let comult = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| (0..n).map(|j| a.comult[(i * n + j, k)].clone()).collect())
                    .collect()
            })
            .collect();
        AlgebraJson {
            dim: n,
            label: a.label,
            mult,
            comult,
        }
    }
}

/// Verdicts for the four condensation-algebra axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub specialness: Check,
    pub associativity: Check,
    pub coassociativity: Check,
    pub frobenius: Check,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.specialness.passed
            && self.associativity.passed
            && self.coassociativity.passed
            && self.frobenius.passed
    }
}

impl CondensationAlgebra {
    /// Builds an algebra from its `n × n²` multiplication and `n² × n` comultiplication.
    pub fn from_matrices(label: impl Into<String>, mult: Matrix, comult: Matrix) -> Result<Self> {
        let n = mult.rows();
        if mult.cols() != n * n || comult.rows() != n * n || comult.cols() != n {
            return Err(Error::input(format!(
                "structure maps have shapes {}x{} and {}x{}, expected {n}x{} and {}x{n}",
                mult.rows(),
                mult.cols(),
                comult.rows(),
                comult.cols(),
                n * n,
                n * n
            )));
        }
        Ok(CondensationAlgebra {
            label: label.into(),
            dim: n,
            mult,
            comult,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    /// Coefficient of `b_k` in `b_i · b_j`.
    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(k, i * self.dim + j)]
    }

    /// Coefficient of `b_i ⊗ b_j` in `Δ(b_k)`.
    pub fn comult_coeff(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.comult[(i * self.dim + j, k)]
    }

    /// Same tensors, ignoring the label.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.mult == other.mult && self.comult == other.comult
    }

    /// Product of two elements given in coordinates.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let xv = Matrix::column_vector(x.to_vec());
        let yv = Matrix::column_vector(y.to_vec());
        self.mult.matmul(&xv.kron(&yv)).column(0)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_by(&self, x: &[Scalar]) -> Matrix {
        let xv = Matrix::column_vector(x.to_vec());
        self.mult.matmul(&xv.kron(&Matrix::identity(self.dim)))
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_by(&self, x: &[Scalar]) -> Matrix {
        let xv = Matrix::column_vector(x.to_vec());
        self.mult.matmul(&Matrix::identity(self.dim).kron(&xv))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Rewrites the structure in the basis given by the columns of `t`.
    pub fn change_basis(&self, t: &Matrix) -> Result<Self> {
        let n = self.dim;
        if t.rows() != n || t.cols() != n {
            return Err(Error::input(
                "basis change must be square of the algebra dimension",
            ));
        }
        let tinv = inverse(t).ok_or_else(|| Error::input("basis change is not invertible"))?;
        let mult = &(&tinv * &self.mult) * &t.kron(t);
        let comult = &(&tinv.kron(&tinv) * &self.comult) * t;
        CondensationAlgebra::from_matrices(self.label.clone(), mult, comult)
    }
}

/// Checks specialness, associativity, coassociativity and the Frobenius relation exactly.
pub fn check_condensation_algebra(a: &CondensationAlgebra) -> AxiomReport {
    let n = a.dim;
    let id = SparseMatrix::identity(n);
    let m = SparseMatrix::from_dense(&a.mult);
    let d = SparseMatrix::from_dense(&a.comult);
    let specialness = compare_sparse("m∘Δ", "id", &(&m * &d), &id, &[n], &[n]);
    let associativity = compare_sparse(
        "m(m⊗id)",
        "m(id⊗m)",
        &(&m * &m.kron(&id)),
        &(&m * &id.kron(&m)),
        &[n],
        &[n, n, n],
    );
    let coassociativity = compare_sparse(
        "(Δ⊗id)Δ",
        "(id⊗Δ)Δ",
        &(&d.kron(&id) * &d),
        &(&id.kron(&d) * &d),
        &[n, n, n],
        &[n],
    );
    let dm = &d * &m;
    let frobenius = compare_sparse(
        "Δ∘m",
        "(id⊗m)(Δ⊗id)",
        &dm,
        &(&id.kron(&m) * &d.kron(&id)),
        &[n, n],
        &[n, n],
    )
    .and(|| {
        compare_sparse(
            "Δ∘m",
            "(m⊗id)(id⊗Δ)",
            &dm,
            &(&m.kron(&id) * &id.kron(&d)),
            &[n, n],
            &[n, n],
        )
    });
    AxiomReport {
        specialness,
        associativity,
        coassociativity,
        frobenius,
    }
}

/// The zero algebra (dimension 0), the zero object of ΣVect.
pub fn zero_algebra() -> CondensationAlgebra {
    CondensationAlgebra::from_matrices("0", Matrix::zeros(0, 0), Matrix::zeros(0, 0))
        .expect("empty shapes agree")
}

/// ℚ itself: `1·1 = 1`, `Δ(1) = 1⊗1`.
pub fn unit_algebra() -> CondensationAlgebra {
    CondensationAlgebra::from_matrices("Q", Matrix::identity(1), Matrix::identity(1))
        .expect("1x1 shapes agree")
}

/// Group algebra from a Cayley table (`table[g][h]` = index of `g·h`), with
/// `Δ(g) = (1/|G|) Σ_h (g·h⁻¹) ⊗ h`.
pub fn group_algebra(
    label: impl Into<String>,
    table: &[Vec<usize>],
) -> Result<CondensationAlgebra> {
    let n = table.len();
    if n == 0 {
        return Err(Error::input("group table is empty"));
    }
    if table
        .iter()
        .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
    {
        return Err(Error::input(
            "group table must be a square table of element indices",
        ));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::input(format!(
                        "group table not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::input("group table has no identity"))?;
    let mut inv = vec![0; n];
    for g in 0..n {
        inv[g] = (0..n)
            .find(|&h| table[g][h] == e && table[h][g] == e)
            .ok_or_else(|| Error::input(format!("element {g} has no inverse")))?;
    }
    let mut mult = Matrix::zeros(n, n * n);
    for g in 0..n {
        for h in 0..n {
            mult[(table[g][h], g * n + h)] = Scalar::one();
        }
    }
    let w = Scalar::ratio(1, n as i64);
    let mut comult = Matrix::zeros(n * n, n);
    for g in 0..n {
        for h in 0..n {
            comult[(table[g][inv[h]] * n + h, g)] = w.clone();
        }
    }
    CondensationAlgebra::from_matrices(label, mult, comult)
}

/// Cayley table of ℤ/n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Cayley table of S₃, elements as permutations of {0,1,2} in lexicographic order.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    perms
        .iter()
        .map(|g| {
            perms
                .iter()
                // (g·h)(x) = g(h(x))
                .map(|h| index([g[h[0]], g[h[1]], g[h[2]]]))
                .collect()
        })
        .collect()
}

/// `M_n(ℚ)` with basis `E_ij` at index `i·n + j` and `Δ(E_ij) = (1/n) Σ_k E_ik ⊗ E_kj`.
pub fn matrix_algebra(n: usize) -> Result<CondensationAlgebra> {
    if n == 0 {
        return Err(Error::input(
            "matrix_algebra(0): use zero_algebra() instead",
        ));
    }
    let d = n * n;
    let mut mult = Matrix::zeros(d, d * d);
    let mut comult = Matrix::zeros(d * d, d);
    let w = Scalar::ratio(1, n as i64);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij · E_jl = E_il
                mult[(i * n + l, (i * n + j) * d + (j * n + l))] = Scalar::one();
                // E_il ↦ (1/n) Σ_j E_ij ⊗ E_jl
                comult[((i * n + j) * d + (j * n + l), i * n + l)] = w.clone();
            }
        }
    }
    CondensationAlgebra::from_matrices(format!("M{n}"), mult, comult)
}

/// The nonunital ideal `span{E₁₁, E₁₂} ⊂ M₂(ℚ)` with `Δ(E₁ⱼ) = E₁₁ ⊗ E₁ⱼ`.
///
/// `E₁₁` is a left unit but not a right unit.
pub fn upper_row_ideal() -> CondensationAlgebra {
    let mut mult = Matrix::zeros(2, 4);
    // E11·E11 = E11, E11·E12 = E12, E12·x = 0
    mult[(0, 0)] = Scalar::one();
    mult[(1, 1)] = Scalar::one();
    let mut comult = Matrix::zeros(4, 2);
    comult[(0, 0)] = Scalar::one();
    comult[(1, 1)] = Scalar::one();
    CondensationAlgebra::from_matrices("E11+E12", mult, comult).expect("shapes agree")
}

/// Block-diagonal direct sum; basis of `a` first.
pub fn direct_sum(a: &CondensationAlgebra, b: &CondensationAlgebra) -> CondensationAlgebra {
    let (p, q) = (a.dim, b.dim);
    let n = p + q;
    let mut mult = Matrix::zeros(n, n * n);
    let mut comult = Matrix::zeros(n * n, n);
    let blocks = [(a, 0usize), (b, p)];
    for (alg, off) in blocks {
        let k = alg.dim;
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let m = alg.mult_coeff(i, j, l);
                    if !m.is_zero() {
                        mult[(off + l, (off + i) * n + off + j)] = m.clone();
                    }
                    let c = alg.comult_coeff(l, i, j);
                    if !c.is_zero() {
                        comult[((off + i) * n + off + j, off + l)] = c.clone();
                    }
                }
            }
        }
    }
    let label = format!("{}+{}", a.label, b.label);
    CondensationAlgebra::from_matrices(label, mult, comult).expect("block shapes agree")
}

/// `mult'[i][j][k] = mult[j][i][k]`, `comult'[k][i][j] = comult[k][j][i]`.
pub fn opposite(a: &CondensationAlgebra) -> CondensationAlgebra {
    let s = swap_matrix(a.dim, a.dim);
    let mult = &a.mult * &s;
    let comult = &s * &a.comult;
    CondensationAlgebra::from_matrices(format!("{}^op", a.label), mult, comult)
        .expect("swap preserves shapes")
}

/// Tensor product algebra `a ⊗ b` (index of `a` slow), with the product comultiplication.
pub fn tensor_algebra(a: &CondensationAlgebra, b: &CondensationAlgebra) -> CondensationAlgebra {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let nz = |m: &Matrix| -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m[(r, c)].is_zero() {
                    out.push((r, c, m[(r, c)].clone()));
                }
            }
        }
        out
    };
    let mut mult = Matrix::zeros(n, n * n);
    let bm = nz(&b.mult);
    for (k1, c1, x) in nz(&a.mult) {
        let (i1, j1) = (c1 / na, c1 % na);
        for (k2, c2, y) in &bm {
            let (i2, j2) = (c2 / nb, c2 % nb);
            mult[(k1 * nb + k2, (i1 * nb + i2) * n + j1 * nb + j2)] = &x * y;
        }
    }
    let mut comult = Matrix::zeros(n * n, n);
    let bd = nz(&b.comult);
    for (r1, k1, x) in nz(&a.comult) {
        let (i1, j1) = (r1 / na, r1 % na);
        for (r2, k2, y) in &bd {
            let (i2, j2) = (r2 / nb, r2 % nb);
            comult[((i1 * nb + i2) * n + j1 * nb + j2, k1 * nb + k2)] = &x * y;
        }
    }
    CondensationAlgebra::from_matrices(format!("{}⊗{}", a.label, b.label), mult, comult)
        .expect("product shapes agree")
}

/// The (necessarily unique) two-sided unit, if there is one.
pub fn find_unit(a: &CondensationAlgebra) -> Result<Option<Vec<Scalar>>> {
    let n = a.dim;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // rows (side, j, k): Σ_i u_i mult[i][j][k] = δ_jk and Σ_i u_i mult[j][i][k] = δ_jk
    let mut sys = Matrix::zeros(2 * n * n, n);
    let mut rhs = Matrix::zeros(2 * n * n, 1);
    for j in 0..n {
        for k in 0..n {
            let r = j * n + k;
            for i in 0..n {
                sys[(r, i)] = a.mult_coeff(i, j, k).clone();
                sys[(n * n + r, i)] = a.mult_coeff(j, i, k).clone();
            }
            if j == k {
                rhs[(r, 0)] = Scalar::one();
                rhs[(n * n + r, 0)] = Scalar::one();
            }
        }
    }
    let Some(u) = solve(&sys, &rhs)? else {
        return Ok(None);
    };
    if kernel_basis(&sys).cols() != 0 {
        return Err(Error::internal(
            "unit equations have a nonzero homogeneous solution",
        ));
    }
    Ok(Some(u.column(0)))
}

/// Columns form a basis of the center `{z : z·x = x·z ∀x}`.
pub fn center(a: &CondensationAlgebra) -> Matrix {
    let n = a.dim;
    let sys = Matrix::from_fn(n * n, n, |r, i| {
        let (j, k) = (r / n, r % n);
        a.mult_coeff(i, j, k) - a.mult_coeff(j, i, k)
    });
    kernel_basis(&sys)
}

/// `p = Δ(1)` as an `n² × 1` column, after checking `m(p) = 1` and `x·p = p·x`.
pub fn separability_idempotent(a: &CondensationAlgebra) -> Result<Matrix> {
    let unit = find_unit(a)?.ok_or_else(|| {
        Error::precondition(format!(
            "algebra {:?} has no unit; unitalize it first",
            a.label
        ))
    })?;
    let n = a.dim;
    let u = Matrix::column_vector(unit);
    let p = &a.comult * &u;
    if &a.mult * &p != u {
        return Err(Error::internal("m(Δ(1)) ≠ 1"));
    }
    let id = Matrix::identity(n);
    for x in 0..n {
        let bx = a.basis_vector(x);
        let left = &a.left_mult_by(&bx).kron(&id) * &p;
        let right = &id.kron(&a.right_mult_by(&bx)) * &p;
        if left != right {
            return Err(Error::internal(format!(
                "x·Δ(1) ≠ Δ(1)·x for basis element {x}"
            )));
        }
    }
    Ok(p)
}

/// A deterministic invertible basis change `(t, t⁻¹)` of size `n`.
///
/// `t = P·D·U·L` with `P` a permutation, `D` diagonal over {±1, ±2, ±1/2} and
/// `U`, `L` unitriangular with entries in {-1, 0, 1}.
pub fn basis_twist(n: usize, seed: u64) -> (Matrix, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = Matrix::from_fn(n, n, |i, j| {
        if perm[i] == j {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let diag = [
        Scalar::one(),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::ratio(1, 2),
        Scalar::ratio(-1, 2),
    ];
    let d = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[rng.gen_range(0..diag.len())].clone()
        } else {
            Scalar::zero()
        }
    });
    let mut tri = |upper: bool| {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else if (j > i) == upper {
                Scalar::from_int(rng.gen_range(-1..=1))
            } else {
                Scalar::zero()
            }
        })
    };
    let u = tri(true);
    let l = tri(false);
    let t = &(&(&p * &d) * &u) * &l;
    let tinv = inverse(&t).expect("product of invertible factors");
    (t, tinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_algebra_passes() {
        assert!(check_condensation_algebra(&unit_algebra()).passed());
        assert!(check_condensation_algebra(&zero_algebra()).passed());
    }

    #[test]
    fn z2_comultiplication() {
        let a = group_algebra("Z2", &cyclic_table(2)).unwrap();
        assert!(check_condensation_algebra(&a).passed());
        let h = Scalar::ratio(1, 2);
        // Δ(1) = (1/2)(1⊗1 + g⊗g)
        assert_eq!(a.comult_coeff(0, 0, 0), &h);
        assert_eq!(a.comult_coeff(0, 1, 1), &h);
        assert!(a.comult_coeff(0, 0, 1).is_zero());
    }

    #[test]
    fn trivial_group_is_q() {
        let a = group_algebra("1", &cyclic_table(1)).unwrap();
        assert!(a.same_structure(&unit_algebra()));
    }

    #[test]
    fn bad_group_tables() {
        assert!(group_algebra("x", &[]).is_err());
        assert!(group_algebra("x", &[vec![0, 1], vec![0, 1]]).is_err());
        assert!(group_algebra("x", &[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn unscaled_m2_fails_specialness() {
        let a = matrix_algebra(2).unwrap();
        let comult = a.comult().scale(&Scalar::from_int(2));
        let bad =
            CondensationAlgebra::from_matrices("M2 unscaled", a.mult().clone(), comult).unwrap();
        let report = check_condensation_algebra(&bad);
        assert!(!report.specialness.passed);
        assert_eq!(
            report.specialness.witness.as_ref().unwrap().summary,
            "m∘Δ = 2·id"
        );
    }

    #[test]
    fn m2_special_by_hand() {
        let a = matrix_algebra(2).unwrap();
        let e11 = Matrix::column_vector(a.basis_vector(0));
        assert_eq!(&(a.mult() * a.comult()) * &e11, e11);
        assert_eq!(matrix_algebra(1).unwrap().mult(), unit_algebra().mult());
        assert!(matrix_algebra(0).is_err());
    }

    #[test]
    fn units_and_centers() {
        let z2 = group_algebra("Z2", &cyclic_table(2)).unwrap();
        assert_eq!(find_unit(&z2).unwrap().unwrap(), z2.basis_vector(0));
        assert_eq!(find_unit(&upper_row_ideal()).unwrap(), None);
        assert_eq!(find_unit(&zero_algebra()).unwrap(), Some(vec![]));
        assert_eq!(center(&z2).cols(), 2);
        assert_eq!(center(&matrix_algebra(2).unwrap()).cols(), 1);
        let s3 = group_algebra("S3", &s3_table()).unwrap();
        assert_eq!(center(&s3).cols(), 3);
    }

    #[test]
    fn separability_examples() {
        assert_eq!(
            separability_idempotent(&unit_algebra()).unwrap(),
            Matrix::identity(1)
        );
        let z2 = group_algebra("Z2", &cyclic_table(2)).unwrap();
        let p = separability_idempotent(&z2).unwrap();
        let h = Scalar::ratio(1, 2);
        let z = Scalar::zero();
        assert_eq!(
            p,
            Matrix::column_vector(vec![h.clone(), z.clone(), z, h.clone()])
        );
        let m2 = matrix_algebra(2).unwrap();
        let p = separability_idempotent(&m2).unwrap();
        // (1/2) Σ_{i,k} E_ik ⊗ E_ki
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(p[((i * 2 + k) * 4 + (k * 2 + i), 0)], h);
            }
        }
        assert_eq!(p.nonzero_count(), 4);
        assert!(matches!(
            separability_idempotent(&upper_row_ideal()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn opposite_involution() {
        let m2 = matrix_algebra(2).unwrap();
        let op = opposite(&m2);
        assert!(check_condensation_algebra(&op).passed());
        assert!(opposite(&op).same_structure(&m2));
        let z3 = group_algebra("Z3", &cyclic_table(3)).unwrap();
        assert!(opposite(&z3).same_structure(&z3));
    }

    #[test]
    fn s3_opposite_via_inverse_map() {
        let s3 = group_algebra("S3", &s3_table()).unwrap();
        let table = s3_table();
        let inv: Vec<usize> = (0..6)
            .map(|g| (0..6).find(|&h| table[g][h] == 0).unwrap())
            .collect();
        let t = Matrix::from_fn(6, 6, |i, j| {
            if inv[j] == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        // t maps b_g ↦ b_{g⁻¹}; solve for the multiplicative relation t·m_op = m·(t⊗t)
        let op = opposite(&s3);
        assert_eq!(&t * op.mult(), s3.mult() * &t.kron(&t));
        assert_eq!(&t.kron(&t) * op.comult(), s3.comult() * &t);
    }

    #[test]
    fn direct_sums() {
        let q = unit_algebra();
        let qq = direct_sum(&q, &q);
        assert_eq!(qq.dim(), 2);
        assert!(qq.comult_coeff(1, 1, 1).is_one() && qq.comult_coeff(0, 0, 0).is_one());
        assert!(check_condensation_algebra(&qq).passed());
        let qm2 = direct_sum(&q, &matrix_algebra(2).unwrap());
        assert_eq!(qm2.dim(), 5);
        assert!(check_condensation_algebra(&qm2).passed());
        assert!(direct_sum(&qm2, &zero_algebra()).same_structure(&qm2));
    }

    #[test]
    fn twists_are_invertible_and_preserve_axioms() {
        let s3 = group_algebra("S3", &s3_table()).unwrap();
        let (t, tinv) = basis_twist(6, 7);
        assert_eq!(&t * &tinv, Matrix::identity(6));
        let tw = s3.change_basis(&t).unwrap();
        assert!(check_condensation_algebra(&tw).passed());
        assert_eq!(center(&tw).cols(), 3);
    }

    #[test]
    fn upper_row_ideal_passes() {
        assert!(check_condensation_algebra(&upper_row_ideal()).passed());
    }

    #[test]
    fn json_extent_mismatch_is_input_error() {
        let raw = r#"{"dim":2,"label":"x","mult":[[["1"]]],"comult":[[["1"]]]}"#;
        let err = serde_json::from_str::<CondensationAlgebra>(raw).unwrap_err();
        assert!(err.to_string().contains("extents"));
    }
}
