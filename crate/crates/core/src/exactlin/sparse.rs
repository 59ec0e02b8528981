//! Sparse vectors and matrices for operators on tensor-product spaces that are
//! too large to hold densely.

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{Matrix, Scalar};
use crate::par::if_rayon;

/// Strictly increasing indices with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

fn collect(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    SparseVec {
        entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
    }
}

impl SparseVec {
    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { entries }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = BTreeMap::new();
        for (i, x) in pairs {
            *acc.entry(i).or_insert_with(Scalar::zero) += x;
        }
        collect(acc)
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(k, _)| *k)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map_or(usize::MAX, |e| e.0);
            let kb = b.get(j).map_or(usize::MAX, |e| e.0);
            if ka < kb {
                out.push(a[i].clone());
                i += 1;
            } else if kb < ka {
                out.push((kb, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((ka, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::default();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }
}

/// Column-compressed sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.entries.last().is_none_or(|e| e.0 < rows)));
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix::from_columns(n, (0..n).map(SparseVec::unit).collect())
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| SparseVec::from_dense(&m.column(j)))
            .collect();
        SparseMatrix::from_columns(m.rows(), columns)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in &c.entries {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (k, x) in &v.entries {
            for (i, y) in &self.columns[*k].entries {
                *acc.entry(*i).or_insert_with(Scalar::zero) += x * y;
            }
        }
        collect(acc)
    }

    /// `self · rhs`, columns computed independently (in parallel when enabled).
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "sparse matmul shape mismatch");
        let columns = if_rayon!(
            rhs.columns.par_iter().map(|c| self.apply(c)).collect(),
            rhs.columns.iter().map(|c| self.apply(c)).collect()
        );
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    pub fn mul_sequential(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "sparse matmul shape mismatch");
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    /// Kronecker product with the left factor slow, as for [`Matrix::kron`].
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols * rhs.cols);
        for a in &self.columns {
            for b in &rhs.columns {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in &a.entries {
                    for (k, y) in &b.entries {
                        entries.push((i * rhs.rows + k, x * y));
                    }
                }
                columns.push(SparseVec { entries });
            }
        }
        SparseMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            columns,
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// First entry in row-major order where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize, Scalar, Scalar)> {
        let mut best: Option<(usize, usize)> = None;
        for (j, (a, b)) in self.columns.iter().zip(&other.columns).enumerate() {
            if a == b {
                continue;
            }
            let d = a.add_scaled(&Scalar::from_int(-1), b);
            let i = d.entries[0].0;
            if best.is_none_or(|(bi, bj)| (i, j) < (bi, bj)) {
                best = Some((i, j));
            }
        }
        best.map(|(i, j)| {
            let get = |m: &SparseMatrix| m.columns[j].get(i).cloned().unwrap_or_else(Scalar::zero);
            (i, j, get(self), get(other))
        })
    }

    /// Conjugation by the index permutation `i ↦ perm[i]`: the result maps
    /// `e_{perm[j]}` to `Σ_i self[i, j]·e_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> SparseMatrix {
        let mut columns = vec![SparseVec::default(); self.cols];
        for (j, c) in self.columns.iter().enumerate() {
            columns[perm[j]] =
                SparseVec::from_pairs(c.entries.iter().map(|(i, x)| (perm[*i], x.clone())));
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }
}

impl std::ops::Mul for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        SparseMatrix::mul(self, rhs)
    }
}

/// Row-major multi-index arithmetic on `⊗_l V_l` (leg 0 slowest).
#[derive(Clone, Debug)]
pub struct ProductSpace {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ProductSpace {
    pub fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for l in (0..dims.len().saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * dims[l + 1];
        }
        ProductSpace {
            dims: dims.to_vec(),
            strides,
            total: dims.iter().product(),
        }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn stride(&self, leg: usize) -> usize {
        self.strides[leg]
    }

    pub fn coord(&self, idx: usize, leg: usize) -> usize {
        (idx / self.strides[leg]) % self.dims[leg]
    }

    /// `local` acting on `legs` (listed order = local Kronecker order), identity elsewhere.
    pub fn embed(&self, legs: &[usize], local: &SparseMatrix) -> SparseMatrix {
        let local_dims: Vec<usize> = legs.iter().map(|&l| self.dims[l]).collect();
        let local_space = ProductSpace::new(&local_dims);
        assert_eq!(
            local.rows(),
            local_space.dim(),
            "local operator does not match its legs"
        );
        let build = |idx: usize| {
            let mut base = idx;
            let mut li = 0;
            for (k, &l) in legs.iter().enumerate() {
                let c = self.coord(idx, l);
                base -= c * self.strides[l];
                li += c * local_space.strides[k];
            }
            SparseVec::from_pairs(local.columns[li].entries.iter().map(|(r, x)| {
                let mut out = base;
                for (k, &l) in legs.iter().enumerate() {
                    out += local_space.coord(*r, k) * self.strides[l];
                }
                (out, x.clone())
            }))
        };
        let columns = if_rayon!(
            (0..self.total).into_par_iter().map(build).collect(),
            (0..self.total).map(build).collect()
        );
        SparseMatrix {
            rows: self.total,
            cols: self.total,
            columns,
        }
    }

    /// Index permutation induced by moving leg `l` to position `sigma[l]`.
    pub fn leg_permutation(&self, sigma: &[usize]) -> Vec<usize> {
        let mut new_dims = vec![0; self.dims.len()];
        for (l, &s) in sigma.iter().enumerate() {
            new_dims[s] = self.dims[l];
        }
        let target = ProductSpace::new(&new_dims);
        (0..self.total)
            .map(|idx| {
                sigma
                    .iter()
                    .enumerate()
                    .map(|(l, &s)| self.coord(idx, l) * target.strides[s])
                    .sum()
            })
            .collect()
    }
}

/// A fully reduced echelon basis of a subspace, keyed by pivot index. The
/// basis depends only on the span, never on insertion order.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    basis: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.basis.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.keys().copied()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        // Subtracting a reduced basis vector never introduces another pivot.
        let hits: Vec<usize> = v
            .entries
            .iter()
            .map(|e| e.0)
            .filter(|k| self.basis.contains_key(k))
            .collect();
        for p in hits {
            if let Some(c) = r.get(p).cloned() {
                r = r.add_scaled(&-c, &self.basis[&p]);
            }
        }
        r
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((q, lead)) = r.entries.first().cloned() else {
            return false;
        };
        let r = r.scale(&lead.recip());
        for b in self.basis.values_mut() {
            if let Some(c) = b.get(q).cloned() {
                *b = b.add_scaled(&-c, &r);
            }
        }
        self.basis.insert(q, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the basis (pivot order), or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.basis
                .keys()
                .map(|&p| v.get(p).cloned().unwrap_or_else(Scalar::zero))
                .collect(),
        )
    }

    /// Basis as the columns of a dense `n × len` matrix.
    pub fn to_dense(&self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, self.len());
        for (k, b) in self.basis.values().enumerate() {
            for (i, x) in b.entries() {
                m[(*i, k)] = x.clone();
            }
        }
        m
    }
}

/// Image of the product of pairwise-commuting idempotents, `im(P_k ⋯ P_1)`,
/// computed as `P_k(⋯ P_1(V))` one factor at a time.
pub fn common_image(ops: &[SparseMatrix], n: usize) -> SparseEchelon {
    let mut current: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    for op in ops {
        let images: Vec<SparseVec> = if_rayon!(
            current.par_iter().map(|v| op.apply(v)).collect(),
            current.iter().map(|v| op.apply(v)).collect()
        );
        let mut ech = SparseEchelon::new();
        for v in &images {
            ech.insert(v);
        }
        current = ech.vectors().cloned().collect();
    }
    let mut ech = SparseEchelon::new();
    for v in &current {
        ech.insert(v);
    }
    ech
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_matches_kron() {
        let a = Matrix::from_ints(&[[1, 2], [0, 3]]);
        let space = ProductSpace::new(&[2, 3, 2]);
        let local = SparseMatrix::from_dense(&a);
        assert_eq!(
            space.embed(&[0], &local).to_dense(),
            a.kron(&Matrix::identity(6))
        );
        assert_eq!(
            space.embed(&[2], &local).to_dense(),
            Matrix::identity(6).kron(&a)
        );
    }

    #[test]
    fn embed_on_two_legs() {
        let s = super::super::swap_matrix(2, 2);
        let space = ProductSpace::new(&[2, 2, 2]);
        // swap on legs (0, 2) is the permutation (x, y, z) ↦ (z, y, x)
        let full = space
            .embed(&[0, 2], &SparseMatrix::from_dense(&s))
            .to_dense();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert!(full[(z * 4 + y * 2 + x, x * 4 + y * 2 + z)].is_one());
                }
            }
        }
    }

    #[test]
    fn echelon_is_order_independent() {
        let vs = [
            SparseVec::from_dense(&[1, 2, 0, 1].map(Scalar::from_int)),
            SparseVec::from_dense(&[0, 1, 1, 0].map(Scalar::from_int)),
            SparseVec::from_dense(&[1, 3, 1, 1].map(Scalar::from_int)),
        ];
        let mut a = SparseEchelon::new();
        let mut b = SparseEchelon::new();
        for v in &vs {
            a.insert(v);
        }
        for v in vs.iter().rev() {
            b.insert(v);
        }
        assert_eq!(a.len(), 2);
        assert_eq!(a.to_dense(4), b.to_dense(4));
        assert_eq!(a.coordinates(&vs[2]).unwrap().len(), 2);
        assert!(a.coordinates(&SparseVec::unit(3)).is_none());
    }

    #[test]
    fn permuted_conjugates() {
        let m = Matrix::from_ints(&[[1, 2, 0], [0, 3, 0], [4, 0, 5]]);
        let perm = [2, 0, 1];
        let p = Matrix::from_fn(3, 3, |i, j| {
            if perm[j] == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let pinv = p.transpose();
        let expect = &(&p * &m) * &pinv;
        assert_eq!(
            SparseMatrix::from_dense(&m).permuted(&perm).to_dense(),
            expect
        );
    }
}
