use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CondensationBimodule;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

use crate::exactlin::{rank, Matrix, Scalar, SparseEchelon, SparseVec};

/// A structure-preserving linear map between two bimodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub source: CondensationBimodule,
    pub target: CondensationBimodule,
    pub map: Matrix,
}

impl Serialize for Intertwiner {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Intertwiner", 3)?;
        st.serialize_field("source_dim", &self.source.dim)?;
        st.serialize_field("target_dim", &self.target.dim)?;
        st.serialize_field("map", &self.map)?;
        st.end()
    }
}

impl Intertwiner {
    /// Exact re-check that `map` commutes with all structure maps.
    pub fn verify(&self) -> bool {
        is_intertwiner(&self.source, &self.target, &self.map)
    }

    pub fn is_invertible(&self) -> bool {
        self.map.is_square() && rank(&self.map) == self.map.rows()
    }

    pub fn identity(m: &CondensationBimodule) -> Self {
        Intertwiner {
            source: m.clone(),
            target: m.clone(),
            map: Matrix::identity(m.dim()),
        }
    }
}

/// Module structure seen by the linear solver. Coactions are optional so that
/// plain associative modules can reuse the same machinery.
#[derive(Clone, Copy)]
pub(crate) struct Actions<'a> {
    pub a: usize,
    pub b: usize,
    pub dim: usize,
    pub lact: &'a Matrix,
    pub ract: &'a Matrix,
    pub lcoact: Option<&'a Matrix>,
    pub rcoact: Option<&'a Matrix>,
}

impl<'a> From<&'a CondensationBimodule> for Actions<'a> {
    fn from(m: &'a CondensationBimodule) -> Self {
        Actions {
            a: m.left.dim(),
            b: m.right.dim(),
            dim: m.dim,
            lact: &m.lact,
            ract: &m.ract,
            lcoact: Some(&m.lcoact),
            rcoact: Some(&m.rcoact),
        }
    }
}

/// Sparse constraint rows, one block per structure map; unknown `(x, y)` of
/// `φ: M → N` sits at column `x·dM + y`.
fn constraint_rows(m: Actions<'_>, n: Actions<'_>) -> Vec<SparseVec> {
    let (a, b, dm, dn) = (m.a, m.b, m.dim, n.dim);
    let mut out = Vec::new();
    let mut flush = |rows: Vec<Vec<(usize, Scalar)>>| {
        out.extend(
            rows.into_iter()
                .map(SparseVec::from_pairs)
                .filter(|v| !v.is_zero()),
        );
    };

    // φ·lact_M − lact_N·(id ⊗ φ)
    let w = a * dm;
    let mut rows = vec![Vec::new(); dn * w];
    for x in 0..dn {
        for y in 0..dm {
            let u = x * dm + y;
            for col in 0..w {
                let v = &m.lact[(y, col)];
                if !v.is_zero() {
                    rows[x * w + col].push((u, v.clone()));
                }
            }
            for r in 0..dn {
                for i in 0..a {
                    let v = &n.lact[(r, i * dn + x)];
                    if !v.is_zero() {
                        rows[r * w + i * dm + y].push((u, -v));
                    }
                }
            }
        }
    }
    flush(rows);

    // φ·ract_M − ract_N·(φ ⊗ id)
    let w = dm * b;
    let mut rows = vec![Vec::new(); dn * w];
    for x in 0..dn {
        for y in 0..dm {
            let u = x * dm + y;
            for col in 0..w {
                let v = &m.ract[(y, col)];
                if !v.is_zero() {
                    rows[x * w + col].push((u, v.clone()));
                }
            }
            for r in 0..dn {
                for j in 0..b {
                    let v = &n.ract[(r, x * b + j)];
                    if !v.is_zero() {
                        rows[r * w + y * b + j].push((u, -v));
                    }
                }
            }
        }
    }
    flush(rows);

    if let (Some(lc_m), Some(lc_n)) = (m.lcoact, n.lcoact) {
        // (id ⊗ φ)·lcoact_M − lcoact_N·φ
        let mut rows = vec![Vec::new(); a * dn * dm];
        for x in 0..dn {
            for y in 0..dm {
                let u = x * dm + y;
                for i in 0..a {
                    for col in 0..dm {
                        let v = &lc_m[(i * dm + y, col)];
                        if !v.is_zero() {
                            rows[(i * dn + x) * dm + col].push((u, v.clone()));
                        }
                    }
                }
                for r in 0..a * dn {
                    let v = &lc_n[(r, x)];
                    if !v.is_zero() {
                        rows[r * dm + y].push((u, -v));
                    }
                }
            }
        }
        flush(rows);
    }

    if let (Some(rc_m), Some(rc_n)) = (m.rcoact, n.rcoact) {
        // (φ ⊗ id)·rcoact_M − rcoact_N·φ
        let mut rows = vec![Vec::new(); dn * b * dm];
        for x in 0..dn {
            for y in 0..dm {
                let u = x * dm + y;
                for j in 0..b {
                    for col in 0..dm {
                        let v = &rc_m[(y * b + j, col)];
                        if !v.is_zero() {
                            rows[(x * b + j) * dm + col].push((u, v.clone()));
                        }
                    }
                }
                for r in 0..dn * b {
                    let v = &rc_n[(r, x)];
                    if !v.is_zero() {
                        rows[r * dm + y].push((u, -v));
                    }
                }
            }
        }
        flush(rows);
    }
    out
}

/// Basis of intertwiners `M → N`, each as a `dN × dM` matrix: one per free
/// column of the reduced constraint rows.
pub(crate) fn hom_basis(m: Actions<'_>, n: Actions<'_>) -> Vec<Matrix> {
    let (dm, dn) = (m.dim, n.dim);
    let mut ech = SparseEchelon::new();
    for row in constraint_rows(m, n) {
        if ech.len() == dn * dm {
            break;
        }
        ech.insert(&row);
    }
    let pivots: BTreeSet<usize> = ech.pivots().collect();
    let free: Vec<usize> = (0..dn * dm).filter(|u| !pivots.contains(u)).collect();
    let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let mut out: Vec<Matrix> = free
        .iter()
        .map(|&u| {
            let mut phi = Matrix::zeros(dn, dm);
            phi[(u / dm, u % dm)] = Scalar::one();
            phi
        })
        .collect();
    for (p, row) in pivots.iter().zip(ech.vectors()) {
        for (u, c) in row.entries() {
            if let Some(&k) = slot.get(u) {
                out[k][(p / dm, p % dm)] = -c;
            }
        }
    }
    out
}

/// Basis of the space of intertwiners `m → n`.
pub fn hom_space(m: &CondensationBimodule, n: &CondensationBimodule) -> Result<Vec<Matrix>> {
    if !m.same_algebras(n) {
        return Err(Error::input(
            "hom_space: bimodules are over different algebra pairs",
        ));
    }
    Ok(hom_basis(m.into(), n.into()))
}

/// Whether `map: m → n` commutes with all four structure maps.
pub fn is_intertwiner(m: &CondensationBimodule, n: &CondensationBimodule, map: &Matrix) -> bool {
    if map.rows() != n.dim || map.cols() != m.dim || !m.same_algebras(n) {
        return false;
    }
    let ia = Matrix::identity(m.left.dim());
    let ib = Matrix::identity(m.right.dim());
    map * &m.lact == &n.lact * &ia.kron(map)
        && map * &m.ract == &n.ract * &map.kron(&ib)
        && &ia.kron(map) * &m.lcoact == &n.lcoact * map
        && &map.kron(&ib) * &m.rcoact == &n.rcoact * map
}

/// Deterministic search for integer coefficient vectors.
///
/// For `k ≤ 6` enumerates `{-2,…,2}^k` lexicographically (skipping zero);
/// otherwise draws up to 1000 vectors from a ChaCha stream seeded with `0x5EED`.
pub fn lattice_search<T>(k: usize, mut accept: impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    if k == 0 {
        return None;
    }
    if k <= 6 {
        let mut coeffs = vec![-2i64; k];
        loop {
            if coeffs.iter().any(|&c| c != 0) {
                if let Some(t) = accept(&coeffs) {
                    return Some(t);
                }
            }
            // odometer increment, last coordinate fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                if coeffs[pos] < 2 {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = -2;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..1000 {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            if let Some(t) = accept(&coeffs) {
                return Some(t);
            }
        }
    }
    None
}

/// `Σ cᵢ·basisᵢ`.
pub(crate) fn combine(basis: &[Matrix], coeffs: &[i64]) -> Matrix {
    let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = &acc + &b.scale(&Scalar::from_int(c));
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// `(dim Hom(m,n), dim Hom(m,m), dim Hom(n,n))`, when dimensions agree.
    pub hom_dims: Option<(usize, usize, usize)>,
    #[serde(skip)]
    pub witness: Option<Intertwiner>,
}

/// Decides isomorphism by the Hom-dimension criterion and, when positive,
/// produces a verified invertible intertwiner.
pub fn are_isomorphic(m: &CondensationBimodule, n: &CondensationBimodule) -> Result<IsoVerdict> {
    if !m.same_algebras(n) {
        return Err(Error::input(
            "are_isomorphic: bimodules are over different algebra pairs",
        ));
    }
    if m.dim != n.dim {
        return Ok(IsoVerdict {
            isomorphic: false,
            hom_dims: None,
            witness: None,
        });
    }
    let mn = hom_space(m, n)?;
    let mm = hom_space(m, m)?.len();
    let nn = hom_space(n, n)?.len();
    let dims = Some((mn.len(), mm, nn));
    if !(mn.len() == mm && mm == nn) {
        return Ok(IsoVerdict {
            isomorphic: false,
            hom_dims: dims,
            witness: None,
        });
    }
    if m == n {
        return Ok(IsoVerdict {
            isomorphic: true,
            hom_dims: dims,
            witness: Some(Intertwiner::identity(m)),
        });
    }
    if m.dim == 0 {
        let witness = Intertwiner {
            source: m.clone(),
            target: n.clone(),
            map: Matrix::zeros(0, 0),
        };
        return Ok(IsoVerdict {
            isomorphic: true,
            hom_dims: dims,
            witness: Some(witness),
        });
    }
    let found = lattice_search(mn.len(), |c| {
        let map = combine(&mn, c);
        (rank(&map) == m.dim).then_some(map)
    });
    let map = found.ok_or_else(|| {
        Error::internal("Hom-dimension criterion holds but no invertible intertwiner was found")
    })?;
    let witness = Intertwiner {
        source: m.clone(),
        target: n.clone(),
        map,
    };
    if !witness.verify() {
        return Err(Error::internal("isomorphism witness failed verification"));
    }
    Ok(IsoVerdict {
        isomorphic: true,
        hom_dims: dims,
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_order_is_lexicographic() {
        let mut seen = Vec::new();
        let _: Option<()> = lattice_search(2, |c| {
            seen.push(c.to_vec());
            None
        });
        assert_eq!(seen.len(), 24);
        assert_eq!(seen[0], vec![-2, -2]);
        assert_eq!(seen[1], vec![-2, -1]);
        assert_eq!(seen.last().unwrap(), &vec![2, 2]);
    }

    #[test]
    fn lattice_fallback_is_deterministic() {
        let run = || {
            let mut seen = Vec::new();
            let _: Option<()> = lattice_search(8, |c| {
                seen.push(c.to_vec());
                (seen.len() == 5).then_some(())
            });
            seen
        };
        assert_eq!(run(), run());
    }
}
