use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::unitalize::{unitalize, Unitalization};
use super::{MoritaWitness, SigmaObject};
use crate::algebra::CondensationAlgebra;
use crate::bimodule::{
    from_unital_actions_with_units, hom_basis, lattice_search, regular_bimodule, tensor_over,
    Actions, CondensationBimodule,
};
use crate::error::{Error, Result};
use crate::exactlin::{column_space, kernel_basis, rank, solve, Matrix, Scalar};

/// One isomorphism class of simple left modules of a unital algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleClass {
    pub dim: usize,
    pub multiplicity: usize,
    pub endo_dim: usize,
    /// Action of the algebra on a representative, `dim × (algebra dim · dim)`.
    #[serde(skip)]
    pub lact: Matrix,
}

/// The unitalization of an object with the simple-module inventory of its
/// regular left module. Computed once per object and reused across pairs.
#[derive(Clone, Debug)]
pub struct MoritaProfile {
    pub object: SigmaObject,
    pub unitalization: Unitalization,
    pub simples: Vec<SimpleClass>,
}

impl MoritaProfile {
    /// Sorted endomorphism dimensions, one per simple class.
    pub fn inventory(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.simples.iter().map(|s| s.endo_dim).collect();
        v.sort_unstable();
        v
    }

    pub fn is_split(&self) -> bool {
        self.simples.iter().all(|s| s.endo_dim == 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaVerdict {
    pub equivalent: bool,
    pub inventories: (Vec<usize>, Vec<usize>),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MoritaWitness>,
}

pub fn morita_profile(e: &SigmaObject) -> Result<MoritaProfile> {
    let unitalization = unitalize(e)?;
    let simples = decompose_regular(unitalization.e_prime.algebra())?;
    Ok(MoritaProfile {
        object: e.clone(),
        unitalization,
        simples,
    })
}

pub fn morita_equivalent(a: &SigmaObject, b: &SigmaObject) -> Result<MoritaVerdict> {
    morita_from_profiles(&morita_profile(a)?, &morita_profile(b)?)
}

/// Decides Morita equivalence from two profiles and, on a positive answer,
/// builds and verifies a witness.
pub fn morita_from_profiles(pa: &MoritaProfile, pb: &MoritaProfile) -> Result<MoritaVerdict> {
    let inventories = (pa.inventory(), pb.inventory());
    let (a, b) = (&pa.object, &pb.object);
    if a.algebra().same_structure(b.algebra()) {
        let reg = regular_bimodule(a.algebra());
        let witness = MoritaWitness::construct(reg.clone(), reg)?;
        return Ok(MoritaVerdict {
            equivalent: true,
            inventories,
            witness: Some(witness),
        });
    }
    if inventories.0 != inventories.1 {
        return Ok(MoritaVerdict {
            equivalent: false,
            inventories,
            witness: None,
        });
    }
    if !(pa.is_split() && pb.is_split()) {
        return Err(Error::Unsupported(format!(
            "{:?} and {:?} have matching inventories with non-split simples; deciding them needs a field extension of ℚ",
            a.label(),
            b.label()
        )));
    }
    let ua = &pa.unitalization;
    let ub = &pb.unitalization;
    let (p, q) = pairing_bimodules(ua, &pa.simples, ub, &pb.simples)?;
    // a → a' → b' → b and back
    let m = tensor_over(&tensor_over(&ua.witness.m, &p)?.module, &ub.witness.n)?.module;
    let n = tensor_over(&tensor_over(&ub.witness.m, &q)?.module, &ua.witness.n)?.module;
    let witness = MoritaWitness::construct(m, n)?;
    Ok(MoritaVerdict {
        equivalent: true,
        inventories,
        witness: Some(witness),
    })
}

/// `P = ⊕ S_i ⊗ T_i*` over `(a', b')` and `Q = ⊕ T_i ⊗ S_i*` over `(b', a')`
/// for simples paired in order.
fn pairing_bimodules(
    ua: &Unitalization,
    sa: &[SimpleClass],
    ub: &Unitalization,
    sb: &[SimpleClass],
) -> Result<(CondensationBimodule, CondensationBimodule)> {
    let order = |s: &[SimpleClass]| {
        let mut idx: Vec<usize> = (0..s.len()).collect();
        idx.sort_by_key(|&i| (s[i].endo_dim, s[i].dim));
        idx
    };
    let pairs: Vec<(&SimpleClass, &SimpleClass)> = order(sa)
        .into_iter()
        .zip(order(sb))
        .map(|(i, j)| (&sa[i], &sb[j]))
        .collect();
    let (alg_a, alg_b) = (ua.e_prime.algebra(), ub.e_prime.algebra());
    let p = sum_of_products(alg_a, alg_b, pairs.iter().map(|(s, t)| (*s, *t)))?;
    let p =
        from_unital_actions_with_units(alg_a.clone(), alg_b.clone(), &ua.unit, &ub.unit, p.0, p.1)?;
    let q = sum_of_products(alg_b, alg_a, pairs.iter().map(|(s, t)| (*t, *s)))?;
    let q =
        from_unital_actions_with_units(alg_b.clone(), alg_a.clone(), &ub.unit, &ua.unit, q.0, q.1)?;
    Ok((p, q))
}

/// Actions of `⊕ S_i ⊗ T_i*` where `S_i` is a left `A`-module and `T_i` a left
/// `B`-module; `T*` is a right module by `(ξ·b)(t) = ξ(b·t)`.
fn sum_of_products<'a>(
    alg_a: &Arc<CondensationAlgebra>,
    alg_b: &Arc<CondensationAlgebra>,
    pairs: impl Iterator<Item = (&'a SimpleClass, &'a SimpleClass)> + Clone,
) -> Result<(Matrix, Matrix)> {
    let (a, b) = (alg_a.dim(), alg_b.dim());
    let total: usize = pairs.clone().map(|(s, t)| s.dim * t.dim).sum();
    let mut lact = Matrix::zeros(total, a * total);
    let mut ract = Matrix::zeros(total, total * b);
    let mut off = 0;
    for (s, t) in pairs {
        let (ds, dt) = (s.dim, t.dim);
        for u in 0..ds {
            for v in 0..dt {
                let row = off + u * dt + v;
                for i in 0..a {
                    for u2 in 0..ds {
                        let x = &s.lact[(u, i * ds + u2)];
                        if !x.is_zero() {
                            lact[(row, i * total + off + u2 * dt + v)] = x.clone();
                        }
                    }
                }
                for v2 in 0..dt {
                    for j in 0..b {
                        // (ξ_{v2}·b_j)(e_v) = ξ_{v2}(b_j·e_v) = L_T[v2, j·dt + v]
                        let x = &t.lact[(v2, j * dt + v)];
                        if !x.is_zero() {
                            ract[(row, (off + u * dt + v2) * b + j)] = x.clone();
                        }
                    }
                }
            }
        }
        off += ds * dt;
    }
    Ok((lact, ract))
}

struct Piece {
    basis: Matrix,
    lact: Matrix,
    endo: Vec<Matrix>,
}

fn left_actions<'a>(n: usize, w: usize, lact: &'a Matrix, empty: &'a Matrix) -> Actions<'a> {
    Actions {
        a: n,
        b: 0,
        dim: w,
        lact,
        ract: empty,
        lcoact: None,
        rcoact: None,
    }
}

/// Left action of `a` restricted to the submodule spanned by the columns of `basis`.
fn restrict(a: &CondensationAlgebra, basis: &Matrix) -> Result<Matrix> {
    let n = a.dim();
    let w = basis.cols();
    let acted = a.mult() * &Matrix::identity(n).kron(basis);
    let coords =
        solve(basis, &acted)?.ok_or_else(|| Error::internal("subspace is not a submodule"))?;
    debug_assert_eq!(coords.cols(), n * w);
    Ok(coords)
}

fn piece(a: &CondensationAlgebra, basis: Matrix) -> Result<Piece> {
    let lact = restrict(a, &basis)?;
    let empty = Matrix::zeros(basis.cols(), 0);
    let act = left_actions(a.dim(), basis.cols(), &lact, &empty);
    let endo = hom_basis(act, act);
    Ok(Piece { basis, lact, endo })
}

/// Decomposes the regular left module of a unital algebra into simple
/// submodules and groups them into isomorphism classes.
pub fn decompose_regular(a: &CondensationAlgebra) -> Result<Vec<SimpleClass>> {
    let n = a.dim();
    let mut todo = vec![piece(a, Matrix::identity(n))?];
    let mut simple: Vec<(Piece, usize)> = Vec::new();
    while let Some(p) = todo.pop() {
        if p.basis.cols() == 0 {
            continue;
        }
        match split_piece(&p) {
            Some((k, i)) => {
                todo.push(piece(a, &p.basis * &i)?);
                todo.push(piece(a, &p.basis * &k)?);
            }
            None => {
                let d = certify_simple(&p)?;
                simple.push((p, d));
            }
        }
    }
    simple.sort_by(|x, y| {
        x.0.basis
            .cols()
            .cmp(&y.0.basis.cols())
            .then_with(|| pivot_key(&x.0.basis).cmp(&pivot_key(&y.0.basis)))
    });

    let mut classes: Vec<(Piece, usize, usize)> = Vec::new();
    for (p, d) in simple {
        let w = p.basis.cols();
        let empty_p = Matrix::zeros(w, 0);
        let found = classes.iter_mut().find(|(rep, _, _)| {
            let empty_r = Matrix::zeros(rep.basis.cols(), 0);
            rep.basis.cols() == w
                && !hom_basis(
                    left_actions(n, w, &p.lact, &empty_p),
                    left_actions(n, w, &rep.lact, &empty_r),
                )
                .is_empty()
        });
        match found {
            Some(c) => c.1 += 1,
            None => classes.push((p, 1, d)),
        }
    }
    let mut total = 0;
    for (rep, mult, d) in &classes {
        let w = rep.basis.cols();
        if w != mult * d {
            return Err(Error::internal(format!(
                "simple of dim {w} occurs {mult} times with endo dim {d}; the algebra is not semisimple over ℚ"
            )));
        }
        total += mult * w;
    }
    if total != n {
        return Err(Error::internal(
            "simple summands do not exhaust the regular module",
        ));
    }
    Ok(classes
        .into_iter()
        .map(|(rep, multiplicity, endo_dim)| SimpleClass {
            dim: rep.basis.cols(),
            multiplicity,
            endo_dim,
            lact: rep.lact,
        })
        .collect())
}

fn pivot_key(basis: &Matrix) -> Vec<usize> {
    (0..basis.cols())
        .map(|c| {
            (0..basis.rows())
                .find(|&r| !basis[(r, c)].is_zero())
                .unwrap_or(usize::MAX)
        })
        .collect()
}

/// Finds a Fitting decomposition `W = ker ψ ⊕ im ψ` with `ψ = (φ − λ)^w` for
/// an endomorphism `φ` with a rational eigenvalue. Returns `(ker, im)` as
/// coordinate bases inside the piece.
fn split_piece(p: &Piece) -> Option<(Matrix, Matrix)> {
    if p.endo.len() <= 1 {
        return None;
    }
    let w = p.basis.cols();
    let attempt = |phi: &Matrix| -> Option<(Matrix, Matrix)> {
        for lambda in rational_roots(&minimal_polynomial(phi)) {
            let shifted = phi - &Matrix::identity(w).scale(&lambda);
            let mut psi = Matrix::identity(w);
            for _ in 0..w {
                psi = &psi * &shifted;
            }
            let r = rank(&psi);
            if r > 0 && r < w {
                return Some((kernel_basis(&psi), column_space(&psi)));
            }
        }
        None
    };
    p.endo.iter().find_map(attempt).or_else(|| {
        lattice_search(p.endo.len(), |c| {
            attempt(&crate::bimodule::combine(&p.endo, c))
        })
    })
}

/// Endomorphism dimension of an indecomposable piece, provided the piece is
/// provably simple: trivial End, or End a field of degree at most 3.
fn certify_simple(p: &Piece) -> Result<usize> {
    let k = p.endo.len();
    if k == 1 {
        return Ok(1);
    }
    let commutative = p
        .endo
        .iter()
        .enumerate()
        .all(|(i, x)| p.endo[i + 1..].iter().all(|y| x * y == y * x));
    if commutative && k <= 3 {
        let generates = |phi: &Matrix| {
            let poly = minimal_polynomial(phi);
            (poly.len() == k + 1 && rational_roots(&poly).is_empty()).then_some(())
        };
        if p.endo
            .iter()
            .find_map(generates)
            .or_else(|| lattice_search(k, |c| generates(&crate::bimodule::combine(&p.endo, c))))
            .is_some()
        {
            return Ok(k);
        }
    }
    Err(Error::Unsupported(format!(
        "a summand of dim {} with {k}-dimensional endomorphisms could not be split or certified simple over ℚ",
        p.basis.cols()
    )))
}

/// Monic minimal polynomial, coefficients from degree 0 upward.
fn minimal_polynomial(phi: &Matrix) -> Vec<Scalar> {
    let w = phi.rows();
    let mut powers = vec![Matrix::identity(w)];
    loop {
        let s = powers.len();
        let stack = Matrix::from_fn(w * w, s, |r, c| powers[c].entries()[r].clone());
        let next = &powers[s - 1] * phi;
        let target = Matrix::column_vector(next.entries().to_vec());
        if let Ok(Some(x)) = solve(&stack, &target) {
            let mut poly: Vec<Scalar> = (0..s).map(|i| -&x[(i, 0)]).collect();
            poly.push(Scalar::one());
            return poly;
        }
        powers.push(next);
    }
}

/// Rational roots of a polynomial (coefficients from degree 0), in increasing order.
fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    // clear denominators
    let lcm = poly.iter().fold(BigInt::from(1), |acc, c| {
        num_integer::Integer::lcm(&acc, &c.denom())
    });
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c.numer() * &lcm) / c.denom())
        .collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Scalar::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else {
            return roots;
        };
        let eval = |x: &Scalar| {
            ints.iter()
                .rev()
                .fold(Scalar::zero(), |acc, c| {
                    &(&acc * x) + &Scalar::from(num_rational::BigRational::from_integer(c.clone()))
                })
                .is_zero()
        };
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = Scalar::from(num_rational::BigRational::new(p * sign, q.clone()));
                    if !roots.contains(&cand) && eval(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Positive divisors of `n` by trial division; `None` when `|n|` is too large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_small_polynomials() {
        let p = |c: &[i64]| c.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        // x² − 1
        assert_eq!(
            rational_roots(&p(&[-1, 0, 1])),
            vec![Scalar::from_int(-1), Scalar::one()]
        );
        // x² + x + 1
        assert!(rational_roots(&p(&[1, 1, 1])).is_empty());
        // 2x² − x = x(2x − 1)
        assert_eq!(
            rational_roots(&p(&[0, -1, 2])),
            vec![Scalar::zero(), Scalar::ratio(1, 2)]
        );
    }

    #[test]
    fn minimal_polynomial_of_rotation() {
        let r = Matrix::from_ints(&[[0, -1], [1, 0]]);
        assert_eq!(
            minimal_polynomial(&r),
            vec![Scalar::one(), Scalar::zero(), Scalar::one()]
        );
        assert_eq!(
            minimal_polynomial(&Matrix::identity(3)),
            vec![Scalar::from_int(-1), Scalar::one()]
        );
    }
}
