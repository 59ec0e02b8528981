use std::sync::Arc;

use condensate::algebra::{
    cyclic_table, direct_sum, group_algebra, matrix_algebra, s3_table, tensor_algebra,
    unit_algebra, upper_row_ideal, CondensationAlgebra,
};
use condensate::bimodule::{
    are_isomorphic, external_tensor, regular_bimodule, CondensationBimodule,
};
use condensate::exactlin::Matrix;
use condensate::karoubi::*;

fn obj(a: CondensationAlgebra) -> SigmaObject {
    SigmaObject::new(a).unwrap()
}

fn z(n: usize) -> SigmaObject {
    obj(group_algebra(format!("Z{n}"), &cyclic_table(n)).unwrap())
}

fn qq() -> CondensationAlgebra {
    direct_sum(&unit_algebra(), &unit_algebra())
}

#[test]
fn unitalize_examples() {
    let q = obj(unit_algebra());
    let u = unitalize(&q).unwrap();
    assert_eq!(u.e_prime.dim(), 1);
    assert_eq!(u.matches_source(&q), Some(true));
    assert!(u.witness.verify());

    let z3 = z(3);
    let u = unitalize(&z3).unwrap();
    assert_eq!(u.matches_source(&z3), Some(true));
    let t = u.algebra_iso.clone().unwrap();
    let moved = u.e_prime.algebra().change_basis(&t).unwrap();
    let v = are_isomorphic(&regular_bimodule(&moved), &regular_bimodule(z3.algebra())).unwrap();
    assert!(v.isomorphic);

    let row = obj(upper_row_ideal());
    let u = unitalize(&row).unwrap();
    assert_eq!(u.e_prime.dim(), 4);
    assert!(u.algebra_iso.is_none());
    assert!(condensate::algebra::separability_idempotent(u.e_prime.algebra()).is_ok());
    assert!(u.witness.verify());
    assert!(morita_equivalent(&row, &u.e_prime).unwrap().equivalent);
}

#[test]
fn unitalize_is_idempotent() {
    let row = obj(upper_row_ideal());
    let once = unitalize(&row).unwrap().e_prime;
    let twice = unitalize(&once).unwrap();
    assert_eq!(twice.matches_source(&once), Some(true));
}

#[test]
fn simple_inventories() {
    let inv = |a: SigmaObject| morita_profile(&a).unwrap().inventory();
    assert_eq!(inv(obj(unit_algebra())), vec![1]);
    assert_eq!(inv(z(2)), vec![1, 1]);
    assert_eq!(inv(z(3)), vec![1, 2]);
    assert_eq!(
        inv(obj(group_algebra("S3", &s3_table()).unwrap())),
        vec![1, 1, 1]
    );
    assert_eq!(inv(obj(matrix_algebra(2).unwrap())), vec![1]);
    assert_eq!(
        inv(obj(direct_sum(
            &unit_algebra(),
            &matrix_algebra(2).unwrap()
        ))),
        vec![1, 1]
    );
    assert_eq!(inv(obj(upper_row_ideal())), vec![1]);
}

#[test]
fn morita_examples() {
    let m2 = obj(matrix_algebra(2).unwrap());
    let q = obj(unit_algebra());
    let v = morita_equivalent(&m2, &m2).unwrap();
    assert!(v.equivalent);
    let v = morita_equivalent(&m2, &q).unwrap();
    assert!(v.equivalent);
    let w = v.witness.unwrap();
    assert!(w.verify());
    assert_eq!((w.m.dim(), w.n.dim()), (2, 2));
    assert!(!morita_equivalent(&z(2), &q).unwrap().equivalent);
    let v = morita_equivalent(
        &z(2),
        &obj(direct_sum(&unit_algebra(), &matrix_algebra(2).unwrap())),
    )
    .unwrap();
    assert!(v.equivalent && v.witness.unwrap().verify());
}

#[test]
fn coactions_are_unique_for_unital_algebras() {
    for a in [unit_algebra(), qq(), matrix_algebra(2).unwrap()] {
        let dims = coaction_solution_dims(&regular_bimodule(&a)).unwrap();
        assert_eq!(dims, (true, 0, true, 0), "{}", a.label());
    }
}

fn trivial_over_q(v: &CondensationAlgebra) -> CondensationBimodule {
    let q = Arc::new(unit_algebra());
    let id = Matrix::identity(v.dim());
    CondensationBimodule::from_matrices(q.clone(), q, id.clone(), id.clone(), id.clone(), id)
        .unwrap()
}

#[test]
fn condense_examples() {
    // regular(e) with e's own structure gives e back
    for a in [qq(), matrix_algebra(2).unwrap()] {
        let e = obj(a.clone());
        let data = MonadData {
            bimodule: regular_bimodule(&a),
            mult: a.mult().clone(),
            comult: a.comult().clone(),
        };
        let r = condense_in_sigma(&e, &data).unwrap();
        assert!(r.object.unwrap().algebra().same_structure(&a));
    }
    // over ℚ any condensation algebra condenses to itself
    let q = obj(unit_algebra());
    let s3 = group_algebra("S3", &s3_table()).unwrap();
    let data = MonadData {
        bimodule: trivial_over_q(&s3),
        mult: s3.mult().clone(),
        comult: s3.comult().clone(),
    };
    assert!(condense_in_sigma(&q, &data)
        .unwrap()
        .object
        .unwrap()
        .algebra()
        .same_structure(&s3));
    // e ⊗ (ℚ⊕ℚ) over e = ℚ⊕ℚ
    let e = qq();
    let inner = qq();
    let big = tensor_algebra(&e, &inner);
    let bim = external_tensor(&regular_bimodule(&e), &trivial_over_q(&inner)).unwrap();
    let bim = CondensationBimodule::from_matrices(
        Arc::new(e.clone()),
        Arc::new(e.clone()),
        bim.lact().clone(),
        bim.ract().clone(),
        bim.lcoact().clone(),
        bim.rcoact().clone(),
    )
    .unwrap();
    let data = MonadData {
        bimodule: bim,
        mult: big.mult().clone(),
        comult: big.comult().clone(),
    };
    let r = condense_in_sigma(&obj(e), &data).unwrap();
    assert_eq!(r.object.unwrap().dim(), 4);
}

#[test]
fn condense_reports_commutation_failure() {
    // ℚ⊕ℚ acting on itself, but with the factors of the monad swapped
    let e = qq();
    let swap = Matrix::from_ints(&[[0, 1], [1, 0]]);
    let mult = &swap * e.mult();
    let comult = e.comult() * &swap;
    let data = MonadData {
        bimodule: regular_bimodule(&e),
        mult,
        comult,
    };
    let r = condense_in_sigma(&obj(e), &data).unwrap();
    assert!(r.object.is_none());
    assert!(!(r.balance.passed && r.commutation.passed));
}

#[test]
fn dual_objects_small() {
    for a in [
        unit_algebra(),
        matrix_algebra(2).unwrap(),
        upper_row_ideal(),
    ] {
        let d = dual_object(&obj(a.clone())).unwrap();
        assert_eq!(d.path, ZigzagPath::Dense);
        assert!(d.passed(), "{}", a.label());
    }
}

#[test]
fn dual_object_paths_agree() {
    for a in [z(2), z(3), obj(matrix_algebra(2).unwrap())] {
        let dense = dual_object_dense(&a).unwrap();
        let fact = dual_object_factorized(&a).unwrap();
        assert!(dense.passed() && fact.passed(), "{}", a.label());
        assert_eq!(dense.zigzag_a.hom_dims, fact.zigzag_a.hom_dims);
    }
}

#[test]
fn dual_object_s3() {
    let d = dual_object(&obj(group_algebra("S3", &s3_table()).unwrap())).unwrap();
    assert_eq!(d.path, ZigzagPath::Factorized);
    assert!(d.passed());
}
