use condensate::algebra::{
    cyclic_table, direct_sum, group_algebra, matrix_algebra, s3_table, unit_algebra,
    upper_row_ideal, CondensationAlgebra,
};
use condensate::exactlin::rank;
use condensate::hamiltonian::*;

fn s3() -> CondensationAlgebra {
    group_algebra("S3", &s3_table()).unwrap()
}

fn spec(a: CondensationAlgebra, n: usize, b: Boundary) -> ChainSpec {
    ChainSpec::new(a, n, b).unwrap()
}

#[test]
fn documented_ground_dims() {
    let qq = direct_sum(&unit_algebra(), &unit_algebra());
    let z2 = group_algebra("Z2", &cyclic_table(2)).unwrap();
    let cases = [
        (qq, 3, Boundary::Periodic, 2),
        (s3(), 2, Boundary::Periodic, 3),
        (matrix_algebra(2).unwrap(), 2, Boundary::Periodic, 1),
        (z2, 3, Boundary::Open, 2),
    ];
    for (a, n, b, expect) in cases {
        let s = spec(a, n, b);
        let report = ground_space(&s, true).unwrap();
        assert!(report.commuting.passed);
        assert_eq!(
            report.ground_dim,
            expect,
            "{} n={n} {b:?}",
            s.algebra().label()
        );
        assert_eq!(predicted_ground_dim(&s).unwrap(), expect);
        // dense brute force on the full space
        let projs = build_projectors(&s).unwrap();
        let order: Vec<usize> = (0..projs.len()).collect();
        let prod = ordered_product(&projs, &order, report.space_dim).to_dense();
        assert_eq!(rank(&prod), expect);
        let basis = report.ground_basis.unwrap();
        assert_eq!(&prod * &basis, basis);
    }
}

#[test]
fn s3_periodic_two_commute() {
    let projs = build_projectors(&spec(s3(), 2, Boundary::Periodic)).unwrap();
    assert_eq!(projs.len(), 2);
    assert_eq!(projs[0].rows(), 36);
    assert!(verify_commuting(&projs).passed);
}

#[test]
fn order_independence_and_translation_invariance() {
    let s = spec(s3(), 3, Boundary::Periodic);
    let base = ground_space(&s, false).unwrap().ground_dim;
    for order in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        assert_eq!(ground_dim_in_order(&s, &order).unwrap(), base);
    }
    let projs = build_projectors(&s).unwrap();
    let prod = ordered_product(&projs, &[0, 1, 2], 216);
    let shift = cyclic_shift(&s).unwrap();
    assert_eq!(shift.mul(&prod), prod.mul(&shift));
    assert_eq!(sparse_rank(&prod), base);
}

#[test]
fn nonunital_has_no_prediction() {
    let s = spec(upper_row_ideal(), 3, Boundary::Open);
    assert!(predicted_ground_dim(&s).is_err());
    let report = ground_space(&s, false).unwrap();
    assert!(report.commuting.passed);
}

#[test]
fn largest_chain_under_cap() {
    let s = spec(matrix_algebra(3).unwrap(), 4, Boundary::Periodic);
    let report = ground_space(&s, false).unwrap();
    assert_eq!(report.space_dim, 6561);
    assert!(report.commuting.passed);
    assert_eq!(report.ground_dim, 1);
    let over = spec(matrix_algebra(3).unwrap(), 5, Boundary::Open);
    assert!(matches!(
        ground_space(&over, false),
        Err(condensate::Error::Resource {
            required: 59049,
            ..
        })
    ));
}
