use proptest::prelude::*;

use condensate::algebra::{
    basis_twist, check_condensation_algebra, cyclic_table, direct_sum, group_algebra,
    matrix_algebra, s3_table, tensor_algebra, unit_algebra, upper_row_ideal, CondensationAlgebra,
};
use condensate::bimodule::{
    are_isomorphic, check_condensation_bimodule, coequalizer_oracle, regular_bimodule,
    restriction_modules, tensor_epsilon, tensor_over,
};
use condensate::exactlin::{
    inverse, kernel_basis, rank, split_idempotent, split_idempotent_in_order, Matrix, Scalar,
    SparseMatrix,
};
use condensate::hamiltonian::{ground_dim_in_order, ground_space, Boundary, ChainSpec};

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-9i64..10, 1i64..6).prop_map(|(n, d)| Scalar::ratio(n, d)),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Scalar::ratio(n, d)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| Scalar::from_int(v[i * cols + j])))
}

fn battery() -> Vec<CondensationAlgebra> {
    vec![
        unit_algebra(),
        group_algebra("Z2", &cyclic_table(2)).unwrap(),
        group_algebra("Z3", &cyclic_table(3)).unwrap(),
        group_algebra("S3", &s3_table()).unwrap(),
        matrix_algebra(2).unwrap(),
        direct_sum(&unit_algebra(), &matrix_algebra(2).unwrap()),
        upper_row_ideal(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ops_agree_with_bigrational(x in scalar(), y in scalar()) {
        let (a, b) = (x.to_rational(), y.to_rational());
        prop_assert_eq!((&x + &y).to_rational(), &a + &b);
        prop_assert_eq!((&x - &y).to_rational(), &a - &b);
        prop_assert_eq!((&x * &y).to_rational(), &a * &b);
        if !y.is_zero() {
            prop_assert_eq!((&x / &y).to_rational(), &a / &b);
        }
        prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        prop_assert_eq!(Scalar::from(a.clone()), x.clone());
        let printed: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(printed, x);
    }

    #[test]
    fn scalar_canonical_form(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000, k in 1i64..1_000_000) {
        let x = Scalar::ratio(n * k, -d * k);
        prop_assert_eq!(x.clone(), Scalar::ratio(-n, d));
        prop_assert!(x.denom() > 0.into());
        prop_assert_eq!(num_integer::Integer::gcd(&x.numer(), &x.denom()), if n == 0 { x.denom() } else { 1.into() });
    }

    #[test]
    fn rank_nullity(m in matrix(5, 7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), 7);
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn sparse_and_dense_products_agree(a in matrix(4, 6), b in matrix(6, 3), c in matrix(2, 2)) {
        let (sa, sb, sc) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b), SparseMatrix::from_dense(&c));
        prop_assert_eq!((&sa * &sb).to_dense(), &a * &b);
        prop_assert_eq!(sa.mul_sequential(&sb), sa.mul(&sb));
        prop_assert_eq!(sa.kron(&sc).to_dense(), a.kron(&c));
        prop_assert_eq!(a.matmul_sequential(&b), a.matmul(&b));
    }

    #[test]
    fn idempotent_splits_are_related(
        t in matrix(5, 5),
        r in 0usize..6,
        order in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        prop_assume!(rank(&t) == 5);
        let tinv = inverse(&t).unwrap();
        let d = Matrix::from_fn(5, 5, |i, j| if i == j && i < r { Scalar::one() } else { Scalar::zero() });
        let p = &(&t * &d) * &tinv;
        let s = split_idempotent(&p).unwrap();
        prop_assert!(s.verify());
        prop_assert_eq!(s.rank(), r);
        let s2 = split_idempotent_in_order(&p, &order).unwrap();
        prop_assert!(s2.verify());
        let phi = &s2.f * &s.g;
        let psi = &s.f * &s2.g;
        prop_assert_eq!(&phi * &psi, Matrix::identity(r));
        prop_assert_eq!(&psi * &phi, Matrix::identity(r));
    }

    #[test]
    fn axioms_survive_basis_change(idx in 0usize..7, seed in any::<u64>()) {
        let a = &battery()[idx];
        let (t, _) = basis_twist(a.dim(), seed);
        let twisted = a.change_basis(&t).unwrap();
        prop_assert!(check_condensation_algebra(&twisted).passed());
    }

    #[test]
    fn checker_agrees_with_dense_oracle(idx in 0usize..7, row in 0usize..64, col in 0usize..8, v in -2i64..3) {
        let a = &battery()[idx];
        let n = a.dim();
        let mut d = a.comult().clone();
        d[(row % (n * n), col % n)] += &Scalar::from_int(v);
        let m = a.mult().clone();
        let bad = CondensationAlgebra::from_matrices("perturbed", m.clone(), d.clone()).unwrap();
        let r = check_condensation_algebra(&bad);
        let id = Matrix::identity(n);
        prop_assert_eq!(r.specialness.passed, &m * &d == id);
        prop_assert_eq!(r.associativity.passed, &m * &m.kron(&id) == &m * &id.kron(&m));
        prop_assert_eq!(r.coassociativity.passed, &d.kron(&id) * &d == &id.kron(&d) * &d);
        let dm = &d * &m;
        let frob = dm == &id.kron(&m) * &d.kron(&id) && dm == &m.kron(&id) * &id.kron(&d);
        prop_assert_eq!(r.frobenius.passed, frob);
        for c in [&r.specialness, &r.associativity, &r.coassociativity, &r.frobenius] {
            if let Some(w) = &c.witness {
                prop_assert_ne!(&w.lhs, &w.rhs);
            }
        }
    }

    #[test]
    fn scaled_comultiplication_names_the_scale(idx in 0usize..7, c in 2i64..9) {
        let a = &battery()[idx];
        let d = a.comult().scale(&Scalar::from_int(c));
        let r = check_condensation_algebra(&CondensationAlgebra::from_matrices("scaled", a.mult().clone(), d).unwrap());
        prop_assert_eq!(r.specialness.witness.unwrap().summary, format!("m∘Δ = {c}·id"));
    }

    #[test]
    fn sums_and_products_are_condensation_algebras(i in 0usize..5, j in 0usize..5) {
        let b = battery();
        let (x, y) = (&b[i], &b[j]);
        prop_assert!(check_condensation_algebra(&direct_sum(x, y)).passed());
        if x.dim() * y.dim() <= 12 {
            prop_assert!(check_condensation_algebra(&tensor_algebra(x, y)).passed());
        }
    }

    #[test]
    fn epsilon_rank_matches_coequalizer_under_twists(idx in 0usize..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = &battery()[idx];
        let (f, g) = restriction_modules(a);
        let (t1, _) = basis_twist(g.dim(), s1);
        let (t2, _) = basis_twist(f.dim(), s2);
        let (g, f) = (g.change_basis(&t1).unwrap(), f.change_basis(&t2).unwrap());
        prop_assert!(check_condensation_bimodule(&g).passed());
        let eps = tensor_epsilon(&g, &f).unwrap();
        prop_assert_eq!(&eps * &eps, eps.clone());
        prop_assert_eq!(rank(&eps), coequalizer_oracle(&g, &f).unwrap());
    }

    #[test]
    fn regular_unit_law_under_twists(idx in 0usize..7, seed in any::<u64>()) {
        let a = &battery()[idx];
        let reg = regular_bimodule(a);
        let (t, _) = basis_twist(a.dim(), seed);
        let m = reg.change_basis(&t).unwrap();
        let composite = tensor_over(&reg, &m).unwrap().module;
        let v = are_isomorphic(&composite, &m).unwrap();
        prop_assert!(v.isomorphic);
        let w = v.witness.unwrap();
        prop_assert!(w.verify() && w.is_invertible());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ground_dim_is_order_independent(
        idx in 0usize..7,
        n in 2usize..4,
        periodic in any::<bool>(),
        shuffled in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let a = battery()[idx].clone();
        let boundary = if periodic { Boundary::Periodic } else { Boundary::Open };
        let spec = ChainSpec::new(a, n, boundary).unwrap();
        let report = ground_space(&spec, false).unwrap();
        prop_assert!(report.commuting.passed);
        let order: Vec<usize> = shuffled.into_iter().filter(|&k| k < report.projector_count).collect();
        prop_assert_eq!(ground_dim_in_order(&spec, &order).unwrap(), report.ground_dim);
    }
}
