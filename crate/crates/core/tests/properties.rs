use cyclotome_core::chain::{normalized_chains, ChainComplex, Ring, SparseMatrix};
use cyclotome_core::cyclic::{cyclic_nerve, FiniteMonoid};
use cyclotome_core::hochschild::{hh, hodge_data, GradedAlgebra, HHRange, HochschildComplex};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_algebra() -> impl Strategy<Value = GradedAlgebra> {
    prop_oneof![
        (1i64..7).prop_map(|d| GradedAlgebra::square_zero(Ring::Q, d).unwrap()),
        (1i64..4, 1usize..4).prop_map(|(d, k)| GradedAlgebra::truncated_polynomial(2 * d, k).unwrap()),
        (1usize..5, prop::sample::select(vec![Ring::Q, Ring::Fp(2), Ring::Fp(3)]))
            .prop_map(|(n, f)| GradedAlgebra::monoid_algebra(&FiniteMonoid::cyclic_group(n), f).unwrap()),
    ]
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (SparseMatrix, SparseMatrix) {
    let mut p = cyclotome_core::chain::int_identity(n);
    let mut q = cyclotome_core::chain::int_identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let c = BigInt::from(c);
        for k in 0..n {
            let add = &c * &p[j][k];
            p[i][k] += add;
            let sub = &c * &q[k][i];
            q[k][j] -= sub;
        }
    }
    (SparseMatrix::from_dense_integers(&p, n), SparseMatrix::from_dense_integers(&q, n))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn hochschild_operator_identities(a in small_algebra(), s_max in 1usize..4, normalized in any::<bool>()) {
        let cx = HochschildComplex::new(&a, s_max, normalized).unwrap();
        prop_assert!(cx.check_identities().all_hold());
    }

    #[test]
    fn normalization_invariance(a in small_algebra(), top in 0usize..3) {
        let n = hh(&a, HHRange::Simplicial(top), true).unwrap();
        let u = hh(&a, HHRange::Simplicial(top), false).unwrap();
        prop_assert_eq!(n.bigraded, u.bigraded);
    }

    #[test]
    fn hodge_contract_on_commutative_algebras(a in small_algebra(), s_max in 1usize..5) {
        prop_assume!(a.field() == Ring::Q);
        let cx = HochschildComplex::new(&a, s_max, true).unwrap();
        prop_assert!(hodge_data(&cx).unwrap().check_contract(&cx).holds());
    }

    #[test]
    fn homology_is_basis_independent(
        n in 2usize..5,
        ops in prop::collection::vec((0usize..64, 0usize..64, -2i64..=2), 0..12),
    ) {
        let x = cyclic_nerve(&FiniteMonoid::cyclic_group(n).to_category(), 3).unwrap();
        let c: ChainComplex = normalized_chains(&x, Ring::Z, 3).unwrap();
        let before = c.homology(0..=2).unwrap();
        let mut d = c.clone();
        for k in c.lo()..=c.hi() {
            let (p, p_inv) = unimodular(c.rank(k), &ops);
            d = d.change_basis(k, &p, &p_inv).unwrap();
        }
        prop_assert_eq!(d.homology(0..=2).unwrap(), before);
    }
}
