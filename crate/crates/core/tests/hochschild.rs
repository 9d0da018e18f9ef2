use cyclotome_core::chain::{normalized_chains, Ring};
use cyclotome_core::cyclic::{cyclic_nerve, linearize, FiniteMonoid};
use cyclotome_core::hochschild::{
    adams_checks, dual_hh, hc, hh, hodge_classes, hodge_data, induced_on_homology, sphere_model, GradedAlgebra,
    HHRange, HHTable, HochschildComplex,
};
use num_rational::BigRational;

fn c2(field: Ring) -> GradedAlgebra {
    GradedAlgebra::monoid_algebra(&FiniteMonoid::cyclic_group(2), field).unwrap()
}

fn algebras() -> Vec<(GradedAlgebra, usize)> {
    vec![
        (GradedAlgebra::ground(Ring::Q).unwrap(), 5),
        (c2(Ring::Q), 5),
        (c2(Ring::Fp(2)), 5),
        (GradedAlgebra::monoid_algebra(&FiniteMonoid::cyclic_group(3), Ring::Q).unwrap(), 4),
        (GradedAlgebra::monoid_algebra(&FiniteMonoid::symmetric_group_3(), Ring::Q).unwrap(), 2),
        (sphere_model(1, true).unwrap(), 6),
        (sphere_model(1, false).unwrap(), 6),
        (GradedAlgebra::square_zero(Ring::Q, 1).unwrap(), 5),
        (GradedAlgebra::truncated_polynomial(2, 2).unwrap(), 4),
    ]
}

/// `rank 1` in total degrees `2ni` and `2ni + 2n + 1`, zero elsewhere.
fn odd_sphere_pattern(n: i64, degree: i64) -> usize {
    let period = 2 * n;
    let hit = |d: i64| d >= 0 && d % period == 0;
    usize::from(hit(degree) || hit(degree - (2 * n + 1)))
}

#[test]
fn operator_identities_hold() {
    for (a, s_max) in algebras() {
        for normalized in [false, true] {
            let cx = HochschildComplex::new(&a, s_max, normalized).unwrap();
            let ids = cx.check_identities();
            assert!(ids.all_hold(), "{ids:?} normalized={normalized}");
            assert_eq!(ids.cycle_order.is_some(), !normalized);
        }
    }
}

#[test]
fn complex_dimensions() {
    let cx = HochschildComplex::new(&c2(Ring::Q), 4, false).unwrap();
    for s in 0..=4 {
        assert_eq!(cx.dim(s), 1 << (s + 1));
    }
    let cx = HochschildComplex::new(&c2(Ring::Q), 4, true).unwrap();
    for s in 0..=4 {
        assert_eq!(cx.dim(s), 2);
    }
    let cx = HochschildComplex::new(&sphere_model(1, true).unwrap(), 4, true).unwrap();
    for s in 0..=4 {
        assert_eq!(cx.dim(s), 2);
        assert_eq!(cx.internal_degrees(s), &[3 * s as i64, 3 * s as i64 + 3]);
    }
}

#[test]
fn unsigned_module_is_linearized_nerve() {
    for g in [FiniteMonoid::cyclic_group(2), FiniteMonoid::cyclic_group(3)] {
        let a = GradedAlgebra::monoid_algebra(&g, Ring::Q).unwrap();
        let cx = HochschildComplex::new(&a, 3, false).unwrap();
        let nerve = cyclic_nerve(&g.to_category(), 3).unwrap();
        assert_eq!(cx.unsigned_cyclic_module().unwrap(), linearize(&nerve, Ring::Q, 3).unwrap());
    }
}

#[test]
fn group_algebra_matches_nerve() {
    for field in [Ring::Q, Ring::Fp(2), Ring::Fp(3)] {
        let table = hh(&c2(field), HHRange::Simplicial(5), true).unwrap();
        let nerve = cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 6).unwrap();
        let chains = normalized_chains(&nerve, field, 6).unwrap().homology(0..=5).unwrap();
        assert_eq!(table.rank_vector(), chains.ranks(), "{field}");
    }
    // HH(F_2[C_2]) has rank 2 in every degree; over Q only degree 0 survives
    assert_eq!(hh(&c2(Ring::Fp(2)), HHRange::Simplicial(5), true).unwrap().rank_vector(), vec![2; 6]);
    assert_eq!(hh(&c2(Ring::Q), HHRange::Simplicial(5), true).unwrap().rank_vector(), vec![2, 0, 0, 0, 0, 0]);
}

#[test]
fn normalized_and_unnormalized_agree() {
    for (a, s_max) in algebras() {
        let top = s_max.min(5) - 1;
        let n = hh(&a, HHRange::Simplicial(top), true).unwrap();
        let u = hh(&a, HHRange::Simplicial(top), false).unwrap();
        assert_eq!(n.bigraded, u.bigraded);
    }
    for a in [c2(Ring::Q), sphere_model(1, true).unwrap()] {
        let n = hh(&a, HHRange::Simplicial(5), true).unwrap();
        let u = hh(&a, HHRange::Simplicial(5), false).unwrap();
        assert_eq!(n, HHTable { normalized: true, ..u });
    }
}

#[test]
fn odd_sphere_models() {
    for n in [1i64, 2] {
        let a = sphere_model(n as usize, true).unwrap();
        let table = hh(&a, HHRange::Total(0, 12), true).unwrap();
        for d in 0..=12 {
            assert_eq!(table.rank(d), Some(odd_sphere_pattern(n, d)), "n={n} degree {d}");
        }
    }
}

#[test]
fn even_square_zero_has_rank_one_everywhere() {
    // H^*(L S^2; Q) has rank 1 in every degree >= 0
    let table = hh(&sphere_model(1, false).unwrap(), HHRange::Total(0, 10), true).unwrap();
    assert_eq!(table.rank_vector(), vec![1; 11]);
}

#[test]
fn total_windows_need_the_gap() {
    assert!(hh(&c2(Ring::Q), HHRange::Total(0, 3), true).is_err());
    assert!(hh(&sphere_model(1, true).unwrap(), HHRange::Total(0, 3), false).is_err());
}

#[test]
fn cyclic_homology() {
    let ground = hc(&GradedAlgebra::ground(Ring::Q).unwrap(), 6).unwrap();
    assert_eq!(ground.ranks(), vec![1, 0, 1, 0, 1, 0, 1]);
    let q_c2 = hc(&c2(Ring::Q), 5).unwrap();
    assert_eq!(q_c2.ranks(), vec![2, 0, 2, 0, 2, 0]);
    let short = hc(&c2(Ring::Fp(2)), 3).unwrap();
    let long = hc(&c2(Ring::Fp(2)), 5).unwrap();
    assert_eq!(short.ranks(), long.ranks()[..4].to_vec());
}

#[test]
fn hodge_contract() {
    for a in [
        sphere_model(1, true).unwrap(),
        sphere_model(1, false).unwrap(),
        c2(Ring::Q),
        GradedAlgebra::monoid_algebra(&FiniteMonoid::cyclic_group(3), Ring::Q).unwrap(),
        GradedAlgebra::truncated_polynomial(2, 2).unwrap(),
    ] {
        let cx = HochschildComplex::new(&a, 5, true).unwrap();
        let data = hodge_data(&cx).unwrap();
        let contract = data.check_contract(&cx);
        assert!(contract.holds(), "{contract:?}");
    }
    let s3 = GradedAlgebra::monoid_algebra(&FiniteMonoid::symmetric_group_3(), Ring::Q).unwrap();
    assert!(hodge_data(&HochschildComplex::new(&s3, 2, true).unwrap()).is_err());
}

#[test]
fn hodge_pieces_of_odd_sphere() {
    let a = sphere_model(1, true).unwrap();
    let cx = HochschildComplex::new(&a, 6, true).unwrap();
    let data = hodge_data(&cx).unwrap();
    let classes = hodge_classes(&cx, &data).unwrap();
    // 1 ⊗ x^{⊗i} and x ⊗ x^{⊗i} both sit in piece i
    assert_eq!(classes.len(), 2 * 6);
    for c in &classes {
        assert_eq!(c.pieces, vec![(c.simplicial, 1)]);
        assert!(c.internal == 3 * c.simplicial as i64 || c.internal == 3 * c.simplicial as i64 + 3);
    }
    for k in [2, 3] {
        let checks = adams_checks(&cx, &data, k).unwrap();
        assert_eq!(checks.len(), 12);
        for c in checks {
            assert!(c.eigenvalue_law);
            assert_eq!(c.eigenvalues, vec![(k.pow(c.simplicial as u32).to_string(), 1)]);
        }
    }
}

#[test]
fn adams_operations_compose() {
    let a = sphere_model(1, false).unwrap();
    let cx = HochschildComplex::new(&a, 6, true).unwrap();
    let data = hodge_data(&cx).unwrap();
    for s in 0..=4 {
        for t in cx.internal_range(s) {
            let m = |k: i64| induced_on_homology(&cx, s, t, &data.adams(s, k)).unwrap();
            for k in 1..=3 {
                for l in 1..=3 {
                    let (a, b, ab) = (m(k), m(l), m(k * l));
                    let h = a.len();
                    let product: Vec<Vec<BigRational>> = (0..h)
                        .map(|i| (0..h).map(|j| (0..h).map(|x| &a[i][x] * &b[x][j]).sum()).collect())
                        .collect();
                    assert_eq!(product, ab, "k={k} l={l} bidegree ({s}, {t})");
                }
            }
        }
    }
}

#[test]
fn duals_match() {
    for (a, range) in [
        (c2(Ring::Q), HHRange::Simplicial(4)),
        (c2(Ring::Fp(2)), HHRange::Simplicial(4)),
        (sphere_model(1, true).unwrap(), HHRange::Total(0, 8)),
    ] {
        assert_eq!(dual_hh(&a, range).unwrap(), hh(&a, range, true).unwrap());
    }
}

#[test]
fn resource_caps_are_enforced() {
    let s3 = GradedAlgebra::monoid_algebra(&FiniteMonoid::symmetric_group_3(), Ring::Q).unwrap();
    assert!(HochschildComplex::with_cap(&s3, 6, false, 1000).is_err());
}
