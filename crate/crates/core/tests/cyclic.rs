use std::collections::BTreeSet;
use std::sync::Arc;

use cyclotome_core::chain::{normalized_chains, Ring};
use cyclotome_core::cyclic::{
    cyclic_nerve, cyclotomic_compatibility, fixed_points, gamma_diagonal, generators_into, latching, linearize,
    linearize_rcyclic, point, standard_cyclic_simplex, subdivide, ArrowSpec, Colimit, CyclicModel, CyclicNerve,
    FiniteCategory, FiniteMonoid, FixedPoints, Presentation, TruncatedCyclicSet,
};
use cyclotome_core::lambda::{enumerate_lambda, LambdaMor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BRUTE: u128 = 1 << 20;

/// Two objects joined by mutually inverse arrows `f : 0 -> 1`, `g : 1 -> 0`.
fn iso_groupoid() -> FiniteCategory {
    let arrow = |name: &str, source, target| ArrowSpec { name: name.into(), source, target };
    // 0 = id_0, 1 = id_1, 2 = f, 3 = g
    let mut compose = vec![vec![None; 4]; 4];
    compose[0][0] = Some(0);
    compose[0][2] = Some(2);
    compose[1][1] = Some(1);
    compose[1][3] = Some(3);
    compose[2][1] = Some(2);
    compose[2][3] = Some(0);
    compose[3][0] = Some(3);
    compose[3][2] = Some(1);
    FiniteCategory {
        objects: vec!["a".into(), "b".into()],
        morphisms: vec![arrow("id_a", 0, 0), arrow("id_b", 1, 1), arrow("f", 0, 1), arrow("g", 1, 0)],
        compose,
        identities: vec![0, 1],
    }
}

fn fuzz_sets(count: u64, truncation: usize) -> Vec<TruncatedCyclicSet> {
    (0..count)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Presentation::random(&mut rng, 3, 2, 3);
            TruncatedCyclicSet::from_model(Colimit::new(p).unwrap(), truncation).unwrap()
        })
        .collect()
}

#[test]
fn standard_simplex_levels_match_enumeration() {
    for n in 0..=3 {
        let x = standard_cyclic_simplex(n, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(x.size(k).unwrap(), enumerate_lambda(k, n, u128::MAX).unwrap().len());
        }
        x.check_cycle_order().unwrap();
        for k in 0..=4 {
            let cycle = &x.level(k).unwrap().cycle;
            let distinct: BTreeSet<u32> = cycle.iter().copied().collect();
            assert_eq!(distinct.len(), cycle.len());
        }
    }
    assert_eq!(standard_cyclic_simplex(0, 3).unwrap().size(3).unwrap(), 4);
}

#[test]
fn action_is_contravariant_and_factorization_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let objects: Vec<TruncatedCyclicSet> = vec![
        cyclic_nerve(&FiniteMonoid::symmetric_group_3().to_category(), 3).unwrap(),
        cyclic_nerve(&iso_groupoid(), 4).unwrap(),
        standard_cyclic_simplex(2, 4).unwrap(),
    ];
    for x in &objects {
        assert_eq!(x.check_factorization_independence(&mut rng, 500).unwrap(), None, "{}", x.name());
    }
    for x in fuzz_sets(5, 3) {
        assert_eq!(x.check_factorization_independence(&mut rng, 500).unwrap(), None, "{}", x.name());
    }
}

#[test]
fn identity_and_tau_act_as_expected() {
    let x = cyclic_nerve(&FiniteMonoid::cyclic_group(3).to_category(), 3).unwrap();
    for n in 0..=3 {
        let l = x.level(n).unwrap();
        for e in 0..l.size() as u32 {
            assert_eq!(x.act(&LambdaMor::identity(n), e).unwrap(), e);
            assert_eq!(x.act(&LambdaMor::tau(n), e).unwrap(), l.cycle[e as usize]);
        }
    }
}

#[test]
fn nerve_level_sizes() {
    let trivial = cyclic_nerve(&FiniteMonoid::trivial().to_category(), 4).unwrap();
    let c2 = cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 4).unwrap();
    let two = cyclic_nerve(&FiniteCategory::discrete(2), 4).unwrap();
    let groupoid = cyclic_nerve(&iso_groupoid(), 4).unwrap();
    for n in 0..=4 {
        assert_eq!(trivial.size(n).unwrap(), 1);
        assert_eq!(c2.size(n).unwrap(), 1 << (n + 1));
        assert_eq!(two.size(n).unwrap(), 2);
        // loops of length n+1 in the complete graph on two vertices
        assert_eq!(groupoid.size(n).unwrap(), 1 << (n + 1));
    }
}

#[test]
fn x_minus_one_is_the_equalizer() {
    assert!(standard_cyclic_simplex(0, 2).unwrap().x_minus_one().unwrap().is_empty());
    assert_eq!(point(2).unwrap().x_minus_one().unwrap(), vec![0]);
    let m = FiniteMonoid::cyclic_group(2);
    let nerve = CyclicNerve::of_monoid(&m).unwrap();
    let x = cyclic_nerve(&m.to_category(), 2).unwrap();
    let s0 = LambdaMor::codegeneracy(0, 0).unwrap();
    let s1 = LambdaMor::extra_degeneracy(0);
    let direct: Vec<u32> = nerve
        .level(0)
        .unwrap()
        .iter()
        .enumerate()
        .filter(|(_, g)| nerve.act(&s0, g) == nerve.act(&s1, g))
        .map(|(i, _)| i as u32)
        .collect();
    assert_eq!(x.x_minus_one().unwrap(), direct);
    assert_eq!(direct, vec![m.identity as u32]);
}

#[test]
fn latching_laws_on_fuzz_and_nerves() {
    let mut sets = fuzz_sets(20, 4);
    sets.push(cyclic_nerve(&FiniteMonoid::symmetric_group_3().to_category(), 3).unwrap());
    sets.push(cyclic_nerve(&iso_groupoid(), 4).unwrap());
    sets.push(standard_cyclic_simplex(1, 4).unwrap());
    for x in &sets {
        for n in 0..=x.truncation() {
            let l = latching(x, n).unwrap();
            let report = l.verify(x).unwrap();
            assert!(report.all_hold(), "{} level {n}: {report:?}", x.name());
        }
    }
    let lambda0 = standard_cyclic_simplex(0, 2).unwrap();
    let l = latching(&lambda0, 1).unwrap();
    assert_eq!((l.simplicial.len(), l.cyclic.len()), (1, 2));
    assert_eq!(l.cyclic.len(), lambda0.size(1).unwrap());
}

#[test]
fn euler_characteristic_counts_x_minus_one() {
    let mut sets = fuzz_sets(20, 4);
    for n in 0..=2 {
        sets.push(standard_cyclic_simplex(n, n + 2).unwrap());
    }
    sets.push(point(1).unwrap());
    for x in &sets {
        let top = x.dimension_bound().unwrap();
        let chi = normalized_chains(x, Ring::Q, top).unwrap().euler_characteristic();
        assert!(chi.complete);
        assert_eq!(chi.value, x.x_minus_one().unwrap().len() as i64, "{}", x.name());
    }
}

#[test]
fn subdivision_examples() {
    let lambda0 = Arc::new(standard_cyclic_simplex(0, 1).unwrap());
    let y = subdivide(&lambda0, 2, 4).unwrap();
    y.check_rotation().unwrap();
    let f = fixed_points(&y).unwrap();
    for k in 0..=4 {
        assert_eq!(f.size(k).unwrap(), 0);
    }
    let c2 = Arc::new(cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 1).unwrap());
    for r in 1..=3 {
        let y = subdivide(&c2, r, 3).unwrap();
        y.check_rotation().unwrap();
        let fixed = fixed_points(&y).unwrap();
        for n in 1..=4 {
            assert_eq!(y.level(n - 1).unwrap().labels.len(), 1 << (r * n));
            assert_eq!(fixed.size(n - 1).unwrap(), 1 << n);
        }
    }
}

#[test]
fn rcyclic_generators_agree_with_the_base_action() {
    let x = Arc::new(cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 1).unwrap());
    let y = subdivide(&x, 2, 2).unwrap();
    for m in 0..=2 {
        for n in 0..=2 {
            for f in cyclotome_core::lambda::enumerate_rcyclic(2, m, n, u128::MAX).unwrap() {
                for e in 0..y.level(n).unwrap().labels.len() as u32 {
                    assert_eq!(y.act(&f, e).unwrap(), y.act_by_generators(&f, e).unwrap());
                }
            }
        }
    }
}

#[test]
fn fixed_points_agree_with_the_model() {
    let m = FiniteMonoid::cyclic_group(3);
    let x = Arc::new(cyclic_nerve(&m.to_category(), 1).unwrap());
    let nerve = CyclicNerve::of_monoid(&m).unwrap();
    for r in 2..=3 {
        let fixed = fixed_points(&subdivide(&x, r, 2).unwrap()).unwrap();
        let model = TruncatedCyclicSet::from_model(FixedPoints::new(nerve.clone(), r), 2).unwrap();
        for k in 0..=2 {
            let a = fixed.level(k).unwrap();
            let b = model.level(k).unwrap();
            assert_eq!(a.size(), b.size());
            assert_eq!(a.cycle, b.cycle);
            assert_eq!(a.faces, b.faces);
            assert_eq!(a.degeneracies, b.degeneracies);
        }
    }
}

#[test]
fn gamma_is_an_isomorphism() {
    let monoids = [
        FiniteMonoid::trivial(),
        FiniteMonoid::cyclic_group(2),
        FiniteMonoid::cyclic_group(3),
        FiniteMonoid::symmetric_group_3(),
    ];
    for m in &monoids {
        let nerve = CyclicNerve::of_monoid(m).unwrap();
        for r in 1..=4 {
            let report = gamma_diagonal(&nerve, r, 4, BRUTE).unwrap();
            assert!(report.holds(), "{:?} r={r}: {:?}", m.elements, report.counterexample);
            for l in &report.levels {
                assert_eq!(l.source_size, m.elements.len().pow(l.level as u32 + 1));
                assert_eq!(l.fixed_size, l.source_size);
            }
        }
    }
    for cat in [FiniteCategory::discrete(2), iso_groupoid()] {
        let nerve = CyclicNerve::new(cat).unwrap();
        for r in 1..=3 {
            assert!(gamma_diagonal(&nerve, r, 3, BRUTE).unwrap().holds());
        }
    }
}

#[test]
fn gamma_on_c2_level_zero() {
    let nerve = CyclicNerve::of_monoid(&FiniteMonoid::cyclic_group(2)).unwrap();
    let fixed = FixedPoints::new(nerve.clone(), 2);
    assert_eq!(fixed.level(0).unwrap(), vec![vec![0, 0], vec![1, 1]]);
    let report = gamma_diagonal(&nerve, 2, 0, BRUTE).unwrap();
    assert!(report.holds());
    assert!(report.levels[0].brute_force_checked);
}

#[test]
fn compatibility_squares_commute() {
    let cases = [
        (FiniteMonoid::trivial(), 3),
        (FiniteMonoid::cyclic_group(2), 2),
        (FiniteMonoid::cyclic_group(3), 1),
        (FiniteMonoid::symmetric_group_3(), 1),
    ];
    for (m, top) in &cases {
        let nerve = CyclicNerve::of_monoid(m).unwrap();
        for (a, b) in [(2, 2), (2, 3), (3, 2), (1, 3), (3, 1)] {
            let report = cyclotomic_compatibility(&nerve, a, b, *top, BRUTE).unwrap();
            assert!(report.holds(), "{:?} ({a},{b}): {:?}", m.elements, report.counterexample);
        }
    }
}

#[test]
fn generator_list_shapes() {
    assert_eq!(generators_into(0, 0).unwrap().len(), 1);
    // τ, three cofaces, two codegeneracies and the extra one
    assert_eq!(generators_into(2, 3).unwrap().len(), 1 + 3 + 3 + 1);
}

#[test]
fn fixed_points_are_natural_for_monoid_maps() {
    let c4 = CyclicNerve::of_monoid(&FiniteMonoid::cyclic_group(4)).unwrap();
    let c2 = CyclicNerve::of_monoid(&FiniteMonoid::cyclic_group(2)).unwrap();
    let phi = |x: &Vec<u32>| -> Vec<u32> { x.iter().map(|a| a % 2).collect() };
    for r in 2..=3 {
        let (a, b) = (FixedPoints::new(c4.clone(), r), FixedPoints::new(c2.clone(), r));
        for j in 0..=2 {
            let target: BTreeSet<Vec<u32>> = b.level(j).unwrap().into_iter().collect();
            for x in a.level(j).unwrap() {
                assert!(target.contains(&phi(&x)));
                for f in generators_into(j, 2).unwrap() {
                    assert_eq!(phi(&a.act(&f, &x)), b.act(&f, &phi(&x)));
                }
            }
        }
    }
}

#[test]
fn linearization() {
    let one = linearize(&point(3).unwrap(), Ring::Q, 3).unwrap();
    assert_eq!(one.ranks, vec![1; 4]);
    let c2 = Arc::new(cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 1).unwrap());
    let lin = linearize(&c2, Ring::Fp(2), 3).unwrap();
    assert_eq!(lin.ranks, vec![2, 4, 8, 16]);
    let y = subdivide(&c2, 2, 3).unwrap();
    let lhs = linearize(&fixed_points(&y).unwrap(), Ring::Q, 3).unwrap();
    let rhs = linearize_rcyclic(&y, Ring::Q).unwrap().basis_fixed_points().unwrap();
    assert_eq!(lhs, rhs);
}
