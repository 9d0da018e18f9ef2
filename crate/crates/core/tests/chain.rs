use std::sync::Arc;

use cyclotome_core::chain::{
    determinant, invariant_factors, moore_chains, normalized_chains, smith_normal_form, ChainComplex, IntMatrix, Ring,
    SparseMatrix,
};
use cyclotome_core::cyclic::{cyclic_nerve, point, standard_cyclic_simplex, subdivide, FiniteMonoid, TruncatedCyclicSet};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: &[&[i64]]) -> IntMatrix {
    v.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn random_sparse(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> IntMatrix {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(density) { BigInt::from(rng.gen_range(-9i64..=9)) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// A random unimodular matrix and its inverse, built from elementary row operations.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> (SparseMatrix, SparseMatrix) {
    let mut p = cyclotome_core::chain::int_identity(n);
    let mut q = cyclotome_core::chain::int_identity(n);
    if n < 2 {
        return (SparseMatrix::from_dense_integers(&p, n), SparseMatrix::from_dense_integers(&q, n));
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        // P <- E P with E = I + c e_ij; P^{-1} <- P^{-1} E^{-1}
        for k in 0..n {
            let add = &c * &p[j][k];
            p[i][k] += add;
            let sub = &c * &q[k][i];
            q[k][j] -= sub;
        }
    }
    (SparseMatrix::from_dense_integers(&p, n), SparseMatrix::from_dense_integers(&q, n))
}

fn ranks(c: &ChainComplex, top: isize) -> Vec<usize> {
    c.homology(0..=top).unwrap().ranks()
}

#[test]
fn snf_examples() {
    let m = int(&[&[2, 4], &[6, 8]]);
    let cert = smith_normal_form(&m, 2);
    assert!(cert.verify(&m));
    assert_eq!(cert.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    let id = cyclotome_core::chain::int_identity(3);
    assert_eq!(smith_normal_form(&id, 3).d, id);
}

#[test]
fn snf_certificates_on_random_sparse_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..50 {
        let m = random_sparse(&mut rng, 20, 20, 0.15);
        let cert = smith_normal_form(&m, 20);
        assert!(cert.verify(&m));
        assert!(determinant(&cert.u).abs().is_one());
        assert!(determinant(&cert.v).abs().is_one());
        let sparse = SparseMatrix::from_dense_integers(&m, 20);
        assert_eq!(invariant_factors(&sparse).unwrap(), cert.invariant_factors());
    }
}

#[test]
fn elementary_complexes() {
    let zero = ChainComplex::new(Ring::Z, 0, vec![0, 0, 0], vec![SparseMatrix::zeros(0, 0); 2], (0, 2), true).unwrap();
    assert_eq!(ranks(&zero, 2), vec![0, 0, 0]);
    let two = SparseMatrix::from_dense_integers(&int(&[&[2]]), 1);
    let c = ChainComplex::new(Ring::Z, 0, vec![1, 1], vec![two], (0, 1), true).unwrap();
    let h = c.homology(0..=1).unwrap();
    assert_eq!(h.ranks(), vec![0, 0]);
    assert_eq!(h.torsion(0).unwrap(), &[BigInt::from(2)]);
    let p = normalized_chains(&point(2).unwrap(), Ring::Z, 2).unwrap();
    assert_eq!(ranks(&p, 2), vec![1, 0, 0]);
    assert_eq!(p.euler_characteristic().value, 1);
}

#[test]
fn cyclic_simplices_are_circles() {
    for n in 0..=3 {
        let x = standard_cyclic_simplex(n, n + 1).unwrap();
        for ring in [Ring::Q, Ring::Z] {
            let c = normalized_chains(&x, ring, n + 1).unwrap();
            assert!(c.is_complete());
            let mut expected = vec![0; n + 2];
            expected[0] = 1;
            expected[1] = 1;
            let h = c.homology(0..=(n as isize + 1)).unwrap();
            assert_eq!(h.ranks(), expected);
            assert!(h.entries.iter().all(|e| e.torsion.is_empty()));
        }
    }
    let chi = normalized_chains(&standard_cyclic_simplex(0, 1).unwrap(), Ring::Q, 1).unwrap();
    assert_eq!(chi.euler_characteristic().value, 0);
}

#[test]
fn nerve_of_c2() {
    let x = cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 5).unwrap();
    let f2 = normalized_chains(&x, Ring::Fp(2), 5).unwrap();
    assert_eq!(ranks(&f2, 4), vec![2; 5]);
    let q = normalized_chains(&x, Ring::Q, 5).unwrap();
    assert_eq!(ranks(&q, 4), vec![2, 0, 0, 0, 0]);
    let z = normalized_chains(&x, Ring::Z, 5).unwrap().homology(0..=4).unwrap();
    for n in 0..=4isize {
        let expected: Vec<BigInt> = if n % 2 == 1 { vec![BigInt::from(2); 2] } else { vec![] };
        assert_eq!(z.torsion(n).unwrap(), expected.as_slice());
    }
}

fn test_complexes() -> Vec<ChainComplex> {
    let mut out = Vec::new();
    for (ring_x, top) in [
        (cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 4).unwrap(), 4),
        (cyclic_nerve(&FiniteMonoid::cyclic_group(3).to_category(), 3).unwrap(), 3),
        (standard_cyclic_simplex(1, 3).unwrap(), 3),
    ] {
        out.push(normalized_chains(&ring_x, Ring::Z, top).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let (a, b) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let d = SparseMatrix::from_dense_integers(&random_sparse(&mut rng, a, b, 0.5), b);
        out.push(ChainComplex::new(Ring::Z, 0, vec![a, b], vec![d], (0, 1), true).unwrap());
    }
    out
}

#[test]
fn universal_coefficients() {
    for c in test_complexes() {
        let (lo, hi) = c.window();
        let z = c.homology(lo..=hi).unwrap();
        for p in [2u64, 3, 5] {
            let fp = c.with_ring(Ring::Fp(p)).unwrap().homology(lo..=hi).unwrap();
            for n in lo..=hi {
                let divisible = |k: isize| -> usize {
                    if k < lo {
                        return 0;
                    }
                    let t = if k <= hi { z.torsion(k).unwrap().to_vec() } else { vec![] };
                    t.iter().filter(|f| (*f % BigInt::from(p)).is_zero()).count()
                };
                // Tor(H_{n-1}, F_p) needs H_{n-1} inside the window
                let below = if n > lo { divisible(n - 1) } else { 0 };
                assert_eq!(fp.rank(n).unwrap(), z.rank(n).unwrap() + divisible(n) + below, "degree {n} mod {p}");
            }
            let q = c.with_ring(Ring::Q).unwrap().homology(lo..=hi).unwrap();
            assert_eq!(q.ranks(), z.ranks());
        }
    }
}

#[test]
fn homology_is_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in test_complexes() {
        let (lo, hi) = c.window();
        let before = c.homology(lo..=hi).unwrap();
        for _ in 0..5 {
            let mut d = c.clone();
            for n in c.lo()..=c.hi() {
                let (p, p_inv) = random_unimodular(&mut rng, c.rank(n));
                d = d.change_basis(n, &p, &p_inv).unwrap();
            }
            assert_eq!(d.homology(lo..=hi).unwrap(), before);
        }
    }
}

#[test]
fn normalized_and_moore_agree() {
    let sets: Vec<TruncatedCyclicSet> = vec![
        cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 4).unwrap(),
        standard_cyclic_simplex(1, 4).unwrap(),
        point(4).unwrap(),
    ];
    for x in &sets {
        for ring in [Ring::Q, Ring::Fp(2), Ring::Z] {
            let n = normalized_chains(x, ring, 4).unwrap().homology(0..=3).unwrap();
            let m = moore_chains(x, ring, 4).unwrap().homology(0..=3).unwrap();
            assert_eq!(n.entries, m.entries);
        }
    }
}

#[test]
fn subdivision_preserves_homology() {
    let cases: Vec<(Arc<TruncatedCyclicSet>, Vec<Ring>)> = vec![
        (Arc::new(standard_cyclic_simplex(0, 1).unwrap()), vec![Ring::Z]),
        (Arc::new(standard_cyclic_simplex(1, 1).unwrap()), vec![Ring::Z]),
        (Arc::new(cyclic_nerve(&FiniteMonoid::cyclic_group(2).to_category(), 1).unwrap()), vec![Ring::Q, Ring::Fp(2)]),
    ];
    for (x, rings) in &cases {
        for r in 1..=4 {
            let top = if r * 4 > 12 && x.size(0).unwrap() > 1 { 2 } else { 3 };
            let y = subdivide(x, r, top).unwrap();
            for &ring in rings {
                let base = normalized_chains(x.as_ref(), ring, top).unwrap().homology(0..top as isize).unwrap();
                let sub = normalized_chains(&y, ring, top).unwrap().homology(0..top as isize).unwrap();
                assert_eq!(base.entries, sub.entries, "{} r={r} over {ring}", x.name());
            }
        }
    }
}

#[test]
fn duals_have_matching_ranks() {
    let x = cyclic_nerve(&FiniteMonoid::cyclic_group(3).to_category(), 4).unwrap();
    let c = normalized_chains(&x, Ring::Fp(3), 4).unwrap();
    let d = c.dual().unwrap();
    for n in 0..=3isize {
        assert_eq!(c.homology([n]).unwrap().rank(n), d.homology([-n]).unwrap().rank(-n));
    }
    assert!(normalized_chains(&x, Ring::Z, 2).unwrap().dual().is_err());
}
