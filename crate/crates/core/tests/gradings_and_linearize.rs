mod common;

use common::*;
use num_rational::BigRational;
use polyaut::derivations::{nagata_derivation, nagata_map, DEFAULT_LND_BOUND};
use polyaut::gradings::{derivation_degree, euler_derivation, solve_gradings, WeightVector};
use polyaut::linearize::{build_shift_linearization, conjugation_scalar, l_b, nagata_family};
use polyaut::{Derivation, Field, Monomial, PolyMap, PolyRing, Scalar};
use proptest::prelude::*;

fn q() -> Field {
    Field::Rationals
}

/// A derivation homogeneous of degree `k` under the integer weights `w`,
/// assembled from the monomials of degree ≤ 3 with the right weight.
fn homogeneous_derivation(w: &[i64], k: i64, mask: u64) -> Derivation {
    let n = w.len();
    let ring = PolyRing::rationals(n);
    let monos = Monomial::all_up_to(n, 3);
    let mut bit = 0;
    let images = (0..n)
        .map(|i| {
            let target = w[i] + k;
            let mut terms = Vec::new();
            for m in &monos {
                let weight: i64 = m.exponents().iter().zip(w).map(|(&e, &x)| e as i64 * x).sum();
                if weight != target {
                    continue;
                }
                bit = (bit + 1) % 64;
                if mask >> bit & 1 == 1 {
                    terms.push((m.clone(), rat(1 + (bit as i64 % 3), 1)));
                }
            }
            ring.from_terms(terms)
        })
        .collect();
    Derivation::new(&ring, images).unwrap()
}

/// `(a, b, b²/a)` with `bc ≠ 1`.
fn admissible_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (nonzero_rational(), nonzero_rational())
        .prop_map(|(a, b)| {
            let f = q();
            let c = f.div(&f.mul(&b, &b), &a).unwrap();
            (a, b, c)
        })
        .prop_filter("bc = 1 is degenerate", |(_, b, c)| !q().is_one(&q().mul(b, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn grading_solutions_are_sound(
        n in 1usize..=3,
        images in proptest::collection::vec(proptest::collection::vec((proptest::collection::vec(0u32..=2, 3), -3i64..=3), 0..3), 3),
        coeffs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let ring = PolyRing::rationals(n);
        let polys = images.into_iter().take(n).map(|terms| {
            ring.from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e[..n].to_vec()), rat(c, 1))))
        }).collect();
        let d = Derivation::new(&ring, polys).unwrap();
        prop_assume!(!d.is_zero());
        let sol = solve_gradings(&d);
        let cs: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let (w, k) = sol.combination(&cs);
        prop_assert_eq!(derivation_degree(&d, &w).unwrap(), k.clone());
        let bracket = euler_derivation(&ring, &w).unwrap().bracket(&d).unwrap();
        prop_assert_eq!(bracket, d.scale(&Scalar::Rational(k)));
    }

    #[test]
    fn grading_solutions_are_complete(
        w in proptest::collection::vec(-2i64..=2, 2..=3),
        k in -2i64..=2,
        mask in any::<u64>(),
    ) {
        let d = homogeneous_derivation(&w, k, mask);
        prop_assume!(!d.is_zero());
        let wv = WeightVector::from_ints(&w);
        let kk = BigRational::from_integer(k.into());
        prop_assert_eq!(derivation_degree(&d, &wv).unwrap(), kk.clone());
        prop_assert!(solve_gradings(&d).contains(&wv, &kk));
    }

    #[test]
    fn shift_linearization_verifies((a, b, c) in admissible_triple(), lambda in small_rational()) {
        let nd = nagata_derivation(&q()).unwrap();
        let l = PolyMap::diagonal(nd.ring(), &[a, b.clone(), c.clone()]).unwrap();
        let rep = build_shift_linearization(&l, &nd, &lambda, DEFAULT_LND_BOUND).unwrap();
        prop_assert!(rep.verified);
        prop_assert!(!rep.degenerate);
        let bc = q().mul(&b, &c);
        prop_assert_eq!(rep.conjugation_scalar, q().inv(&bc).unwrap());
        // μ = bcλ/(1 - bc)
        let mu = q().div(&q().mul(&bc, &lambda), &q().sub(&q().one(), &bc)).unwrap();
        prop_assert_eq!(rep.conjugator, Some(mu));
    }

    #[test]
    fn conjugation_scalar_is_a_character((a1, b1, c1) in admissible_triple(), (a2, b2, c2) in admissible_triple()) {
        let nd = nagata_derivation(&q()).unwrap();
        let r = nd.ring().clone();
        let l1 = PolyMap::diagonal(&r, &[a1.clone(), b1.clone(), c1.clone()]).unwrap();
        let l2 = PolyMap::diagonal(&r, &[a2.clone(), b2.clone(), c2.clone()]).unwrap();
        let prod = l1.compose(&l2).unwrap();
        prop_assert_eq!(
            conjugation_scalar(&prod, &nd).unwrap(),
            q().mul(&conjugation_scalar(&l1, &nd).unwrap(), &conjugation_scalar(&l2, &nd).unwrap())
        );
    }

    #[test]
    fn degenerate_family_commutes(b in nonzero_rational(), lambda in small_rational()) {
        let nd = nagata_derivation(&q()).unwrap();
        let l = l_b(&q(), &b).unwrap();
        prop_assert!(q().is_one(&conjugation_scalar(&l, &nd).unwrap()));
        let n = nd.exp(&lambda, DEFAULT_LND_BOUND).unwrap();
        prop_assert_eq!(n.compose(&l).unwrap(), l.compose(&n).unwrap());
        let fam = nagata_family(&q(), &q().pow(&b, 3), &b, &q().inv(&b).unwrap());
        prop_assert!(fam.in_l && fam.in_l0);
    }

    #[test]
    fn family_flags((a, b, c) in (small_rational(), small_rational(), small_rational())) {
        let fam = nagata_family(&q(), &a, &b, &c);
        prop_assert!(!fam.in_l0 || fam.in_l);
        if fam.in_l0 {
            // the triple is (b³, b, b⁻¹)
            prop_assert_eq!(&a, &q().pow(&b, 3));
            prop_assert_eq!(&c, &q().inv(&b).unwrap());
        }
    }
}

#[test]
fn root_of_unity_obstruction() {
    let f = q();
    let one = f.one();
    let minus = l_b(&f, &f.from_i64(-1)).unwrap();
    let n = nagata_map(&f, &one).unwrap();
    let ln = minus.endo_product(&n).unwrap();
    let square = ln.compose(&ln).unwrap();
    let n2 = nagata_map(&f, &f.from_i64(2)).unwrap();
    assert_eq!(square, n2);
    assert!(!square.is_identity());
}
