mod common;

use common::*;
use polyaut::derivations::{nagata_derivation, nagata_map, DEFAULT_LND_BOUND};
use polyaut::maps::tame_identity_witness;
use polyaut::{AutWord, Derivation, Field, PolyMap, PolyRing, Polynomial, Scalar, Token};
use proptest::prelude::*;

fn q3() -> PolyRing {
    PolyRing::rationals(3)
}

fn map_strategy(ring: PolyRing) -> impl Strategy<Value = PolyMap> {
    proptest::collection::vec(poly_in(ring.clone(), 3, 2), ring.nvars())
        .prop_map(move |c| PolyMap::new(&ring, c).unwrap())
}

fn derivation_strategy(ring: PolyRing) -> impl Strategy<Value = Derivation> {
    proptest::collection::vec(poly_in(ring.clone(), 3, 2), ring.nvars())
        .prop_map(move |c| Derivation::new(&ring, c).unwrap())
}

/// `D(X) = f(Y, Z)`, `D(Y) = g(Z)`, `D(Z) = c`: triangular, hence locally nilpotent.
fn triangular_lnd() -> impl Strategy<Value = Derivation> {
    let r = q3();
    (
        poly_without(r.clone(), 0, 3, 2),
        poly_without(r.clone(), 0, 2, 2),
        small_rational(),
    )
        .prop_map(move |(f, g, c)| {
            let mut only_z = r.vars();
            only_z[1] = r.zero();
            let g = g.substitute(&only_z).unwrap();
            Derivation::new(&r, vec![f, g, r.constant(c)]).unwrap()
        })
}

fn token_strategy(ring: PolyRing) -> impl Strategy<Value = Token> {
    let n = ring.nvars();
    prop_oneof![
        (0..n).prop_flat_map(
            move |i| poly_without(ring.clone(), i, 3, 2).prop_map(move |poly| Token::Elementary { index: i, poly })
        ),
        proptest::collection::vec(nonzero_rational(), n).prop_map(Token::Diagonal),
    ]
}

fn word_strategy() -> impl Strategy<Value = AutWord> {
    let r = q3();
    proptest::collection::vec((token_strategy(r.clone()), any::<bool>()), 0..4).prop_map(move |ts| {
        let mut w = AutWord::new(&r);
        for (t, inv) in ts {
            if inv {
                w.push_inverse(t);
            } else {
                w.push(t);
            }
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(
        f in map_strategy(PolyRing::rationals(2)),
        g in map_strategy(PolyRing::rationals(2)),
        h in map_strategy(PolyRing::rationals(2)),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pullback_is_contravariant(
        f in map_strategy(PolyRing::rationals(2)),
        g in map_strategy(PolyRing::rationals(2)),
        p in poly_in(PolyRing::rationals(2), 3, 2),
    ) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.pullback(&p).unwrap(), g.pullback(&f.pullback(&p).unwrap()).unwrap());
    }

    #[test]
    fn composition_matches_pointwise_evaluation(
        f in map_strategy(PolyRing::rationals(2)),
        g in map_strategy(PolyRing::rationals(2)),
        x in small_rational(), y in small_rational(),
    ) {
        let pt = vec![x, y];
        prop_assert_eq!(f.compose(&g).unwrap().eval(&pt), f.eval(&g.eval(&pt)));
    }

    #[test]
    fn word_times_inverse_is_identity(w in word_strategy()) {
        let m = w.realize().unwrap();
        let inv = w.inverse().realize().unwrap();
        prop_assert!(m.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&m).unwrap().is_identity());
    }

    #[test]
    fn word_text_round_trips(w in word_strategy()) {
        let back = AutWord::parse(w.ring(), &w.to_string()).unwrap();
        prop_assert_eq!(back.realize().unwrap(), w.realize().unwrap());
        prop_assert_eq!(back.to_string(), w.to_string());
    }

    #[test]
    fn derivations_satisfy_leibniz(
        d in derivation_strategy(q3()),
        p in poly_in(q3(), 3, 2),
        q in poly_in(q3(), 3, 2),
    ) {
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(
        a in derivation_strategy(PolyRing::rationals(2)),
        b in derivation_strategy(PolyRing::rationals(2)),
        c in derivation_strategy(PolyRing::rationals(2)),
    ) {
        let ab = a.bracket(&b).unwrap();
        prop_assert!(ab.checked_add(&b.bracket(&a).unwrap()).unwrap().is_zero());
        let jacobi = a.bracket(&b.bracket(&c).unwrap()).unwrap()
            .checked_add(&b.bracket(&c.bracket(&a).unwrap()).unwrap()).unwrap()
            .checked_add(&c.bracket(&a.bracket(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn certificates_replay(d in triangular_lnd()) {
        let cert = d.verify_lnd(DEFAULT_LND_BOUND).unwrap();
        prop_assert!(cert.replay(&d));
    }

    #[test]
    fn exponential_is_a_one_parameter_group(
        d in triangular_lnd(),
        l in small_rational(),
        m in small_rational(),
    ) {
        let f = Field::Rationals;
        let el = d.exp(&l, DEFAULT_LND_BOUND).unwrap();
        let em = d.exp(&m, DEFAULT_LND_BOUND).unwrap();
        let sum = d.exp(&f.add(&l, &m), DEFAULT_LND_BOUND).unwrap();
        prop_assert_eq!(el.compose(&em).unwrap(), sum);
        let neg = d.exp(&f.neg(&l), DEFAULT_LND_BOUND).unwrap();
        prop_assert!(el.compose(&neg).unwrap().is_identity());
    }

    #[test]
    fn exponential_is_multiplicative(
        d in triangular_lnd(),
        p in poly_in(q3(), 2, 2),
        q in poly_in(q3(), 2, 2),
    ) {
        let e = d.exp(&Scalar::from_ratio(1, 1), DEFAULT_LND_BOUND).unwrap();
        prop_assert_eq!(e.pullback(&(&p * &q)).unwrap(), &e.pullback(&p).unwrap() * &e.pullback(&q).unwrap());
    }

    #[test]
    fn tame_identity_holds(f in poly_without(q3(), 0, 3, 2)) {
        let (lhs, rhs) = tame_identity_witness(&f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nagata_group_law(l in small_rational(), m in small_rational()) {
        let f = Field::Rationals;
        let a = nagata_map(&f, &l).unwrap();
        let b = nagata_map(&f, &m).unwrap();
        prop_assert_eq!(a.compose(&b).unwrap(), nagata_map(&f, &f.add(&l, &m)).unwrap());
    }
}

#[test]
fn nagata_fixes_delta_and_z() {
    let f = Field::Rationals;
    let n = nagata_map(&f, &Scalar::from_ratio(1, 1)).unwrap();
    let r = n.ring().clone();
    let delta: Polynomial = r.parse("X*Z + Y^2").unwrap();
    assert_eq!(n.pullback(&delta).unwrap(), delta);
    assert_eq!(n.pullback(&r.var(2)).unwrap(), r.var(2));
    let d = nagata_derivation(&f).unwrap();
    assert!(d.apply(&delta).unwrap().is_zero());
}
