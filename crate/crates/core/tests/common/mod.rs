#![allow(dead_code)]

use polyaut::{Field, Monomial, PolyRing, Polynomial, Scalar};
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

pub fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn element_of(field: &Field) -> BoxedStrategy<Scalar> {
    match field.order() {
        None => small_rational().boxed(),
        Some(q) => (0..q).prop_map(Scalar::Finite).boxed(),
    }
}

/// Sparse polynomials with a handful of terms of degree at most `max_deg`
/// in each variable.
pub fn poly_in(ring: PolyRing, max_terms: usize, max_deg: u32) -> BoxedStrategy<Polynomial> {
    let n = ring.nvars();
    let coef = element_of(ring.field());
    proptest::collection::vec((proptest::collection::vec(0..=max_deg, n), coef), 0..=max_terms)
        .prop_map(move |terms| ring.from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), c))))
        .boxed()
}

/// A polynomial that does not involve variable `skip`.
pub fn poly_without(ring: PolyRing, skip: usize, max_terms: usize, max_deg: u32) -> BoxedStrategy<Polynomial> {
    poly_in(ring.clone(), max_terms, max_deg)
        .prop_map(move |p| {
            let mut images = ring.vars();
            images[skip] = ring.zero();
            p.substitute(&images).unwrap()
        })
        .boxed()
}

pub fn shipped_fields() -> Vec<Field> {
    let mut v = vec![Field::Rationals];
    for q in [2, 3, 4, 5, 7, 8, 9] {
        v.push(Field::finite(q).unwrap());
    }
    v
}

pub fn any_field() -> impl Strategy<Value = Field> {
    proptest::sample::select(shipped_fields())
}
