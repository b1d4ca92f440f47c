//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with X1 > X2 > ... . No stored coefficient is ever
//! zero, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial gets its own marker so that
/// no arithmetic is done on a sentinel. `MinusInfinity` sorts below every
/// finite degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree<T> {
    MinusInfinity,
    Finite(T),
}

impl<T> Degree<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Degree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every monomial in `nvars` variables with total degree at most `d`,
    /// in increasing graded-lex order.
    pub fn all_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut level = Vec::new();
            let mut cur = vec![0u32; nvars];
            compositions(&mut cur, 0, deg, &mut level);
            level.sort();
            out.extend(level.into_iter().map(Monomial));
        }
        out
    }
}

fn compositions(cur: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = remaining;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[i] = e;
        compositions(cur, i + 1, remaining - e, out);
    }
    cur[i] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The ambient ring k[X1..Xn].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    nvars: usize,
}

impl PolyRing {
    pub fn new(field: Field, nvars: usize) -> PolyRing {
        PolyRing { field, nvars }
    }

    pub fn rationals(nvars: usize) -> PolyRing {
        PolyRing::new(Field::Rationals, nvars)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.monomial(Monomial::one(self.nvars), c)
    }

    pub fn int(&self, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars, i), self.field.one())
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.var(i)).collect()
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars, "monomial length must match the ring");
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Sums the given terms, dropping anything that cancels.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut p = self.zero();
        for (m, c) in terms {
            assert_eq!(m.nvars(), self.nvars, "monomial length must match the ring");
            p.add_term(m, &c);
        }
        p
    }

    /// Display name of variable `i`: X, Y, Z for up to three variables,
    /// X1..Xn otherwise.
    pub fn var_name(&self, i: usize) -> String {
        if self.nvars <= 3 {
            ["X", "Y", "Z"][i].to_string()
        } else {
            format!("X{}", i + 1)
        }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    pub(crate) fn check_same(&self, other: &PolyRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{}[{} vars] vs {}[{} vars]",
                self.field, self.nvars, other.field, other.nvars
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Degree<u32> {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// True if variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let field = &self.ring.field;
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        let field = &self.ring.field;
        if field.is_zero(s) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.mul(c, s))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the ring endomorphism X_i -> images[i].
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        for im in images {
            target.check_same(&im.ring)?;
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch(format!(
                "images over {} substituted into polynomial over {}",
                target.field, self.ring.field
            )));
        }
        let mut cache = PowerCache::new(images);
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut prod = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    prod = &prod * cache.power(i, e);
                }
            }
            for (mm, cc) in prod.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let field = &self.ring.field;
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, &field.mul(c, &field.from_i64(e as i64)));
        }
        out
    }

    /// Evaluates at a point of k^n.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars(), "point dimension must match the ring");
        let field = &self.ring.field;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Moves the polynomial into another field by mapping each coefficient.
    pub fn map_coefficients(
        &self,
        ring: &PolyRing,
        mut f: impl FnMut(&Scalar) -> Result<Scalar>,
    ) -> Result<Polynomial> {
        if ring.nvars != self.nvars() {
            return Err(Error::RingMismatch("variable count differs".into()));
        }
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }
}

/// Memoised powers of substitution images.
pub(crate) struct PowerCache<'a> {
    images: &'a [Polynomial],
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(images: &'a [Polynomial]) -> Self {
        PowerCache {
            images,
            powers: images.iter().map(|p| vec![p.ring.one(), p.clone()]).collect(),
        }
    }

    pub(crate) fn power(&mut self, i: usize, e: u32) -> &Polynomial {
        let e = e as usize;
        while self.powers[i].len() <= e {
            let next = &self.powers[i][self.powers[i].len() - 1] * &self.images[i];
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on a ring mismatch; use [`Polynomial::checked_add`] for a `Result`.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

fn format_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(i)),
            e => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

/// Coefficient text for use in front of `*monomial`; None means "omit it".
fn coefficient_factor(field: &Field, c: &Scalar) -> Option<String> {
    if field.is_one(c) {
        return None;
    }
    let text = field.format(c);
    let needs_parens = match c {
        Scalar::Rational(r) => !r.is_integer(),
        Scalar::Finite(_) => text.contains('+'),
    };
    Some(if needs_parens { format!("({text})") } else { text })
}

/// Canonical text: terms in decreasing graded-lex order, explicit `*`,
/// non-integer rational coefficients parenthesised.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                let text = field.format(&abs);
                if matches!(abs, Scalar::Finite(_)) && text.contains('+') && self.terms.len() > 1 {
                    write!(f, "({text})")?;
                } else {
                    write!(f, "{text}")?;
                }
            } else {
                let mono = format_monomial(&self.ring, m);
                match coefficient_factor(field, &abs) {
                    None => write!(f, "{mono}")?,
                    Some(coef) => write!(f, "{coef}*{mono}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> PolyRing {
        PolyRing::rationals(3)
    }

    fn delta(r: &PolyRing) -> Polynomial {
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        &(&x * &z) + &(&y * &y)
    }

    #[test]
    fn addition_cancels_to_canonical_form() {
        let r = q3();
        let (x, y) = (r.var(0), r.var(1));
        let s = &(&x + &y) + &x.neg();
        assert_eq!(s, y);
        assert_eq!(&r.zero() + &x, x);
        assert_eq!(delta(&r).to_string(), "X*Z + Y^2");
    }

    #[test]
    fn delta_squared_expands() {
        let r = q3();
        let d2 = &delta(&r) * &delta(&r);
        let expected = r.parse("X^2*Z^2 + 2*X*Y^2*Z + Y^4").unwrap();
        assert_eq!(d2, expected);
        assert_eq!(&r.one() * &d2, d2);
        assert!((&d2 * &r.zero()).is_zero());
    }

    #[test]
    fn degrees() {
        let r = q3();
        assert_eq!(delta(&r).total_degree(), Degree::Finite(2));
        let p = r.parse("X - 2*Y*(X*Z + Y^2) - Z*(X*Z+Y^2)^2").unwrap();
        assert_eq!(p.total_degree(), Degree::Finite(5));
        assert_eq!(r.zero().total_degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0u32));
    }

    #[test]
    fn substitution_examples() {
        let r = q3();
        let d = delta(&r);
        assert_eq!(d.substitute(&r.vars()).unwrap(), d);
        let two: Vec<_> = r.vars().iter().map(|v| v.scale(&r.field().from_i64(2))).collect();
        assert_eq!(r.var(0).substitute(&two).unwrap(), r.parse("2*X").unwrap());
        assert!(d.substitute(&two[..2]).is_err());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = PolyRing::rationals(2).var(0);
        let b = PolyRing::rationals(3).var(0);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
        let c = PolyRing::new(Field::finite(3).unwrap(), 2).var(0);
        assert!(a.checked_mul(&c).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n + d, d)
        assert_eq!(Monomial::all_up_to(3, 2).len(), 10);
        assert_eq!(Monomial::all_up_to(3, 8).len(), 165);
        assert_eq!(Monomial::all_up_to(2, 3).len(), 10);
        let ms = Monomial::all_up_to(3, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partial_derivatives_in_small_characteristic() {
        let r = PolyRing::new(Field::finite(3).unwrap(), 2);
        let p = r.parse("X^3 + X^2*Y").unwrap();
        assert_eq!(p.partial(0), r.parse("2*X*Y").unwrap());
    }

    #[test]
    fn printing_is_graded_lex_descending() {
        let r = q3();
        let p = r.parse("3 - Y + (1/2)*X^2 - X*Z^3").unwrap();
        assert_eq!(p.to_string(), "-X*Z^3 + (1/2)*X^2 - Y + 3");
        let f4 = PolyRing::new(Field::finite(4).unwrap(), 2);
        let p = f4.parse("(t+1)*X + t*Y + t + 1").unwrap();
        assert_eq!(p.to_string(), "(t+1)*X + t*Y + (t+1)");
    }
}
