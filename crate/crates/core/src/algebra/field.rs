//! Exact coefficient fields: the rationals and small Galois fields GF(p^m).
//!
//! Elements of GF(p^m) are residues modulo a fixed monic irreducible
//! polynomial over GF(p). They are packed into a `u32` as base-`p` digits,
//! lowest coefficient first, so `c0 + c1*t + c2*t^2` is `c0 + c1*p + c2*p^2`.
//! Arithmetic works directly on the digit vectors; no log/antilog tables.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field element. Which variant is valid is decided by the owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Finite(u32),
}

impl Scalar {
    pub fn from_ratio(numer: i64, denom: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Finite(_) => None,
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

/// GF(p^m) given by a monic irreducible modulus of degree m over GF(p).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u32,
    m: u32,
    /// Monic modulus, low-to-high coefficients, length m + 1.
    modulus: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo monic `b`, coefficients mod `p`.
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    let p64 = p as u64;
    while r.len() > db {
        let lead = r.pop().unwrap() % p64;
        if lead == 0 {
            continue;
        }
        let shift = r.len() - db;
        for (i, &bc) in b[..db].iter().enumerate() {
            let sub = lead * bc as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    r.iter().map(|&x| (x % p64) as u32).collect()
}

impl GaloisField {
    /// Builds GF(p^m) from a monic modulus (low-to-high coefficients).
    /// Irreducibility is checked by trial division by every monic
    /// polynomial of degree at most m/2.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<GaloisField> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must lie in 0..{p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(m).filter(|&q| q <= u32::MAX as u64);
        if q.is_none() {
            return Err(Error::InvalidField(format!("GF({p}^{m}) is too large")));
        }
        for d in 1..=(m / 2) {
            let count = (p as u64).pow(d);
            for code in 0..count {
                let mut divisor = Vec::with_capacity(d as usize + 1);
                let mut c = code;
                for _ in 0..d {
                    divisor.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                divisor.push(1);
                if poly_rem_mod_p(&modulus, &divisor, p).iter().all(|&x| x == 0) {
                    return Err(Error::InvalidField(format!(
                        "modulus {modulus:?} is reducible over GF({p})"
                    )));
                }
            }
        }
        Ok(GaloisField { p, m, modulus })
    }

    pub fn prime(p: u32) -> Result<GaloisField> {
        GaloisField::new(p, vec![0, 1])
    }

    /// The shipped representations: prime fields, GF(4) = GF(2)[t]/(t^2+t+1),
    /// GF(8) = GF(2)[t]/(t^3+t+1), GF(9) = GF(3)[t]/(t^2+1).
    pub fn standard(q: u32) -> Result<GaloisField> {
        match q {
            4 => GaloisField::new(2, vec![1, 1, 1]),
            8 => GaloisField::new(2, vec![1, 1, 0, 1]),
            9 => GaloisField::new(3, vec![1, 0, 1]),
            q if is_prime(q) => GaloisField::prime(q),
            _ => Err(Error::InvalidField(format!(
                "no shipped representation for GF({q}); supply an irreducible modulus"
            ))),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut x = x;
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut rem = poly_rem_mod_p(&prod, &self.modulus, self.p);
        rem.resize(self.m as usize, 0);
        self.pack(&rem)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.order() as u64 - 2))
        }
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn format(&self, a: u32) -> String {
        if self.m == 1 {
            return a.to_string();
        }
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// A coefficient field. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Finite(Arc<GaloisField>),
}

impl Field {
    pub fn finite(q: u32) -> Result<Field> {
        Ok(Field::Finite(Arc::new(GaloisField::standard(q)?)))
    }

    /// Parses `Q`, `QQ`, `GF(q)` or `GF(p^m)` (for shipped representations).
    pub fn from_name(name: &str) -> Result<Field> {
        let s = name.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") || s == "rationals" {
            return Ok(Field::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .or_else(|| s.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("GF").or_else(|| s.strip_prefix("gf")))
            .ok_or_else(|| Error::InvalidField(format!("unrecognised field `{name}`")))?;
        let q = if let Some((p, m)) = inner.split_once('^') {
            let p: u32 = p.trim().parse().map_err(|_| Error::InvalidField(name.into()))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::InvalidField(name.into()))?;
            p.checked_pow(m).ok_or_else(|| Error::InvalidField(name.into()))?
        } else {
            inner.trim().parse().map_err(|_| Error::InvalidField(name.into()))?
        };
        Field::finite(q)
    }

    pub fn galois(&self) -> Option<&GaloisField> {
        match self {
            Field::Rationals => None,
            Field::Finite(gf) => Some(gf),
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Finite(gf) => gf.p,
        }
    }

    pub fn order(&self) -> Option<u32> {
        self.galois().map(GaloisField::order)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Finite(_) => Scalar::Finite(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::one()),
            Field::Finite(_) => Scalar::Finite(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            Field::Finite(gf) => Scalar::Finite(gf.from_i64(v)),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Finite(gf) => {
                let r = v.mod_floor(&BigInt::from(gf.p));
                Scalar::Finite(r.to_u32().expect("residue fits in u32"))
            }
        }
    }

    /// Image of a rational number; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(r.clone())),
            Field::Finite(_) => {
                let n = self.from_bigint(r.numer());
                let d = self.from_bigint(r.denom());
                self.div(&n, &d)
                    .map_err(|_| Error::NotInField(format!("{r} has denominator divisible by the characteristic")))
            }
        }
    }

    /// The extension generator `t` of GF(p^m), m >= 2.
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            Field::Finite(gf) if gf.m >= 2 => Ok(Scalar::Finite(gf.p)),
            _ => Err(Error::NotInField(
                "`t` is only defined in extension fields GF(p^m), m >= 2".into(),
            )),
        }
    }

    /// True when `s` is a valid element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Finite(gf), Scalar::Finite(x)) => *x < gf.order(),
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Finite(x) => *x == 0,
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Finite(x) => *x == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Finite(gf), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(gf.add(*x, *y)),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Finite(gf), Scalar::Finite(x)) => Scalar::Finite(gf.neg(*x)),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Finite(gf), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(gf.mul(*x, *y)),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(x.recip()))
                }
            }
            (Field::Finite(gf), Scalar::Finite(x)) => gf.inv(*x).map(Scalar::Finite).ok_or(Error::DivisionByZero),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(num_traits::pow(x.clone(), e as usize)),
            (Field::Finite(gf), Scalar::Finite(x)) => Scalar::Finite(gf.pow(*x, e as u64)),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    /// Every element in packed order (finite fields only).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.galois().map(|gf| (0..gf.order()).map(Scalar::Finite).collect())
    }

    /// Canonical text of a scalar, in the expression grammar.
    pub fn format(&self, s: &Scalar) -> String {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(r)) => r.to_string(),
            (Field::Finite(gf), Scalar::Finite(x)) => gf.format(*x),
            _ => unreachable!("scalar does not belong to field {self}"),
        }
    }

    /// True for a negative rational; finite-field elements have no sign.
    pub(crate) fn is_negative(&self, s: &Scalar) -> bool {
        matches!(s, Scalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Finite(gf) if gf.m == 1 => write!(f, "GF({})", gf.p),
            Field::Finite(gf) => write!(f, "GF({}^{})", gf.p, gf.m),
        }
    }
}
