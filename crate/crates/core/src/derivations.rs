//! Derivations of k[X1..Xn], stored as the images of the variables.
//!
//! `D(p) = Σ ∂p/∂X_i · D(X_i)`. Local nilpotency is certified on the
//! variables only: the elements on which `D` acts nilpotently form a
//! subalgebra, so generators suffice.

use std::fmt;

use crate::algebra::parse::parse_tuple;
use crate::algebra::{Field, PolyRing, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::maps::PolyMap;

/// Iteration bound used when callers do not supply one.
pub const DEFAULT_LND_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    ring: PolyRing,
    images: Vec<Polynomial>,
}

/// Per-variable nilpotency indices: `m_i` is the least `m` with `D^m(X_i) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub indices: Vec<usize>,
    pub bound: usize,
}

impl NilpotencyCertificate {
    /// Re-runs `D` on every variable and checks that `D^{m_i}(X_i) = 0`
    /// while `D^{m_i - 1}(X_i) ≠ 0`.
    pub fn replay(&self, d: &Derivation) -> bool {
        let vars = d.ring.vars();
        self.indices.len() == vars.len()
            && vars
                .iter()
                .zip(&self.indices)
                .all(|(x, &m)| m >= 1 && !d.iterate(x, m - 1).is_zero() && d.iterate(x, m).is_zero())
    }
}

impl Derivation {
    pub fn new(ring: &PolyRing, images: Vec<Polynomial>) -> Result<Derivation> {
        if images.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                ring.nvars()
            )));
        }
        for im in &images {
            ring.check_same(im.ring())?;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    pub fn zero(ring: &PolyRing) -> Derivation {
        Derivation {
            ring: ring.clone(),
            images: vec![ring.zero(); ring.nvars()],
        }
    }

    /// `∂/∂X_i`.
    pub fn partial(ring: &PolyRing, i: usize) -> Derivation {
        let mut images = vec![ring.zero(); ring.nvars()];
        images[i] = ring.one();
        Derivation {
            ring: ring.clone(),
            images,
        }
    }

    /// Parses `[expr; ...; expr]`.
    pub fn parse(ring: &PolyRing, text: &str) -> Result<Derivation> {
        let images = parse_tuple(ring, text, '[', ']', ';')?;
        Derivation::new(ring, images)
    }

    /// A literal, or the preset `nagata` (three variables).
    pub fn parse_or_preset(ring: &PolyRing, text: &str) -> Result<Derivation> {
        if text.trim().eq_ignore_ascii_case("nagata") {
            if ring.nvars() != 3 {
                return Err(Error::InvalidArgument("nagata needs three variables".into()));
            }
            nagata_derivation(ring.field())
        } else {
            Derivation::parse(ring, text)
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        self.ring.check_same(&other.ring)?;
        Ok(Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Derivation) -> Result<Derivation> {
        self.checked_add(&other.scale(&self.ring.field().from_i64(-1)))
    }

    /// `p ↦ Σ_i ∂p/∂X_i · D(X_i)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(p.ring())?;
        Ok(self.apply_unchecked(p))
    }

    fn apply_unchecked(&self, p: &Polynomial) -> Polynomial {
        let mut out = self.ring.zero();
        for (i, im) in self.images.iter().enumerate() {
            if im.is_zero() || !p.involves(i) {
                continue;
            }
            out = &out + &(&p.partial(i) * im);
        }
        out
    }

    /// `D^k(p)`.
    pub fn iterate(&self, p: &Polynomial, k: usize) -> Polynomial {
        let mut q = p.clone();
        for _ in 0..k {
            if q.is_zero() {
                break;
            }
            q = self.apply_unchecked(&q);
        }
        q
    }

    /// The commutator `[D, E] = DE - ED`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.ring.check_same(&other.ring)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(d_xi, e_xi)| &self.apply_unchecked(e_xi) - &other.apply_unchecked(d_xi))
            .collect();
        Ok(Derivation {
            ring: self.ring.clone(),
            images,
        })
    }

    /// Certifies local nilpotency if every variable dies within `bound`
    /// applications. Failure means "not verified", not "not nilpotent".
    pub fn verify_lnd(&self, bound: usize) -> Result<NilpotencyCertificate> {
        if bound == 0 {
            return Err(Error::InvalidArgument("nilpotency bound must be >= 1".into()));
        }
        let mut indices = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            let mut q = self.ring.var(i);
            let mut m = 0;
            while !q.is_zero() {
                if m == bound {
                    return Err(Error::NotLocallyNilpotent {
                        variable: self.ring.var_name(i),
                        bound,
                        survivor: q.to_string(),
                    });
                }
                q = self.apply_unchecked(&q);
                m += 1;
            }
            indices.push(m);
        }
        Ok(NilpotencyCertificate { indices, bound })
    }

    /// `exp(λD)` as the map `X_i ↦ Σ_{j < m_i} λ^j / j! · D^j(X_i)`.
    ///
    /// In characteristic p this needs `(m_i - 1)!` invertible, i.e. every
    /// nilpotency index at most p.
    pub fn exp(&self, lambda: &Scalar, bound: usize) -> Result<PolyMap> {
        let field = self.ring.field();
        if !field.contains(lambda) {
            return Err(Error::NotInField("exponent parameter".into()));
        }
        let cert = self.verify_lnd(bound)?;
        let max_index = cert.indices.iter().copied().max().unwrap_or(1);
        let p = field.characteristic();
        if p != 0 && max_index > p as usize {
            return Err(Error::CharacteristicTooSmall {
                characteristic: p,
                required: max_index - 1,
            });
        }
        let components = (0..self.ring.nvars())
            .map(|i| {
                let mut term = self.ring.var(i);
                let mut sum = term.clone();
                for j in 1..cert.indices[i] {
                    // term_j = λ/j · D(term_{j-1})
                    let factor = field
                        .div(lambda, &field.from_i64(j as i64))
                        .expect("j < characteristic");
                    term = self.apply_unchecked(&term).scale(&factor);
                    sum = &sum + &term;
                }
                sum
            })
            .collect();
        PolyMap::new(&self.ring, components)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{im}")?;
        }
        write!(f, "]")
    }
}

fn require_odd_characteristic(field: &Field) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::UnsupportedCharacteristic(
            "the Nagata derivation needs characteristic != 2".into(),
        ))
    } else {
        Ok(())
    }
}

/// `Δ = XZ + Y²` in k[X, Y, Z].
pub fn nagata_delta(ring: &PolyRing) -> Polynomial {
    let (x, y, z) = (ring.var(0), ring.var(1), ring.var(2));
    &(&x * &z) + &(&y * &y)
}

/// `Δδ` with `δ = -2Y ∂_X + Z ∂_Y`: images `(-2YΔ, ZΔ, 0)`.
pub fn nagata_derivation(field: &Field) -> Result<Derivation> {
    require_odd_characteristic(field)?;
    let ring = PolyRing::new(field.clone(), 3);
    let delta = nagata_delta(&ring);
    let (y, z) = (ring.var(1), ring.var(2));
    let images = vec![(&y * &delta).scale(&field.from_i64(-2)), &z * &delta, ring.zero()];
    Derivation::new(&ring, images)
}

/// `N^λ = exp(λΔδ)`.
pub fn nagata_map(field: &Field, lambda: &Scalar) -> Result<PolyMap> {
    nagata_derivation(field)?.exp(lambda, DEFAULT_LND_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> PolyRing {
        PolyRing::rationals(3)
    }

    fn delta_small(r: &PolyRing) -> Derivation {
        // δ = -2Y∂_X + Z∂_Y
        Derivation::parse(r, "[-2*Y; Z; 0]").unwrap()
    }

    #[test]
    fn apply_examples() {
        let r = q3();
        let d = delta_small(&r);
        assert!(d.apply(&nagata_delta(&r)).unwrap().is_zero());
        let nd = nagata_derivation(r.field()).unwrap();
        assert_eq!(nd.apply(&r.var(0)).unwrap(), r.parse("-2*Y*(X*Z + Y^2)").unwrap());
        assert!(nd.apply(&r.one()).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let r = q3();
        let nd = nagata_derivation(r.field()).unwrap();
        let e1 = Derivation::parse(&r, "[X; 0; -Z]").unwrap();
        let e2 = Derivation::parse(&r, "[0; Y; 2*Z]").unwrap();
        assert_eq!(e1.bracket(&nd).unwrap(), nd.scale(&r.field().from_i64(-1)));
        assert_eq!(e2.bracket(&nd).unwrap(), nd.scale(&r.field().from_i64(3)));
        assert!(nd.bracket(&nd).unwrap().is_zero());
    }

    #[test]
    fn nilpotency_certificates() {
        let r = q3();
        let nd = nagata_derivation(r.field()).unwrap();
        let cert = nd.verify_lnd(10).unwrap();
        assert_eq!(cert.indices, vec![3, 2, 1]);
        assert!(cert.replay(&nd));
        assert_eq!(Derivation::partial(&r, 0).verify_lnd(2).unwrap().indices, vec![2, 1, 1]);
        let euler = Derivation::parse(&r, "[X; 0; 0]").unwrap();
        match euler.verify_lnd(64) {
            Err(Error::NotLocallyNilpotent { variable, .. }) => assert_eq!(variable, "X"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(nd.verify_lnd(2).is_err());
    }

    #[test]
    fn nagata_exponential() {
        let r = q3();
        let n = nagata_map(r.field(), &r.field().one()).unwrap();
        let expected = PolyMap::parse(&r, "(X - 2*Y*(X*Z+Y^2) - Z*(X*Z+Y^2)^2, Y + Z*(X*Z+Y^2), Z)").unwrap();
        assert_eq!(n, expected);
        assert!(nagata_map(r.field(), &r.field().zero()).unwrap().is_identity());
        let inv = nagata_map(r.field(), &r.field().from_i64(-1)).unwrap();
        assert!(n.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn nagata_with_parameter_follows_the_series() {
        let r = q3();
        let lam = Scalar::from_ratio(3, 7);
        let n = nagata_map(r.field(), &lam).unwrap();
        let expected = PolyMap::parse(
            &r,
            "(X - 2*(3/7)*Y*(X*Z+Y^2) - (9/49)*Z*(X*Z+Y^2)^2, Y + (3/7)*Z*(X*Z+Y^2), Z)",
        )
        .unwrap();
        assert_eq!(n, expected);
    }

    #[test]
    fn characteristic_guards() {
        let f2 = Field::finite(2).unwrap();
        assert!(matches!(
            nagata_derivation(&f2),
            Err(Error::UnsupportedCharacteristic(_))
        ));
        assert!(nagata_derivation(&Field::finite(4).unwrap()).is_err());
        let f3 = Field::finite(3).unwrap();
        assert!(nagata_map(&f3, &f3.one()).is_ok());
        // ∂_X^4 kills X^3 only after 4 steps; exp needs 3! which vanishes mod 3
        let r = PolyRing::new(f3.clone(), 2);
        let d = Derivation::parse(&r, "[Y^2; 1]").unwrap();
        assert_eq!(d.verify_lnd(10).unwrap().indices, vec![4, 2]);
        assert!(matches!(
            d.exp(&f3.one(), 10),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn leibniz_on_an_instance() {
        let r = q3();
        let d = Derivation::parse(&r, "[Y^2 - Z; X*Z; 3]").unwrap();
        let p = r.parse("X*Y + Z^2").unwrap();
        let q = r.parse("X^3 - Y*Z + 1").unwrap();
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&p * &d.apply(&q).unwrap()) + &(&q * &d.apply(&p).unwrap());
        assert_eq!(lhs, rhs);
    }
}
