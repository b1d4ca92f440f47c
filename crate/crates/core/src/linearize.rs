//! Conjugating an exponential by a diagonal map, and the shift trick that
//! turns `L·exp(λD)` back into `L`.
//!
//! All products here are products of ring endomorphisms
//! ([`PolyMap::endo_product`]): `A·B` acts on a polynomial as `p ↦ A(B(p))`
//! where a map acts by substitution. The shift identity
//! `exp(-μD)·(L·exp(λD))·exp(μD) = L` holds in this order and fails under
//! plain point composition.

use crate::algebra::{Field, PolyRing, Scalar};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::maps::PolyMap;

fn diagonal_entries(l: &PolyMap) -> Result<Vec<Scalar>> {
    l.as_diagonal().ok_or_else(|| Error::NotDiagonal(l.to_string()))
}

/// `φ_L⁻¹ ∘ D ∘ φ_L` for a diagonal `L = (d_1 X_1, ..., d_n X_n)`.
/// Its value on `X_i` is `d_i · D(X_i)` evaluated at `(X_1/d_1, ..., X_n/d_n)`.
pub fn conjugate_derivation(l: &PolyMap, d: &Derivation) -> Result<Derivation> {
    l.ring().check_same(d.ring())?;
    let entries = diagonal_entries(l)?;
    let field = l.ring().field();
    let inv = entries.iter().map(|x| field.inv(x)).collect::<Result<Vec<_>>>()?;
    let l_inv = PolyMap::diagonal(l.ring(), &inv)?;
    let images = d
        .images()
        .iter()
        .zip(&entries)
        .map(|(im, di)| Ok(l_inv.pullback(im)?.scale(di)))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(l.ring(), images)
}

/// The scalar `c` with `φ_L⁻¹ D φ_L = c·D`.
pub fn conjugation_scalar(l: &PolyMap, d: &Derivation) -> Result<Scalar> {
    let conj = conjugate_derivation(l, d)?;
    let field = l.ring().field();
    let (i, lead) = d
        .images()
        .iter()
        .enumerate()
        .find_map(|(i, im)| im.leading_term().map(|(m, _)| (i, m.clone())))
        .ok_or(Error::ZeroDerivation)?;
    let c = field.div(&conj.image(i).coefficient(&lead), &d.image(i).coefficient(&lead))?;
    for (j, (a, b)) in conj.images().iter().zip(d.images()).enumerate() {
        if *a != b.scale(&c) {
            return Err(Error::NotProportional {
                variable: l.ring().var_name(j),
            });
        }
    }
    Ok(c)
}

/// Checks `L⁻¹·exp(λD)·L = exp(cλD)` and returns `cλ`.
pub fn conjugate_exp(l: &PolyMap, d: &Derivation, lambda: &Scalar, bound: usize) -> Result<Scalar> {
    let field = l.ring().field();
    let c = conjugation_scalar(l, d)?;
    let l_inv = inverse_diagonal(l)?;
    let lhs = l_inv.endo_product(&d.exp(lambda, bound)?)?.endo_product(l)?;
    let cl = field.mul(&c, lambda);
    let rhs = d.exp(&cl, bound)?;
    if lhs != rhs {
        return Err(Error::IdentityViolated(format!(
            "L^-1 exp(λD) L = {lhs}, exp(cλD) = {rhs}"
        )));
    }
    Ok(cl)
}

fn inverse_diagonal(l: &PolyMap) -> Result<PolyMap> {
    let field = l.ring().field();
    let inv = diagonal_entries(l)?
        .iter()
        .map(|x| field.inv(x))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::diagonal(l.ring(), &inv)
}

/// `μ = λ / (c - 1)`; undefined when `c = 1`.
pub fn shift_conjugator(field: &Field, lambda: &Scalar, c: &Scalar) -> Result<Scalar> {
    let denom = field.sub(c, &field.one());
    if field.is_zero(&denom) {
        return Err(Error::Degenerate);
    }
    field.div(lambda, &denom)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub diagonal: Vec<Scalar>,
    pub derivation: Derivation,
    pub lambda: Scalar,
    pub conjugation_scalar: Scalar,
    /// `None` when `c = 1`.
    pub conjugator: Option<Scalar>,
    /// `L·exp(λD)`.
    pub shifted_map: PolyMap,
    /// `exp(-μD)·(L·exp(λD))·exp(μD)`, absent in the degenerate case.
    pub conjugated_map: Option<PolyMap>,
    pub verified: bool,
    pub degenerate: bool,
}

/// Builds `L·exp(λD)` and, when `c ≠ 1`, conjugates it back to `L` by
/// `exp(μD)` with `μ = λ/(c-1)`. `verified` records whether the result is
/// exactly `L`.
pub fn build_shift_linearization(l: &PolyMap, d: &Derivation, lambda: &Scalar, bound: usize) -> Result<ShiftReport> {
    let field = l.ring().field().clone();
    let diagonal = diagonal_entries(l)?;
    let c = conjugation_scalar(l, d)?;
    let shifted_map = l.endo_product(&d.exp(lambda, bound)?)?;
    let (conjugator, conjugated_map, verified, degenerate) = match shift_conjugator(&field, lambda, &c) {
        Ok(mu) => {
            let fwd = d.exp(&mu, bound)?;
            let back = d.exp(&field.neg(&mu), bound)?;
            let result = back.endo_product(&shifted_map)?.endo_product(&fwd)?;
            let ok = result == *l;
            (Some(mu), Some(result), ok, false)
        }
        Err(Error::Degenerate) => (None, None, false, true),
        Err(e) => return Err(e),
    };
    Ok(ShiftReport {
        diagonal,
        derivation: d.clone(),
        lambda: lambda.clone(),
        conjugation_scalar: c,
        conjugator,
        shifted_map,
        conjugated_map,
        verified,
        degenerate,
    })
}

/// Membership of `L_{a,b,c} = (aX, bY, cZ)` in the families that normalise
/// `Δδ` (`ac = b²`) and fix `Δ` (additionally `bc = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NagataFamilyDescriptor {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub in_l: bool,
    pub in_l0: bool,
}

pub fn nagata_family(field: &Field, a: &Scalar, b: &Scalar, c: &Scalar) -> NagataFamilyDescriptor {
    let nonzero = [a, b, c].iter().all(|x| !field.is_zero(x));
    let in_l = nonzero && field.mul(a, c) == field.mul(b, b);
    let in_l0 = in_l && field.is_one(&field.mul(b, c));
    NagataFamilyDescriptor {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        in_l,
        in_l0,
    }
}

/// `L_b = (b³X, bY, b⁻¹Z)`, the one-parameter family fixing `Δ`.
pub fn l_b(field: &Field, b: &Scalar) -> Result<PolyMap> {
    let ring = PolyRing::new(field.clone(), 3);
    PolyMap::diagonal(&ring, &[field.pow(b, 3), b.clone(), field.inv(b)?])
}
