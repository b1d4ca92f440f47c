//! Eigenspaces of the pullback `p ↦ p(F)` restricted to polynomials of
//! bounded total degree, and their transport along conjugation.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Monomial, PolyRing, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{in_span, reduced_basis};
use crate::maps::{AutWord, PolyMap};

/// Coordinates of polynomials of total degree `≤ d` in the monomial basis,
/// ordered by increasing graded-lex order.
#[derive(Clone, Debug)]
pub struct CoefficientSpace {
    ring: PolyRing,
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl CoefficientSpace {
    pub fn new(ring: &PolyRing, degree: u32) -> CoefficientSpace {
        let basis = Monomial::all_up_to(ring.nvars(), degree);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        CoefficientSpace {
            ring: ring.clone(),
            degree,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Scalar>> {
        self.ring.check_same(p.ring())?;
        let field = self.ring.field();
        let mut v = vec![field.zero(); self.dim()];
        for (m, c) in p.terms() {
            let i = *self.index.get(m).ok_or_else(|| Error::DegreeBoundTooSmall {
                given: self.degree as usize,
                required: m.total_degree() as usize,
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn polynomial(&self, coords: &[Scalar]) -> Polynomial {
        self.ring
            .from_terms(self.basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

/// A basis of `{p : deg p ≤ d, p(F) = μp}`.
///
/// The basis is reduced: leading monomials are distinct, each element is
/// monic, and no element has a nonzero coefficient at another element's
/// leading monomial. Elements are sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceBasis {
    pub map: PolyMap,
    pub mu: Scalar,
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

impl EigenspaceBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the eigenspace restricted to degree `≤ d`, for `d` up
    /// to the computed bound. Reduced bases make this a simple count.
    pub fn dimension_at(&self, d: u32) -> usize {
        self.basis
            .iter()
            .filter(|p| p.total_degree().finite().is_some_and(|t| t <= d))
            .count()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        let space = CoefficientSpace::new(self.map.ring(), self.degree);
        let rows = self
            .basis
            .iter()
            .map(|b| space.coordinates(b))
            .collect::<Result<Vec<_>>>()?;
        let v = match space.coordinates(p) {
            Ok(v) => v,
            Err(Error::DegreeBoundTooSmall { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(in_span(self.map.ring().field(), &rows, &v))
    }
}

/// Images `m(F)` of every monomial of degree `≤ d`, each obtained from a
/// smaller one by a single multiplication.
fn monomial_images(f: &PolyMap, space: &CoefficientSpace) -> Vec<Polynomial> {
    let ring = f.ring();
    let mut images: Vec<Polynomial> = Vec::with_capacity(space.dim());
    for m in space.monomials() {
        if m.is_one() {
            images.push(ring.one());
            continue;
        }
        let i = m.exponents().iter().position(|&e| e > 0).expect("non-constant");
        let mut e = m.exponents().to_vec();
        e[i] -= 1;
        let prev = space.index[&Monomial::new(e)];
        images.push(&images[prev] * f.component(i));
    }
    images
}

/// Kernel of `p ↦ p(F) - μp` on polynomials of degree `≤ d`.
pub fn eigenspace_basis(f: &PolyMap, mu: &Scalar, d: u32) -> Result<EigenspaceBasis> {
    let ring = f.ring();
    let field = ring.field();
    if !field.contains(mu) {
        return Err(Error::NotInField("eigenvalue".into()));
    }
    let space = CoefficientSpace::new(ring, d);
    let images = monomial_images(f, &space);
    let n = space.dim();

    // Gaussian elimination on the columns p_j = m_j(F) - μ m_j, keyed by
    // leading monomial, tracking each column as a combination of the m_j.
    let mut pivots: BTreeMap<Monomial, (Polynomial, Vec<Scalar>)> = BTreeMap::new();
    let mut kernel: Vec<Vec<Scalar>> = Vec::new();
    for (j, (m, img)) in space.monomials().iter().zip(images).enumerate() {
        let mut v = &img - &ring.monomial(m.clone(), mu.clone());
        let mut combo = vec![field.zero(); n];
        combo[j] = field.one();
        loop {
            let Some((lead, lc)) = v.leading_term().map(|(m, c)| (m.clone(), c.clone())) else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&lead) {
                Some((pv, pc)) => {
                    v = &v - &pv.scale(&lc);
                    for (a, b) in combo.iter_mut().zip(pc) {
                        if !field.is_zero(b) {
                            *a = field.sub(a, &field.mul(&lc, b));
                        }
                    }
                }
                None => {
                    let inv = field.inv(&lc)?;
                    let v = v.scale(&inv);
                    let combo = combo.iter().map(|a| field.mul(a, &inv)).collect();
                    pivots.insert(lead, (v, combo));
                    break;
                }
            }
        }
    }

    // Reduce with columns in decreasing monomial order so that each pivot
    // is the leading monomial of its row.
    let reversed: Vec<Vec<Scalar>> = kernel
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    let mut basis: Vec<Polynomial> = reduced_basis(field, reversed, n)
        .into_iter()
        .map(|mut v| {
            v.reverse();
            space.polynomial(&v)
        })
        .collect();
    basis.sort_by(|a, b| a.leading_term().map(|t| t.0).cmp(&b.leading_term().map(|t| t.0)));
    Ok(EigenspaceBasis {
        map: f.clone(),
        mu: mu.clone(),
        degree: d,
        basis,
    })
}

/// Dimensions of the fixed space (`μ = 1`) in degrees `≤ 0, ≤ 1, ..., ≤ dmax`.
pub fn fixed_dimension_profile(f: &PolyMap, dmax: u32) -> Result<Vec<usize>> {
    let one = f.ring().field().one();
    let e = eigenspace_basis(f, &one, dmax)?;
    Ok((0..=dmax).map(|d| e.dimension_at(d)).collect())
}

/// The eigenspace of `F` and of its conjugate `G = S⁻¹ ∘ F ∘ S`, together
/// with the images `p(S)` of the source basis, which lie in the
/// eigenspace of `G`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub source: EigenspaceBasis,
    pub conjugate_map: PolyMap,
    pub conjugate: EigenspaceBasis,
    pub transported: Vec<Polynomial>,
}

impl Transport {
    /// True when every transported element lies in the conjugate eigenspace.
    pub fn transported_in_span(&self) -> Result<bool> {
        for p in &self.transported {
            if !self.conjugate.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Conjugates `F` by the automorphism `σ` and carries its eigenspace along.
///
/// The conjugate eigenspace is computed up to `conj_bound`, defaulting to
/// the larger of `d` and the highest degree among the transported
/// elements. A bound below that degree is an error.
pub fn conjugation_transport(
    sigma: &AutWord,
    f: &PolyMap,
    mu: &Scalar,
    d: u32,
    conj_bound: Option<u32>,
) -> Result<Transport> {
    f.ring().check_same(sigma.ring())?;
    let s = sigma.realize()?;
    let s_inv = sigma.inverse().realize()?;
    let g = s_inv.compose(f)?.compose(&s)?;
    let source = eigenspace_basis(f, mu, d)?;
    let transported = source.basis.iter().map(|p| s.pullback(p)).collect::<Result<Vec<_>>>()?;
    let required = transported
        .iter()
        .filter_map(|p| p.total_degree().finite())
        .max()
        .unwrap_or(0);
    let bound = conj_bound.unwrap_or(required.max(d));
    if bound < required {
        return Err(Error::DegreeBoundTooSmall {
            given: bound as usize,
            required: required as usize,
        });
    }
    let conjugate = eigenspace_basis(&g, mu, bound)?;
    Ok(Transport {
        source,
        conjugate_map: g,
        conjugate,
        transported,
    })
}

/// Convenience for the fixed space over a given field.
pub fn fixed_space(f: &PolyMap, d: u32) -> Result<EigenspaceBasis> {
    eigenspace_basis(f, &f.ring().field().one(), d)
}
