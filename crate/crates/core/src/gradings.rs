//! Monomial gradings given by rational weight vectors, and the solver for
//! every grading that makes a given derivation homogeneous.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Degree, Field, PolyRing, Polynomial, Scalar};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{in_span, reduced_basis, Matrix};

/// Weight of each variable; a monomial `X^e` has weight `Σ w_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<BigRational>);

impl WeightVector {
    pub fn from_ints(w: &[i64]) -> WeightVector {
        WeightVector(w.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn monomial_weight(&self, exponents: &[u32]) -> BigRational {
        self.0.iter().zip(exponents).fold(BigRational::zero(), |acc, (w, &e)| {
            acc + w * BigRational::from_integer(e.into())
        })
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> WeightVector {
        WeightVector(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Largest weighted degree among the terms of `p`.
pub fn weighted_degree(p: &Polynomial, w: &WeightVector) -> Degree<BigRational> {
    p.terms()
        .map(|(m, _)| w.monomial_weight(m.exponents()))
        .max()
        .map_or(Degree::MinusInfinity, Degree::Finite)
}

/// All terms share one weighted degree. Zero counts as homogeneous.
pub fn is_homogeneous(p: &Polynomial, w: &WeightVector) -> bool {
    let mut weights = p.terms().map(|(m, _)| w.monomial_weight(m.exponents()));
    match weights.next() {
        None => true,
        Some(first) => weights.all(|x| x == first),
    }
}

/// The unique `k` with `deg D(X_i) - w_i = k` for every `i` with `D(X_i) ≠ 0`.
pub fn derivation_degree(d: &Derivation, w: &WeightVector) -> Result<BigRational> {
    let ring = d.ring();
    if w.len() != ring.nvars() {
        return Err(Error::RingMismatch("weight vector length".into()));
    }
    let mut k: Option<BigRational> = None;
    for (i, im) in d.images().iter().enumerate() {
        if im.is_zero() {
            continue;
        }
        if !is_homogeneous(im, w) {
            return Err(Error::InhomogeneousImage {
                variable: ring.var_name(i),
            });
        }
        let deg = weighted_degree(im, w).finite().expect("nonzero image") - &w.0[i];
        match &k {
            None => k = Some(deg),
            Some(prev) if *prev != deg => {
                return Err(Error::DegreeMismatch(format!(
                    "{} shifts degree by {}, earlier variables by {}",
                    ring.var_name(i),
                    deg,
                    prev
                )))
            }
            Some(_) => {}
        }
    }
    k.ok_or(Error::ZeroDerivation)
}

/// A basis of the space of pairs `(w, k)` for which `D` is homogeneous of
/// degree `k` under the weights `w`. Rows are in reduced row echelon form
/// over the coordinates `(w_1, ..., w_n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSolution {
    pub nvars: usize,
    pub basis: Vec<(WeightVector, BigRational)>,
}

impl GradingSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn rows(&self) -> Vec<Vec<Scalar>> {
        self.basis
            .iter()
            .map(|(w, k)| {
                w.0.iter()
                    .chain(std::iter::once(k))
                    .map(|x| Scalar::Rational(x.clone()))
                    .collect()
            })
            .collect()
    }

    /// True when `(w, k)` lies in the solution space.
    pub fn contains(&self, w: &WeightVector, k: &BigRational) -> bool {
        let v: Vec<Scalar> =
            w.0.iter()
                .chain(std::iter::once(k))
                .map(|x| Scalar::Rational(x.clone()))
                .collect();
        in_span(&Field::Rationals, &self.rows(), &v)
    }

    /// True when both solutions span the same space.
    pub fn same_span(&self, other: &[(WeightVector, BigRational)]) -> bool {
        let other = GradingSolution {
            nvars: self.nvars,
            basis: other.to_vec(),
        };
        self.basis.iter().all(|(w, k)| other.contains(w, k)) && other.basis.iter().all(|(w, k)| self.contains(w, k))
    }

    /// `Σ c_j · basis_j`.
    pub fn combination(&self, coeffs: &[BigRational]) -> (WeightVector, BigRational) {
        let n = self.nvars;
        let mut w = WeightVector(vec![BigRational::zero(); n]);
        let mut k = BigRational::zero();
        for ((bw, bk), c) in self.basis.iter().zip(coeffs) {
            w = w.add(&bw.scale(c));
            k += bk * c;
        }
        (w, k)
    }
}

/// Solves the homogeneous linear system in `(w_1..w_n, k)`: for every `i`
/// with `D(X_i) ≠ 0` and every monomial `X^e` of `D(X_i)`,
/// `Σ_j e_j w_j - w_i - k = 0`. Variables with `D(X_i) = 0` impose nothing.
pub fn solve_gradings(d: &Derivation) -> GradingSolution {
    let n = d.ring().nvars();
    let q = Field::Rationals;
    let mut rows = Vec::new();
    for (i, im) in d.images().iter().enumerate() {
        for (m, _) in im.terms() {
            let mut row: Vec<Scalar> = m.exponents().iter().map(|&e| q.from_i64(e as i64)).collect();
            row[i] = q.sub(&row[i], &q.one());
            row.push(q.from_i64(-1));
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() {
        let id = Matrix::identity(&q, n + 1);
        (0..=n).map(|r| id.row(r).to_vec()).collect()
    } else {
        Matrix::from_rows(&q, rows).nullspace()
    };
    let basis = reduced_basis(&q, kernel, n + 1)
        .into_iter()
        .map(|row| {
            let mut vals: Vec<BigRational> = row
                .into_iter()
                .map(|s| s.as_rational().expect("rational").clone())
                .collect();
            let k = vals.pop().expect("k column");
            (WeightVector(vals), k)
        })
        .collect();
    GradingSolution { nvars: n, basis }
}

/// `E = Σ w_i X_i ∂_{X_i}`.
pub fn euler_derivation(ring: &PolyRing, w: &WeightVector) -> Result<Derivation> {
    if w.len() != ring.nvars() {
        return Err(Error::RingMismatch("weight vector length".into()));
    }
    let images =
        w.0.iter()
            .enumerate()
            .map(|(i, wi)| Ok(ring.var(i).scale(&ring.field().from_rational(wi)?)))
            .collect::<Result<Vec<_>>>()?;
    Derivation::new(ring, images)
}
