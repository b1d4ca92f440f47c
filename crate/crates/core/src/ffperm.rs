//! Automorphisms over a finite field as permutations of `F_q^n`, their
//! parity, and seeded experiments on random tame words.

use std::fmt;
use std::ops::Mul;

use crate::algebra::{Field, Monomial, PolyRing, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::maps::{AutWord, PolyMap, Token};
use crate::rng::SplitMix64;

/// Largest point set an experiment will enumerate.
pub const POINT_LIMIT: u64 = 1 << 16;
pub const DEFAULT_WORD_LENGTH: usize = 5;
pub const DEFAULT_MAX_DEGREE: u32 = 3;

/// Points of `F_q^n` in lexicographic order, first coordinate most
/// significant, coordinates ordered by packed element code.
#[derive(Clone, Debug)]
pub struct PointTable {
    field: Field,
    n: usize,
    q: u32,
    len: usize,
}

impl PointTable {
    pub fn new(field: &Field, n: usize) -> Result<PointTable> {
        let q = field
            .order()
            .ok_or_else(|| Error::InvalidField("permutations need a finite field".into()))?;
        let points = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if points > POINT_LIMIT {
            return Err(Error::GuardExceeded {
                points,
                limit: POINT_LIMIT,
            });
        }
        Ok(PointTable {
            field: field.clone(),
            n,
            q,
            len: points as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn point(&self, mut index: usize) -> Vec<Scalar> {
        let mut coords = vec![Scalar::Finite(0); self.n];
        for c in coords.iter_mut().rev() {
            *c = Scalar::Finite((index % self.q as usize) as u32);
            index /= self.q as usize;
        }
        coords
    }

    pub fn index(&self, point: &[Scalar]) -> usize {
        point.iter().fold(0, |acc, s| match s {
            Scalar::Finite(x) => acc * self.q as usize + *x as usize,
            Scalar::Rational(_) => unreachable!("finite-field point"),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A permutation of `0..len` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![usize::MAX; images.len()];
        for (i, &y) in images.iter().enumerate() {
            if y >= images.len() {
                return Err(Error::InvalidArgument(format!("image {y} out of range")));
            }
            if seen[y] != usize::MAX {
                return Err(Error::NotBijective {
                    first: seen[y].to_string(),
                    second: i.to_string(),
                    image: y.to_string(),
                });
            }
            seen[y] = i;
        }
        Ok(Permutation(images))
    }

    pub fn identity(len: usize) -> Permutation {
        Permutation((0..len).collect())
    }

    pub fn transposition(len: usize, a: usize, b: usize) -> Permutation {
        let mut v: Vec<usize> = (0..len).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &y) in self.0.iter().enumerate() {
            inv[y] = i;
        }
        Permutation(inv)
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
            }
        }
        cycles
    }

    /// Even iff `len - #cycles` is even.
    pub fn sign(&self) -> Parity {
        if (self.0.len() - self.cycle_count()) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The permutation `x ↦ F(x)` of `F_q^n`; fails if `F` is not bijective.
pub fn map_to_permutation(f: &PolyMap, table: &PointTable) -> Result<Permutation> {
    if f.ring().field() != table.field() || f.ring().nvars() != table.nvars() {
        return Err(Error::RingMismatch("map and point table differ".into()));
    }
    let field = table.field();
    let show = |p: &[Scalar]| {
        let parts: Vec<String> = p.iter().map(|x| field.format(x)).collect();
        format!("({})", parts.join(", "))
    };
    let mut preimage = vec![usize::MAX; table.len()];
    let mut images = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let y = f.eval(&table.point(i));
        let j = table.index(&y);
        if preimage[j] != usize::MAX {
            return Err(Error::NotBijective {
                first: show(&table.point(preimage[j])),
                second: show(&table.point(i)),
                image: show(&y),
            });
        }
        preimage[j] = i;
        images.push(j);
    }
    Ok(Permutation(images))
}

/// The permutation realised by a word, computed token by token so that
/// the composite polynomial map is never expanded.
pub fn word_permutation(word: &AutWord, table: &PointTable) -> Result<Permutation> {
    let mut acc = Permutation::identity(table.len());
    for map in word.realize_tokens()? {
        acc = acc.compose(&map_to_permutation(&map, table)?);
    }
    Ok(acc)
}

fn random_nonzero(rng: &mut SplitMix64, q: u32) -> Scalar {
    Scalar::Finite(1 + rng.below(q as u64 - 1) as u32)
}

/// Each monomial in the allowed variables of degree `≤ max_degree` is
/// included with probability 1/2, with a uniform nonzero coefficient.
fn random_polynomial(rng: &mut SplitMix64, ring: &PolyRing, allowed: &[bool], max_degree: u32, q: u32) -> Polynomial {
    let terms: Vec<(Monomial, Scalar)> = Monomial::all_up_to(ring.nvars(), max_degree)
        .into_iter()
        .filter(|m| m.exponents().iter().zip(allowed).all(|(&e, &ok)| ok || e == 0))
        .filter_map(|m| rng.coin().then(|| (m, random_nonzero(rng, q))))
        .collect();
    ring.from_terms(terms)
}

/// Uniform invertible matrix by rejection on the leading `free` × `free`
/// block; the rest stays the identity.
fn random_invertible(rng: &mut SplitMix64, field: &Field, n: usize, free: usize, q: u32) -> Matrix {
    loop {
        let mut m = Matrix::identity(field, n);
        for r in 0..free {
            for c in 0..free {
                m.set(r, c, Scalar::Finite(rng.below(q as u64) as u32));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

fn finite_order(field: &Field) -> Result<u32> {
    field
        .order()
        .ok_or_else(|| Error::InvalidField("random words need a finite field".into()))
}

/// A seeded random word of `length` tokens, each an elementary token
/// (random target, random polynomial in the other variables) or an
/// invertible affine token, with equal probability.
pub fn random_tame_word(seed: u64, ring: &PolyRing, length: usize, max_degree: u32) -> Result<AutWord> {
    let field = ring.field();
    let q = finite_order(field)?;
    let n = ring.nvars();
    let mut rng = SplitMix64::new(seed);
    let mut word = AutWord::new(ring);
    for _ in 0..length {
        if rng.coin() {
            let matrix = random_invertible(&mut rng, field, n, n, q);
            let translation = (0..n).map(|_| Scalar::Finite(rng.below(q as u64) as u32)).collect();
            word.push(Token::Affine { matrix, translation });
        } else {
            let index = rng.below(n as u64) as usize;
            let allowed: Vec<bool> = (0..n).map(|j| j != index).collect();
            let poly = random_polynomial(&mut rng, ring, &allowed, max_degree, q);
            word.push(Token::Elementary { index, poly });
        }
    }
    Ok(word)
}

/// A seeded random word in `F_q[X, Y, Z]` built from tokens that act on
/// each fibre `Z = z` separately: `X += f(Y, Z)`, `Y += g(X, Z)`, and
/// affine maps of `(X, Y)` that leave `Z` alone.
pub fn random_fiberwise_word(seed: u64, field: &Field, length: usize, max_degree: u32) -> Result<AutWord> {
    let q = finite_order(field)?;
    let ring = PolyRing::new(field.clone(), 3);
    let mut rng = SplitMix64::new(seed);
    let mut word = AutWord::new(&ring);
    for _ in 0..length {
        match rng.below(3) {
            0 => {
                let poly = random_polynomial(&mut rng, &ring, &[false, true, true], max_degree, q);
                word.push(Token::Elementary { index: 0, poly });
            }
            1 => {
                let poly = random_polynomial(&mut rng, &ring, &[true, false, true], max_degree, q);
                word.push(Token::Elementary { index: 1, poly });
            }
            _ => {
                let matrix = random_invertible(&mut rng, field, 3, 2, q);
                let mut translation: Vec<Scalar> = (0..2).map(|_| Scalar::Finite(rng.below(q as u64) as u32)).collect();
                translation.push(Scalar::Finite(0));
                word.push(Token::Affine { matrix, translation });
            }
        }
    }
    Ok(word)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub q: u32,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub even: usize,
    pub odd: usize,
    /// Text of up to [`MAX_WITNESSES`] words with odd permutations.
    pub odd_witnesses: Vec<String>,
}

pub const MAX_WITNESSES: usize = 3;

impl ParityReport {
    /// Odd permutations over `F_{2^m}`, `m ≥ 2`, where tame maps are
    /// expected to be even.
    pub fn contradicts_even_expectation(&self) -> bool {
        self.odd > 0 && self.q.is_power_of_two() && self.q >= 4
    }
}

fn run_experiment(
    table: &PointTable,
    samples: usize,
    seed: u64,
    mut make: impl FnMut(u64) -> Result<AutWord>,
) -> Result<ParityReport> {
    let mut seeds = SplitMix64::new(seed);
    let (mut even, mut odd) = (0, 0);
    let mut odd_witnesses = Vec::new();
    for _ in 0..samples {
        let word = make(seeds.next_u64())?;
        match word_permutation(&word, table)?.sign() {
            Parity::Even => even += 1,
            Parity::Odd => {
                odd += 1;
                if odd_witnesses.len() < MAX_WITNESSES {
                    odd_witnesses.push(word.to_string());
                }
            }
        }
    }
    Ok(ParityReport {
        q: finite_order(table.field())?,
        n: table.nvars(),
        samples,
        seed,
        even,
        odd,
        odd_witnesses,
    })
}

/// Tallies the parity of `samples` random tame words over `F_q^n`.
/// Sample `i` uses the `i`-th output of SplitMix64 seeded with `seed`.
pub fn parity_experiment(
    field: &Field,
    n: usize,
    samples: usize,
    seed: u64,
    length: usize,
    max_degree: u32,
) -> Result<ParityReport> {
    let table = PointTable::new(field, n)?;
    let ring = PolyRing::new(field.clone(), n);
    run_experiment(&table, samples, seed, |s| {
        random_tame_word(s, &ring, length, max_degree)
    })
}

/// Parity of random fibrewise words over `F_{2^m}^3`, `m ≥ 2`.
pub fn fiberwise_experiment(
    field: &Field,
    samples: usize,
    seed: u64,
    length: usize,
    max_degree: u32,
) -> Result<ParityReport> {
    let gf = field
        .galois()
        .ok_or_else(|| Error::InvalidField("fibrewise experiment needs GF(2^m)".into()))?;
    if gf.characteristic() != 2 || gf.degree() < 2 {
        return Err(Error::InvalidField(format!(
            "fibrewise experiment needs GF(2^m) with m >= 2, got {field}"
        )));
    }
    let table = PointTable::new(field, 3)?;
    run_experiment(&table, samples, seed, |s| {
        random_fiberwise_word(s, field, length, max_degree)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::finite(q).unwrap()
    }

    #[test]
    fn point_table_order() {
        let t = PointTable::new(&gf(3), 2).unwrap();
        assert_eq!(t.len(), 9);
        assert_eq!(t.point(0), vec![Scalar::Finite(0), Scalar::Finite(0)]);
        assert_eq!(t.point(1), vec![Scalar::Finite(0), Scalar::Finite(1)]);
        assert_eq!(t.point(3), vec![Scalar::Finite(1), Scalar::Finite(0)]);
        for i in 0..9 {
            assert_eq!(t.index(&t.point(i)), i);
        }
        assert!(matches!(PointTable::new(&gf(5), 7), Err(Error::GuardExceeded { .. })));
        assert!(PointTable::new(&Field::Rationals, 1).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(5).sign(), Parity::Even);
        assert_eq!(Permutation::transposition(5, 1, 3).sign(), Parity::Odd);
        let cyc = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(cyc.sign(), Parity::Even);
        assert_eq!(cyc.compose(&cyc.inverse()), Permutation::identity(3));
        assert!(matches!(
            Permutation::new(vec![0, 0, 1]),
            Err(Error::NotBijective { .. })
        ));
    }

    #[test]
    fn swap_parity_over_small_fields() {
        // (Y, X) swaps the off-diagonal points: (q² - q)/2 transpositions.
        for (q, expect) in [(2, Parity::Odd), (3, Parity::Odd), (4, Parity::Even), (5, Parity::Even)] {
            let r = PolyRing::new(gf(q), 2);
            let f = PolyMap::parse(&r, "(Y, X)").unwrap();
            let t = PointTable::new(&gf(q), 2).unwrap();
            assert_eq!(map_to_permutation(&f, &t).unwrap().sign(), expect, "q = {q}");
        }
    }

    #[test]
    fn non_bijective_map() {
        let r = PolyRing::new(gf(3), 2);
        let f = PolyMap::parse(&r, "(X^2, Y)").unwrap();
        let t = PointTable::new(&gf(3), 2).unwrap();
        assert!(matches!(map_to_permutation(&f, &t), Err(Error::NotBijective { .. })));
    }

    #[test]
    fn word_permutation_matches_realised_map() {
        let r = PolyRing::new(gf(4), 2);
        let t = PointTable::new(&gf(4), 2).unwrap();
        for seed in 0..5 {
            let w = random_tame_word(seed, &r, 4, 2).unwrap();
            let direct = map_to_permutation(&w.realize().unwrap(), &t).unwrap();
            assert_eq!(word_permutation(&w, &t).unwrap(), direct);
        }
    }

    #[test]
    fn seeded_words_are_reproducible() {
        let r = PolyRing::new(gf(3), 2);
        let a = random_tame_word(42, &r, 6, 3).unwrap();
        let b = random_tame_word(42, &r, 6, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(random_tame_word(0, &r, 0, 3).unwrap().is_empty());
    }

    #[test]
    fn seeded_word_golden() {
        let r = PolyRing::new(gf(4), 2);
        let w = random_tame_word(1, &r, 5, 3).unwrap();
        assert_eq!(
            w.to_string(),
            "A[t+1,t,t+1,1;0,1] A[0,t,1,t;0,t] E[2;t+1] E[2;(t+1)*X^3 + (t+1)*X^2 + t*X] E[1;Y^2 + (t+1)*Y + (t+1)]"
        );
        assert_eq!(
            w.realize().unwrap().to_string(),
            "(Y^6 + X*Y^4 + (t+1)*Y^5 + X^2*Y^2 + X^3 + (t+1)*X^2*Y + t*X*Y^2 + Y^3 + t*X^2 + (t+1)*X + t, \
             t*Y^6 + t*X*Y^4 + Y^5 + t*X^2*Y^2 + t*X^3 + X^2*Y + (t+1)*X*Y^2 + t*Y^3 + (t+1)*X^2 + t*Y^2 + (t+1)*X + Y)"
        );
    }

    #[test]
    fn fiberwise_tokens_fix_z() {
        let f = gf(4);
        let w = random_fiberwise_word(9, &f, 8, 2).unwrap();
        let m = w.realize().unwrap();
        assert_eq!(m.component(2).to_string(), "Z");
        assert!(fiberwise_experiment(&gf(3), 1, 0, 1, 1).is_err());
        assert!(fiberwise_experiment(&gf(2), 1, 0, 1, 1).is_err());
    }

    #[test]
    fn small_experiment_counts() {
        let rep = parity_experiment(&gf(4), 2, 10, 1, 4, 2).unwrap();
        assert_eq!(rep.even + rep.odd, 10);
        assert_eq!(rep.odd, 0);
        assert!(!rep.contradicts_even_expectation());
    }
}
