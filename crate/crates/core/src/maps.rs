//! Polynomial maps of affine n-space and words in invertible generators.
//!
//! A [`PolyMap`] stores the image of every coordinate. Composition follows
//! the point convention `(F ∘ G)(x) = F(G(x))`, so `(F ∘ G)_i` is `F_i` with
//! `G` substituted. Pullback `p ↦ p(F)` is then contravariant:
//! `pullback(F ∘ G, p) = pullback(G, pullback(F, p))`.
//!
//! Arbitrary maps are never inverted. Invertible maps arrive as an
//! [`AutWord`], whose tokens each carry an explicit inverse.

use std::fmt;

use crate::algebra::parse::{parse_at, parse_tuple, split_top_level};
use crate::algebra::{Degree, PolyRing, Polynomial, Scalar};
use crate::derivations::{Derivation, DEFAULT_LND_BOUND};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    ring: PolyRing,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(ring: &PolyRing, components: Vec<Polynomial>) -> Result<PolyMap> {
        if components.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} components for {} variables",
                components.len(),
                ring.nvars()
            )));
        }
        for c in &components {
            ring.check_same(c.ring())?;
        }
        Ok(PolyMap {
            ring: ring.clone(),
            components,
        })
    }

    pub fn identity(ring: &PolyRing) -> PolyMap {
        PolyMap {
            ring: ring.clone(),
            components: ring.vars(),
        }
    }

    /// Parses `(expr, ..., expr)`.
    pub fn parse(ring: &PolyRing, text: &str) -> Result<PolyMap> {
        let components = parse_tuple(ring, text, '(', ')', ',')?;
        PolyMap::new(ring, components)
    }

    /// The linear map `(d1 X1, ..., dn Xn)`.
    pub fn diagonal(ring: &PolyRing, d: &[Scalar]) -> Result<PolyMap> {
        if d.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} diagonal entries for {} variables",
                d.len(),
                ring.nvars()
            )));
        }
        let field = ring.field();
        let mut components = Vec::with_capacity(d.len());
        for (i, di) in d.iter().enumerate() {
            if !field.contains(di) {
                return Err(Error::NotInField(format!("diagonal entry {}", i + 1)));
            }
            if field.is_zero(di) {
                return Err(Error::ZeroDiagonalEntry { index: i });
            }
            components.push(ring.var(i).scale(di));
        }
        Ok(PolyMap {
            ring: ring.clone(),
            components,
        })
    }

    /// `(X1, ..., Xi + f, ..., Xn)`; `f` must not involve `Xi`.
    pub fn elementary(ring: &PolyRing, i: usize, f: &Polynomial) -> Result<PolyMap> {
        ring.check_same(f.ring())?;
        if i >= ring.nvars() {
            return Err(Error::InvalidArgument(format!("coordinate {} out of range", i + 1)));
        }
        if f.involves(i) {
            return Err(Error::ElementaryInvolvesTarget { index: i });
        }
        let mut components = ring.vars();
        components[i] = &components[i] + f;
        Ok(PolyMap {
            ring: ring.clone(),
            components,
        })
    }

    /// `x ↦ A x + b`.
    pub fn affine(ring: &PolyRing, matrix: &Matrix, translation: &[Scalar]) -> Result<PolyMap> {
        let n = ring.nvars();
        if matrix.nrows() != n || matrix.ncols() != n || translation.len() != n {
            return Err(Error::RingMismatch("affine data does not match dimension".into()));
        }
        if matrix.field() != ring.field() {
            return Err(Error::RingMismatch("matrix over a different field".into()));
        }
        let vars = ring.vars();
        let components = (0..n)
            .map(|i| {
                let mut c = ring.constant(translation[i].clone());
                for (j, v) in vars.iter().enumerate() {
                    c = &c + &v.scale(matrix.get(i, j));
                }
                c
            })
            .collect();
        Ok(PolyMap {
            ring: ring.clone(),
            components,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_identity(&self) -> bool {
        self.components == self.ring.vars()
    }

    /// Maximum total degree of the components.
    pub fn degree(&self) -> Degree<u32> {
        self.components
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap_or(Degree::MinusInfinity)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        self.ring.check_same(&other.ring)?;
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap {
            ring: self.ring.clone(),
            components,
        })
    }

    /// Product of the induced ring endomorphisms, `φ_self ∘ φ_other`, where
    /// `φ_F(p) = p(F)`. As a map of points this is `other ∘ self`.
    ///
    /// Identities written as products of automorphisms acting on the
    /// coordinate ring (conjugations `σ⁻¹ φ σ`, shifted maps `L·exp(λD)`)
    /// use this product.
    pub fn endo_product(&self, other: &PolyMap) -> Result<PolyMap> {
        other.compose(self)
    }

    /// `p(F_1, ..., F_n)`.
    pub fn pullback(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(p.ring())?;
        p.substitute(&self.components)
    }

    /// `self ∘ self ∘ ... ∘ self` (`m` factors; identity for `m = 0`).
    pub fn power(&self, m: u32) -> PolyMap {
        let mut acc = PolyMap::identity(&self.ring);
        for _ in 0..m {
            acc = self.compose(&acc).expect("same ring");
        }
        acc
    }

    /// The diagonal entries if this map is `(d1 X1, ..., dn Xn)`.
    pub fn as_diagonal(&self) -> Option<Vec<Scalar>> {
        let field = self.ring.field();
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (m, coef) = c.leading_term()?;
                (c.num_terms() == 1 && *m == crate::algebra::Monomial::var(self.ring.nvars(), i))
                    .then(|| coef.clone())
                    .filter(|d| !field.is_zero(d))
            })
            .collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An invertible generator of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    /// `X_index += poly`, with `poly` free of `X_index`.
    Elementary {
        index: usize,
        poly: Polynomial,
    },
    Diagonal(Vec<Scalar>),
    Affine {
        matrix: Matrix,
        translation: Vec<Scalar>,
    },
    /// `exp(λ D)` for a locally nilpotent `D`.
    ExpLnd {
        derivation: Derivation,
        lambda: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordEntry {
    pub token: Token,
    pub inverse: bool,
}

/// A word in generators, realised left to right under `compose`:
/// `[t1, t2, t3]` realises to `t1 ∘ t2 ∘ t3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutWord {
    ring: PolyRing,
    entries: Vec<WordEntry>,
}

impl Token {
    fn realize(&self, ring: &PolyRing, inverse: bool, bound: usize) -> Result<PolyMap> {
        let field = ring.field();
        match self {
            Token::Elementary { index, poly } => {
                let f = if inverse { poly.neg() } else { poly.clone() };
                PolyMap::elementary(ring, *index, &f)
            }
            Token::Diagonal(d) => {
                if inverse {
                    let inv = d
                        .iter()
                        .enumerate()
                        .map(|(i, x)| field.inv(x).map_err(|_| Error::ZeroDiagonalEntry { index: i }))
                        .collect::<Result<Vec<_>>>()?;
                    PolyMap::diagonal(ring, &inv)
                } else {
                    PolyMap::diagonal(ring, d)
                }
            }
            Token::Affine { matrix, translation } => {
                if inverse {
                    // x = A^{-1} (y - b)
                    let inv = matrix.inverse()?;
                    let shift = inv.mul_vec(translation);
                    let neg: Vec<Scalar> = shift.iter().map(|s| field.neg(s)).collect();
                    PolyMap::affine(ring, &inv, &neg)
                } else {
                    if !matrix.is_invertible() {
                        return Err(Error::SingularMatrix);
                    }
                    PolyMap::affine(ring, matrix, translation)
                }
            }
            Token::ExpLnd { derivation, lambda } => {
                ring.check_same(derivation.ring())?;
                let l = if inverse { field.neg(lambda) } else { lambda.clone() };
                derivation.exp(&l, bound)
            }
        }
    }
}

impl AutWord {
    pub fn new(ring: &PolyRing) -> AutWord {
        AutWord {
            ring: ring.clone(),
            entries: Vec::new(),
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn entries(&self) -> &[WordEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, token: Token) -> &mut Self {
        self.entries.push(WordEntry { token, inverse: false });
        self
    }

    pub fn push_inverse(&mut self, token: Token) -> &mut Self {
        self.entries.push(WordEntry { token, inverse: true });
        self
    }

    pub fn with(mut self, token: Token) -> Self {
        self.push(token);
        self
    }

    /// The formal inverse: reversed order, every inversion flag flipped.
    pub fn inverse(&self) -> AutWord {
        AutWord {
            ring: self.ring.clone(),
            entries: self
                .entries
                .iter()
                .rev()
                .map(|e| WordEntry {
                    token: e.token.clone(),
                    inverse: !e.inverse,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &AutWord) -> Result<AutWord> {
        self.ring.check_same(&other.ring)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(AutWord {
            ring: self.ring.clone(),
            entries,
        })
    }

    pub fn realize(&self) -> Result<PolyMap> {
        self.realize_with_bound(DEFAULT_LND_BOUND)
    }

    pub fn realize_with_bound(&self, bound: usize) -> Result<PolyMap> {
        let mut acc = PolyMap::identity(&self.ring);
        for e in &self.entries {
            let m = e.token.realize(&self.ring, e.inverse, bound)?;
            acc = acc.compose(&m)?;
        }
        Ok(acc)
    }

    /// Realisations of the individual tokens, in word order.
    pub fn realize_tokens(&self) -> Result<Vec<PolyMap>> {
        self.entries
            .iter()
            .map(|e| e.token.realize(&self.ring, e.inverse, DEFAULT_LND_BOUND))
            .collect()
    }

    /// Parses tokens `E[i;f]`, `D[d1,...,dn]`, `A[a11,...,ann;b1,...,bn]`
    /// and `EXP[lambda;D]` (with `D` a derivation literal or `nagata`),
    /// each optionally followed by `'` for its inverse. Tokens may be
    /// separated by whitespace or `*`. Indices are 1-based.
    pub fn parse(ring: &PolyRing, text: &str) -> Result<AutWord> {
        let bytes = text.as_bytes();
        let mut word = AutWord::new(ring);
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            let head_start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            let head = &text[head_start..i];
            if head.is_empty() || i >= bytes.len() || bytes[i] != b'[' {
                return Err(Error::Parse {
                    position: head_start,
                    message: "expected a token like E[..], D[..], A[..] or EXP[..]".into(),
                });
            }
            let body_start = i + 1;
            let mut depth = 0;
            let mut end = None;
            for (k, ch) in text[i..].char_indices() {
                match ch {
                    '[' | '(' => depth += 1,
                    ']' | ')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(i + k);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| Error::Parse {
                position: i,
                message: "unclosed `[`".into(),
            })?;
            let body = &text[body_start..end];
            i = end + 1;
            let inverse = i < bytes.len() && bytes[i] == b'\'';
            if inverse {
                i += 1;
            }
            let token = parse_token(ring, head, body, body_start)?;
            word.entries.push(WordEntry { token, inverse });
        }
        Ok(word)
    }
}

fn parse_scalar_at(ring: &PolyRing, text: &str, base: usize) -> Result<Scalar> {
    let zero_var = PolyRing::new(ring.field().clone(), 0);
    parse_at(&zero_var, text, base).map(|p| p.as_constant().expect("zero-variable ring"))
}

fn parse_token(ring: &PolyRing, head: &str, body: &str, base: usize) -> Result<Token> {
    let n = ring.nvars();
    let parts = split_top_level(body, ';');
    let bad = |message: String| Error::Parse {
        position: base,
        message,
    };
    match head {
        "E" => {
            if parts.len() != 2 {
                return Err(bad("E[i;f] takes an index and a polynomial".into()));
            }
            let idx: usize = parts[0]
                .1
                .trim()
                .parse()
                .map_err(|_| bad("E index must be a positive integer".into()))?;
            if idx == 0 || idx > n {
                return Err(bad(format!("E index {idx} out of range 1..={n}")));
            }
            let poly = parse_at(ring, parts[1].1, base + parts[1].0)?;
            if poly.involves(idx - 1) {
                return Err(Error::ElementaryInvolvesTarget { index: idx - 1 });
            }
            Ok(Token::Elementary { index: idx - 1, poly })
        }
        "D" => {
            let entries = split_top_level(body, ',');
            if entries.len() != n {
                return Err(bad(format!("D[..] needs {n} entries")));
            }
            let d = entries
                .iter()
                .map(|(off, s)| parse_scalar_at(ring, s, base + off))
                .collect::<Result<Vec<_>>>()?;
            if let Some(i) = d.iter().position(|x| ring.field().is_zero(x)) {
                return Err(Error::ZeroDiagonalEntry { index: i });
            }
            Ok(Token::Diagonal(d))
        }
        "A" => {
            if parts.len() != 2 {
                return Err(bad("A[matrix;translation] takes two parts".into()));
            }
            let m = split_top_level(parts[0].1, ',');
            let t = split_top_level(parts[1].1, ',');
            if m.len() != n * n || t.len() != n {
                return Err(bad(format!(
                    "A[..] needs {} matrix entries and {n} translation entries",
                    n * n
                )));
            }
            let entries = m
                .iter()
                .map(|(off, s)| parse_scalar_at(ring, s, base + off))
                .collect::<Result<Vec<_>>>()?;
            let rows = entries.chunks(n).map(<[Scalar]>::to_vec).collect();
            let matrix = Matrix::from_rows(ring.field(), rows);
            if !matrix.is_invertible() {
                return Err(Error::SingularMatrix);
            }
            let translation = t
                .iter()
                .map(|(off, s)| parse_scalar_at(ring, s, base + parts[1].0 + off))
                .collect::<Result<Vec<_>>>()?;
            Ok(Token::Affine { matrix, translation })
        }
        "EXP" => {
            if parts.len() != 2 {
                return Err(bad("EXP[lambda;D] takes a scalar and a derivation".into()));
            }
            let lambda = parse_scalar_at(ring, parts[0].1, base + parts[0].0)?;
            let derivation = Derivation::parse_or_preset(ring, parts[1].1)?;
            Ok(Token::ExpLnd { derivation, lambda })
        }
        other => Err(Error::Parse {
            position: base.saturating_sub(other.len() + 1),
            message: format!("unknown token `{other}`"),
        }),
    }
}

impl fmt::Display for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring.field();
        let join = |v: &[Scalar]| v.iter().map(|s| field.format(s)).collect::<Vec<_>>().join(",");
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match &e.token {
                Token::Elementary { index, poly } => write!(f, "E[{};{}]", index + 1, poly)?,
                Token::Diagonal(d) => write!(f, "D[{}]", join(d))?,
                Token::Affine { matrix, translation } => {
                    let entries: Vec<Scalar> = (0..matrix.nrows()).flat_map(|r| matrix.row(r).to_vec()).collect();
                    write!(f, "A[{};{}]", join(&entries), join(translation))?
                }
                Token::ExpLnd { derivation, lambda } => write!(f, "EXP[{};{}]", field.format(lambda), derivation)?,
            }
            if e.inverse {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

/// Both sides of `E_f = L⁻¹ ∘ (E_{-2f} ∘ L ∘ E_{2f})` with
/// `L = (2 X1, X2, ..., Xn)` and `E_g = (X1 + g, X2, ..., Xn)`.
/// Needs characteristic ≠ 2 and `f` free of `X1`.
pub fn tame_identity_witness(f: &Polynomial) -> Result<(PolyMap, PolyMap)> {
    let ring = f.ring();
    let field = ring.field();
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedCharacteristic(
            "L = (2X1, ...) is not invertible in characteristic 2".into(),
        ));
    }
    let n = ring.nvars();
    let two = field.from_i64(2);
    let lhs = PolyMap::elementary(ring, 0, f)?;
    let mut diag = vec![field.one(); n];
    diag[0] = two.clone();
    let word = AutWord::new(ring)
        .with(Token::Diagonal(diag.clone()))
        .inverse()
        .with(Token::Elementary {
            index: 0,
            poly: f.scale(&field.neg(&two)),
        })
        .with(Token::Diagonal(diag))
        .with(Token::Elementary {
            index: 0,
            poly: f.scale(&two),
        });
    Ok((lhs, word.realize()?))
}
