//! Recursive-descent parser for the polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | VAR | 't' | '(' expr ')'
//! ```
//!
//! `VAR` is `X`, `Y`, `Z` (rings with at most three variables) or `X<k>`.
//! A numeric literal or parenthesised group may be written directly in
//! front of a variable (`8X`, `(1/2)Z`); any other juxtaposition is an error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::Scalar;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer<'a> {
    text: &'a str,
    base: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(&self) -> Result<Vec<(usize, Tok)>> {
        let bytes = self.text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = self.text[start..i].parse().expect("digits parse");
                out.push((self.base + start, Tok::Int(v)));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                i += 1;
                // identifiers are one letter optionally followed by digits
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((self.base + start, Tok::Ident(self.text[start..i].to_string())));
            } else if "+-*^/()".contains(c) {
                out.push((self.base + i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Parse {
                    position: self.base + i,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(out)
    }
}

struct Parser<'r> {
    ring: &'r PolyRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let (mut acc, mut coefficient_like) = self.unary()?;
        loop {
            if self.eat_sym('*') {
                let (f, c) = self.unary()?;
                acc = &acc * &f;
                coefficient_like = c;
            } else if let Some(Tok::Ident(_)) = self.peek() {
                if !coefficient_like {
                    return Err(err(self.here(), "implicit multiplication requires an explicit `*`"));
                }
                let (f, _) = self.unary()?;
                acc = &acc * &f;
                coefficient_like = false;
            } else if matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Sym('('))) {
                return Err(err(self.here(), "implicit multiplication requires an explicit `*`"));
            } else {
                return Ok(acc);
            }
        }
    }

    /// Returns the factor and whether it may act as a juxtaposed coefficient.
    fn unary(&mut self) -> Result<(Polynomial, bool)> {
        if self.eat_sym('-') {
            let (p, c) = self.unary()?;
            return Ok((p.neg(), c));
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<(Polynomial, bool)> {
        let (base, coefficient_like) = self.atom()?;
        if self.eat_sym('^') {
            let at = self.here();
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Int(e))) => {
                    self.pos += 1;
                    let e = e.to_u32().ok_or_else(|| err(at, "exponent too large"))?;
                    Ok((base.pow(e), coefficient_like))
                }
                Some((_, Tok::Sym('-'))) => Err(err(at, "negative exponents are not allowed")),
                _ => Err(err(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok((base, coefficient_like))
        }
    }

    fn atom(&mut self) -> Result<(Polynomial, bool)> {
        let at = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(err(at, "unexpected end of input"));
        };
        self.pos += 1;
        let field = self.ring.field();
        match tok {
            Tok::Int(n) => {
                if self.eat_sym('/') {
                    let dat = self.here();
                    match self.toks.get(self.pos).cloned() {
                        Some((_, Tok::Int(d))) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return Err(err(dat, "zero denominator"));
                            }
                            let r = BigRational::new(n, d);
                            let s = field.from_rational(&r).map_err(|e| err(at, e.to_string()))?;
                            Ok((self.ring.constant(s), true))
                        }
                        _ => Err(err(dat, "`/` must be followed by an integer denominator")),
                    }
                } else {
                    Ok((self.ring.constant(field.from_bigint(&n)), true))
                }
            }
            Tok::Ident(name) => {
                if name == "t" {
                    let g = field.generator().map_err(|e| err(at, e.to_string()))?;
                    return Ok((self.ring.constant(g), false));
                }
                let i =
                    resolve_variable(self.ring, &name).ok_or_else(|| err(at, format!("unknown variable `{name}`")))?;
                Ok((self.ring.var(i), false))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat_sym(')') {
                    return Err(err(self.here(), "expected `)`"));
                }
                Ok((inner, true))
            }
            Tok::Sym(c) => Err(err(at, format!("unexpected `{c}`"))),
        }
    }
}

fn resolve_variable(ring: &PolyRing, name: &str) -> Option<usize> {
    let n = ring.nvars();
    if n <= 3 {
        if let Some(i) = ["X", "Y", "Z"].iter().position(|v| *v == name) {
            return (i < n).then_some(i);
        }
    }
    let k: usize = name.strip_prefix('X')?.parse().ok()?;
    (1..=n).contains(&k).then(|| k - 1)
}

pub(crate) fn parse_at(ring: &PolyRing, text: &str, base: usize) -> Result<Polynomial> {
    let toks = Lexer { text, base }.tokens()?;
    if toks.is_empty() {
        return Err(err(base, "empty expression"));
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: base + text.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    parse_at(ring, text, 0)
}

/// Parses a constant expression into a field element.
pub fn parse_scalar(field: &super::Field, text: &str) -> Result<Scalar> {
    let ring = PolyRing::new(field.clone(), 0);
    parse_polynomial(&ring, text).map(|p| p.as_constant().expect("zero-variable ring"))
}

/// Splits `text` at top-level occurrences of `sep` (outside any brackets),
/// returning each piece with its byte offset.
pub fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses `open expr sep expr ... close` into one polynomial per slot.
pub(crate) fn parse_tuple(ring: &PolyRing, text: &str, open: char, close: char, sep: char) -> Result<Vec<Polynomial>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let t = text.trim();
    let inner = t
        .strip_prefix(open)
        .and_then(|s| s.strip_suffix(close))
        .ok_or_else(|| err(trimmed_start, format!("expected `{open}...{close}`")))?;
    let base = trimmed_start + open.len_utf8();
    let pieces = split_top_level(inner, sep);
    if pieces.len() != ring.nvars() {
        return Err(err(
            trimmed_start,
            format!("expected {} components, found {}", ring.nvars(), pieces.len()),
        ));
    }
    pieces
        .into_iter()
        .map(|(off, piece)| parse_at(ring, piece, base + off))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn q3() -> PolyRing {
        PolyRing::rationals(3)
    }

    #[test]
    fn parses_delta() {
        let r = q3();
        let d = r.parse("X*Z + Y^2").unwrap();
        let expected = &(&r.var(0) * &r.var(2)) + &r.var(1).pow(2);
        assert_eq!(d, expected);
        assert!(r.parse("0").unwrap().is_zero());
    }

    #[test]
    fn rational_literals() {
        let r = q3();
        let p = r.parse("(1/2)*X^2 - 3*Y").unwrap();
        let half = Scalar::from_ratio(1, 2);
        let expected = &r.var(0).pow(2).scale(&half) - &r.var(1).scale(&r.field().from_i64(3));
        assert_eq!(p, expected);
        assert_eq!(r.parse("2/4").unwrap(), r.constant(half));
    }

    #[test]
    fn coefficient_juxtaposition() {
        let r = q3();
        assert_eq!(r.parse("8X").unwrap(), r.parse("8*X").unwrap());
        assert_eq!(r.parse("(1/2)Z").unwrap(), r.parse("(1/2)*Z").unwrap());
        assert!(r.parse("X Y").is_err());
        assert!(r.parse("X(Y+1)").is_err());
        assert!(r.parse("2 3").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = q3();
        match r.parse("X + * Y") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match r.parse("X + W") {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 4);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.parse("X^-1").is_err());
        assert!(r.parse("(X + 1").is_err());
        assert!(r.parse("1/0").is_err());
        assert!(r.parse("").is_err());
    }

    #[test]
    fn variables_by_index() {
        let r = q3();
        assert_eq!(r.parse("X3").unwrap(), r.var(2));
        assert!(r.parse("X4").is_err());
        let r5 = PolyRing::rationals(5);
        assert_eq!(r5.parse("X5").unwrap(), r5.var(4));
        assert!(r5.parse("Y").is_err());
        let r2 = PolyRing::rationals(2);
        assert!(r2.parse("Z").is_err());
    }

    #[test]
    fn finite_field_literals() {
        let f9 = PolyRing::new(Field::finite(9).unwrap(), 1);
        let p = f9.parse("t^2").unwrap();
        assert_eq!(p, f9.int(-1));
        assert_eq!(f9.parse("4").unwrap(), f9.int(1));
        let f3 = PolyRing::new(Field::finite(3).unwrap(), 1);
        assert!(f3.parse("t").is_err());
        assert!(f3.parse("1/3").is_err());
        assert!(q3().parse("t").is_err());
    }

    #[test]
    fn tuples() {
        let r = q3();
        let comps = parse_tuple(&r, "(8X, 2Y, (1/2)Z)", '(', ')', ',').unwrap();
        assert_eq!(comps[2], r.var(2).scale(&Scalar::from_ratio(1, 2)));
        assert!(parse_tuple(&r, "(X, Y)", '(', ')', ',').is_err());
        match parse_tuple(&r, "(X, Y, W)", '(', ')', ',') {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
    }
}
