//! Text parser for polynomials in `a`, `b` and, for series numerators, `x`.
//!
//! Accepted syntax is ordinary infix arithmetic: `+`, `-` (ASCII or U+2212),
//! explicit `*` or juxtaposition, `^` with a non-negative integer exponent
//! (optionally in TeX braces, `a^{2}`), and parentheses. Whitespace is
//! ignored. Every construct is bounded so hostile input fails fast.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::bipoly::BiPoly;
use super::SeriesNumerator;

pub const MAX_INPUT_LEN: usize = 8 * 1024;
pub const MAX_EXPONENT: u32 = 64;
pub const MAX_DEGREE: u32 = 256;
const MAX_DEPTH: usize = 64;
const MAX_TERMS: usize = 50_000;
const MAX_MUL_WORK: usize = 250_000;
const MAX_COEFF_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("input longer than {MAX_INPUT_LEN} bytes")]
    TooLong,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unbalanced parenthesis or brace")]
    Unbalanced,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("degree exceeds {MAX_DEGREE}")]
    DegreeTooLarge,
    #[error("expression too large to expand")]
    TooComplex,
    #[error("nesting deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("variable x is not allowed here")]
    UnexpectedX,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

type Key = (u32, u32, u32);

#[derive(Debug, Clone, Default)]
struct Poly3 {
    terms: BTreeMap<Key, BigInt>,
}

impl Poly3 {
    fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0, 0), c);
        }
        Poly3 { terms }
    }

    fn var(key: Key) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, BigInt::from(1));
        Poly3 { terms }
    }

    fn add_scaled(&mut self, rhs: &Poly3, negate: bool) {
        for (&k, c) in &rhs.terms {
            let slot = self.terms.entry(k).or_insert_with(BigInt::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                self.terms.remove(&k);
            }
        }
    }

    fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j, k)| i + j + k)
            .max()
            .unwrap_or(0)
    }

    fn mul(&self, rhs: &Poly3) -> Result<Poly3, ParseErrorKind> {
        if self.degree() + rhs.degree() > MAX_DEGREE {
            return Err(ParseErrorKind::DegreeTooLarge);
        }
        if self.terms.len().saturating_mul(rhs.terms.len()) > MAX_MUL_WORK {
            return Err(ParseErrorKind::TooComplex);
        }
        let mut out: BTreeMap<Key, BigInt> = BTreeMap::new();
        for (&(i1, j1, k1), c1) in &self.terms {
            for (&(i2, j2, k2), c2) in &rhs.terms {
                let prod = c1 * c2;
                if prod.bits() > MAX_COEFF_BITS {
                    return Err(ParseErrorKind::TooComplex);
                }
                *out.entry((i1 + i2, j1 + j2, k1 + k2))
                    .or_insert_with(BigInt::zero) += prod;
            }
        }
        out.retain(|_, c| !c.is_zero());
        if out.len() > MAX_TERMS {
            return Err(ParseErrorKind::TooComplex);
        }
        Ok(Poly3 { terms: out })
    }

    fn pow(&self, exp: u32) -> Result<Poly3, ParseErrorKind> {
        let mut acc = Poly3::constant(BigInt::from(1));
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    depth: usize,
    len: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            depth: 0,
            len: src.len(),
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            offset: self.offset(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| match c {
            '\u{2212}' => '-',
            c => c,
        })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn parse_all(mut self) -> Result<Poly3, ParseError> {
        if self.chars.is_empty() {
            return Err(self.err(ParseErrorKind::Empty));
        }
        let poly = self.expr()?;
        match self.peek() {
            None => Ok(poly),
            Some(')') | Some('}') => Err(self.err(ParseErrorKind::Unbalanced)),
            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    fn expr(&mut self) -> Result<Poly3, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err(ParseErrorKind::TooDeep));
        }
        let mut acc = Poly3::default();
        let mut negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc.add_scaled(&term, negate);
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => break,
            }
            self.bump();
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly3, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                }
                Some(c) if starts_factor(c) => {}
                _ => break,
            }
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).map_err(|k| self.err(k))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly3, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let exp = self.exponent()?;
            return base.pow(exp).map_err(|k| self.err(k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let braced = self.peek() == Some('{');
        if braced {
            self.bump();
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(ParseErrorKind::UnexpectedChar(c)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        if braced && self.bump() != Some('}') {
            self.pos -= 1;
            return Err(self.err(ParseErrorKind::Unbalanced));
        }
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(self.err(ParseErrorKind::ExponentTooLarge)),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn atom(&mut self) -> Result<Poly3, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                if digits.len() > 4096 {
                    return Err(self.err(ParseErrorKind::TooComplex));
                }
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly3::constant(n))
            }
            Some('a') => {
                self.bump();
                Ok(Poly3::var((1, 0, 0)))
            }
            Some('b') => {
                self.bump();
                Ok(Poly3::var((0, 1, 0)))
            }
            Some('x') => {
                self.bump();
                Ok(Poly3::var((0, 0, 1)))
            }
            Some(open @ ('(' | '{')) => {
                self.bump();
                let inner = self.expr()?;
                let close = if open == '(' { ')' } else { '}' };
                if self.peek() != Some(close) {
                    return Err(self.err(ParseErrorKind::Unbalanced));
                }
                self.bump();
                Ok(inner)
            }
            Some(')') | Some('}') => Err(self.err(ParseErrorKind::Unbalanced)),
            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
}

fn starts_factor(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, 'a' | 'b' | 'x' | '(' | '{')
}

fn parse_poly3(s: &str) -> Result<Poly3, ParseError> {
    if s.len() > MAX_INPUT_LEN {
        return Err(ParseError {
            kind: ParseErrorKind::TooLong,
            offset: MAX_INPUT_LEN,
        });
    }
    Parser::new(s).parse_all()
}

impl FromStr for BiPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let poly = parse_poly3(s)?;
        if poly.terms.keys().any(|&(_, _, k)| k > 0) {
            let offset = s.find('x').unwrap_or(0);
            return Err(ParseError {
                kind: ParseErrorKind::UnexpectedX,
                offset,
            });
        }
        Ok(BiPoly::from_terms(
            poly.terms.into_iter().map(|((i, j, _), c)| ((i, j), c)),
        ))
    }
}

impl FromStr for SeriesNumerator {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let poly = parse_poly3(s)?;
        let len = poly
            .terms
            .keys()
            .map(|&(_, _, k)| k as usize + 1)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![BiPoly::zero(); len];
        for ((i, j, k), c) in poly.terms {
            coeffs[k as usize] = &coeffs[k as usize] + &BiPoly::monomial(c, i, j);
        }
        Ok(SeriesNumerator::new(coeffs))
    }
}
