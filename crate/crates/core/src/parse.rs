//! Rational literals and polynomial expressions in `z`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := 'z' | rational | '(' expr ')'
//! rational := digits ('/' digits)?
//! ```
//!
//! There is no division operator: `1/2` is a single literal. Unary minus
//! binds looser than `^`, so `-z^2` is `-(z^2)`. Errors carry the byte offset
//! where parsing stopped.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{Field, Rat};
use crate::poly::Poly;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Var,
    Lit(Rat),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Expands to a dense polynomial.
    pub fn eval(&self) -> Poly {
        match self {
            PolyExpr::Var => Poly::z(),
            PolyExpr::Lit(c) => Poly::constant(c.clone()),
            PolyExpr::Neg(a) => -&a.eval(),
            PolyExpr::Add(a, b) => &a.eval() + &b.eval(),
            PolyExpr::Sub(a, b) => &a.eval() - &b.eval(),
            PolyExpr::Mul(a, b) => &a.eval() * &b.eval(),
            PolyExpr::Pow(a, e) => {
                let base = a.eval();
                (0..*e).fold(Poly::one(), |acc, _| &acc * &base)
            }
        }
    }

    /// Operands of a top-level product, left to right.
    pub fn factors(&self) -> Vec<&PolyExpr> {
        match self {
            PolyExpr::Mul(a, b) => {
                let mut out = a.factors();
                out.extend(b.factors());
                out
            }
            other => vec![other],
        }
    }
}

impl PolyExpr {
    /// Binding strength: sums, products, negation, powers, atoms.
    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 0,
            PolyExpr::Mul(..) => 1,
            PolyExpr::Neg(_) => 2,
            PolyExpr::Lit(c) if c.is_negative() => 2,
            PolyExpr::Pow(..) => 3,
            PolyExpr::Var | PolyExpr::Lit(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            PolyExpr::Var => f.write_str("z"),
            PolyExpr::Lit(c) => write!(f, "{c}"),
            PolyExpr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 2)
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                a.write_at(f, 0)?;
                f.write_str(if matches!(self, PolyExpr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 1)
            }
            PolyExpr::Mul(a, b) => {
                a.write_at(f, 1)?;
                f.write_str("*")?;
                b.write_at(f, 2)
            }
            PolyExpr::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Prints with the minimum parentheses needed to parse back to the same tree.
impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Z,
    Num(Rat),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Z => "'z'".into(),
            Tok::Num(r) => format!("number {r}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Reads `digits ('/' digits)?` starting at `start`; returns the value and the end offset.
fn lex_unsigned_rational(text: &str, start: usize) -> Result<(Rat, usize), ParseError> {
    let bytes = text.as_bytes();
    let digits_end = |from: usize| {
        (from..bytes.len())
            .find(|&i| !bytes[i].is_ascii_digit())
            .unwrap_or(bytes.len())
    };
    let num_end = digits_end(start);
    if num_end == start {
        return Err(ParseError::new(start, "expected digits"));
    }
    let numer: BigInt = text[start..num_end].parse().expect("ascii digits");
    if bytes.get(num_end) != Some(&b'/') {
        return Ok((Rat::from_bigint(numer), num_end));
    }
    let den_start = num_end + 1;
    let den_end = digits_end(den_start);
    if den_end == den_start {
        return Err(ParseError::new(den_start, "expected denominator digits after '/'"));
    }
    let denom: BigInt = text[den_start..den_end].parse().expect("ascii digits");
    let value = Rat::new(numer, denom).ok_or_else(|| ParseError::new(den_start, "zero denominator"))?;
    Ok((value, den_end))
}

/// `[+-]?digits('/'digits)?`, reduced.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let (negative, start) = match text.as_bytes().first() {
        Some(b'-') => (true, 1),
        Some(b'+') => (false, 1),
        _ => (false, 0),
    };
    let (value, end) = lex_unsigned_rational(text, start)?;
    if end != text.len() {
        return Err(ParseError::new(end, format!("unexpected trailing input {:?}", &text[end..])));
    }
    Ok(if negative { -value } else { value })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'z' => Tok::Z,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let (value, end) = lex_unsigned_rational(text, i)?;
                toks.push((Tok::Num(value), i));
                i = end;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        toks.push((tok, i));
        i += 1;
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(self.offset(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(r) if r.is_integer() => {
                let e = u32::try_from(r.numer())
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| ParseError::new(at, format!("exponent exceeds {MAX_EXPONENT}")))?;
                Ok(PolyExpr::Pow(Box::new(base), e))
            }
            Tok::Num(_) => Err(ParseError::new(at, "exponent must be a nonnegative integer literal")),
            other => Err(ParseError::new(
                at,
                format!("exponent must be a nonnegative integer literal, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek().clone() {
            Tok::Z => {
                self.bump();
                Ok(PolyExpr::Var)
            }
            Tok::Num(r) => {
                self.bump();
                Ok(PolyExpr::Lit(r))
            }
            Tok::LParen => {
                let open = self.offset();
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    let mut err = self.unexpected("')'");
                    err.message.push_str(&format!(" (to close '(' at byte {open})"));
                    return Err(err);
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("'z', a number, '(' or '-'")),
        }
    }
}

/// Parses to a syntax tree without expanding.
pub fn parse_expr(text: &str) -> Result<PolyExpr, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

/// Parses and expands a polynomial in `z`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse_expr(text).map(|e| e.eval())
}

/// `z*(z-a_1)*…`, the form [`roots_from_factored`] reads back.
pub fn factored_form(roots: &[Rat]) -> String {
    let mut s = String::from("z");
    for a in roots {
        if a.is_negative() {
            s.push_str(&format!("*(z+{})", a.abs()));
        } else {
            s.push_str(&format!("*(z-{a})"));
        }
    }
    s
}

/// Error from [`roots_from_factored`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactoredError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("factor {index} ({factor}) is not of the form z - r")]
    NotLinear { index: usize, factor: String },
    #[error("denominator must contain the factor z exactly once, found {0}")]
    ZeroRootCount(usize),
}

/// Reads the nonzero roots from an explicitly factored `z*(z-r1)*(z-r2)…`.
/// Each top-level factor must expand to a monic linear polynomial, optionally
/// raised to a power (which repeats the root). No root finding is attempted.
pub fn roots_from_factored(text: &str) -> Result<Vec<Rat>, FactoredError> {
    let expr = parse_expr(text)?;
    let mut roots = Vec::new();
    let mut zero_count = 0;
    for (index, factor) in expr.factors().into_iter().enumerate() {
        let (base, times) = match factor {
            PolyExpr::Pow(b, e) => (b.as_ref(), *e as usize),
            other => (other, 1),
        };
        let p = base.eval();
        if p.degree() != Some(1) || !p.is_monic() {
            return Err(FactoredError::NotLinear { index, factor: factor.to_string() });
        }
        let root = -p.coeff(0);
        for _ in 0..times {
            if root.is_zero() {
                zero_count += 1;
            } else {
                roots.push(root.clone());
            }
        }
    }
    if zero_count != 1 {
        return Err(FactoredError::ZeroRootCount(zero_count));
    }
    Ok(roots)
}
