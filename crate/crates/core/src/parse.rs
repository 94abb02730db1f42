//! Text format for Laurent polynomials and integer matrices.
//!
//! The grammar is the stable contract for CLI input files:
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = factor { "*" factor } ;
//! factor   = "-" factor | primary [ "^" exponent ] ;
//! primary  = literal | variable | "(" expr ")" ;
//! literal  = integer [ "/" integer ] ;
//! exponent = [ "-" ] integer | "(" [ "-" ] integer ")" ;
//! matrix   = "[" row { "," row } "]" ;  row = "[" int { "," int } "]" ;
//! ```
//!
//! Whitespace is insignificant. Multiplication is always explicit (`x1*x2`,
//! never `x1 x2`), which keeps multi-character variable names unambiguous.
//! A rational literal like `3/2` binds tighter than unary minus. Exponents
//! must be integer literals; `x^(1/2)` is rejected.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

use crate::coeff::{Coefficient, Rational};
use crate::lattice::IntMatrix;
use crate::laurent::{AmbientSpec, ExpVec, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: (usize, usize), message: impl Into<String>) -> Self {
        ParseError {
            line: pos.0,
            col: pos.1,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: (usize, usize),
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<BigInt>().expect("digits parse");
                out.push(Spanned {
                    tok: Tok::Int(value),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    pos,
                });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    other => {
                        return Err(ParseError::new(pos, format!("unexpected character '{other}'")))
                    }
                };
                chars.next();
                col += 1;
                out.push(Spanned { tok, pos });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    idx: usize,
    ambient: &'a Arc<AmbientSpec>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    fn pos(&self) -> (usize, usize) {
        self.toks.get(self.idx).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let s = self.toks.get(self.idx);
        if s.is_some() {
            self.idx += 1;
        }
        s
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(s) if s.tok == tok => Ok(()),
            Some(s) => Err(ParseError::new(s.pos, format!("expected {what}"))),
            None => Err(ParseError::new(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let e = self.exponent()?;
            let e64 = i64::try_from(&e)
                .map_err(|_| ParseError::new(pos, "exponent out of range".to_string()))?;
            return base
                .pow(e64)
                .map_err(|_| ParseError::new(pos, "negative power of a non-monomial"));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<BigInt, ParseError> {
        let pos = self.pos();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(v)) => Ok(v),
            Some(Tok::Minus) => match self.bump().map(|s| s.tok.clone()) {
                Some(Tok::Int(v)) => Ok(-v),
                _ => Err(ParseError::new(pos, "expected an integer exponent")),
            },
            Some(Tok::LParen) => {
                let inner_pos = self.pos();
                let negative = if self.peek() == Some(&Tok::Minus) {
                    self.bump();
                    true
                } else {
                    false
                };
                let v = match self.bump().map(|s| s.tok.clone()) {
                    Some(Tok::Int(v)) => v,
                    _ => return Err(ParseError::new(inner_pos, "expected an integer exponent")),
                };
                if self.peek() == Some(&Tok::Slash) {
                    return Err(ParseError::new(inner_pos, "non-integer exponent"));
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(ParseError::new(pos, "expected an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<LaurentPoly, ParseError> {
        let pos = self.pos();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(v)) => {
                // rational literal: INT [ '/' INT ]
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump().map(|s| s.tok.clone()) {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(ParseError::new(dpos, "division by zero"));
                            }
                            Ok(LaurentPoly::constant(
                                self.ambient,
                                Coefficient::Rat(Rational::new(v, d)),
                            ))
                        }
                        _ => Err(ParseError::new(
                            dpos,
                            "expected an integer denominator".to_string(),
                        )),
                    }
                } else {
                    Ok(LaurentPoly::constant(
                        self.ambient,
                        Coefficient::Rat(Rational::from_integer(v)),
                    ))
                }
            }
            Some(Tok::Ident(name)) => {
                if self.ambient.index_of(&name).is_none() {
                    return Err(ParseError::new(pos, format!("unknown variable '{name}'")));
                }
                Ok(LaurentPoly::var(self.ambient, &name))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(tok) => Err(ParseError::new(pos, format!("unexpected token {tok:?}"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parses an expression in the fixed grammar against the given ambient.
pub fn parse_poly(text: &str, ambient: &Arc<AmbientSpec>) -> Result<LaurentPoly, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map_or((1, 1), |s| s.pos);
    let mut p = Parser {
        toks: &toks,
        idx: 0,
        ambient,
        end,
    };
    let poly = p.expr()?;
    if p.idx != toks.len() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    Ok(poly)
}

/// Variable names appearing in an expression, in order of first appearance.
/// Used by the CLI to build the ambient before parsing proper.
pub fn scan_variables(text: &str) -> Result<Vec<String>, ParseError> {
    let toks = lex(text)?;
    let mut names = Vec::new();
    for s in toks {
        if let Tok::Ident(name) = s.tok {
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    Ok(names)
}

/// Canonical printer; [`parse_poly`] inverts it on any polynomial with
/// rational coefficients.
pub fn print_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.ambient().vars();
    let mut out = String::new();
    for (exp, coeff) in p.sorted_terms() {
        let (sign_negative, magnitude) = coefficient_magnitude(&coeff);
        if out.is_empty() {
            if sign_negative {
                out.push('-');
            }
        } else if sign_negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let monomial = format_monomial(vars, &exp);
        if monomial.is_empty() {
            out.push_str(&magnitude);
        } else if magnitude == "1" {
            out.push_str(&monomial);
        } else {
            out.push_str(&magnitude);
            out.push('*');
            out.push_str(&monomial);
        }
    }
    out
}

fn coefficient_magnitude(c: &Coefficient) -> (bool, String) {
    match c {
        Coefficient::Rat(r) => {
            let neg = r.is_negative();
            let mag = r.abs();
            let text = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            (neg, text)
        }
        // display-only forms; the text grammar covers rational coefficients
        other => (false, format!("({other})")),
    }
}

fn format_monomial(vars: &[String], exp: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (name, e) in vars.iter().zip(&exp.0) {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Parses a bracketed integer matrix like `[[2,0],[0,1]]`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map_or((1, 1), |s| s.pos);
    let mut idx = 0usize;
    let rows = parse_rows(&toks, &mut idx, end)?;
    if idx != toks.len() {
        return Err(ParseError::new(
            toks.get(idx).map_or(end, |s| s.pos),
            "trailing input",
        ));
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(ParseError::new(end, "ragged matrix rows"));
    }
    Ok(IntMatrix::from_bigint_rows(rows))
}

/// Parses a bracketed integer vector like `[1,-2,3]`.
pub fn parse_int_vector(text: &str) -> Result<Vec<BigInt>, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map_or((1, 1), |s| s.pos);
    let mut idx = 0usize;
    let row = parse_int_row(&toks, &mut idx, end)?;
    if idx != toks.len() {
        return Err(ParseError::new(
            toks.get(idx).map_or(end, |s| s.pos),
            "trailing input",
        ));
    }
    Ok(row)
}

fn parse_rows(
    toks: &[Spanned],
    idx: &mut usize,
    end: (usize, usize),
) -> Result<Vec<Vec<BigInt>>, ParseError> {
    expect_tok(toks, idx, Tok::LBracket, "'['", end)?;
    let mut rows = Vec::new();
    loop {
        rows.push(parse_int_row(toks, idx, end)?);
        match toks.get(*idx).map(|s| &s.tok) {
            Some(Tok::Comma) => {
                *idx += 1;
            }
            Some(Tok::RBracket) => {
                *idx += 1;
                return Ok(rows);
            }
            _ => {
                return Err(ParseError::new(
                    toks.get(*idx).map_or(end, |s| s.pos),
                    "expected ',' or ']'",
                ))
            }
        }
    }
}

fn parse_int_row(
    toks: &[Spanned],
    idx: &mut usize,
    end: (usize, usize),
) -> Result<Vec<BigInt>, ParseError> {
    expect_tok(toks, idx, Tok::LBracket, "'['", end)?;
    let mut row = Vec::new();
    loop {
        let negative = if toks.get(*idx).map(|s| &s.tok) == Some(&Tok::Minus) {
            *idx += 1;
            true
        } else {
            false
        };
        match toks.get(*idx).map(|s| s.tok.clone()) {
            Some(Tok::Int(v)) => {
                *idx += 1;
                row.push(if negative { -v } else { v });
            }
            _ => {
                return Err(ParseError::new(
                    toks.get(*idx).map_or(end, |s| s.pos),
                    "expected an integer",
                ))
            }
        }
        match toks.get(*idx).map(|s| &s.tok) {
            Some(Tok::Comma) => {
                *idx += 1;
            }
            Some(Tok::RBracket) => {
                *idx += 1;
                return Ok(row);
            }
            _ => {
                return Err(ParseError::new(
                    toks.get(*idx).map_or(end, |s| s.pos),
                    "expected ',' or ']'",
                ))
            }
        }
    }
}

fn expect_tok(
    toks: &[Spanned],
    idx: &mut usize,
    tok: Tok,
    what: &str,
    end: (usize, usize),
) -> Result<(), ParseError> {
    match toks.get(*idx) {
        Some(s) if s.tok == tok => {
            *idx += 1;
            Ok(())
        }
        Some(s) => Err(ParseError::new(s.pos, format!("expected {what}"))),
        None => Err(ParseError::new(end, format!("expected {what}"))),
    }
}
