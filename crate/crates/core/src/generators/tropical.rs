//! Tropical polynomials and their text syntax.
//!
//! ```text
//! polynomial := ("max" | "min") "(" term ("," term)* ")"
//! term       := sign? monomial (sign monomial)*
//! monomial   := number ("*"? ident)? | ident
//! number     := digits ("/" digits | "." digits)?
//! ident      := letter (letter | digit | "_")*
//! sign       := "+" | "-"
//! ```
//!
//! A term is an affine function `c + a·x` with integer `a`. Whitespace is
//! ignored between tokens. Variables are ordered alphabetically unless an
//! explicit list is supplied.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlin::{format_rat, Rat};
use crate::generators::Convention;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exponents: Vec<i64>,
    pub coefficient: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    pub convention: Convention,
    pub variables: Vec<String>,
    pub terms: Vec<Term>,
}

impl TropicalPolynomial {
    /// Build from raw terms, merging duplicate exponent vectors so that the
    /// coefficient that wins under the convention is kept.
    pub fn new(convention: Convention, variables: Vec<String>, raw: Vec<Term>) -> Self {
        let mut terms: Vec<Term> = Vec::new();
        for t in raw {
            assert_eq!(t.exponents.len(), variables.len());
            match terms.iter_mut().find(|u| u.exponents == t.exponents) {
                Some(u) => {
                    let better = match convention {
                        Convention::Max => t.coefficient > u.coefficient,
                        Convention::Min => t.coefficient < u.coefficient,
                    };
                    if better {
                        u.coefficient = t.coefficient;
                    }
                }
                None => terms.push(t),
            }
        }
        TropicalPolynomial {
            convention,
            variables,
            terms,
        }
    }

    pub fn n_variables(&self) -> usize {
        self.variables.len()
    }

    /// Evaluate the tropical polynomial at a point.
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        let vals = self.terms.iter().map(|t| term_value(t, x));
        match self.convention {
            Convention::Max => vals.max().expect("at least one term"),
            Convention::Min => vals.min().expect("at least one term"),
        }
    }
}

pub fn term_value(t: &Term, x: &[Rat]) -> Rat {
    let mut v = t.coefficient.clone();
    for (a, xi) in t.exponents.iter().zip(x) {
        if *a != 0 {
            v += Rat::from_integer(BigInt::from(*a)) * xi;
        }
    }
    v
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.convention {
            Convention::Max => "max",
            Convention::Min => "min",
        };
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| format_term(t, &self.variables))
            .collect();
        write!(f, "{name}({})", terms.join(", "))
    }
}

fn format_term(t: &Term, vars: &[String]) -> String {
    let mut s = String::new();
    for (a, v) in t.exponents.iter().zip(vars) {
        if *a == 0 {
            continue;
        }
        let mag = a.unsigned_abs();
        if a.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if mag != 1 {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(v);
    }
    let c = &t.coefficient;
    if s.is_empty() {
        return format_rat(c);
    }
    if c.is_positive() {
        s.push('+');
        s.push_str(&format_rat(c));
    } else if c.is_negative() {
        s.push('-');
        s.push_str(&format_rat(&-c.clone()));
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rat),
    Plus,
    Minus,
    Star,
    Comma,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b',' => out.push((start, Tok::Comma)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int: BigInt = src[start..i].parse().unwrap();
                let mut value = Rat::from_integer(int);
                if i < bytes.len() && (bytes[i] == b'/' || bytes[i] == b'.') {
                    let sep = bytes[i];
                    let ds = i + 1;
                    let mut j = ds;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == ds {
                        return Err(ParseError {
                            position: ds,
                            expected: "digits".into(),
                        });
                    }
                    let digits: BigInt = src[ds..j].parse().unwrap();
                    if sep == b'/' {
                        if digits.is_zero() {
                            return Err(ParseError {
                                position: ds,
                                expected: "nonzero denominator".into(),
                            });
                        }
                        value /= Rat::from_integer(digits);
                    } else {
                        let scale = BigInt::from(10u32).pow((j - ds) as u32);
                        value += Rat::new(digits, scale);
                    }
                    i = j;
                }
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError {
                    position: start,
                    expected: format!("a token, found {:?}", src[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Terms with named exponents, before variables are fixed.
type RawTerm = (Vec<(String, BigInt)>, Rat);

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn polynomial(&mut self) -> Result<(Convention, Vec<RawTerm>), ParseError> {
        let conv = match self.peek() {
            Some(Tok::Ident(s)) if s == "max" => Convention::Max,
            Some(Tok::Ident(s)) if s == "min" => Convention::Min,
            _ => return self.fail("\"max\" or \"min\""),
        };
        self.pos += 1;
        self.expect(Tok::LParen, "\"(\"")?;
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::RParen) => {
                    self.pos += 1;
                    break;
                }
                _ => return self.fail("\",\" or \")\""),
            }
        }
        if self.pos != self.toks.len() {
            return self.fail("end of input");
        }
        Ok((conv, terms))
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut exps: Vec<(String, BigInt)> = Vec::new();
        let mut constant = Rat::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let at = self.here();
            let (coef, var) = self.monomial()?;
            let coef = if negative { -coef } else { coef };
            match var {
                None => constant += coef,
                Some(v) => {
                    if !coef.is_integer() {
                        return Err(ParseError {
                            position: at,
                            expected: "an integer coefficient on a variable".into(),
                        });
                    }
                    let c = coef.to_integer();
                    match exps.iter_mut().find(|(name, _)| *name == v) {
                        Some(e) => e.1 += c,
                        None => exps.push((v, c)),
                    }
                }
            }
        }
        Ok((exps, constant))
    }

    fn monomial(&mut self) -> Result<(Rat, Option<String>), ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Ident(v)) => {
                            self.pos += 1;
                            Ok((q, Some(v)))
                        }
                        _ => self.fail("a variable name"),
                    }
                } else if let Some(Tok::Ident(v)) = self.peek().cloned() {
                    self.pos += 1;
                    Ok((q, Some(v)))
                } else {
                    Ok((q, None))
                }
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok((Rat::one(), Some(v)))
            }
            _ => self.fail("a number or a variable"),
        }
    }
}

fn parse_raw(src: &str) -> Result<(Convention, Vec<RawTerm>), ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    p.polynomial()
}

fn assemble(
    conv: Convention,
    raw: Vec<RawTerm>,
    variables: Vec<String>,
) -> Result<TropicalPolynomial, ParseError> {
    let mut terms = Vec::with_capacity(raw.len());
    for (exps, c) in raw {
        let mut a = vec![0i64; variables.len()];
        for (name, e) in exps {
            let Some(k) = variables.iter().position(|v| *v == name) else {
                return Err(ParseError {
                    position: 0,
                    expected: format!("one of the declared variables, found {name:?}"),
                });
            };
            a[k] = e.to_i64().ok_or(ParseError {
                position: 0,
                expected: "an exponent that fits in 64 bits".into(),
            })?;
        }
        terms.push(Term {
            exponents: a,
            coefficient: c,
        });
    }
    Ok(TropicalPolynomial::new(conv, variables, terms))
}

/// Parse with variables in alphabetical order.
pub fn parse_tropical_polynomial(src: &str) -> Result<TropicalPolynomial, ParseError> {
    let (conv, raw) = parse_raw(src)?;
    let names: BTreeSet<String> = raw
        .iter()
        .flat_map(|(e, _)| e.iter().map(|(n, _)| n.clone()))
        .collect();
    assemble(conv, raw, names.into_iter().collect())
}

/// Parse with an explicit variable order; unknown variables are an error.
pub fn parse_with_variables(
    src: &str,
    variables: &[&str],
) -> Result<TropicalPolynomial, ParseError> {
    let (conv, raw) = parse_raw(src)?;
    assemble(conv, raw, variables.iter().map(|s| s.to_string()).collect())
}
