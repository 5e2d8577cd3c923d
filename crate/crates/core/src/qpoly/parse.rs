//! Text form of polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and a leading sign is accepted on the first
//! term.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Monomial, Polynomial, Ring};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected(String),
    UnknownVariable(String),
    ZeroDenominator,
    ExponentTooLarge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected(what) => write!(f, "syntax error: unexpected {what}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Parses `text` in the ring with the given ordered variable names.
pub fn parse_poly<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<Polynomial, ParseError> {
    let ring = Ring::new(variables.iter().map(|s| s.as_ref().to_string()));
    Polynomial::parse(text, &ring)
}

impl Polynomial {
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
        Parser::new(text, ring).expr()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    ring: &'a Arc<Ring>,
    lex_error: Option<ParseError>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: &'a Arc<Ring>) -> Self {
        let mut toks = Vec::new();
        let mut lex_error = None;
        let (mut line, mut col) = (1usize, 1usize);
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                col += 1;
                i += 1;
                continue;
            }
            let simple = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                _ => None,
            };
            if let Some(t) = simple {
                toks.push((t, l0, c0));
                col += 1;
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                col += i - start;
                toks.push((Tok::Int(BigInt::from_str(&digits).expect("digits")), l0, c0));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                toks.push((Tok::Ident(chars[start..i].iter().collect()), l0, c0));
            } else {
                lex_error = Some(ParseError {
                    line: l0,
                    column: c0,
                    kind: ParseErrorKind::Unexpected(format!("character `{c}`")),
                });
                break;
            }
        }
        toks.push((Tok::End, line, col));
        Parser {
            toks,
            pos: 0,
            ring,
            lex_error,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError { line, column, kind }
    }

    fn unexpected(&self) -> ParseError {
        self.error(ParseErrorKind::Unexpected(self.peek().describe()))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        match self.lex_error.take() {
            Some(e) => Err(e),
            None => self.expr_inner(),
        }
    }

    fn expr_inner(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            acc.add_term(m, c);
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                Tok::End => return Ok(acc),
                _ => return Err(self.unexpected()),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let n = self.ring.nvars();
        let mut exps = vec![0u32; n];
        let mut coeff = Rational::one();
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(d) if d.is_zero() => {
                            self.pos -= 1;
                            return Err(self.error(ParseErrorKind::ZeroDenominator));
                        }
                        Tok::Int(d) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                    }
                } else {
                    BigInt::one()
                };
                coeff = Rational::new(num, den);
                if *self.peek() != Tok::Star {
                    return Ok((Monomial::new(exps), coeff));
                }
                self.bump();
                self.factor(&mut exps)?;
            }
            Tok::Ident(_) => self.factor(&mut exps)?,
            _ => return Err(self.unexpected()),
        }
        while *self.peek() == Tok::Star {
            self.bump();
            self.factor(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.unexpected());
        };
        let Some(i) = self.ring.index_of(&name) else {
            return Err(self.error(ParseErrorKind::UnknownVariable(name)));
        };
        self.bump();
        let mut e: u32 = 1;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.peek().clone() {
                Tok::Int(k) => {
                    e = u32::try_from(&k)
                        .map_err(|_| self.error(ParseErrorKind::ExponentTooLarge))?;
                    self.bump();
                }
                _ => return Err(self.unexpected()),
            }
        }
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| self.error(ParseErrorKind::ExponentTooLarge))?;
        Ok(())
    }
}
