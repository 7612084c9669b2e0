//! Recursive-descent parser for phase expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')' | '-' factor
//! var      := 'x1' | 'x2' | 'x' | 'y'
//! rational := int ('/' posint)?
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{BivariatePolynomial, Rational, DEFAULT_MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("non-rational literal at position {pos}")]
    NonRational { pos: usize },
    #[error("total degree {degree} exceeds the limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::NegativeExponent { pos }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::NonRational { pos } => Some(*pos),
            ParseError::DegreeLimit { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(u8),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
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
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                    return Err(ParseError::NonRational { pos: start });
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'.' => return Err(ParseError::NonRational { pos: start }),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                let var = match name {
                    "x1" | "x" => 1,
                    "x2" | "y" => 2,
                    _ => {
                        return Err(ParseError::UnknownIdentifier {
                            name: name.to_string(),
                            pos: start,
                        })
                    }
                };
                out.push((Tok::Var(var), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    limit: u32,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn guard(&self, p: BivariatePolynomial) -> Result<BivariatePolynomial, ParseError> {
        let degree = p.total_degree();
        if degree > self.limit {
            return Err(ParseError::DegreeLimit {
                degree,
                limit: self.limit,
            });
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = self.guard(&acc * &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e = n.to_u32().filter(|&e| e <= self.limit.max(1) * 64);
                let Some(e) = e else {
                    return Err(ParseError::DegreeLimit {
                        degree: u32::MAX,
                        limit: self.limit,
                    });
                };
                if !base.is_zero() && base.total_degree().saturating_mul(e) > self.limit {
                    return Err(ParseError::DegreeLimit {
                        degree: base.total_degree().saturating_mul(e),
                        limit: self.limit,
                    });
                }
                Ok(base.pow(e))
            }
            Tok::Minus => Err(ParseError::NegativeExponent { pos }),
            _ => Err(ParseError::Syntax {
                pos,
                msg: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<BivariatePolynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let pos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(BivariatePolynomial::constant(
                            Rational::new(n, d),
                        )),
                        Tok::Int(_) => Err(ParseError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        }),
                        _ => Err(ParseError::Syntax {
                            pos,
                            msg: "expected a positive integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(BivariatePolynomial::constant(Rational::from_integer(n)))
                }
            }
            Tok::Var(1) => {
                self.bump();
                Ok(BivariatePolynomial::x1())
            }
            Tok::Var(_) => {
                self.bump();
                Ok(BivariatePolynomial::x2())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                let f = self.factor()?;
                Ok(-&f)
            }
            Tok::End => Err(self.syntax("unexpected end of input")),
            other => Err(self.syntax(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses and expands a phase expression, with the default degree guard.
pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial, ParseError> {
    parse_polynomial_with_limit(text, DEFAULT_MAX_DEGREE)
}

pub fn parse_polynomial_with_limit(
    text: &str,
    max_degree: u32,
) -> Result<BivariatePolynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        limit: max_degree,
    };
    let p = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.syntax("trailing input"));
    }
    parser.guard(p)
}
