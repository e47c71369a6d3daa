//! Recursive-descent parser for the expression grammar in the module docs.

use num_bigint::BigUint;
use thiserror::Error;

use super::Expr;

/// Syntax error with the byte offset at which parsing failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'+' => {
                toks.push(Spanned {
                    tok: Tok::Plus,
                    pos,
                });
                i += 1;
            }
            b'-' => {
                toks.push(Spanned {
                    tok: Tok::Minus,
                    pos,
                });
                i += 1;
            }
            b'*' => {
                toks.push(Spanned {
                    tok: Tok::Star,
                    pos,
                });
                i += 1;
            }
            b'/' => {
                toks.push(Spanned {
                    tok: Tok::Slash,
                    pos,
                });
                i += 1;
            }
            b'(' => {
                toks.push(Spanned {
                    tok: Tok::LParen,
                    pos,
                });
                i += 1;
            }
            b')' => {
                toks.push(Spanned {
                    tok: Tok::RParen,
                    pos,
                });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value = BigUint::parse_bytes(digits.as_bytes(), 10).expect("digit run parses");
                toks.push(Spanned {
                    tok: Tok::Int(value),
                    pos,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_owned()),
                    pos,
                });
            }
            _ => {
                let ch = text[i..].chars().next().expect("in-bounds char");
                return Err(ParseError::new(pos, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|s| s.tok.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.i += 1;
                Ok(())
            }
            Some(_) => Err(ParseError::new(self.pos(), "expected ')'")),
            None => Err(ParseError::new(
                self.end,
                "expected ')', found end of input",
            )),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.i += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(Expr::Integer(v)),
            Some(Tok::Ident(name)) if name == "sqrt" => {
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.i += 1;
                    }
                    _ => {
                        return Err(ParseError::new(self.pos(), "expected '(' after sqrt"));
                    }
                }
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(Expr::Sqrt(Box::new(inner)))
            }
            Some(Tok::Ident(name)) => Ok(Expr::Symbol(name)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(_) => Err(ParseError::new(pos, "expected expression")),
            None => Err(ParseError::new(
                self.end,
                "expected expression, found end of input",
            )),
        }
    }
}

/// Parses expression text into an [`Expr`].
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(text.len(), "empty input"));
    }
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(ParseError::new(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}
