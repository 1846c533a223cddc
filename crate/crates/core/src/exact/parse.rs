//! Parser for the polynomial text grammar: integers, variables `u<i>`,
//! `rho`, `q`, `+ - *`, parentheses and `^` with signed integer exponents.

use std::str::FromStr;

use num_bigint::BigInt;

use super::monomial::Variable;
use super::poly::LaurentPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            'a'..='z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let var = match word.as_str() {
                    "rho" => Variable::Rho,
                    "q" => Variable::Q,
                    w if w.starts_with('u') => {
                        let idx: u16 = w[1..]
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad variable {w:?}")))?;
                        if idx == 0 {
                            return Err(Error::Parse("u-indices start at 1".into()));
                        }
                        Variable::U(idx)
                    }
                    w => return Err(Error::Parse(format!("unknown variable {w:?}"))),
                };
                out.push(Token::Var(var));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPolynomial> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPolynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let negative = if let Some(Token::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let exp = match self.bump() {
                Some(Token::Int(n)) => {
                    u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            };
            let raised = base.pow(exp);
            if negative {
                return raised.unit_inverse().ok_or_else(|| {
                    Error::Parse("negative powers are only defined for monomials".into())
                });
            }
            return Ok(raised);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(LaurentPolynomial::constant(n)),
            Some(Token::Var(v)) => Ok(LaurentPolynomial::var(v)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut parser = Parser { tokens, pos: 0 };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(value)
    }
}
