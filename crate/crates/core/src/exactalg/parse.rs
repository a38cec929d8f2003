//! Recursive-descent parser for coefficient expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | 'z' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. There are no floating literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussianRational, Poly, RatFunc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    I,
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos < bytes.len() && (bytes[pos] == b'.' || bytes[pos] == b'e') {
                    return Err(Error::Syntax {
                        pos,
                        message: "floating literals are not allowed; use a ratio".into(),
                    });
                }
                let n: BigInt = text[start..pos].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'i' => Tok::I,
            b'z' => Tok::Z,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((pos, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| self.err("exponent too large"))?;
                self.at += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.err("exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RatFunc::constant(GaussianRational::new(
                    BigRational::from_integer(n),
                    BigRational::zero(),
                )))
            }
            Some(Tok::I) => {
                self.at += 1;
                Ok(RatFunc::constant(GaussianRational::i()))
            }
            Some(Tok::Z) => {
                self.at += 1;
                Ok(RatFunc::from_poly(Poly::z()))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => Err(self.err("expected a number, 'i', 'z' or '('")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parse a coefficient expression into a reduced rational function.
pub fn parse_coefficient(text: &str) -> Result<RatFunc> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let value = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_polynomial() {
        let r = parse_coefficient("z^2 - 1").unwrap();
        assert_eq!(r.num().degree(), Some(2));
        assert!(r.den().is_constant());
        assert_eq!(r.to_string(), "z^2 - 1");
    }

    #[test]
    fn literal_quotient() {
        let r = parse_coefficient("-1/z").unwrap();
        assert_eq!(r.num(), &Poly::constant(GaussianRational::from_integer(-1)));
        assert_eq!(r.den(), &Poly::z());
    }

    #[test]
    fn reduces_to_constant() {
        assert_eq!(parse_coefficient("(z+1)/(z+1)").unwrap(), RatFunc::one());
    }

    #[test]
    fn precedence() {
        // -z^2 is -(z^2), and ratios associate left
        assert_eq!(parse_coefficient("-z^2").unwrap(), -&parse_coefficient("z*z").unwrap());
        assert_eq!(
            parse_coefficient("1/2*z").unwrap(),
            RatFunc::from_poly(Poly::z().scale(&GaussianRational::from_ratio(1, 2)))
        );
        assert_eq!(parse_coefficient("i^2").unwrap(), RatFunc::constant(GaussianRational::from_integer(-1)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_coefficient("z +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_coefficient("1.5*z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_coefficient("2z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_coefficient("z^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_coefficient("(z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_coefficient("x"), Err(Error::Syntax { pos: 0, .. })));
        assert_eq!(parse_coefficient("1/(z-z)"), Err(Error::DivisionByZeroPoly));
    }
}
