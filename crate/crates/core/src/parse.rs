//! Text syntax for polynomials and rational functions in z.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*     -- juxtaposition multiplies
//! factor := atom ('^' ['-'] integer)?
//! atom   := integer | 'z' | '(' expr ')'
//! ```
//!
//! so `3/4*z^2 - z + 1`, `z^2/4`, `(z^2+1)/(z-1)` and `z^-2 - 2 + z^2` all
//! parse. Any identifier other than `z` is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfun::RatFun;

pub fn parse_ratfun(input: &str, field: Field) -> Result<RatFun> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        field,
        end: input.len(),
    };
    let value = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::parse(t.offset, format!("unexpected {:?}", t.kind)));
    }
    Ok(value)
}

/// Parses and requires the result to be a polynomial.
pub fn parse_poly(input: &str, field: Field) -> Result<Poly> {
    let f = parse_ratfun(input, field)?;
    if !f.is_polynomial() {
        return Err(Error::parse(0, format!("{input:?} is not a polynomial")));
    }
    Ok(f.num().scale(&field.inv(&f.den().lc())?))
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let offset = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    kind: Kind::Int(input[start..i].parse().expect("digits")),
                    offset,
                });
                continue;
            }
            b'z' => {
                if i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    return Err(Error::parse(offset, "only the variable z is allowed"));
                }
                Kind::Var
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                return Err(Error::parse(
                    offset,
                    "only the variable z is allowed (input must be univariate)",
                ))
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(offset, format!("unexpected character {ch:?}")));
            }
        };
        out.push(Token { kind, offset });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: Field,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let negate = if self.eat(&Kind::Minus) {
            true
        } else {
            self.eat(&Kind::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(&Kind::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Kind::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Kind::Star) {
                acc = &acc * &self.factor()?;
            } else if self.eat(&Kind::Slash) {
                let at = self.offset();
                let d = self.factor()?;
                acc = acc
                    .checked_div(&d)
                    .map_err(|_| Error::parse(at, "division by zero"))?;
            } else if matches!(
                self.peek().map(|t| &t.kind),
                Some(Kind::Int(_) | Kind::Var | Kind::LParen)
            ) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if !self.eat(&Kind::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let negative = self.eat(&Kind::Minus);
        let e = match self.peek().map(|t| t.kind.clone()) {
            Some(Kind::Int(n)) => {
                self.pos += 1;
                i32::try_from(n).map_err(|_| Error::parse(at, "exponent too large"))?
            }
            _ => return Err(Error::parse(at, "expected integer exponent")),
        };
        base.pow(if negative { -e } else { e })
            .map_err(|_| Error::parse(at, "negative power of zero"))
    }

    fn atom(&mut self) -> Result<RatFun> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok.kind {
            Kind::Int(n) => {
                let c = self
                    .field
                    .element(BigRational::from_integer(n))
                    .map_err(|e| Error::parse(at, e.to_string()))?;
                Ok(RatFun::constant(self.field, c))
            }
            Kind::Var => Ok(RatFun::z(self.field)),
            Kind::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Kind::RParen) {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            other => Err(Error::parse(at, format!("unexpected {other:?}"))),
        }
    }
}
