//! Recursive-descent parser for the textual scalar grammar:
//! integer literals, `i`, identifiers `[a-z][a-z0-9_]*`, `+ - * /`, parens.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussRational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {column} in `{input}`")]
pub struct ParseScalarError {
    pub input: String,
    /// 1-based column of the offending character.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_scalar(src: &str) -> Result<Scalar, ParseScalarError> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(value)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseScalarError {
        ParseScalarError {
            input: self.src.to_string(),
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|e| match e {
                        ScalarError::DivisionByZero => ParseScalarError {
                            input: self.src.to_string(),
                            column: at + 1,
                            message: "division by zero".into(),
                        },
                        other => self.error(&other.to_string()),
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(Scalar::constant(GaussRational::from(BigRational::from_integer(n))))
            }
            Some(b) if b.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_lowercase()
                        || self.bytes[self.pos].is_ascii_digit()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = &self.src[start..self.pos];
                if ident == "i" {
                    Ok(Scalar::i())
                } else {
                    Ok(Scalar::param(ident))
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_literals() {
        let v = parse_scalar("1/2+3/4*i").unwrap();
        assert_eq!(v.as_constant().unwrap(), GaussRational::from_parts((1, 2), (3, 4)));
        let w = parse_scalar("-(1 + 1) * 3").unwrap();
        assert_eq!(w, Scalar::from_int(-6));
    }

    #[test]
    fn reports_column() {
        let e = parse_scalar("1+*2").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_scalar("c/0").unwrap_err();
        assert_eq!(e.message, "division by zero");
        assert!(parse_scalar("(c").is_err());
        assert!(parse_scalar("C").is_err());
        assert!(parse_scalar("").is_err());
    }
}
