//! Polynomial expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      division only by constants
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Symbols are `[A-Za-z_][A-Za-z0-9_]*` and must belong to the supplied
//! symbol table.

use std::sync::Arc;

use num_bigint::BigInt;

use super::multipoly::MultiPoly;
use super::Ring;
use crate::error::{Error, Result};
use crate::Rational;

pub fn parse_poly(src: &str, vars: &Arc<Vec<String>>) -> Result<MultiPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Symbols appearing in `src`, in order of first appearance.
pub fn scan_symbols(src: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() || b[i] == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let name = &src[start..i];
            if !out.iter().any(|s| s == name) {
                out.push(name.to_string());
            }
        } else if b[i].is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<Vec<String>>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                acc.try_add(&rhs)?
            } else {
                acc.try_sub(&rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.try_mul(&rhs)?;
            } else {
                let d = rhs
                    .constant_value()
                    .ok_or_else(|| self.error("division by a non-constant"))?;
                let inv = crate::algebra::Field::inv(&d).ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(Ring::pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                MultiPoly::var(self.vars, name).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("unknown symbol `{name}`"),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::symbols;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn precedence() {
        let v = symbols(&["x"]);
        let p = parse_poly("-x^2 + 3*(x - 1)/2", &v).unwrap();
        assert_eq!(p.eval_with(&[int(2)]), int(-4) + rat(3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let v = symbols(&["x"]);
        assert!(matches!(
            parse_poly("x + y", &v),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(parse_poly("(x", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/x", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/0", &v), Err(Error::DivisionByZero)));
    }

    #[test]
    fn symbol_scan() {
        assert_eq!(scan_symbols("h2^2 - 4*s + 2*h1*h2"), vec!["h2", "s", "h1"]);
    }
}
