//! Text syntax for bivariate polynomials.
//!
//! Grammar: integer or rational literals (`3`, `-2/7`), the variables `x`
//! and `y`, binary `+ - *`, unary `-`, `^` with a nonnegative integer
//! exponent, and parentheses. Whitespace is ignored.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let found = match self.s.get(self.pos) {
            Some(&c) => format!("'{}'", c as char),
            None => "end of input".to_string(),
        };
        Error::Syntax { offset: self.pos, message: format!("{msg} (found {found})") }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
            let k = n
                .to_u32()
                .filter(|&k| k <= 10_000)
                .ok_or(Error::Syntax { offset: start, message: "exponent too large".into() })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        core::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let mut den = BigInt::from(1);
                if self.s.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    den = self.digits().ok_or_else(|| self.err("expected a denominator"))?;
                    if den.is_zero() {
                        return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
                    }
                }
                Ok(BiPoly::constant(Rational::new(num, den)))
            }
            _ => Err(self.err("expected a literal, variable or '('")),
        }
    }
}

/// Canonical text of a polynomial; `parse_poly(&to_text(f)) == f`.
pub fn to_text(f: &BiPoly) -> String {
    f.to_string()
}
