//! A small recursive-descent reader for rational expressions.
//!
//! Grammar: sums and differences of products and quotients of powers.
//! Atoms are integers, `I`, the variables `s x x0 x1 u a b c d`, and `q`
//! (read as `s^4`).  Exponents are integers, or fractions `k/m` for `q`
//! provided `4k/m` is an integer, e.g. `q^(1/2)` or `q^-3/4`.

use std::str::FromStr;

use super::int::Int;
use super::mono::Var;
use super::rational::RationalExpr;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_expr(src: &str) -> Result<RationalExpr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Base {
    Expr(RationalExpr),
    Q,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(match base {
                Base::Expr(e) => e,
                Base::Q => RationalExpr::q_pow(1),
            });
        }
        let (num, den) = self.exponent()?;
        match base {
            Base::Q => {
                if (4 * num) % den != 0 {
                    return Err(self.error("power of q is not a multiple of 1/4"));
                }
                Ok(RationalExpr::s_pow(i32::try_from(4 * num / den).map_err(|_| self.error("exponent too large"))?))
            }
            Base::Expr(e) => {
                if den != 1 {
                    return Err(self.error("fractional exponent on a non-q base"));
                }
                e.pow(i32::try_from(num).map_err(|_| self.error("exponent too large"))?)
            }
        }
    }

    /// `k`, `-k`, `k/m`, or any of these in parentheses.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let mut num = self.small_int()?;
        if neg {
            num = -num;
        }
        let mut den = 1;
        if self.eat(b'/') {
            den = self.small_int()?;
            if den == 0 {
                return Err(self.error("zero denominator in exponent"));
            }
        }
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok((num, den))
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let d = self.digits()?.to_owned();
        d.parse().map_err(|_| self.error("exponent too large"))
    }

    fn atom(&mut self) -> Result<Base> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(Base::Expr(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?.to_owned();
                let v = Int::from_str(&d).map_err(|_| self.error("bad integer"))?;
                Ok(Base::Expr(RationalExpr::constant(Scalar::from_parts(v, Int::from(0), Int::from(1)))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match name {
                    "I" => Ok(Base::Expr(RationalExpr::i())),
                    "q" => Ok(Base::Q),
                    _ => Var::from_name(name)
                        .map(|v| Base::Expr(RationalExpr::var(v)))
                        .ok_or_else(|| Error::Parse(format!("unknown identifier {name:?}"))),
                }
            }
            _ => Err(self.error("expected an atom")),
        }
    }
}
