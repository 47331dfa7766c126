//! Recursive-descent parser for the text form of q,t rational functions.

use super::scalar::QTScalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<QTScalar> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg_ref()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<QTScalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul_ref(&self.factor()?);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.div_ref(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // factor := atom ['^' ['-'] integer]
    fn factor(&mut self) -> Result<QTScalar> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QTScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return err(format!("expected ')' at {}", self.pos));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QTScalar::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(QTScalar::t())
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg_ref())
            }
            Some(c) if c.is_ascii_digit() => Ok(QTScalar::from_bigint(self.integer()?)),
            Some(c) => err(format!("unexpected '{}' at {}", c as char, self.pos)),
            None => err("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected integer at {start}"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses text such as `(t^2-q)/(t-q)` or `3*q^2*t-2`.
pub fn parse_scalar(s: &str) -> Result<QTScalar> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return err(format!("trailing input at {}", p.pos));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        for s in ["(t^2-q)/(t-q)", "3*q^2*t-2", "q^-1", "-(1-q)*(1-t)", "0", "7/14", "t/q"] {
            let v = parse_scalar(s).unwrap();
            let back = parse_scalar(&v.to_string()).unwrap();
            assert_eq!(v, back, "{s}");
        }
        assert_eq!(parse_scalar("q^-1").unwrap(), QTScalar::mono(-1, 0));
        assert_eq!(parse_scalar("7/14").unwrap().to_string(), "1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q+").is_err());
        assert!(parse_scalar("(q").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/(q-q)").is_err());
    }
}
