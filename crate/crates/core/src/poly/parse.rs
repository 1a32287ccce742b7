//! Parser for polynomial strings over the parameters `b` and `g`.
//!
//! Grammar: Gaussian-rational literals (`3`, `-1/2`, `2i`, `i`), the variables
//! `b` and `g`, binary `+ - *`, unary minus, `^` with a non-negative integer
//! exponent, and parentheses. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::bi::BiPoly;
use crate::error::{Error, Result};
use crate::scalar::Q;

pub fn parse_bipoly(src: &str) -> Result<BiPoly> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, pos: 0 };
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let v = p.sum()?;
    if p.pos != chars.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        let rest: String = self.s[self.pos.min(self.s.len())..].iter().collect();
        Error::Parse(format!("{what} at position {} (near {rest:?})", self.pos))
    }

    fn sum(&mut self) -> Result<BiPoly> {
        let mut acc = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.product()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.unary()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected a non-negative integer exponent"));
        }
        let e: u32 = digits
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('b') => {
                self.pos += 1;
                Ok(BiPoly::b())
            }
            Some('g') => {
                self.pos += 1;
                Ok(BiPoly::g())
            }
            Some('i') => {
                self.pos += 1;
                Ok(BiPoly::constant(Q::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut val = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err("expected a denominator"));
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    val /= BigRational::from_integer(den);
                }
                let q = if self.peek() == Some('i') {
                    self.pos += 1;
                    Q::new(BigRational::zero(), val)
                } else {
                    Q::from_rational(val)
                };
                Ok(BiPoly::constant(q))
            }
            _ => Err(self.err("expected a literal, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["4*b^3 - 27*g^2", "b", "-g + 1/2", "(1+2i)*b*g - 3", "0"] {
            let p = parse_bipoly(s).unwrap();
            assert_eq!(parse_bipoly(&p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(
            parse_bipoly("(b+g)^2").unwrap().to_string(),
            "b^2 + 2*b*g + g^2"
        );
        assert_eq!(parse_bipoly("2 - 3/4i").unwrap().to_string(), "(2-3/4i)");
        for bad in ["", "b +", "x", "b^", "1/0", "(b"] {
            assert!(parse_bipoly(bad).is_err(), "{bad}");
        }
    }
}
