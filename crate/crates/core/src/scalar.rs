//! Gaussian rationals: exact complex numbers `re + im·i` with rational parts.
//!
//! Every structural decision in the crate (ranks, gcds, root multiplicities)
//! is made over this field, so results are exact and reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

pub type Q = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `num/den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Largest of `|re|` and `|im|`.
    pub fn max_abs_part(&self) -> BigRational {
        let a = self.re.abs();
        let b = self.im.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self {
            re: &self.re * BigRational::from_integer(k.clone()),
            im: &self.im * BigRational::from_integer(k.clone()),
        }
    }

    /// Total order on (re, im); used only to make outputs deterministic.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types it is built on.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        if o.im.is_zero() {
            return GaussianRational {
                re: &self.re / &o.re,
                im: &self.im / &o.re,
            };
        }
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering: `3`, `-1/2`, `2i`, `1-3/4i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}i",
                    fmt_rat(&self.re),
                    sign,
                    fmt_rat(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an unsigned `digits['/'digits]`, returning the value and the rest.
fn parse_unsigned_rat(s: &str) -> Option<(BigRational, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    let num: BigInt = s[..end].parse().ok()?;
    let rest = &s[end..];
    if let Some(after) = rest.strip_prefix('/') {
        let dend = after
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(after.len());
        if dend == 0 {
            return None;
        }
        let den: BigInt = after[..dend].parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some((BigRational::new(num, den), &after[dend..]))
    } else {
        Some((BigRational::from_integer(num), rest))
    }
}

fn parse_signed_rat(s: &str) -> Option<(BigRational, &str)> {
    if let Some(rest) = s.strip_prefix('-') {
        let (r, rest) = parse_unsigned_rat(rest)?;
        Some((-r, rest))
    } else {
        let s = s.strip_prefix('+').unwrap_or(s);
        parse_unsigned_rat(s)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `<rat>`, `<rat>('+'|'-')<rat>i` and `<rat>i`; a bare `i` or
    /// `-i` is also accepted. Whitespace is ignored.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid scalar literal `{input}`"));
        match s.as_str() {
            "i" | "+i" => return Ok(Self::i()),
            "-i" => return Ok(-Self::i()),
            _ => {}
        }
        let (first, rest) = parse_signed_rat(&s).ok_or_else(bad)?;
        if rest.is_empty() {
            return Ok(Self::from_rational(first));
        }
        if rest == "i" {
            return Ok(Self::new(BigRational::zero(), first));
        }
        let (neg, tail) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ => return Err(bad()),
        };
        let im = if tail == "i" {
            BigRational::one()
        } else {
            let (v, t) = parse_unsigned_rat(tail).ok_or_else(bad)?;
            if t != "i" {
                return Err(bad());
            }
            v
        };
        Ok(Self::new(first, if neg { -im } else { im }))
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Self::from_int(n.as_i64().unwrap())),
            other => Err(serde::de::Error::custom(format!(
                "expected a scalar string, found {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for (src, out) in [
            ("3", "3"),
            ("-1/2", "-1/2"),
            ("2/4", "1/2"),
            ("2i", "2i"),
            ("1-3/4i", "1-3/4i"),
            (" 1 + 2 i ", "1+2i"),
            ("-i", "-1i"),
            ("0", "0"),
            ("-0/5", "0"),
        ] {
            assert_eq!(q(src).to_string(), out, "{src}");
        }
        for bad in ["", "1/0", "x", "1+", "1+2", "1i+2", "--1"] {
            assert!(bad.parse::<Q>().is_err(), "{bad}");
        }
    }

    #[test]
    fn field_ops() {
        let a = q("1+2i");
        let b = q("3-1/2i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), Q::one());
        assert_eq!(q("i") * q("i"), q("-1"));
        assert_eq!(a.conj(), q("1-2i"));
        assert!(Q::zero().inv().is_none());
    }
}
