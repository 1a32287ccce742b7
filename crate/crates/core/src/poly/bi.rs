//! Sparse polynomials in the two family parameters `b` and `g`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::uni::{push_term, UniPoly};
use crate::error::{Error, Result};
use crate::scalar::Q;

/// Terms are keyed by `(b exponent, g exponent)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    /// The parameter `b`.
    pub fn b() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    /// The parameter `g`.
    pub fn g() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, &c);
        }
        p
    }

    /// Embeds a univariate polynomial in `b`.
    pub fn from_uni_b(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c.clone())),
        )
    }

    /// Embeds a univariate polynomial in `g`.
    pub fn from_uni_g(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((0, k as u32), c.clone())),
        )
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_b(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_g(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn mentions_b(&self) -> bool {
        self.degree_b().is_some_and(|d| d > 0)
    }

    pub fn mentions_g(&self) -> bool {
        self.degree_g().is_some_and(|d| d > 0)
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, b: &Q, g: &Q) -> Q {
        let mut acc = Q::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(&(c * &qpow(b, i)) * &qpow(g, j));
        }
        acc
    }

    /// Substitutes `b = b0`, leaving a polynomial in `g`.
    pub fn eval_b(&self, b0: &Q) -> UniPoly {
        let deg = self.degree_g().unwrap_or(0) as usize;
        let mut v = vec![Q::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            v[j as usize] += &(c * &qpow(b0, i));
        }
        UniPoly::new(v)
    }

    /// Substitutes `g = g0`, leaving a polynomial in `b`.
    pub fn eval_g(&self, g0: &Q) -> UniPoly {
        let deg = self.degree_b().unwrap_or(0) as usize;
        let mut v = vec![Q::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            v[i as usize] += &(c * &qpow(g0, j));
        }
        UniPoly::new(v)
    }

    pub fn derivative_b(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * &Q::from_int(i as i64))),
        )
    }

    pub fn derivative_g(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * &Q::from_int(j as i64))),
        )
    }

    /// Substitutes `b := pb`, `g := pg`.
    pub fn compose(&self, pb: &BiPoly, pg: &BiPoly) -> Self {
        let db = self.degree_b().unwrap_or(0) as usize;
        let dg = self.degree_g().unwrap_or(0) as usize;
        let mut bpows = vec![Self::one()];
        for k in 1..=db {
            let next = &bpows[k - 1] * pb;
            bpows.push(next);
        }
        let mut gpows = vec![Self::one()];
        for k in 1..=dg {
            let next = &gpows[k - 1] * pg;
            gpows.push(next);
        }
        let mut acc = Self::zero();
        for (&(i, j), c) in &self.terms {
            let t = (&bpows[i as usize] * &gpows[j as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Lex-leading term with `b` dominant.
    fn lex_lead(&self) -> Option<((u32, u32), &Q)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let ((di, dj), dc) = d.lex_lead()?;
        let dinv = dc.inv().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(((ri, rj), rc)) = rem.lex_lead() {
            if ri < di || rj < dj {
                return None;
            }
            let t = Self::monomial(rc * &dinv, ri - di, rj - dj);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    pub fn divides(&self, other: &BiPoly) -> bool {
        !self.is_zero() && other.exact_div(self).is_some()
    }

    /// Degree-lex leading term: highest total degree, then highest `b` exponent.
    pub fn leading_term(&self) -> Option<((u32, u32), &Q)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&e, c)| (e, c))
    }

    /// Scales so the coefficients are Gaussian integers with no common rational
    /// integer factor and the degree-lex leading coefficient is a positive integer.
    pub fn normalized(&self) -> BiPoly {
        let Some((_, lc)) = self.leading_term() else {
            return Self::zero();
        };
        let monic = self.scale(&lc.inv().unwrap());
        let den = monic
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        monic.scale(&Q::from(den))
    }

    /// Renders terms in degree-lex order with `vb` before `vg`.
    pub fn to_string_vars(&self, vb: &str, vg: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut out = String::new();
        for (i, j) in keys {
            let mut parts = Vec::new();
            for (v, e) in [(vb, i), (vg, j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            push_term(&mut out, &self.terms[&(i, j)], &parts.join("*"));
        }
        out
    }
}

pub(crate) fn qpow(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc = &acc * x;
    }
    acc
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_vars("b", "g"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl From<Q> for BiPoly {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, c);
        }
        r
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, &-c);
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                r.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        r
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix of bivariate polynomials.
pub fn bareiss_det(mut m: Vec<Vec<BiPoly>>) -> BiPoly {
    let n = m.len();
    if n == 0 {
        return BiPoly::one();
    }
    let mut sign = false;
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BiPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = BiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Resultant of two polynomials in `x` (coefficients lowest degree first) with
/// their formal degrees `len - 1`.
pub fn resultant_x(p: &[BiPoly], q: &[BiPoly]) -> BiPoly {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let n = dp + dq;
    if n == 0 {
        return BiPoly::one();
    }
    let mut rows = Vec::with_capacity(n);
    for s in 0..dq {
        let mut row = vec![BiPoly::zero(); n];
        for (k, c) in p.iter().rev().enumerate() {
            row[s + k] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..dp {
        let mut row = vec![BiPoly::zero(); n];
        for (k, c) in q.iter().rev().enumerate() {
            row[s + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Discriminant with respect to `x` of a polynomial whose coefficients
/// (lowest degree first) are polynomials in `b`, `g`. The leading coefficient
/// must be a nonzero constant.
pub fn discriminant_in_x(p: &[BiPoly]) -> Result<BiPoly> {
    let mut p: Vec<BiPoly> = p.to_vec();
    while p.last().is_some_and(BiPoly::is_zero) {
        p.pop();
    }
    if p.len() < 2 {
        return Err(Error::InvalidArgument(
            "discriminant needs degree at least 1 in x".into(),
        ));
    }
    let lc = p.last().unwrap();
    if !lc.is_constant() {
        return Err(Error::InvalidArgument(format!(
            "leading coefficient in x must be constant, got {lc}"
        )));
    }
    let inv = lc.constant_term().inv().unwrap();
    let p: Vec<BiPoly> = p.iter().map(|c| c.scale(&inv)).collect();
    let n = p.len() - 1;
    let dp: Vec<BiPoly> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Q::from_int(k as i64)))
        .collect();
    let res = resultant_x(&p, &dp);
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        -&res
    } else {
        res
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> BiPoly {
        BiPoly::constant(Q::from_int(v))
    }

    #[test]
    fn cusp_discriminant() {
        // x^3 - b x - g
        let p = vec![-&BiPoly::g(), -&BiPoly::b(), BiPoly::zero(), c(1)];
        let d = discriminant_in_x(&p).unwrap();
        assert_eq!(d.to_string(), "4*b^3 - 27*g^2");
        // x^2 - b
        let d = discriminant_in_x(&[-&BiPoly::b(), BiPoly::zero(), c(1)]).unwrap();
        assert_eq!(d.normalized().to_string(), "b");
        // (x - b)(x - g)
        let p = vec![
            &BiPoly::b() * &BiPoly::g(),
            -&(&BiPoly::b() + &BiPoly::g()),
            c(1),
        ];
        let d = discriminant_in_x(&p).unwrap();
        let bg = &BiPoly::b() - &BiPoly::g();
        assert_eq!(d, &bg * &bg);
        assert!(discriminant_in_x(&[c(1), BiPoly::b()]).is_err());
    }

    #[test]
    fn exact_division() {
        let f = &(&BiPoly::b() + &c(1)) * &(&BiPoly::g().pow(2) - &BiPoly::b());
        assert_eq!(
            f.exact_div(&(&BiPoly::b() + &c(1))).unwrap().to_string(),
            "g^2 - b"
        );
        assert!(f.exact_div(&(&BiPoly::b() + &c(2))).is_none());
    }

    #[test]
    fn normalization() {
        let p = BiPoly::from_terms([((3, 0), Q::ratio(-4, 27)), ((0, 2), Q::from_int(1))]);
        assert_eq!(p.normalized().to_string(), "4*b^3 - 27*g^2");
    }
}
