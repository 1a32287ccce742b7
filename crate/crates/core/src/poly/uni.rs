//! Dense univariate polynomials over ℚ(i).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Q;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Q::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &Q) -> Self {
        Self::new(vec![-root, Q::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Monic multiple; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Q::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Q::from_int(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let inv_lead = d.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Division that is known to be exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Q) -> Self {
        let lin = Self::new(vec![c.clone(), Q::one()]);
        let mut acc = Self::zero();
        for k in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(k.clone());
        }
        acc
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Q::conj).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Q::is_real)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Number of times `x` divides `self` (the order of vanishing at 0).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Deterministic total order used for sorting factors: degree first, then
    /// the roots' symmetric functions, so `x - 1` sorts before `x - 2`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }

    fn order_key(&self) -> Vec<Q> {
        // (-1)^d p(-x) has the negated roots of p, so for linear factors the
        // constant term is the root itself.
        let d = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (d - 1 - k) % 2 == 1 { -c } else { c.clone() })
            .collect()
    }

    /// Renders with the given variable name, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            push_term(&mut out, c, &mono);
        }
        out
    }
}

/// Appends `c*mono` to a sum being rendered, with canonical sign placement.
pub(crate) fn push_term(out: &mut String, c: &Q, mono: &str) {
    let (neg, mag) = if c.is_real() && c.re() < &num_rational::BigRational::zero() {
        (true, -c)
    } else {
        (false, c.clone())
    };
    let coeff = if mag.is_real() {
        mag.to_string()
    } else {
        format!("({mag})")
    };
    let body = if mono.is_empty() {
        coeff
    } else if mag.is_one() {
        mono.to_string()
    } else {
        format!("{coeff}*{mono}")
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&body);
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Greatest common divisor, made monic (`gcd(0, 0) = 0`).
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    p.gcd(q)
}

/// Yun's squarefree decomposition: pairwise coprime squarefree monic factors
/// with multiplicities whose product is `p` up to a constant.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "squarefree decomposition of the zero polynomial".into(),
        ));
    }
    let f = p.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), mult));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Monic irreducible factors over ℚ(i) of a squarefree polynomial, sorted by
/// [`UniPoly::canonical_cmp`].
pub fn irreducible_split(p: &UniPoly) -> Result<Vec<UniPoly>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot split the zero polynomial".into(),
        ));
    }
    if !p.is_squarefree() {
        return Err(Error::InvalidArgument(format!(
            "irreducible_split needs a squarefree input, got {p}"
        )));
    }
    let mut fs = super::factor::factor_squarefree_qi(&p.monic());
    fs.sort_by(UniPoly::canonical_cmp);
    Ok(fs)
}

/// Complete factorization into monic irreducibles with multiplicities.
pub fn factor(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let mut out = Vec::new();
    for (sq, mult) in squarefree_decomposition(p)? {
        for f in irreducible_split(&sq)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        // x^3 - 3x - 2 = (x-2)(x+1)^2 against its derivative
        assert_eq!(poly_gcd(&p(&[-2, -3, 0, 1]), &p(&[-3, 0, 3])), p(&[1, 1]));
        assert_eq!(poly_gcd(&p(&[4, 2]), &UniPoly::zero()), p(&[2, 1]));
        assert!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        let d = squarefree_decomposition(&p(&[-2, -3, 0, 1])).unwrap();
        assert_eq!(d, vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 2)]);
        assert_eq!(
            squarefree_decomposition(&p(&[-5, 1])).unwrap(),
            vec![(p(&[-5, 1]), 1)]
        );
        // (x-1)^2 (x-2)^2
        let f = &p(&[2, -3, 1]).pow(2) * &UniPoly::one();
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(p(&[2, -3, 1]), 2)]
        );
        assert!(squarefree_decomposition(&UniPoly::zero()).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(
            irreducible_split(&p(&[-1, 0, 1])).unwrap(),
            vec![p(&[1, 1]), p(&[-1, 1])]
        );
        let i = Q::i();
        let mut want = vec![UniPoly::linear(&-&i), UniPoly::linear(&i)];
        want.sort_by(UniPoly::canonical_cmp);
        assert_eq!(irreducible_split(&p(&[1, 0, 1])).unwrap(), want);
        assert_eq!(
            irreducible_split(&p(&[-2, 0, 1])).unwrap(),
            vec![p(&[-2, 0, 1])]
        );
        assert!(irreducible_split(&p(&[1, 2, 1])).is_err());
    }

    #[test]
    fn shift_and_display() {
        let f = p(&[0, 0, 1]).shift(&Q::from_int(1));
        assert_eq!(f, p(&[1, 2, 1]));
        assert_eq!(p(&[-2, -3, 0, 1]).to_string(), "x^3 - 3*x - 2");
        assert_eq!(UniPoly::linear(&Q::i()).to_string(), "x + (-1i)");
    }
}
