//! Factorization of bivariate polynomials over ℚ(i).
//!
//! A linear change of coordinates makes the input monic in `b`; a squarefree
//! specialization `g = c` is factored with the univariate machinery, the
//! factors are lifted `(g - c)`-adically and recombined by trial division.

use num_traits::Zero;

use super::bi::BiPoly;
use super::interp::{newton_interpolate, sample_points};
use super::uni::{irreducible_split, UniPoly};
use crate::error::{Error, Result};
use crate::scalar::Q;

/// Irreducible factors with multiplicities, each normalized as in
/// [`BiPoly::normalized`]. Constant factors are dropped.
pub fn factor_bivariate(f: &BiPoly) -> Result<Vec<(BiPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot factor the zero polynomial".into(),
        ));
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
    let a = monic_shift(f);
    let fa = shear(f, &a);
    let s = match gcd_monic_b(&fa, &fa.derivative_b()) {
        g if g.is_constant() => fa.clone(),
        g => fa.exact_div(&g).expect("gcd divides"),
    };
    let mut out = Vec::new();
    for h in hensel_factor(&s) {
        let h = shear(&h, &-&a).normalized();
        let mut mult = 0;
        let mut rest = f.clone();
        while let Some(q) = rest.exact_div(&h) {
            rest = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        out.push((h, mult));
    }
    out.sort_by(|x, y| {
        x.0.total_degree()
            .cmp(&y.0.total_degree())
            .then_with(|| x.0.to_string().cmp(&y.0.to_string()))
    });
    Ok(out)
}

/// Distinct irreducible factors, normalized.
pub fn irreducible_factors(f: &BiPoly) -> Result<Vec<BiPoly>> {
    Ok(factor_bivariate(f)?.into_iter().map(|(h, _)| h).collect())
}

/// `f(b, g + a b)`.
fn shear(f: &BiPoly, a: &Q) -> BiPoly {
    if a.is_zero() {
        return f.clone();
    }
    f.compose(&BiPoly::b(), &(&BiPoly::g() + &BiPoly::b().scale(a)))
}

/// A shear parameter making `f(b, g + a b)` have constant leading coefficient in `b`.
fn monic_shift(f: &BiPoly) -> Q {
    let d = f.total_degree().unwrap();
    for a in sample_points(2 * d as usize + 2) {
        // Coefficient of b^d after shearing is the top form evaluated at (1, a).
        let mut top = Q::zero();
        for (&(i, j), c) in f.terms() {
            if i + j == d {
                top += &(c * &super::bi::qpow(&a, j));
            }
        }
        if !top.is_zero() {
            return a;
        }
    }
    unreachable!("a nonzero top form has a non-root among d + 1 points")
}

fn lead_b_is_constant(f: &BiPoly) -> bool {
    let d = f.degree_b().unwrap_or(0);
    f.terms().all(|(&(i, j), _)| i < d || j == 0)
}

/// Gcd of `a` and `d` where `a` has constant leading coefficient in `b`; the
/// result is monic in `b`.
fn gcd_monic_b(a: &BiPoly, d: &BiPoly) -> BiPoly {
    debug_assert!(lead_b_is_constant(a));
    if d.is_zero() {
        return monic_in_b(a);
    }
    let need = a.degree_g().unwrap_or(0) as usize + 1;
    let mut best_deg = usize::MAX;
    let mut samples: Vec<(Q, UniPoly)> = Vec::new();
    let pts = sample_points(8 * need + 16);
    for c in pts {
        let ua = a.eval_g(&c);
        let h = ua.gcd(&d.eval_g(&c));
        let dh = h.degree().unwrap_or(0);
        if dh == 0 {
            return BiPoly::one();
        }
        if dh < best_deg {
            best_deg = dh;
            samples.clear();
        }
        if dh == best_deg {
            samples.push((c, h));
        }
        if samples.len() >= need {
            let cand = interpolate_in_g(&samples, best_deg);
            if cand.divides(a) && cand.divides(d) {
                return cand;
            }
        }
    }
    unreachable!("bivariate gcd did not stabilise")
}

fn monic_in_b(f: &BiPoly) -> BiPoly {
    let d = f.degree_b().unwrap_or(0);
    f.scale(&f.coeff(d, 0).inv().unwrap())
}

fn interpolate_in_g(samples: &[(Q, UniPoly)], deg_b: usize) -> BiPoly {
    let xs: Vec<Q> = samples.iter().map(|(c, _)| c.clone()).collect();
    let mut out = BiPoly::zero();
    for i in 0..=deg_b {
        let ys: Vec<Q> = samples.iter().map(|(_, h)| h.coeff(i)).collect();
        for (j, c) in newton_interpolate(&xs, &ys).coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c);
        }
    }
    out
}

/// `y`-adic expansion: entry `k` is the coefficient of `y^k`, a polynomial in `b`.
type Series = Vec<UniPoly>;

fn to_series(f: &BiPoly) -> Series {
    let k = f.degree_g().unwrap_or(0) as usize;
    let mut cols = vec![vec![Q::zero(); f.degree_b().unwrap_or(0) as usize + 1]; k + 1];
    for (&(i, j), c) in f.terms() {
        cols[j as usize][i as usize] = c.clone();
    }
    cols.into_iter().map(UniPoly::new).collect()
}

fn from_series(s: &[UniPoly]) -> BiPoly {
    let mut out = BiPoly::zero();
    for (j, p) in s.iter().enumerate() {
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c);
        }
    }
    out
}

fn series_mul(a: &[UniPoly], b: &[UniPoly], prec: usize) -> Series {
    let mut out = vec![UniPoly::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Irreducible factors of a squarefree `s` with constant leading coefficient in `b`.
fn hensel_factor(s: &BiPoly) -> Vec<BiPoly> {
    let s = monic_in_b(s);
    if s.degree_b().unwrap_or(0) <= 1 {
        return vec![s];
    }
    let k = s.degree_g().unwrap_or(0) as usize;
    if k == 0 {
        return irreducible_split(&s.eval_g(&Q::zero()))
            .expect("squarefree")
            .iter()
            .map(BiPoly::from_uni_b)
            .collect();
    }
    let c = sample_points(64)
        .into_iter()
        .find(|c| s.eval_g(c).is_squarefree())
        .expect("a squarefree specialization exists");
    let t = s.compose(&BiPoly::b(), &(&BiPoly::g() + &BiPoly::constant(c.clone())));
    let series = to_series(&t);
    let prec = k + 1;
    let images = irreducible_split(&series[0]).expect("squarefree image");
    if images.len() == 1 {
        return vec![s];
    }
    let mut lifted: Vec<Series> = Vec::new();
    let mut target = series;
    for i in 0..images.len() - 1 {
        let rest = images[i + 1..]
            .iter()
            .fold(UniPoly::one(), |acc, f| &acc * f);
        let (g, h) = lift_pair(&target, &images[i], &rest, prec);
        lifted.push(g);
        target = h;
    }
    lifted.push(target);

    let mut remaining = t.clone();
    let mut found = Vec::new();
    let mut pool = lifted;
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        for subset in subsets(pool.len(), size) {
            let prod = subset.iter().fold(vec![UniPoly::one()], |acc, &i| {
                series_mul(&acc, &pool[i], prec)
            });
            let cand = from_series(&prod);
            if let Some(q) = remaining.exact_div(&cand) {
                found.push(cand);
                remaining = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if !remaining.is_constant() {
        found.push(remaining);
    }
    let back = &BiPoly::g() - &BiPoly::constant(c);
    found
        .into_iter()
        .map(|f| f.compose(&BiPoly::b(), &back))
        .collect()
}

/// Lifts `f ≡ g0·h0 (mod y)` with `g0` monic to a factorization modulo `y^prec`.
fn lift_pair(f: &[UniPoly], g0: &UniPoly, h0: &UniPoly, prec: usize) -> (Series, Series) {
    let (one, _, t) = g0.ext_gcd(h0);
    debug_assert_eq!(one, UniPoly::one());
    let mut g = vec![g0.clone()];
    let mut h = vec![h0.clone()];
    for k in 1..prec {
        let mut e = f.get(k).cloned().unwrap_or_default();
        for i in 0..=k {
            let j = k - i;
            if i < g.len() && j < h.len() {
                e = &e - &(&g[i] * &h[j]);
            }
        }
        if e.is_zero() {
            g.push(UniPoly::zero());
            h.push(UniPoly::zero());
            continue;
        }
        let dg = (&t * &e).rem(g0);
        let dh = (&e - &(&dg * h0)).exact_div(g0);
        g.push(dg);
        h.push(dh);
    }
    (g, h)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_bipoly;

    fn names(f: &str) -> Vec<(String, usize)> {
        factor_bivariate(&parse_bipoly(f).unwrap())
            .unwrap()
            .into_iter()
            .map(|(h, m)| (h.to_string(), m))
            .collect()
    }

    #[test]
    fn factors() {
        assert_eq!(names("4*b^3 - 27*g^2"), vec![("4*b^3 - 27*g^2".into(), 1)]);
        assert_eq!(names("b*g"), vec![("b".into(), 1), ("g".into(), 1)]);
        assert_eq!(
            names("(b - g)^2*(b + 2*g + 1)"),
            vec![("b + 2*g + 1".into(), 1), ("b - g".into(), 2)]
        );
        assert_eq!(names("b^2 + g^2").len(), 2);
        assert_eq!(names("b^2 - 2*g^2").len(), 1);
        assert_eq!(
            names("g^3*(b^2 - g^3 + 1)"),
            vec![("g".into(), 3), ("g^3 - b^2 - 1".into(), 1)]
        );
        assert!(names("7").is_empty());
    }
}
