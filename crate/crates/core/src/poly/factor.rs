//! Factorization of squarefree polynomials over ℚ and ℚ(i).
//!
//! Over ℚ this is Zassenhaus: Cantor–Zassenhaus modulo a small prime,
//! quadratic Hensel lifting along a factor tree, then recombination of lifted
//! factors by trial division. Over ℚ(i) the norm trick reduces to ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::uni::UniPoly;
use crate::scalar::Q;

/// Monic irreducible factors over ℚ(i) of a monic squarefree polynomial.
pub fn factor_squarefree_qi(f: &UniPoly) -> Vec<UniPoly> {
    let f = f.monic();
    match f.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![f],
        _ => {}
    }
    let i = Q::i();
    for s in shift_sequence() {
        let shift = &i * &Q::from_int(s);
        // g(x) = f(x - s i)
        let g = f.shift(&-&shift);
        let norm = &g * &g.conj();
        if !norm.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        for nj in factor_squarefree_rational(&norm) {
            let h = g.gcd(&nj);
            if !h.is_constant() {
                out.push(h.shift(&shift));
            }
        }
        debug_assert_eq!(
            out.iter().map(|h| h.degree().unwrap()).sum::<usize>(),
            f.degree().unwrap()
        );
        return out;
    }
    unreachable!("some shift always gives a squarefree norm")
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// Monic irreducible factors over ℚ of a squarefree polynomial with rational
/// coefficients.
pub fn factor_squarefree_rational(f: &UniPoly) -> Vec<UniPoly> {
    assert!(
        f.is_real(),
        "rational factorization needs real coefficients"
    );
    match f.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![f.monic()],
        _ => {}
    }
    let z = primitive_integer(f);
    zassenhaus(&z)
        .iter()
        .map(|g| from_integer(g).monic())
        .collect()
}

type ZPoly = Vec<BigInt>;

fn zdeg(p: &ZPoly) -> usize {
    p.len() - 1
}

fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Clears denominators and content; the result has positive leading coefficient.
fn primitive_integer(f: &UniPoly) -> ZPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let mut v: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c.re() * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut v {
        *c /= &content;
    }
    if v.last().unwrap().is_negative() {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn from_integer(p: &ZPoly) -> UniPoly {
    UniPoly::new(p.iter().map(|c| Q::from(c.clone())).collect())
}

fn zprimitive(mut p: ZPoly) -> ZPoly {
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in &mut p {
            *c /= &content;
        }
    }
    if p.last().unwrap().is_negative() {
        for c in &mut p {
            *c = -&*c;
        }
    }
    p
}

/// Exact quotient over ℤ if `d` divides `f`.
fn zdivide(f: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let (n, m) = (zdeg(f), zdeg(d));
    if n < m {
        return None;
    }
    let mut rem = f.clone();
    let mut q = vec![BigInt::zero(); n - m + 1];
    let ld = d.last().unwrap();
    for k in (0..=n - m).rev() {
        let (c, r) = rem[k + m].div_rem(ld);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| ztrim(q))
}

const PRIMES: [u64; 24] = [
    11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
    107,
];

fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = zdeg(f);
    let lc = f.last().unwrap().clone();
    // Try a handful of primes and keep the one with the fewest modular factors.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let far = PRIMES.into_iter().chain((109..).filter(|&q| is_prime(q)));
    for p in far {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        let fp = pmonic(&fp, p);
        if pdeg(&pgcd(&fp, &pderiv(&fp, p), p)) > 0 {
            continue;
        }
        let facs = factor_mod_p(&fp, p, &mut rng);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, facs) = best.unwrap();

    // Coefficient bound for factors of lc·f.
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * maxc * lc.abs();
    let target = bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut exps = 1u32;
    while modulus < target {
        modulus = &modulus * &modulus;
        exps *= 2;
    }
    let _ = exps;

    let lcinv = mod_inverse(&lc, &modulus);
    let fmonic: ZPoly = f.iter().map(|c| (c * &lcinv).mod_floor(&modulus)).collect();
    let facs: Vec<ZPoly> = facs
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let lifted = multifactor_lift(&fmonic, &facs, p, &modulus);

    recombine(f.clone(), lifted, &modulus)
}

fn recombine(mut f: ZPoly, mut us: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let half = m / 2;
    let sym = |c: BigInt| -> BigInt {
        let c = c.mod_floor(m);
        if c > half {
            c - m
        } else {
            c
        }
    };
    let mut size = 1;
    'outer: while 2 * size <= us.len() {
        let lc = f.last().unwrap().clone();
        for subset in combinations(us.len(), size) {
            // Cheap constant-term test before the full product.
            let mut c0 = lc.clone();
            for &k in &subset {
                c0 = (c0 * &us[k][0]).mod_floor(m);
            }
            let c0 = sym(c0);
            if c0.is_zero() {
                if !f[0].is_zero() {
                    continue;
                }
            } else if !(&lc * &f[0]).is_multiple_of(&c0) {
                continue;
            }
            let mut g: ZPoly = vec![lc.clone()];
            for &k in &subset {
                g = zmul_mod(&g, &us[k], m);
            }
            let g = zprimitive(ztrim(g.into_iter().map(sym).collect()));
            if let Some(q) = zdivide(&f, &g) {
                out.push(g);
                f = q;
                let mut keep = Vec::new();
                for (k, u) in us.into_iter().enumerate() {
                    if !subset.contains(&k) {
                        keep.push(u);
                    }
                }
                us = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if zdeg(&f) > 0 {
        out.push(zprimitive(f));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn zmul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v.into_iter().map(|c| c.mod_floor(m)).collect()
}

fn zsub_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|k| (a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn zadd_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|k| (a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = zdeg(d);
    let a = ztrim(a.clone());
    if zdeg(&a) < dd || (a.len() == 1 && a[0].is_zero()) {
        return (vec![BigInt::zero()], a);
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); zdeg(&a) - dd + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * dc).mod_floor(m);
        }
        q[k] = c;
    }
    rem.truncate(dd.max(1));
    if dd == 0 {
        rem = vec![BigInt::zero()];
    }
    (
        ztrim(q),
        ztrim(rem.into_iter().map(|c| c.mod_floor(m)).collect()),
    )
}

/// Lifts a factorization `f ≡ ∏ facs (mod p)` of a monic `f` into monic
/// factors modulo `modulus`, a power of `p`.
fn multifactor_lift(f: &ZPoly, facs: &[ZPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![f.iter().map(|c| c.mod_floor(modulus)).collect()];
    }
    let k = facs.len() / 2;
    let pb = BigInt::from(p);
    let prod = |fs: &[ZPoly]| {
        fs.iter()
            .fold(vec![BigInt::one()], |acc, g| zmul_mod(&acc, g, &pb))
    };
    let mut g = prod(&facs[..k]);
    let mut h = prod(&facs[k..]);
    let (s, t) = bezout_mod_p(&g, &h, p);
    let (mut s, mut t) = (s, t);
    let mut m = pb.clone();
    while &m < modulus {
        let m2 = &m * &m;
        let m2 = if &m2 > modulus { modulus.clone() } else { m2 };
        let fm: ZPoly = f.iter().map(|c| c.mod_floor(&m2)).collect();
        let e = zsub_mod(&fm, &zmul_mod(&g, &h, &m2), &m2);
        let (q, r) = zdivrem_monic(&zmul_mod(&s, &e, &m2), &h, &m2);
        let g2 = zadd_mod(
            &zadd_mod(&g, &zmul_mod(&t, &e, &m2), &m2),
            &zmul_mod(&q, &g, &m2),
            &m2,
        );
        let h2 = zadd_mod(&h, &r, &m2);
        let b = zsub_mod(
            &zadd_mod(&zmul_mod(&s, &g2, &m2), &zmul_mod(&t, &h2, &m2), &m2),
            &vec![BigInt::one()],
            &m2,
        );
        let (c, d) = zdivrem_monic(&zmul_mod(&s, &b, &m2), &h2, &m2);
        s = zsub_mod(&s, &d, &m2);
        t = zsub_mod(
            &zsub_mod(&t, &zmul_mod(&t, &b, &m2), &m2),
            &zmul_mod(&c, &g2, &m2),
            &m2,
        );
        g = g2;
        h = h2;
        m = m2;
    }
    let mut out = multifactor_lift(&g, &facs[..k], p, modulus);
    out.extend(multifactor_lift(&h, &facs[k..], p, modulus));
    out
}

fn bezout_mod_p(g: &ZPoly, h: &ZPoly, p: u64) -> (ZPoly, ZPoly) {
    let gp = reduce(g, p);
    let hp = reduce(h, p);
    let (d, s, t) = pext_gcd(&gp, &hp, p);
    debug_assert!(pdeg(&d) == 0);
    let to_z = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect::<ZPoly>();
    (to_z(s), to_z(t))
}

// ---- arithmetic in F_p[x]; polynomials as trimmed coefficient vectors ----

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn reduce(f: &ZPoly, p: u64) -> Vec<u64> {
    ptrim(
        f.iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect(),
    )
}

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree, with the zero polynomial reported as 0 like constants.
fn pdeg(v: &[u64]) -> usize {
    v.len().saturating_sub(1)
}

fn pinv(a: u64, p: u64) -> u64 {
    ppow_scalar(a, p - 2, p)
}

fn ppow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn pmonic(v: &[u64], p: u64) -> Vec<u64> {
    let Some(&l) = v.last() else { return vec![] };
    let inv = pinv(l, p);
    v.iter().map(|c| c * inv % p).collect()
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|k| (a.get(k).unwrap_or(&0) + p - b.get(k).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    ptrim(v)
}

fn pdivrem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (vec![], a.to_vec());
    }
    let inv = pinv(*d.last().unwrap(), p);
    let mut rem = a.to_vec();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &dc) in d.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * dc % p) % p;
        }
        q[k] = c;
    }
    rem.truncate(dd);
    (ptrim(q), ptrim(rem))
}

fn prem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    pdivrem(a, d, p).1
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

fn pext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = pinv(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| ptrim(v.into_iter().map(|c| c * inv % p).collect());
    (sc(r0), sc(s0), sc(t0))
}

fn pderiv(a: &[u64], p: u64) -> Vec<u64> {
    ptrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % p) * c % p)
            .collect(),
    )
}

fn ppowmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = prem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = prem(&pmul(&r, &b, p), m, p);
        }
        b = prem(&pmul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    while 2 * d <= pdeg(&f) {
        h = ppowmod(&h, p, &f, p);
        let g = pgcd(&psub(&h, &x, p), &f, p);
        if pdeg(&g) > 0 {
            f = pdivrem(&f, &g, p).0;
            h = prem(&h, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if pdeg(&f) > 0 {
        let dd = pdeg(&f);
        out.push((f, dd));
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = pdeg(g);
    if n == d {
        out.push(g.to_vec());
        return;
    }
    loop {
        let a: Vec<u64> = ptrim((0..n).map(|_| rng.random_range(0..p)).collect());
        if pdeg(&a) == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a · a^p ··· a^(p^(d-1)))^((p-1)/2)
        let mut norm = vec![1u64];
        let mut frob = a.clone();
        for k in 0..d {
            if k > 0 {
                frob = ppowmod(&frob, p, g, p);
            }
            norm = prem(&pmul(&norm, &frob, p), g, p);
        }
        let b = ppowmod(&norm, (p - 1) / 2, g, p);
        let c = pgcd(&psub(&b, &[1], p), g, p);
        if pdeg(&c) > 0 && pdeg(&c) < n {
            let q = pdivrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&pmonic(&q, p), d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn product(fs: &[UniPoly]) -> UniPoly {
        fs.iter().fold(UniPoly::one(), |a, b| &a * b)
    }

    #[test]
    fn rational_examples() {
        // x^4 + 1 is irreducible over ℚ but splits modulo every prime.
        assert_eq!(factor_squarefree_rational(&p(&[1, 0, 0, 0, 1])).len(), 1);
        let f = &(&p(&[-2, 0, 1]) * &p(&[3, 1])) * &p(&[1, 1, 1]);
        let fs = factor_squarefree_rational(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f);
        // Swinnerton-Dyer style: (x^2-2)(x^2-3) has four linear factors mod many p.
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        assert_eq!(factor_squarefree_rational(&f).len(), 2);
        let f = p(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree_rational(&f).len(), 2);
    }

    #[test]
    fn gaussian_examples() {
        let fs = factor_squarefree_qi(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| g.degree() == Some(2)));
        let fs = factor_squarefree_qi(&p(&[1, 0, 1]));
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), p(&[1, 0, 1]));
        let f = UniPoly::new(vec![Q::from_ints(0, -2), Q::zero(), Q::one()]);
        // x^2 - 2i = (x - 1 - i)(x + 1 + i)
        assert_eq!(factor_squarefree_qi(&f).len(), 2);
        assert_eq!(factor_squarefree_qi(&p(&[-2, 0, 1])).len(), 1);
    }

    #[test]
    fn big_coefficients() {
        let roots = [-7, 3, 11, 25, -40, 101];
        let f = roots.iter().fold(UniPoly::one(), |a, &r| &a * &p(&[-r, 1]));
        let f = &f * &p(&[5, 0, 0, 1]);
        let fs = factor_squarefree_rational(&f);
        assert_eq!(fs.len(), 7);
        assert_eq!(product(&fs), f);
    }
}
