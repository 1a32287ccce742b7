//! Candidate special curves of a two-parameter family and points on them.
//!
//! Two sources: curves where a block Toeplitz matrix loses rank (the minimal
//! indices jump), and curves where the regular part degenerates (eigenvalues
//! collide or escape). Both are computed pointwise and interpolated.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;

use super::PencilFamily;
use crate::error::Result;
use crate::kronecker::{toeplitz, KroneckerForm, KroneckerType};
use crate::matrix::Matrix;
use crate::poly::interp::{interpolate_bivariate, newton_interpolate, sample_points};
use crate::poly::{factor, factor_bivariate, BiPoly, UniPoly};
use crate::rng::{small_int, substream, SeededRng};
use crate::scalar::Q;

/// Distinct irreducible normalized polynomials whose zero sets may carry a
/// non-generic type.
pub(super) fn candidate_curves(
    f: &PencilFamily,
    origin: &KroneckerForm,
    generic: &KroneckerType,
    gpoint: &(Q, Q),
    seed: u64,
) -> Result<Vec<BiPoly>> {
    let mut out: BTreeSet<(u32, String)> = BTreeSet::new();
    let mut polys: Vec<BiPoly> = Vec::new();
    let mut add = |h: BiPoly, out: &mut BTreeSet<(u32, String)>| {
        let key = (h.total_degree().unwrap_or(0), h.to_string());
        if out.insert(key) {
            polys.push(h);
        }
    };
    let mut rng = substream(seed, 0x7e57);

    let eps_o: Vec<usize> = origin.nablas().iter().map(|q| q - 1).collect();
    let eta_o: Vec<usize> = origin.deltas().iter().map(|p| p - 1).collect();
    let eps_g: Vec<usize> = generic.nablas().iter().map(|q| q - 1).collect();
    let eta_g: Vec<usize> = generic.deltas().iter().map(|p| p - 1).collect();
    let kmax = |a: &[usize], b: &[usize]| a.iter().chain(b).copied().max().unwrap_or(0);

    let tf = f.transpose();
    for (fam, kmax) in [(f, kmax(&eps_o, &eps_g)), (&tf, kmax(&eta_o, &eta_g))] {
        if fam.m == 0 || fam.n == 0 {
            continue;
        }
        for h in rank_drop_curves(fam, kmax, gpoint, &mut rng)? {
            add(h, &mut out);
        }
    }
    let delta = generic.regular_size();
    if delta > 0 {
        let rho = f.m - generic.deltas().len();
        for c in regular_part_curves(f, rho, delta, &mut rng)? {
            add(c, &mut out);
        }
    }
    Ok(polys)
}

fn row_degrees(f: &PencilFamily) -> Vec<u32> {
    (0..f.m)
        .map(|i| {
            (0..f.n)
                .flat_map(|j| [f.entry(1, i, j), f.entry(2, i, j)])
                .filter_map(BiPoly::total_degree)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn col_degrees(f: &PencilFamily) -> Vec<u32> {
    row_degrees(&f.transpose())
}

fn rank_drop_curves(
    f: &PencilFamily,
    kmax: usize,
    gpoint: &(Q, Q),
    rng: &mut SeededRng,
) -> Result<Vec<BiPoly>> {
    let p0 = f.origin();
    let pg = f.eval2(&gpoint.0, &gpoint.1);
    let rdeg = row_degrees(f);
    let mut out = Vec::new();
    for k in 0..=kmax {
        let tg = toeplitz(pg.a(), pg.b(), k);
        let rg = tg.rank();
        if toeplitz(p0.a(), p0.b(), k).rank() >= rg || rg == 0 {
            continue;
        }
        let mut common: Option<BTreeSet<String>> = None;
        let mut by_name: Vec<BiPoly> = Vec::new();
        for _ in 0..2 {
            let (rows, cols) = nonsingular_minor(&tg, rng);
            let bound: u32 = rows.iter().map(|&r| rdeg[r % f.m]).sum();
            let det = interpolate_bivariate(
                &mut |b0, g0| {
                    let p = f.eval2(b0, g0);
                    toeplitz(p.a(), p.b(), k)
                        .select(&rows, &cols)
                        .det()
                        .unwrap()
                },
                bound,
            );
            let facs = factor_bivariate(&det)?;
            let names: BTreeSet<String> = facs.iter().map(|(h, _)| h.to_string()).collect();
            by_name.extend(facs.into_iter().map(|(h, _)| h));
            common = Some(match common {
                None => names,
                Some(c) => c.intersection(&names).cloned().collect(),
            });
        }
        let common = common.unwrap_or_default();
        for h in by_name {
            if common.contains(&h.to_string()) && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Rows and columns of a nonsingular maximal minor, chosen greedily in random order.
fn nonsingular_minor(m: &Matrix, rng: &mut SeededRng) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.shuffle(rng);
    let rows = independent_rows(m, &order);
    let sub = m
        .select(&rows, &(0..m.cols()).collect::<Vec<_>>())
        .transpose();
    let mut corder: Vec<usize> = (0..m.cols()).collect();
    corder.shuffle(rng);
    let mut cols = independent_rows(&sub, &corder);
    let mut rows = rows;
    rows.sort_unstable();
    cols.sort_unstable();
    (rows, cols)
}

fn independent_rows(m: &Matrix, order: &[usize]) -> Vec<usize> {
    // Echelon basis with the pivot column of each stored row.
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    let mut picked = Vec::new();
    for &i in order {
        let mut v = m.row(i).to_vec();
        for (pc, bv) in &basis {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].inv().unwrap();
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
            basis.push((pc, v));
            picked.push(i);
        }
    }
    picked
}

/// Curves where the gcd of two random projections of `x·A' - B'` (after a
/// random change of the pencil's coordinates making every eigenvalue finite)
/// changes degree or acquires a repeated root.
fn regular_part_curves(
    f: &PencilFamily,
    rho: usize,
    delta: usize,
    rng: &mut SeededRng,
) -> Result<Vec<BiPoly>> {
    let (m, n) = (f.m, f.n);
    let mob = loop {
        let c: Vec<Q> = (0..4).map(|_| small_int(rng, 3)).collect();
        if !(&(&c[0] * &c[3]) - &(&c[1] * &c[2])).is_zero() {
            break c;
        }
    };
    let square = m == rho && n == rho;
    let projections: Vec<(Matrix, Matrix)> = if square {
        vec![(Matrix::identity(m), Matrix::identity(n))]
    } else {
        (0..2)
            .map(|_| {
                (
                    Matrix::from_fn(rho, m, |_, _| small_int(rng, 3)),
                    Matrix::from_fn(n, rho, |_, _| small_int(rng, 3)),
                )
            })
            .collect()
    };
    let xs = sample_points(rho + 1);
    let d = f.degree().max(1);
    let deg_p = (rho as u32 * d)
        .min(row_degrees(f).iter().sum::<u32>())
        .min(col_degrees(f).iter().sum::<u32>());
    let single = square || delta == rho;
    let deg_g = if single {
        deg_p
    } else {
        2 * (rho - delta) as u32 * deg_p
    };

    let gcd_at = |b0: &Q, g0: &Q| -> Vec<Q> {
        let p = f.eval2(b0, g0);
        let a2 = &p.a().scale(&mob[0]) + &p.b().scale(&mob[1]);
        let b2 = &p.a().scale(&mob[2]) + &p.b().scale(&mob[3]);
        let polys: Vec<Vec<Q>> = projections
            .iter()
            .take(if single { 1 } else { 2 })
            .map(|(u, v)| {
                let ua = &(u * &a2) * v;
                let ub = &(u * &b2) * v;
                let ys: Vec<Q> = xs
                    .iter()
                    .map(|x| (&ua.scale(x) - &ub).det().unwrap())
                    .collect();
                padded(&newton_interpolate(&xs, &ys), rho + 1)
            })
            .collect();
        if single {
            polys[0].clone()
        } else {
            subresultant(&polys[0], &polys[1], rho, rho, delta)
        }
    };

    let mut cands = Vec::new();
    if !single {
        let psc = interpolate_bivariate(&mut |b0, g0| gcd_at(b0, g0)[delta].clone(), deg_g);
        if !psc.is_zero() {
            cands.push(psc);
        }
    }
    if delta >= 2 {
        let bound = (2 * delta as u32 - 1) * deg_g;
        let disc = interpolate_bivariate(
            &mut |b0, g0| {
                let g = gcd_at(b0, g0);
                let dg: Vec<Q> = (1..=delta)
                    .map(|k| &g[k] * &Q::from_int(k as i64))
                    .collect();
                subresultant(&g, &dg, delta, delta - 1, 0)[0].clone()
            },
            bound,
        );
        if !disc.is_zero() {
            cands.push(disc);
        }
    }
    let mut out = Vec::new();
    for c in cands {
        for (h, _) in factor_bivariate(&c)? {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

fn padded(p: &UniPoly, len: usize) -> Vec<Q> {
    (0..len).map(|k| p.coeff(k)).collect()
}

/// Coefficients (lowest first, `j + 1` of them) of the `j`-th subresultant of
/// `p` and `q` taken with formal degrees `dp` and `dq`.
pub(crate) fn subresultant(p: &[Q], q: &[Q], dp: usize, dq: usize, j: usize) -> Vec<Q> {
    let width = dp + dq - j;
    let nrows = dp + dq - 2 * j;
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(nrows);
    // Row for x^s · poly, columns indexed by descending degree width-1 .. 0.
    let mut push = |coeffs: &[Q], deg: usize, shift: usize| {
        let mut r = vec![Q::zero(); width];
        for (k, c) in coeffs.iter().enumerate().take(deg + 1) {
            let e = k + shift;
            r[width - 1 - e] = c.clone();
        }
        rows.push(r);
    };
    for s in (0..dq - j).rev() {
        push(p, dp, s);
    }
    for s in (0..dp - j).rev() {
        push(q, dq, s);
    }
    let lead = nrows - 1;
    (0..=j)
        .map(|k| {
            let cols: Vec<usize> = (0..lead).chain(std::iter::once(width - 1 - k)).collect();
            let mat: Vec<Vec<Q>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            Matrix::from_rows(nrows, nrows, mat).unwrap().det().unwrap()
        })
        .collect()
}

/// Small nonzero rationals ordered by height, then magnitude, positive first.
fn probe_values() -> Vec<Q> {
    let mut out = Vec::new();
    for h in 1..=12i64 {
        let mut level: Vec<(i64, i64)> = Vec::new();
        for q in 1..=h {
            for p in 1..=h {
                if p.max(q) == h && num_integer::gcd(p, q) == 1 {
                    level.push((p, q));
                }
            }
        }
        level.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        for (p, q) in level {
            out.push(Q::ratio(p, q));
            out.push(Q::ratio(-p, q));
        }
    }
    out
}

/// Up to `count` nonzero points of `h = 0` with coordinates in ℚ(i), avoiding
/// the zero sets of `avoid`.
pub(super) fn points_on_curve(h: &BiPoly, avoid: &[&BiPoly], count: usize) -> Vec<(Q, Q)> {
    let mut pts: Vec<(Q, Q)> = Vec::new();
    let ok = |b0: &Q, g0: &Q, pts: &[(Q, Q)]| {
        !(b0.is_zero() && g0.is_zero())
            && avoid.iter().all(|p| !p.eval(b0, g0).is_zero())
            && !pts.iter().any(|(x, y)| x == b0 && y == g0)
    };
    for c in probe_values() {
        for in_b in [true, false] {
            if pts.len() >= count {
                return pts;
            }
            let u = if in_b { h.eval_b(&c) } else { h.eval_g(&c) };
            if u.degree().unwrap_or(0) == 0 {
                continue;
            }
            let Ok(fs) = factor(&u) else { continue };
            for (lin, _) in fs.iter().filter(|(p, _)| p.degree() == Some(1)) {
                let root = -&(&lin.coeff(0) / &lin.coeff(1));
                let (b0, g0) = if in_b {
                    (c.clone(), root)
                } else {
                    (root, c.clone())
                };
                debug_assert!(h.eval(&b0, &g0).is_zero());
                if ok(&b0, &g0, &pts) && pts.len() < count {
                    pts.push((b0, g0));
                }
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bipoly;

    #[test]
    fn subresultants_find_gcd() {
        // (x-1)(x-2) and (x-1)(x+3): S_1 is a multiple of x - 1.
        let p = [Q::from_int(2), Q::from_int(-3), Q::from_int(1)];
        let q = [Q::from_int(-3), Q::from_int(2), Q::from_int(1)];
        let s1 = subresultant(&p, &q, 2, 2, 1);
        assert!(!s1[1].is_zero());
        assert_eq!(&s1[0] / &s1[1], Q::from_int(-1));
        assert!(subresultant(&p, &q, 2, 2, 0)[0].is_zero());
    }

    #[test]
    fn finds_points_on_cusp() {
        let h = parse_bipoly("4*b^3 - 27*g^2").unwrap();
        let pts = points_on_curve(&h, &[], 3);
        assert_eq!(pts.len(), 3);
        for (b0, g0) in pts {
            assert!(h.eval(&b0, &g0).is_zero());
        }
    }
}
