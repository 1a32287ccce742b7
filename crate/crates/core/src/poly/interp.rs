//! Polynomial interpolation from exact samples.

use num_traits::Zero;

use super::bi::BiPoly;
use super::uni::UniPoly;
use crate::scalar::Q;

/// Distinct small sample points 0, 1, -1, 2, -2, ...
pub fn sample_points(count: usize) -> Vec<Q> {
    (0..count)
        .map(|k| {
            let h = k.div_ceil(2) as i64;
            Q::from_int(if k % 2 == 1 { h } else { -h })
        })
        .collect()
}

/// Newton interpolation through `(xs[k], ys[k])`; the `xs` must be distinct.
pub fn newton_interpolate(xs: &[Q], ys: &[Q]) -> UniPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let num = &dd[k] - &dd[k - 1];
            let den = &xs[k] - &xs[k - level];
            dd[k] = &num / &den;
        }
    }
    let mut acc = UniPoly::zero();
    for k in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear(&xs[k])) + &UniPoly::constant(dd[k].clone());
    }
    acc
}

/// Recovers a bivariate polynomial from an evaluation oracle, given a bound on
/// its degree in each variable. Cost is `(bound+1)^2` oracle calls at most;
/// the actual partial degrees are probed first so the grid is usually smaller.
pub fn interpolate_bivariate(f: &mut dyn FnMut(&Q, &Q) -> Q, bound: u32) -> BiPoly {
    let pts = sample_points(bound as usize + 1);
    // Off-grid probe coordinates keep the degree probes away from special lines.
    let probe_b = Q::ratio(37, 11);
    let probe_g = Q::ratio(-23, 13);
    let db = newton_interpolate(
        &pts,
        &pts.iter().map(|b| f(b, &probe_g)).collect::<Vec<_>>(),
    )
    .degree()
    .unwrap_or(0);
    let dg = newton_interpolate(
        &pts,
        &pts.iter().map(|g| f(&probe_b, g)).collect::<Vec<_>>(),
    )
    .degree()
    .unwrap_or(0);
    let p = grid(f, db, dg);
    let checks = [
        (Q::ratio(17, 7), Q::ratio(5, 19)),
        (Q::ratio(-29, 3), Q::ratio(41, 9)),
    ];
    if checks.iter().all(|(b, g)| p.eval(b, g) == f(b, g)) {
        return p;
    }
    grid(f, bound as usize, bound as usize)
}

fn grid(f: &mut dyn FnMut(&Q, &Q) -> Q, db: usize, dg: usize) -> BiPoly {
    let bs = sample_points(db + 1);
    let gs = sample_points(dg + 1);
    // For each b-sample, the polynomial in g; then interpolate coefficientwise in b.
    let slices: Vec<UniPoly> = bs
        .iter()
        .map(|b| newton_interpolate(&gs, &gs.iter().map(|g| f(b, g)).collect::<Vec<_>>()))
        .collect();
    let mut out = BiPoly::zero();
    for j in 0..=dg {
        let ys: Vec<Q> = slices.iter().map(|s| s.coeff(j)).collect();
        if ys.iter().all(Q::is_zero) {
            continue;
        }
        let cj = newton_interpolate(&bs, &ys);
        for (i, c) in cj.coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_bipoly;

    #[test]
    fn recovers_polynomials() {
        let p = UniPoly::from_ints(&[3, 0, -2, 1]);
        let xs = sample_points(4);
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(newton_interpolate(&xs, &ys), p);

        let f = parse_bipoly("4*b^3 - 27*g^2 + b*g - 1/3").unwrap();
        let got = interpolate_bivariate(&mut |b, g| f.eval(b, g), 5);
        assert_eq!(got, f);
    }
}
