//! Transformations onto a known canonical pencil.
//!
//! For a target `(A₀, B₀)` whose first matrix has at most one unit per row and
//! column, pairs `(R, T)` with `R·A = A₀·T` and `R·B = B₀·T` form a linear
//! space in which `T` is mostly determined by `R`. A random member of that
//! space with both factors invertible gives the witness `(R, T⁻¹)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::{EquivalenceWitness, Pencil};
use crate::rng::{small_int, substream};
use crate::scalar::Q;

/// A linear form over the unknowns, stored densely.
type Form = Vec<Q>;

/// Finds `(R, S)` with `R·A·S = A₀` and `R·B·S = B₀` exactly, where
/// `target = (A₀, B₀)` must be equivalent to `p` and `A₀` must be a partial
/// permutation matrix.
pub fn find_witness(p: &Pencil, target: &Pencil, seed: u64) -> Result<EquivalenceWitness> {
    let (m, n) = (p.m(), p.n());
    if (target.m(), target.n()) != (m, n) {
        return Err(Error::Dimension("target shape differs".into()));
    }
    let (a, b) = (p.a(), p.b());
    let (a0, b0) = (target.a(), target.b());

    let mut unit_row_of_col = vec![None; n];
    let mut row_has_unit = vec![false; m];
    for i in 0..m {
        for j in 0..n {
            let v = &a0[(i, j)];
            if v.is_zero() {
                continue;
            }
            if !v.is_one() || row_has_unit[i] || unit_row_of_col[j].is_some() {
                return Err(Error::Unsupported(
                    "target first matrix must be a partial permutation".into(),
                ));
            }
            row_has_unit[i] = true;
            unit_row_of_col[j] = Some(i);
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|&j| unit_row_of_col[j].is_none()).collect();
    let nv = m * m + free_cols.len() * n;
    let rvar = |i: usize, k: usize| i * m + k;

    // (R·A)[i][l] and (R·B)[i][l] as forms.
    let ra = |i: usize, l: usize| -> Form {
        let mut f = vec![Q::zero(); nv];
        for k in 0..m {
            if !a[(k, l)].is_zero() {
                f[rvar(i, k)] = a[(k, l)].clone();
            }
        }
        f
    };
    let mut t_form: Vec<Vec<Form>> = Vec::with_capacity(n);
    let mut free_idx = 0;
    for c in 0..n {
        let row: Vec<Form> = match unit_row_of_col[c] {
            Some(i) => (0..n).map(|l| ra(i, l)).collect(),
            None => {
                let base = m * m + free_idx * n;
                free_idx += 1;
                (0..n)
                    .map(|l| {
                        let mut f = vec![Q::zero(); nv];
                        f[base + l] = Q::one();
                        f
                    })
                    .collect()
            }
        };
        t_form.push(row);
    }

    let mut eqs: Vec<Form> = Vec::new();
    for i in (0..m).filter(|&i| !row_has_unit[i]) {
        for l in 0..n {
            let f = ra(i, l);
            if f.iter().any(|v| !v.is_zero()) {
                eqs.push(f);
            }
        }
    }
    for i in 0..m {
        for l in 0..n {
            let mut f = vec![Q::zero(); nv];
            for k in 0..m {
                if !b[(k, l)].is_zero() {
                    f[rvar(i, k)] += &b[(k, l)];
                }
            }
            for c in 0..n {
                let w = &b0[(i, c)];
                if w.is_zero() {
                    continue;
                }
                for (dst, src) in f.iter_mut().zip(&t_form[c][l]) {
                    if !src.is_zero() {
                        *dst -= &(w * src);
                    }
                }
            }
            if f.iter().any(|v| !v.is_zero()) {
                eqs.push(f);
            }
        }
    }

    let basis = if eqs.is_empty() {
        (0..nv)
            .map(|k| {
                let mut v = vec![Q::zero(); nv];
                v[k] = Q::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(eqs.len(), nv, eqs)?.nullspace()
    };

    let mut rng = substream(seed, 0x5717);
    for attempt in 0..64 {
        let bound = 2 + attempt / 8;
        let coefs: Vec<Q> = basis
            .iter()
            .map(|_| small_int(&mut rng, bound as i64))
            .collect();
        let mut x = vec![Q::zero(); nv];
        for (c, v) in coefs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, vi) in x.iter_mut().zip(v) {
                if !vi.is_zero() {
                    *xi += &(c * vi);
                }
            }
        }
        let r = Matrix::from_fn(m, m, |i, k| x[rvar(i, k)].clone());
        let t = Matrix::from_fn(n, n, |c, l| dot(&t_form[c][l], &x));
        if !r.is_invertible() {
            continue;
        }
        let Ok(s) = t.inverse() else { continue };
        if &(&(&r * a) * &s) == a0 && &(&(&r * b) * &s) == b0 {
            return EquivalenceWitness::new(r, s);
        }
    }
    Err(Error::RetryExhausted(
        "no invertible intertwiner found; pencils may be inequivalent".into(),
    ))
}

fn dot(f: &Form, x: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (a, b) in f.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}
