//! Structure extraction: normal rank and elementary divisors from a
//! polynomial diagonalization, minimal indices from ranks of block Toeplitz
//! matrices.

use crate::matrix::Matrix;
use crate::pencil::Pencil;
use crate::poly::{factor, UniPoly};
use crate::polymat::{diagonal_product, pencil_diagonal};

use super::{EigenvalueClass, KroneckerForm, SegreBlock};

pub fn normal_rank(p: &Pencil) -> usize {
    pencil_diagonal(p.a(), p.b()).len()
}

/// Minimal indices of `xA - B` on the column side, `count` of them.
///
/// The kernel of the Toeplitz matrix with `k + 2` block rows and `k + 1`
/// block columns (`B` on the diagonal, `A` below) has dimension
/// `Σ_{ε ≤ k} (k - ε + 1)`, so successive differences count indices `≤ k`.
pub fn minimal_indices(a: &Matrix, b: &Matrix, count: usize) -> Vec<usize> {
    let (m, n) = a.shape();
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    if m == 0 {
        out.resize(count, 0);
        return out;
    }
    let (mut prev_d, mut prev_c) = (0usize, 0usize);
    for k in 0.. {
        let t = toeplitz(a, b, k);
        let d = (k + 1) * n - t.rank();
        let c = d - prev_d;
        out.extend(std::iter::repeat_n(k, c - prev_c));
        if c >= count {
            debug_assert_eq!(c, count);
            break;
        }
        prev_d = d;
        prev_c = c;
    }
    out
}

/// Block Toeplitz matrix with `k + 2` block rows and `k + 1` block columns,
/// `B` on the block diagonal and `A` just below it.
pub fn toeplitz(a: &Matrix, b: &Matrix, k: usize) -> Matrix {
    let (m, n) = a.shape();
    let mut t = Matrix::zeros((k + 2) * m, (k + 1) * n);
    for j in 0..=k {
        t.set_block(j * m, j * n, b);
        t.set_block((j + 1) * m, j * n, a);
    }
    t
}

pub(super) fn structure(p: &Pencil) -> KroneckerForm {
    let (m, n) = (p.m(), p.n());
    let diag = pencil_diagonal(p.a(), p.b());
    let rho = diag.len();
    let eps = minimal_indices(p.a(), p.b(), n - rho);
    let eta = minimal_indices(&p.a().transpose(), &p.b().transpose(), m - rho);
    let nablas: Vec<usize> = eps.iter().map(|e| e + 1).collect();
    let deltas: Vec<usize> = eta.iter().map(|e| e + 1).collect();
    let reg = rho - eps.iter().sum::<usize>() - eta.iter().sum::<usize>();

    let mut blocks = finite_blocks(&diag);
    let finite: usize = blocks.iter().map(SegreBlock::dimension).sum();
    if reg > finite {
        let inf: Vec<usize> = pencil_diagonal(p.b(), p.a())
            .iter()
            .map(UniPoly::valuation)
            .filter(|&v| v > 0)
            .collect();
        debug_assert_eq!(inf.iter().sum::<usize>(), reg - finite);
        blocks.push(SegreBlock::new(EigenvalueClass::Infinite, inf));
    }
    let form = KroneckerForm::new(deltas, nablas, blocks).expect("computed structure is valid");
    debug_assert_eq!((form.rows(), form.cols()), (m, n));
    form
}

fn finite_blocks(diag: &[UniPoly]) -> Vec<SegreBlock> {
    let prod = diagonal_product(diag);
    if prod.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let primes = factor(&prod).expect("nonzero product");
    primes
        .into_iter()
        .map(|(pi, _)| {
            let sizes = diag
                .iter()
                .map(|d| multiplicity(d, &pi))
                .filter(|&e| e > 0)
                .collect();
            SegreBlock::new(EigenvalueClass::Finite(pi), sizes)
        })
        .collect()
}

fn multiplicity(d: &UniPoly, pi: &UniPoly) -> usize {
    let mut e = 0;
    let mut rest = d.clone();
    while rest.degree().unwrap_or(0) >= pi.degree().unwrap_or(0) {
        let (q, r) = rest.div_rem(pi);
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1;
    }
    e
}
