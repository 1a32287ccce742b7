//! Matrices over ℚ(i)[x] and their diagonalization by unimodular operations.

use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::scalar::Q;

#[derive(Clone, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

impl PolyMatrix {
    /// `xA - B`.
    pub fn linear(a: &Matrix, b: &Matrix) -> Self {
        assert_eq!(a.shape(), b.shape());
        let (rows, cols) = a.shape();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(UniPoly::new(vec![-&b[(i, j)], a[(i, j)].clone()]));
            }
        }
        Self { rows, cols, data }
    }

    fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, p: UniPoly) {
        self.data[i * self.cols + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Reduces to diagonal form by unimodular row and column operations and
    /// returns the nonzero diagonal entries, made monic. Their number is the
    /// normal rank; their prime-power factors are the elementary divisors.
    pub fn diagonalize(mut self) -> Vec<UniPoly> {
        let mut out = Vec::new();
        for t in 0..self.rows.min(self.cols) {
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        if let Some(d) = self.get(i, j).degree() {
                            if best.is_none_or(|(_, _, bd)| d < bd) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((pi, pj, _)) = best else {
                    return out;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, r) = self.get(i, t).div_rem(&pivot);
                    for j in t..self.cols {
                        let v = self.get(i, j) - &(&q * self.get(t, j));
                        self.set(i, j, v);
                    }
                    debug_assert_eq!(self.get(i, t), &r);
                    clean &= r.is_zero();
                }
                for j in t + 1..self.cols {
                    if self.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, r) = self.get(t, j).div_rem(&pivot);
                    for i in t..self.rows {
                        let v = self.get(i, j) - &(&q * self.get(i, t));
                        self.set(i, j, v);
                    }
                    clean &= r.is_zero();
                }
                if clean {
                    break;
                }
            }
            out.push(self.get(t, t).monic());
        }
        out
    }
}

/// Diagonal entries of `xA - B` after diagonalization.
pub fn pencil_diagonal(a: &Matrix, b: &Matrix) -> Vec<UniPoly> {
    PolyMatrix::linear(a, b).diagonalize()
}

/// Product of the invariant factors, i.e. the monic gcd of all maximal minors.
pub fn diagonal_product(d: &[UniPoly]) -> UniPoly {
    d.iter()
        .fold(UniPoly::constant(Q::from_int(1)), |acc, p| &acc * p)
}
