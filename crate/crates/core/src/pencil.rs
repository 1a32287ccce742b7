//! Matrix pencils, the canonical blocks and strict equivalence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::{seeded, SeededRng};
use crate::scalar::Q;

/// A pair `(A, B)` of `m × n` matrices, read as the pencil `xA - B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pencil {
    a: Matrix,
    b: Matrix,
}

impl Pencil {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::Dimension(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self { a, b })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            a: Matrix::zeros(m, n),
            b: Matrix::zeros(m, n),
        }
    }

    pub fn from_ints(a: &[&[i64]], b: &[&[i64]]) -> Self {
        Self::new(Matrix::from_ints(a), Matrix::from_ints(b)).expect("shapes agree")
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn into_parts(self) -> (Matrix, Matrix) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn transpose(&self) -> Pencil {
        Pencil {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    /// The reversed pencil `(B, A)`; swaps the roles of `0` and `∞`.
    pub fn swap(&self) -> Pencil {
        Pencil {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn scale(&self, k: &Q) -> Pencil {
        Pencil {
            a: self.a.scale(k),
            b: self.b.scale(k),
        }
    }

    pub fn add(&self, other: &Pencil) -> Result<Pencil> {
        if self.a.shape() != other.a.shape() {
            return Err(Error::Dimension("pencil sum of different shapes".into()));
        }
        Ok(Pencil {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    /// Coordinates in the `2mn`-dimensional pair space: `A` row-major, then `B`.
    pub fn to_vector(&self) -> Vec<Q> {
        self.a
            .entries()
            .iter()
            .chain(self.b.entries())
            .cloned()
            .collect()
    }

    /// Evaluates `xA - B`.
    pub fn at(&self, x: &Q) -> Matrix {
        &self.a.scale(x) - &self.b
    }

    /// `(RAS, RBS)`.
    pub fn apply_equivalence(&self, w: &EquivalenceWitness) -> Result<Pencil> {
        if w.r.rows() != self.m() || w.s.rows() != self.n() {
            return Err(Error::Dimension(format!(
                "witness is {}x{} / {}x{} for a {}x{} pencil",
                w.r.rows(),
                w.r.cols(),
                w.s.rows(),
                w.s.cols(),
                self.m(),
                self.n()
            )));
        }
        Ok(Pencil {
            a: &(&w.r * &self.a) * &w.s,
            b: &(&w.r * &self.b) * &w.s,
        })
    }
}

impl std::fmt::Debug for Pencil {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pencil {{ A: {:?}, B: {:?} }}", self.a, self.b)
    }
}

/// A pair of invertible matrices `(R, S)` acting by `(A, B) ↦ (RAS, RBS)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceWitness {
    r: Matrix,
    s: Matrix,
}

impl EquivalenceWitness {
    pub fn new(r: Matrix, s: Matrix) -> Result<Self> {
        for (name, m) in [("R", &r), ("S", &s)] {
            if !m.is_square() {
                return Err(Error::Dimension(format!("{name} is not square")));
            }
            if !m.is_invertible() {
                return Err(Error::Singular(format!("{name} is singular")));
            }
        }
        Ok(Self { r, s })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self {
            r: Matrix::identity(m),
            s: Matrix::identity(n),
        }
    }

    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    /// Applying `self` and then `next` equals applying the composite.
    pub fn then(&self, next: &EquivalenceWitness) -> EquivalenceWitness {
        EquivalenceWitness {
            r: &next.r * &self.r,
            s: &self.s * &next.s,
        }
    }

    pub fn inverse(&self) -> EquivalenceWitness {
        EquivalenceWitness {
            r: self.r.inverse().expect("witness matrices are invertible"),
            s: self.s.inverse().expect("witness matrices are invertible"),
        }
    }
}

fn check_size(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "block size must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `△ʳ = (F_r, K_r)`, of size `r × (r-1)`.
pub fn block_delta(r: usize) -> Result<Pencil> {
    check_size(r)?;
    let mut a = Matrix::zeros(r, r - 1);
    let mut b = Matrix::zeros(r, r - 1);
    for i in 0..r - 1 {
        a[(i, i)] = Q::one();
        b[(i + 1, i)] = Q::one();
    }
    Ok(Pencil { a, b })
}

/// `▽ʳ = (F_rᵀ, K_rᵀ)`, of size `(r-1) × r`.
pub fn block_nabla(r: usize) -> Result<Pencil> {
    Ok(block_delta(r)?.transpose())
}

/// `(I_r, J_r(λ))` with the units above the diagonal.
pub fn block_finite(r: usize, lambda: &Q) -> Result<Pencil> {
    check_size(r)?;
    Ok(Pencil {
        a: Matrix::identity(r),
        b: jordan(r, lambda),
    })
}

/// `(J_r(0), I_r)`.
pub fn block_infinite(r: usize) -> Result<Pencil> {
    check_size(r)?;
    Ok(Pencil {
        a: jordan(r, &Q::zero()),
        b: Matrix::identity(r),
    })
}

pub(crate) fn jordan(r: usize, lambda: &Q) -> Matrix {
    let mut j = Matrix::zeros(r, r);
    for i in 0..r {
        j[(i, i)] = lambda.clone();
        if i + 1 < r {
            j[(i, i + 1)] = Q::one();
        }
    }
    j
}

/// Block-diagonal concatenation.
pub fn direct_sum(parts: &[Pencil]) -> Pencil {
    let m = parts.iter().map(Pencil::m).sum();
    let n = parts.iter().map(Pencil::n).sum();
    let mut out = Pencil::zero(m, n);
    let (mut r, mut c) = (0, 0);
    for p in parts {
        out.a.set_block(r, c, &p.a);
        out.b.set_block(r, c, &p.b);
        r += p.m();
        c += p.n();
    }
    out
}

/// Random invertible `R` and `S` built from elementary operations with small
/// Gaussian-integer multipliers.
pub fn random_equivalence(m: usize, n: usize, seed: u64) -> EquivalenceWitness {
    let mut rng = seeded(seed);
    let r = random_unimodular(m, &mut rng);
    let s = random_unimodular(n, &mut rng);
    EquivalenceWitness { r, s }
}

fn random_unimodular(n: usize, rng: &mut SeededRng) -> Matrix {
    let mut m = Matrix::identity(n);
    if n == 0 {
        return m;
    }
    let units = [Q::one(), -Q::one(), Q::i(), -Q::i()];
    // A random permutation and unit diagonal, then a few row additions.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        m.swap_rows(i, j);
    }
    for i in 0..n {
        let u = &units[rng.random_range(0..units.len())];
        for j in 0..n {
            let v = &m[(i, j)] * u;
            m[(i, j)] = v;
        }
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = Q::from_ints(rng.random_range(-2..=2), rng.random_range(-1..=1));
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                let t = &m[(j, k)] * &c;
                m[(i, k)] += &t;
            }
        }
    }
    m
}

/// Adds to every entry a Gaussian rational whose real and imaginary parts
/// have magnitude at most `eps`, retrying until the result lies in the open
/// generic stratum.
pub fn jiggle(p: &Pencil, eps: &BigRational, seed: u64) -> Result<Pencil> {
    if eps <= &BigRational::zero() {
        return Err(Error::InvalidArgument("jiggle needs eps > 0".into()));
    }
    const ATTEMPTS: usize = 32;
    const STEPS: i64 = 1000;
    let mut rng = seeded(seed);
    let step = eps / BigRational::from_integer(BigInt::from(STEPS));
    let draw = |rng: &mut SeededRng| {
        let re = &step * BigRational::from_integer(rng.random_range(-STEPS..=STEPS).into());
        let im = &step * BigRational::from_integer(rng.random_range(-STEPS..=STEPS).into());
        Q::new(re, im)
    };
    for _ in 0..ATTEMPTS {
        let da = Matrix::from_fn(p.m(), p.n(), |_, _| draw(&mut rng));
        let db = Matrix::from_fn(p.m(), p.n(), |_, _| draw(&mut rng));
        let q = Pencil {
            a: &p.a + &da,
            b: &p.b + &db,
        };
        let t = crate::kronecker::kronecker_type(&q);
        if crate::strata::is_e1(&t) {
            return Ok(q);
        }
    }
    Err(Error::RetryExhausted(format!(
        "jiggle found no generic perturbation in {ATTEMPTS} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks() {
        let d1 = block_delta(1).unwrap();
        assert_eq!((d1.m(), d1.n()), (1, 0));
        assert_eq!(
            block_delta(3).unwrap(),
            Pencil::from_ints(&[&[1, 0], &[0, 1], &[0, 0]], &[&[0, 0], &[1, 0], &[0, 1]])
        );
        assert_eq!(
            block_nabla(2).unwrap(),
            Pencil::from_ints(&[&[1, 0]], &[&[0, 1]])
        );
        assert_eq!(
            block_finite(2, &Q::from_int(5)).unwrap(),
            Pencil::from_ints(&[&[1, 0], &[0, 1]], &[&[5, 1], &[0, 5]])
        );
        assert_eq!(
            block_infinite(1).unwrap(),
            Pencil::from_ints(&[&[0]], &[&[1]])
        );
        assert!(block_delta(0).is_err());
    }

    #[test]
    fn sums_and_equivalence() {
        let s = direct_sum(&[block_delta(1).unwrap(), block_nabla(1).unwrap()]);
        assert_eq!(s, Pencil::zero(1, 1));
        assert_eq!(direct_sum(&[]), Pencil::zero(0, 0));
        let p = direct_sum(&[
            block_finite(1, &Q::from_int(5)).unwrap(),
            block_finite(1, &Q::from_int(6)).unwrap(),
        ]);
        assert_eq!(
            p,
            Pencil::from_ints(&[&[1, 0], &[0, 1]], &[&[5, 0], &[0, 6]])
        );

        let w = random_equivalence(2, 2, 9);
        assert_eq!(w, random_equivalence(2, 2, 9));
        assert!(w.r().is_invertible() && w.s().is_invertible());
        let w0 = random_equivalence(0, 3, 1);
        assert_eq!(w0.r().shape(), (0, 0));
        assert!(w0.s().is_invertible());

        let bad = EquivalenceWitness::new(Matrix::zeros(2, 2), Matrix::identity(2));
        assert!(matches!(bad, Err(Error::Singular(_))));
        let id = EquivalenceWitness::identity(2, 2);
        assert_eq!(p.apply_equivalence(&id).unwrap(), p);
    }
}
