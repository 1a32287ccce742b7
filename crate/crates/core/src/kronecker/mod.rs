//! Kronecker canonical form, Kronecker type and witness transformations.

mod compute;
mod witness;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::{
    block_delta, block_infinite, block_nabla, direct_sum, EquivalenceWitness, Pencil,
};
use crate::poly::UniPoly;
use crate::scalar::Q;

pub use compute::{minimal_indices, normal_rank, toeplitz};
pub use witness::find_witness;

/// An eigenvalue, or a bundle of `d` conjugate eigenvalues sharing an
/// irreducible minimal polynomial of degree `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum EigenvalueClass {
    Finite(UniPoly),
    Infinite,
}

impl EigenvalueClass {
    pub fn finite(lambda: &Q) -> Self {
        Self::Finite(UniPoly::linear(lambda))
    }

    pub fn conjugate_count(&self) -> usize {
        match self {
            Self::Finite(p) => p.degree().unwrap_or(0),
            Self::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }

    /// The eigenvalue itself for a degree-1 finite class.
    pub fn value(&self) -> Option<Q> {
        match self {
            Self::Finite(p) if p.degree() == Some(1) => Some(-&p.coeff(0)),
            _ => None,
        }
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.canonical_cmp(b),
            (Self::Finite(_), Self::Infinite) => Ordering::Less,
            (Self::Infinite, Self::Finite(_)) => Ordering::Greater,
            (Self::Infinite, Self::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for EigenvalueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinite => write!(f, "inf"),
            Self::Finite(p) => match self.value() {
                Some(v) => write!(f, "{v}"),
                None => write!(f, "root of {p}"),
            },
        }
    }
}

/// One eigenvalue class with its Segre characteristic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SegreBlock {
    pub eigenvalue: EigenvalueClass,
    pub sizes: Vec<usize>,
}

impl SegreBlock {
    pub fn new(eigenvalue: EigenvalueClass, mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Self { eigenvalue, sizes }
    }

    /// Rows (equal to columns) occupied in the canonical pencil.
    pub fn dimension(&self) -> usize {
        self.sizes.iter().sum::<usize>() * self.eigenvalue.conjugate_count()
    }
}

/// The Kronecker type: block sizes with eigenvalue identities erased.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct KroneckerType {
    deltas: Vec<usize>,
    nablas: Vec<usize>,
    eigen_segre: Vec<Vec<usize>>,
}

impl KroneckerType {
    /// Canonicalizes the multisets; zero sizes are rejected.
    pub fn new(
        mut deltas: Vec<usize>,
        mut nablas: Vec<usize>,
        eigen_segre: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if deltas.contains(&0) || nablas.contains(&0) {
            return Err(Error::InvalidArgument(
                "block sizes must be positive".into(),
            ));
        }
        let mut segre = Vec::with_capacity(eigen_segre.len());
        for mut s in eigen_segre {
            if s.is_empty() || s.contains(&0) {
                return Err(Error::InvalidArgument(
                    "Segre characteristics must be nonempty with positive sizes".into(),
                ));
            }
            s.sort_unstable_by(|a, b| b.cmp(a));
            segre.push(s);
        }
        deltas.sort_unstable();
        nablas.sort_unstable_by(|a, b| b.cmp(a));
        segre.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            deltas,
            nablas,
            eigen_segre: segre,
        })
    }

    pub fn deltas(&self) -> &[usize] {
        &self.deltas
    }

    pub fn nablas(&self) -> &[usize] {
        &self.nablas
    }

    pub fn eigen_segre(&self) -> &[Vec<usize>] {
        &self.eigen_segre
    }

    pub fn regular_size(&self) -> usize {
        self.eigen_segre.iter().flatten().sum()
    }

    pub fn rows(&self) -> usize {
        self.deltas.iter().sum::<usize>()
            + self.nablas.iter().map(|q| q - 1).sum::<usize>()
            + self.regular_size()
    }

    pub fn cols(&self) -> usize {
        self.deltas.iter().map(|p| p - 1).sum::<usize>()
            + self.nablas.iter().sum::<usize>()
            + self.regular_size()
    }

    /// Multiset union.
    pub fn union(&self, other: &KroneckerType) -> KroneckerType {
        let cat = |a: &[usize], b: &[usize]| [a, b].concat();
        KroneckerType::new(
            cat(&self.deltas, &other.deltas),
            cat(&self.nablas, &other.nablas),
            [self.eigen_segre.clone(), other.eigen_segre.clone()].concat(),
        )
        .expect("union of valid types")
    }

    /// The type with every △ and ▽ interchanged.
    pub fn flipped(&self) -> KroneckerType {
        KroneckerType::new(
            self.nablas.clone(),
            self.deltas.clone(),
            self.eigen_segre.clone(),
        )
        .expect("flip of a valid type")
    }

    /// A canonical form of this type using the finite eigenvalues 1, 2, 3, ...
    pub fn representative(&self) -> KroneckerForm {
        self.representative_with(|k| Q::from_int(k as i64 + 1))
    }

    pub fn representative_with(&self, value: impl Fn(usize) -> Q) -> KroneckerForm {
        let blocks = self
            .eigen_segre
            .iter()
            .enumerate()
            .map(|(k, s)| SegreBlock::new(EigenvalueClass::finite(&value(k)), s.clone()))
            .collect();
        KroneckerForm::new(self.deltas.clone(), self.nablas.clone(), blocks)
            .expect("distinct placeholder eigenvalues")
    }
}

/// Renders the type as in `u1 u3 d2 e{2.1} e{1}`; the 0×0 pencil is `empty`.
pub fn format_type(t: &KroneckerType) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.extend(t.deltas.iter().map(|r| format!("u{r}")));
    parts.extend(t.nablas.iter().map(|r| format!("d{r}")));
    parts.extend(t.eigen_segre.iter().map(|s| {
        let inner: Vec<String> = s.iter().map(|k| k.to_string()).collect();
        format!("e{{{}}}", inner.join("."))
    }));
    if parts.is_empty() {
        "empty".into()
    } else {
        parts.join(" ")
    }
}

/// Parses any ordering of the tokens produced by [`format_type`].
pub fn parse_type(s: &str) -> Result<KroneckerType> {
    let s = s.trim();
    let (mut deltas, mut nablas, mut segre) = (Vec::new(), Vec::new(), Vec::new());
    if s != "empty" {
        let bad = |tok: &str| Error::Parse(format!("bad type token {tok:?}"));
        for tok in s.split_whitespace() {
            let size = |rest: &str| rest.parse::<usize>().ok().filter(|&v| v > 0);
            if let Some(rest) = tok.strip_prefix('u') {
                deltas.push(size(rest).ok_or_else(|| bad(tok))?);
            } else if let Some(rest) = tok.strip_prefix('d') {
                nablas.push(size(rest).ok_or_else(|| bad(tok))?);
            } else if let Some(inner) = tok.strip_prefix("e{").and_then(|r| r.strip_suffix('}')) {
                let sizes = inner
                    .split('.')
                    .map(|x| size(x).ok_or_else(|| bad(tok)))
                    .collect::<Result<Vec<_>>>()?;
                segre.push(sizes);
            } else {
                return Err(bad(tok));
            }
        }
        if deltas.is_empty() && nablas.is_empty() && segre.is_empty() {
            return Err(Error::Parse("empty type string".into()));
        }
    }
    KroneckerType::new(deltas, nablas, segre)
}

impl fmt::Display for KroneckerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_type(self))
    }
}

impl FromStr for KroneckerType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_type(s)
    }
}

/// Kronecker canonical form with eigenvalue identities retained.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KroneckerForm {
    deltas: Vec<usize>,
    nablas: Vec<usize>,
    segre_blocks: Vec<SegreBlock>,
}

impl KroneckerForm {
    /// Canonicalizes block order; eigenvalue classes must be pairwise distinct
    /// and finite classes must have monic minimal polynomials.
    pub fn new(
        mut deltas: Vec<usize>,
        mut nablas: Vec<usize>,
        mut segre_blocks: Vec<SegreBlock>,
    ) -> Result<Self> {
        if deltas.contains(&0) || nablas.contains(&0) {
            return Err(Error::InvalidArgument(
                "block sizes must be positive".into(),
            ));
        }
        for b in &segre_blocks {
            if b.sizes.is_empty() || b.sizes.contains(&0) {
                return Err(Error::InvalidArgument("empty Segre characteristic".into()));
            }
            if let EigenvalueClass::Finite(p) = &b.eigenvalue {
                if !p.is_monic() || p.degree() == Some(0) {
                    return Err(Error::InvalidArgument(format!(
                        "minimal polynomial {p} must be monic of positive degree"
                    )));
                }
            }
        }
        for b in &mut segre_blocks {
            b.sizes.sort_unstable_by(|x, y| y.cmp(x));
        }
        segre_blocks.sort_by(|x, y| x.eigenvalue.canonical_cmp(&y.eigenvalue));
        if segre_blocks
            .windows(2)
            .any(|w| w[0].eigenvalue == w[1].eigenvalue)
        {
            return Err(Error::InvalidArgument("repeated eigenvalue class".into()));
        }
        deltas.sort_unstable();
        nablas.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            deltas,
            nablas,
            segre_blocks,
        })
    }

    pub fn deltas(&self) -> &[usize] {
        &self.deltas
    }

    pub fn nablas(&self) -> &[usize] {
        &self.nablas
    }

    pub fn segre_blocks(&self) -> &[SegreBlock] {
        &self.segre_blocks
    }

    pub fn rows(&self) -> usize {
        self.deltas.iter().sum::<usize>()
            + self.nablas.iter().map(|q| q - 1).sum::<usize>()
            + self
                .segre_blocks
                .iter()
                .map(SegreBlock::dimension)
                .sum::<usize>()
    }

    pub fn cols(&self) -> usize {
        self.deltas.iter().map(|p| p - 1).sum::<usize>()
            + self.nablas.iter().sum::<usize>()
            + self
                .segre_blocks
                .iter()
                .map(SegreBlock::dimension)
                .sum::<usize>()
    }

    /// True when no class bundles several conjugate eigenvalues.
    pub fn is_split(&self) -> bool {
        self.segre_blocks
            .iter()
            .all(|b| b.eigenvalue.conjugate_count() == 1)
    }

    pub fn kronecker_type(&self) -> KroneckerType {
        let mut segre = Vec::new();
        for b in &self.segre_blocks {
            for _ in 0..b.eigenvalue.conjugate_count() {
                segre.push(b.sizes.clone());
            }
        }
        KroneckerType::new(self.deltas.clone(), self.nablas.clone(), segre)
            .expect("form holds a valid type")
    }

    /// The assembled canonical pencil: deltas ascending, finite classes,
    /// the infinite class, then nablas descending.
    pub fn canonical_pencil(&self) -> Pencil {
        let mut parts = Vec::new();
        for &p in &self.deltas {
            parts.push(block_delta(p).unwrap());
        }
        for b in &self.segre_blocks {
            for &s in &b.sizes {
                parts.push(match &b.eigenvalue {
                    EigenvalueClass::Infinite => block_infinite(s).unwrap(),
                    EigenvalueClass::Finite(p) => companion_jordan(p, s),
                });
            }
        }
        for &q in &self.nablas {
            parts.push(block_nabla(q).unwrap());
        }
        direct_sum(&parts)
    }

    /// Row/column offset of each segre block's square region in the canonical pencil.
    pub fn regular_offsets(&self) -> (usize, usize, Vec<usize>) {
        let r0: usize = self.deltas.iter().sum();
        let c0: usize = self.deltas.iter().map(|p| p - 1).sum();
        let mut offs = Vec::new();
        let mut k = 0;
        for b in &self.segre_blocks {
            offs.push(k);
            k += b.dimension();
        }
        (r0, c0, offs)
    }
}

/// `(I, J_s(C))` where `C` is the companion matrix of `p` (ones on the
/// superdiagonal, negated coefficients in the last row) and the superdiagonal
/// blocks are identities.
pub fn companion_jordan(p: &UniPoly, s: usize) -> Pencil {
    let d = p.degree().expect("nonzero polynomial");
    let mut c = Matrix::zeros(d, d);
    for i in 0..d.saturating_sub(1) {
        c[(i, i + 1)] = Q::one();
    }
    for j in 0..d {
        c[(d - 1, j)] = -&p.coeff(j);
    }
    let mut b = Matrix::zeros(d * s, d * s);
    for k in 0..s {
        b.set_block(k * d, k * d, &c);
        if k + 1 < s {
            b.set_block(k * d, (k + 1) * d, &Matrix::identity(d));
        }
    }
    Pencil::new(Matrix::identity(d * s), b).unwrap()
}

/// The Kronecker canonical form and a witness `(R, S)` with
/// `R·A·S`, `R·B·S` equal to the canonical pencil exactly.
pub fn kronecker_form(p: &Pencil) -> Result<(KroneckerForm, EquivalenceWitness)> {
    let form = compute::structure(p);
    let w = find_witness(p, &form.canonical_pencil(), 0)?;
    Ok((form, w))
}

/// The canonical form without computing a witness.
pub fn kronecker_structure(p: &Pencil) -> KroneckerForm {
    compute::structure(p)
}

pub fn kronecker_type(p: &Pencil) -> KroneckerType {
    compute::structure(p).kronecker_type()
}
