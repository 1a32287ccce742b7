//! Miniversal deformation templates, tangent spaces and rank criteria.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kronecker::{kronecker_form, EigenvalueClass, KroneckerForm};
use crate::matrix::Matrix;
use crate::pencil::Pencil;
use crate::scalar::Q;

/// Shape of the block a parameter belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SlotKind {
    H,
    Z,
    Up,
    Down,
    Left,
    Right,
}

impl SlotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SlotKind::H => "H",
            SlotKind::Z => "Z",
            SlotKind::Up => "up",
            SlotKind::Down => "down",
            SlotKind::Left => "left",
            SlotKind::Right => "right",
        }
    }
}

impl fmt::Display for SlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => SlotKind::H,
            "Z" => SlotKind::Z,
            "up" => SlotKind::Up,
            "down" => SlotKind::Down,
            "left" => SlotKind::Left,
            "right" => SlotKind::Right,
            _ => return Err(Error::Parse(format!("unknown slot kind {s:?}"))),
        })
    }
}

/// An independent parameter: entry `(row, col)` of matrix 1 or 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParameterSlot {
    pub matrix_index: u8,
    pub row: usize,
    pub col: usize,
    pub kind: SlotKind,
    pub removed_in_mprime: bool,
}

impl ParameterSlot {
    /// The unit pencil with a one at this slot.
    pub fn direction(&self, m: usize, n: usize) -> Pencil {
        let mut unit = Matrix::zeros(m, n);
        unit[(self.row, self.col)] = Q::one();
        let zero = Matrix::zeros(m, n);
        if self.matrix_index == 1 {
            Pencil::new(unit, zero).unwrap()
        } else {
            Pencil::new(zero, unit).unwrap()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    M,
    Mprime,
    Mdoubleprime,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Variant::M),
            "Mprime" | "M'" | "mprime" => Ok(Variant::Mprime),
            "Mdoubleprime" | "M''" | "mdoubleprime" => Ok(Variant::Mdoubleprime),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// A finite list of pencils spanning a subspace of the space of pairs.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PairSpaceBasis {
    pub m: usize,
    pub n: usize,
    pub vectors: Vec<Pencil>,
}

impl PairSpaceBasis {
    pub fn new(m: usize, n: usize, vectors: Vec<Pencil>) -> Result<Self> {
        if vectors.iter().any(|v| (v.m(), v.n()) != (m, n)) {
            return Err(Error::Dimension("direction shape differs".into()));
        }
        Ok(Self { m, n, vectors })
    }

    pub fn ambient_dimension(&self) -> usize {
        2 * self.m * self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One row per generator, coordinates `A` then `B` row-major.
    pub fn to_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Q>> = self.vectors.iter().map(Pencil::to_vector).collect();
        Matrix::from_rows(rows.len(), self.ambient_dimension(), rows).unwrap()
    }

    pub fn rank(&self) -> usize {
        if self.vectors.is_empty() {
            0
        } else {
            self.to_matrix().rank()
        }
    }

    pub fn union(&self, other: &PairSpaceBasis) -> Result<PairSpaceBasis> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::Dimension("bases live in different spaces".into()));
        }
        let mut v = self.vectors.clone();
        v.extend(other.vectors.iter().cloned());
        Ok(PairSpaceBasis {
            m: self.m,
            n: self.n,
            vectors: v,
        })
    }
}

/// The block layout of a miniversal family at a canonical pencil.
#[derive(Clone, PartialEq, Debug)]
pub struct MiniversalTemplate {
    pub form: KroneckerForm,
    pub base: Pencil,
    pub slots: Vec<ParameterSlot>,
    pub eigen_shift_directions: Vec<Pencil>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Region {
    Delta(usize),
    Class(usize),
    Nabla(usize),
}

struct Layout {
    /// (region, row offset, row count, col offset, col count)
    regions: Vec<(Region, usize, usize, usize, usize)>,
}

impl Layout {
    fn of(form: &KroneckerForm) -> Self {
        let mut regions = Vec::new();
        let (mut r, mut c) = (0, 0);
        for (i, &p) in form.deltas().iter().enumerate() {
            regions.push((Region::Delta(i), r, p, c, p - 1));
            r += p;
            c += p - 1;
        }
        for (k, b) in form.segre_blocks().iter().enumerate() {
            let d = b.dimension();
            regions.push((Region::Class(k), r, d, c, d));
            r += d;
            c += d;
        }
        for (j, &q) in form.nablas().iter().enumerate() {
            regions.push((Region::Nabla(j), r, q - 1, c, q));
            r += q - 1;
            c += q;
        }
        Self { regions }
    }

    fn get(&self, reg: Region) -> (usize, usize, usize, usize) {
        let e = self.regions.iter().find(|e| e.0 == reg).unwrap();
        (e.1, e.2, e.3, e.4)
    }
}

/// Slots of the miniversal family of a canonical form whose eigenvalue
/// classes are all single eigenvalues.
pub fn miniversal_template(form: &KroneckerForm) -> Result<MiniversalTemplate> {
    if !form.is_split() {
        return Err(Error::Unsupported(
            "templates need every eigenvalue class to be a single eigenvalue".into(),
        ));
    }
    let base = form.canonical_pencil();
    let (m, n) = (base.m(), base.n());
    let lay = Layout::of(form);
    let blocks = form.segre_blocks();
    let l = form.deltas().len();
    let r = form.nablas().len();
    let finite: Vec<usize> = (0..blocks.len())
        .filter(|&k| !blocks[k].eigenvalue.is_infinite())
        .collect();
    let infinite: Option<usize> = (0..blocks.len()).find(|&k| blocks[k].eigenvalue.is_infinite());

    // (matrix, row region, col region, row, col, kind)
    let mut raw: Vec<(u8, Region, Region, usize, usize, SlotKind, bool)> = Vec::new();
    let mut push =
        |mat, rr, cr, row, col, kind, removed| raw.push((mat, rr, cr, row, col, kind, removed));

    // First matrix.
    for i in 0..l {
        let (r0, rn, _, _) = lay.get(Region::Delta(i));
        if let Some(k) = infinite {
            let (_, _, c0, cn) = lay.get(Region::Class(k));
            for c in c0..c0 + cn {
                push(
                    1,
                    Region::Delta(i),
                    Region::Class(k),
                    r0 + rn - 1,
                    c,
                    SlotKind::Down,
                    false,
                );
            }
        }
        for j in 0..r {
            let (_, _, c0, cn) = lay.get(Region::Nabla(j));
            for row in r0..r0 + rn {
                push(
                    1,
                    Region::Delta(i),
                    Region::Nabla(j),
                    row,
                    c0 + cn - 1,
                    SlotKind::Right,
                    false,
                );
            }
        }
    }
    if let Some(k) = infinite {
        let (r0, rn, c0, _) = lay.get(Region::Class(k));
        for j in 0..r {
            let (_, _, nc0, ncn) = lay.get(Region::Nabla(j));
            for row in r0..r0 + rn {
                push(
                    1,
                    Region::Class(k),
                    Region::Nabla(j),
                    row,
                    nc0 + ncn - 1,
                    SlotKind::Right,
                    false,
                );
            }
        }
        for (row, col, first) in h_entries(&blocks[k].sizes, r0, c0) {
            push(
                1,
                Region::Class(k),
                Region::Class(k),
                row,
                col,
                SlotKind::H,
                first,
            );
        }
    }

    // Second matrix.
    for i in 0..l {
        let (r0, _, _, _) = lay.get(Region::Delta(i));
        let pi = form.deltas()[i];
        for j in i + 1..l {
            let pj = form.deltas()[j];
            let (_, _, c0, _) = lay.get(Region::Delta(j));
            for c in 0..(pj - 1).saturating_sub(pi) {
                push(
                    2,
                    Region::Delta(i),
                    Region::Delta(j),
                    r0,
                    c0 + c,
                    SlotKind::Z,
                    false,
                );
            }
        }
        for &k in &finite {
            let (_, _, c0, cn) = lay.get(Region::Class(k));
            for c in c0..c0 + cn {
                push(
                    2,
                    Region::Delta(i),
                    Region::Class(k),
                    r0,
                    c,
                    SlotKind::Up,
                    false,
                );
            }
        }
        for j in 0..r {
            let (_, _, c0, cn) = lay.get(Region::Nabla(j));
            for c in c0..c0 + cn {
                push(
                    2,
                    Region::Delta(i),
                    Region::Nabla(j),
                    r0,
                    c,
                    SlotKind::Up,
                    false,
                );
            }
        }
    }
    for &k in &finite {
        let (r0, rn, c0, _) = lay.get(Region::Class(k));
        for (row, col, first) in h_entries(&blocks[k].sizes, r0, c0) {
            push(
                2,
                Region::Class(k),
                Region::Class(k),
                row,
                col,
                SlotKind::H,
                first,
            );
        }
        for j in 0..r {
            let (_, _, nc0, _) = lay.get(Region::Nabla(j));
            for row in r0..r0 + rn {
                push(
                    2,
                    Region::Class(k),
                    Region::Nabla(j),
                    row,
                    nc0,
                    SlotKind::Left,
                    false,
                );
            }
        }
    }
    for i in 0..r {
        let qi = form.nablas()[i];
        let (r0, _, _, _) = lay.get(Region::Nabla(i));
        for j in i + 1..r {
            let qj = form.nablas()[j];
            let (_, _, c0, _) = lay.get(Region::Nabla(j));
            for row in 0..(qi - 1).saturating_sub(qj) {
                push(
                    2,
                    Region::Nabla(i),
                    Region::Nabla(j),
                    r0 + row,
                    c0,
                    SlotKind::Z,
                    false,
                );
            }
        }
    }

    raw.sort_by_key(|x| (x.0, x.1, x.2, x.3, x.4));
    let slots = raw
        .into_iter()
        .map(|(mat, _, _, row, col, kind, removed)| ParameterSlot {
            matrix_index: mat,
            row,
            col,
            kind,
            removed_in_mprime: removed,
        })
        .collect();

    let eigen_shift_directions = (0..blocks.len())
        .map(|k| {
            let (r0, rn, c0, _) = lay.get(Region::Class(k));
            let mut e = Matrix::zeros(m, n);
            e.set_block(r0, c0, &Matrix::identity(rn));
            let z = Matrix::zeros(m, n);
            if blocks[k].eigenvalue.is_infinite() {
                Pencil::new(e, z).unwrap()
            } else {
                Pencil::new(z, e).unwrap()
            }
        })
        .collect();

    Ok(MiniversalTemplate {
        form: form.clone(),
        base,
        slots,
        eigen_shift_directions,
    })
}

/// Entries of the ℋ block of one class with Segre sizes `sizes`, placed at
/// `(r0, c0)`; block `(j, k)` carries its first column when `s_j ≤ s_k` and
/// its last row otherwise. The flag marks the upper-left entry.
fn h_entries(sizes: &[usize], r0: usize, c0: usize) -> Vec<(usize, usize, bool)> {
    let mut offs = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        offs.push(acc);
        acc += s;
    }
    let mut out = Vec::new();
    for (j, &sj) in sizes.iter().enumerate() {
        for (k, &sk) in sizes.iter().enumerate() {
            let (br, bc) = (r0 + offs[j], c0 + offs[k]);
            if sj <= sk {
                for t in 0..sj {
                    out.push((br + t, bc, false));
                }
            } else {
                for t in 0..sk {
                    out.push((br + sj - 1, bc + t, false));
                }
            }
        }
    }
    if let Some(e) = out.iter_mut().find(|e| e.0 == r0 && e.1 == c0) {
        e.2 = true;
    }
    out
}

impl MiniversalTemplate {
    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn live_slots(&self, variant: Variant) -> Vec<&ParameterSlot> {
        self.slots
            .iter()
            .filter(|s| variant == Variant::M || !s.removed_in_mprime)
            .collect()
    }

    /// Number of values [`instantiate`] expects for `variant`.
    pub fn parameter_count(&self, variant: Variant) -> usize {
        let base = self.live_slots(variant).len();
        match variant {
            Variant::Mdoubleprime => base + self.eigen_shift_directions.len(),
            _ => base,
        }
    }

    /// Directions of the family's parameters at the base point.
    pub fn directions(&self, variant: Variant) -> PairSpaceBasis {
        let (m, n) = (self.m(), self.n());
        let mut v: Vec<Pencil> = self
            .live_slots(variant)
            .iter()
            .map(|s| s.direction(m, n))
            .collect();
        if variant == Variant::Mdoubleprime {
            v.extend(self.eigen_shift_directions.iter().cloned());
        }
        PairSpaceBasis { m, n, vectors: v }
    }

    /// The same template with slot `k` dropped.
    pub fn without_slot(&self, k: usize) -> MiniversalTemplate {
        let mut t = self.clone();
        t.slots.remove(k);
        t
    }
}

/// Writes `values` into the live slots of `variant` (in slot order) and, for
/// `M″`, adds `γ_k` times the shift direction of class `k` (values after the slots).
pub fn instantiate(t: &MiniversalTemplate, variant: Variant, values: &[Q]) -> Result<Pencil> {
    let expected = t.parameter_count(variant);
    if values.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "expected {expected} values, got {}",
            values.len()
        )));
    }
    let (mut a, mut b) = t.base.clone().into_parts();
    let live = t.live_slots(variant);
    for (s, v) in live.iter().zip(values) {
        let target = if s.matrix_index == 1 { &mut a } else { &mut b };
        target[(s.row, s.col)] += v;
    }
    let mut p = Pencil::new(a, b)?;
    if variant == Variant::Mdoubleprime {
        for (dir, g) in t.eigen_shift_directions.iter().zip(&values[live.len()..]) {
            if !g.is_zero() {
                p = p.add(&dir.scale(g))?;
            }
        }
    }
    Ok(p)
}

/// Generators `(E·A, E·B)` and `(-A·E, -B·E)` over all matrix units `E`.
pub fn tangent_space(p: &Pencil) -> PairSpaceBasis {
    let (m, n) = (p.m(), p.n());
    let (a, b) = (p.a(), p.b());
    let mut v = Vec::with_capacity(m * m + n * n);
    for i in 0..m {
        for j in 0..m {
            // E_ij · X moves row j of X into row i.
            let f = |x: &Matrix| {
                Matrix::from_fn(
                    m,
                    n,
                    |r, c| if r == i { x[(j, c)].clone() } else { Q::zero() },
                )
            };
            v.push(Pencil::new(f(a), f(b)).unwrap());
        }
    }
    for i in 0..n {
        for j in 0..n {
            // X · E_ij moves column i of X into column j.
            let f = |x: &Matrix| {
                Matrix::from_fn(m, n, |r, c| if c == j { -&x[(r, i)] } else { Q::zero() })
            };
            v.push(Pencil::new(f(a), f(b)).unwrap());
        }
    }
    PairSpaceBasis { m, n, vectors: v }
}

/// Rank criterion: the directions and the orbit tangent together span the
/// whole space, and the sum is direct.
pub fn check_directions_miniversal(base: &Pencil, directions: &PairSpaceBasis) -> bool {
    let full = 2 * base.m() * base.n();
    let tan = tangent_space(base);
    let p_rank = directions.rank();
    let t_rank = tan.rank();
    let Ok(all) = directions.union(&tan) else {
        return false;
    };
    p_rank == directions.len() && p_rank + t_rank == full && all.rank() == full
}

/// Checks the template's `M` or `M″` family at its base point.
pub fn check_miniversal(t: &MiniversalTemplate, variant: Variant) -> Result<bool> {
    if variant == Variant::Mprime {
        return Err(Error::InvalidArgument(
            "M′ is transversal to the stratum, not to the orbit; use check_transversal".into(),
        ));
    }
    Ok(check_directions_miniversal(&t.base, &t.directions(variant)))
}

/// Orbit tangent plus eigenvalue shifts at the base point.
pub fn stratum_tangent(t: &MiniversalTemplate) -> PairSpaceBasis {
    let mut q = tangent_space(&t.base);
    q.vectors.extend(t.eigen_shift_directions.iter().cloned());
    q
}

/// Stratum tangent at an arbitrary pencil: the orbit tangent plus, for every
/// eigenvalue class, directions moving its eigenvalues. They are built in
/// canonical coordinates and carried back through the witness.
pub fn stratum_tangent_at(p: &Pencil) -> Result<PairSpaceBasis> {
    let (form, w) = kronecker_form(p)?;
    let (m, n) = (p.m(), p.n());
    let r_inv = w.r().inverse()?;
    let s_inv = w.s().inverse()?;
    let (r0, c0, offs) = form.regular_offsets();
    let mut q = tangent_space(p);
    for (blk, off) in form.segre_blocks().iter().zip(offs) {
        let d = blk.eigenvalue.conjugate_count();
        let mut dirs: Vec<Matrix> = Vec::new();
        match &blk.eigenvalue {
            EigenvalueClass::Infinite => {
                let mut e = Matrix::zeros(m, n);
                e.set_block(r0 + off, c0 + off, &Matrix::identity(blk.dimension()));
                dirs.push(e);
            }
            EigenvalueClass::Finite(_) => {
                for j in 0..d {
                    let mut e = Matrix::zeros(m, n);
                    let mut k = 0;
                    for &s in &blk.sizes {
                        for t in 0..s {
                            let base = off + (k + t) * d;
                            e[(r0 + base + d - 1, c0 + base + j)] = Q::one();
                        }
                        k += s;
                    }
                    dirs.push(e);
                }
            }
        }
        for e in dirs {
            let back = &(&r_inv * &e) * &s_inv;
            let z = Matrix::zeros(m, n);
            q.vectors.push(if blk.eigenvalue.is_infinite() {
                Pencil::new(back, z)?
            } else {
                Pencil::new(z, back)?
            });
        }
    }
    Ok(q)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TransversalityReport {
    pub transversal: bool,
    /// The ranks of the directions and of the stratum tangent add up to the
    /// full dimension.
    pub direct: bool,
}

/// Whether `directions` together with the stratum tangent at `at` span the space.
pub fn check_transversal(directions: &PairSpaceBasis, at: &Pencil) -> Result<TransversalityReport> {
    if (directions.m, directions.n) != (at.m(), at.n()) {
        return Err(Error::Dimension(
            "directions and pencil differ in shape".into(),
        ));
    }
    let q = stratum_tangent_at(at)?;
    let full = 2 * at.m() * at.n();
    let total = directions.union(&q)?.rank();
    Ok(TransversalityReport {
        transversal: total == full,
        direct: total == full && directions.rank() + q.rank() == full,
    })
}

/// `(orbit codimension, stratum codimension)` from the template.
pub fn codimension(form: &KroneckerForm) -> Result<(usize, usize)> {
    let t = miniversal_template(form)?;
    let total = t.slots.len();
    Ok((total, total - form.segre_blocks().len()))
}

/// Orbit codimension `2mn - rank` of the tangent space, computed directly.
pub fn orbit_codimension(p: &Pencil) -> usize {
    2 * p.m() * p.n() - tangent_space(p).rank()
}
