//! Polynomial pencil families in at most two parameters `b`, `g` and their
//! bifurcation diagrams.

mod loci;
mod paper;

use std::fmt;

use num_traits::Zero;

use crate::deformation::{MiniversalTemplate, Variant};
use crate::error::{Error, Result};
use crate::kronecker::{kronecker_type, KroneckerType};
use crate::matrix::Matrix;
use crate::pencil::Pencil;
use crate::poly::BiPoly;
use crate::rng::{small_rational, substream};
use crate::scalar::Q;
use crate::strata::{stratum_codimension, DiagramPattern, LocusShape};

pub use paper::{
    expected_diagram, paper_cases, verify_against_paper, CaseReport, ExpectedDiagram, PaperCase,
    CASE_IDS,
};

/// An `m × n` pair of matrices with entries polynomial in `b` and `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PencilFamily {
    m: usize,
    n: usize,
    a: Vec<BiPoly>,
    b: Vec<BiPoly>,
    param_count: usize,
}

impl PencilFamily {
    /// Row-major entries. `param_count` must be at least the number of
    /// variables the entries mention (`b` counts as the first, `g` as the second).
    pub fn new(
        m: usize,
        n: usize,
        a: Vec<BiPoly>,
        b: Vec<BiPoly>,
        param_count: usize,
    ) -> Result<Self> {
        if a.len() != m * n || b.len() != m * n {
            return Err(Error::Dimension(format!(
                "family entries do not fill {m}x{n}"
            )));
        }
        if param_count > 2 {
            return Err(Error::Unsupported("at most two parameters".into()));
        }
        let all = a.iter().chain(&b);
        let uses_g = all.clone().any(BiPoly::mentions_g);
        let uses_b = all.clone().any(BiPoly::mentions_b);
        if (uses_g && param_count < 2) || (uses_b && param_count < 1) {
            return Err(Error::InvalidArgument(
                "entries mention more parameters than declared".into(),
            ));
        }
        Ok(Self {
            m,
            n,
            a,
            b,
            param_count,
        })
    }

    /// The constant family.
    pub fn constant(p: &Pencil) -> Self {
        let lift = |x: &Matrix| x.entries().iter().cloned().map(BiPoly::constant).collect();
        Self {
            m: p.m(),
            n: p.n(),
            a: lift(p.a()),
            b: lift(p.b()),
            param_count: 0,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    pub fn entry(&self, mat: u8, i: usize, j: usize) -> &BiPoly {
        let v = if mat == 1 { &self.a } else { &self.b };
        &v[i * self.n + j]
    }

    /// Adds `p` to entry `(i, j)` of matrix `mat` (1 or 2).
    pub fn add_to_entry(&mut self, mat: u8, i: usize, j: usize, p: &BiPoly) {
        let n = self.n;
        let v = if mat == 1 { &mut self.a } else { &mut self.b };
        v[i * n + j] = &v[i * n + j] + p;
        if p.mentions_g() {
            self.param_count = 2;
        } else if p.mentions_b() {
            self.param_count = self.param_count.max(1);
        }
    }

    /// `param_count` is raised to `k` (never lowered below what entries use).
    pub fn with_param_count(mut self, k: usize) -> Result<Self> {
        let uses = if self.a.iter().chain(&self.b).any(BiPoly::mentions_g) {
            2
        } else if self.a.iter().chain(&self.b).any(BiPoly::mentions_b) {
            1
        } else {
            0
        };
        if k < uses || k > 2 {
            return Err(Error::InvalidArgument(format!("cannot use {k} parameters")));
        }
        self.param_count = k;
        Ok(self)
    }

    pub fn matrices(&self) -> (&[BiPoly], &[BiPoly]) {
        (&self.a, &self.b)
    }

    /// Highest total degree of an entry.
    pub fn degree(&self) -> u32 {
        self.a
            .iter()
            .chain(&self.b)
            .filter_map(BiPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Value at a point with `param_count` coordinates.
    pub fn evaluate(&self, at: &[Q]) -> Result<Pencil> {
        if at.len() != self.param_count {
            return Err(Error::InvalidArgument(format!(
                "family has {} parameters, point has {}",
                self.param_count,
                at.len()
            )));
        }
        let zero = Q::zero();
        let b0 = at.first().unwrap_or(&zero);
        let g0 = at.get(1).unwrap_or(&zero);
        Ok(self.eval2(b0, g0))
    }

    pub(crate) fn eval2(&self, b0: &Q, g0: &Q) -> Pencil {
        let ev =
            |v: &[BiPoly]| Matrix::from_fn(self.m, self.n, |i, j| v[i * self.n + j].eval(b0, g0));
        Pencil::new(ev(&self.a), ev(&self.b)).unwrap()
    }

    pub fn origin(&self) -> Pencil {
        self.eval2(&Q::zero(), &Q::zero())
    }

    pub fn transpose(&self) -> PencilFamily {
        let tr = |v: &[BiPoly]| {
            let mut out = Vec::with_capacity(v.len());
            for j in 0..self.n {
                for i in 0..self.m {
                    out.push(v[i * self.n + j].clone());
                }
            }
            out
        };
        PencilFamily {
            m: self.n,
            n: self.m,
            a: tr(&self.a),
            b: tr(&self.b),
            param_count: self.param_count,
        }
    }

    /// Both matrices multiplied by `c`.
    pub fn scale(&self, c: &Q) -> PencilFamily {
        let sc = |v: &[BiPoly]| v.iter().map(|p| p.scale(c)).collect();
        PencilFamily {
            a: sc(&self.a),
            b: sc(&self.b),
            ..self.clone()
        }
    }
}

/// The `M′` family of a template: `b` (and `g`) in the live slots, in slot order.
pub fn family_from_template(t: &MiniversalTemplate, variant: Variant) -> Result<PencilFamily> {
    if variant != Variant::Mprime {
        return Err(Error::Unsupported("families are built from M′ only".into()));
    }
    let live = t.live_slots(Variant::Mprime);
    if live.len() > 2 {
        return Err(Error::Unsupported(format!(
            "M′ has {} parameters; at most two are supported",
            live.len()
        )));
    }
    let mut f = PencilFamily::constant(&t.base);
    let vars = [BiPoly::b(), BiPoly::g()];
    for (s, v) in live.iter().zip(&vars) {
        f.add_to_entry(s.matrix_index, s.row, s.col, v);
    }
    f.with_param_count(live.len())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LocusDescriptor {
    /// Parameters off every special locus.
    Generic,
    /// A curve `poly = 0` through the origin.
    Curve(BiPoly),
    /// The origin itself.
    Point,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocusStratum {
    pub locus: LocusDescriptor,
    /// `None` when no point of the locus could be found to sample.
    pub ktype: Option<KroneckerType>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BifurcationDiagram {
    pub param_count: usize,
    pub origin_type: KroneckerType,
    pub strata: Vec<LocusStratum>,
}

impl BifurcationDiagram {
    pub fn generic_type(&self) -> &KroneckerType {
        self.strata
            .iter()
            .find(|s| s.locus == LocusDescriptor::Generic)
            .and_then(|s| s.ktype.as_ref())
            .unwrap_or(&self.origin_type)
    }

    /// Special curves with their types, in output order.
    pub fn curves(&self) -> Vec<(&BiPoly, Option<&KroneckerType>)> {
        self.strata
            .iter()
            .filter_map(|s| match &s.locus {
                LocusDescriptor::Curve(p) => Some((p, s.ktype.as_ref())),
                _ => None,
            })
            .collect()
    }

    /// Every type seen away from the origin.
    pub fn off_origin_types(&self) -> Vec<&KroneckerType> {
        self.strata
            .iter()
            .filter_map(|s| s.ktype.as_ref())
            .collect()
    }
}

impl fmt::Display for BifurcationDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin_type)?;
        if self.param_count == 0 {
            return Ok(());
        }
        write!(f, " / ")?;
        let curves = self.curves();
        if curves.is_empty() {
            return write!(f, "{}", self.generic_type());
        }
        write!(f, "{{")?;
        for (p, t) in curves {
            match t {
                Some(t) => write!(f, "{t} on {p} = 0, ")?,
                None => write!(f, "untyped on {p} = 0, ")?,
            }
        }
        write!(f, "{} elsewhere}}", self.generic_type())
    }
}

const GENERIC_POINTS: usize = 8;
const GENERIC_ROUNDS: u64 = 8;
const PROBE_HEIGHT: i64 = 100;

/// Type at random points of small height; all of them must agree.
pub(crate) fn generic_type(f: &PencilFamily, seed: u64) -> Result<(KroneckerType, (Q, Q))> {
    for round in 0..GENERIC_ROUNDS {
        let mut rng = substream(seed, 0x6e6e + round);
        let mut seen: Option<KroneckerType> = None;
        let mut first = None;
        let mut agree = true;
        for _ in 0..GENERIC_POINTS {
            let b0 = if f.param_count >= 1 {
                small_rational(&mut rng, PROBE_HEIGHT)
            } else {
                Q::zero()
            };
            let g0 = if f.param_count >= 2 {
                small_rational(&mut rng, PROBE_HEIGHT)
            } else {
                Q::zero()
            };
            let t = kronecker_type(&f.eval2(&b0, &g0));
            match &seen {
                None => {
                    seen = Some(t);
                    first = Some((b0, g0));
                }
                Some(s) if *s != t => {
                    agree = false;
                    break;
                }
                _ => {}
            }
        }
        if agree {
            return Ok((seen.unwrap(), first.unwrap()));
        }
    }
    Err(Error::RetryExhausted(
        "random points never agreed on a generic type".into(),
    ))
}

/// Origin type, generic type and the special curves through the origin.
pub fn classify(f: &PencilFamily, seed: u64) -> Result<BifurcationDiagram> {
    let origin_type = kronecker_type(&f.origin());
    if f.param_count == 0 {
        return Ok(BifurcationDiagram {
            param_count: 0,
            origin_type,
            strata: vec![],
        });
    }
    let (generic, gpoint) = generic_type(f, seed)?;
    let mut strata = vec![LocusStratum {
        locus: LocusDescriptor::Generic,
        ktype: Some(generic.clone()),
    }];
    if f.param_count == 2 {
        let cands = loci::candidate_curves(f, &origin_type_form(f), &generic, &gpoint, seed)?;
        let through: Vec<&BiPoly> = cands.iter().filter(|c| c.vanishes_at_origin()).collect();
        for h in &through {
            let others: Vec<&BiPoly> = cands.iter().filter(|c| c != h).collect();
            let pts = loci::points_on_curve(h, &others, 3);
            let ktype = if pts.len() < 3 {
                None
            } else {
                let types: Vec<KroneckerType> = pts
                    .iter()
                    .map(|(b0, g0)| kronecker_type(&f.eval2(b0, g0)))
                    .collect();
                if types.iter().any(|t| *t != types[0]) {
                    None
                } else if types[0] == generic {
                    continue;
                } else {
                    Some(types[0].clone())
                }
            };
            strata.push(LocusStratum {
                locus: LocusDescriptor::Curve((*h).clone()),
                ktype,
            });
        }
        strata[1..].sort_by_key(|s| match &s.locus {
            LocusDescriptor::Curve(p) => (p.total_degree(), p.to_string()),
            _ => (None, String::new()),
        });
    }
    Ok(BifurcationDiagram {
        param_count: f.param_count,
        origin_type,
        strata,
    })
}

fn origin_type_form(f: &PencilFamily) -> crate::kronecker::KroneckerForm {
    crate::kronecker::kronecker_structure(&f.origin())
}

/// Whether a diagram realizes a pattern: same origin and generic types, and
/// the special curves carry the pattern's types (two curves for a pair of lines).
pub fn matches_pattern(d: &BifurcationDiagram, pat: &DiagramPattern) -> bool {
    let mut want: Vec<Option<&KroneckerType>> = Vec::new();
    for (shape, t) in &pat.special {
        want.push(Some(t));
        if *shape == LocusShape::TwoLines {
            want.push(Some(t));
        }
    }
    let mut got: Vec<Option<&KroneckerType>> = d.curves().into_iter().map(|(_, t)| t).collect();
    want.sort();
    got.sort();
    d.origin_type == pat.origin && *d.generic_type() == pat.generic && got == want
}

/// The origin's stratum is strictly more degenerate than every stratum seen
/// away from it.
pub fn is_semicontinuous(d: &BifurcationDiagram) -> bool {
    let c0 = stratum_codimension(&d.origin_type);
    d.off_origin_types()
        .into_iter()
        .all(|t| stratum_codimension(t) < c0)
}
