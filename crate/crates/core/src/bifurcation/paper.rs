//! The families displayed in the proofs of the one- and two-parameter
//! classification, built entry by entry, classified, and compared with the
//! diagrams stated for them.

use num_traits::Zero;

use super::{classify, family_from_template, BifurcationDiagram, PencilFamily};
use crate::deformation::{miniversal_template, Variant};
use crate::error::{Error, Result};
use crate::kronecker::{kronecker_structure, kronecker_type, parse_type, KroneckerType};
use crate::pencil::{block_delta, block_finite, block_infinite, direct_sum, Pencil};
use crate::poly::BiPoly;
use crate::scalar::Q;

/// One family from a proof case, in one eigenvalue variant.
#[derive(Clone, Debug)]
pub struct PaperCase {
    pub id: String,
    /// `finite`, or `infinite` when the distinguished eigenvalue is ∞.
    pub variant: &'static str,
    pub family: PencilFamily,
    pub expected: ExpectedDiagram,
    /// Whether the family sits in canonical coordinates, so that it must
    /// coincide with the `M′` family of the origin's template.
    pub canonical: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpectedDiagram {
    pub origin: KroneckerType,
    pub generic: KroneckerType,
    /// `(normalized defining polynomial, type on the curve)`.
    pub curves: Vec<(String, KroneckerType)>,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: String,
    pub variant: &'static str,
    pub passed: bool,
    pub diagram: BifurcationDiagram,
    pub expected: ExpectedDiagram,
    pub template_agrees: Option<bool>,
    pub notes: Vec<String>,
}

struct Builder {
    parts: Vec<Pencil>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    sets: Vec<(u8, usize, usize, BiPoly)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            parts: vec![],
            rows: vec![],
            cols: vec![],
            sets: vec![],
        }
    }

    fn push(&mut self, p: Pencil) -> usize {
        let r = self.parts.iter().map(Pencil::m).sum();
        let c = self.parts.iter().map(Pencil::n).sum();
        self.rows.push(r);
        self.cols.push(c);
        self.parts.push(p);
        self.parts.len() - 1
    }

    fn first_row(&self, k: usize) -> usize {
        self.rows[k]
    }

    fn last_row(&self, k: usize) -> usize {
        self.rows[k] + self.parts[k].m() - 1
    }

    fn first_col(&self, k: usize) -> usize {
        self.cols[k]
    }

    fn set(&mut self, mat: u8, row: usize, col: usize, v: BiPoly) {
        self.sets.push((mat, row, col, v));
    }

    fn build(self, params: usize) -> PencilFamily {
        let mut f = PencilFamily::constant(&direct_sum(&self.parts));
        for (mat, i, j, v) in self.sets {
            f.add_to_entry(mat, i, j, &v);
        }
        f.with_param_count(params).unwrap()
    }
}

fn lam(v: i64, r: usize) -> Pencil {
    block_finite(r, &Q::from_int(v)).unwrap()
}

fn delta(r: usize) -> Pencil {
    block_delta(r).unwrap()
}

fn ty(s: &str) -> KroneckerType {
    parse_type(s).unwrap()
}

fn deltas(sizes: &[usize]) -> String {
    sizes
        .iter()
        .map(|r| format!("u{r}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn simples(k: usize) -> String {
    vec!["e{1}"; k].join(" ")
}

fn join(parts: &[String]) -> KroneckerType {
    let s: Vec<&str> = parts
        .iter()
        .map(String::as_str)
        .filter(|x| !x.is_empty())
        .collect();
    ty(&if s.is_empty() {
        "empty".to_string()
    } else {
        s.join(" ")
    })
}

fn flip(e: &ExpectedDiagram) -> ExpectedDiagram {
    ExpectedDiagram {
        origin: e.origin.flipped(),
        generic: e.generic.flipped(),
        curves: e
            .curves
            .iter()
            .map(|(p, t)| (p.clone(), t.flipped()))
            .collect(),
    }
}

/// The diagram stated for a proof case.
pub fn expected_diagram(id: &str, r: usize, t: usize) -> Result<ExpectedDiagram> {
    let d = |s: &[usize]| deltas(s);
    let e = |origin: KroneckerType, generic: KroneckerType, curves: Vec<(&str, KroneckerType)>| {
        ExpectedDiagram {
            origin,
            generic,
            curves: curves
                .into_iter()
                .map(|(p, t)| (p.to_string(), t))
                .collect(),
        }
    };
    let no = vec![];
    Ok(match id {
        "t21.1" => e(ty(&d(&[r, r + 2])), ty(&d(&[r + 1, r + 1])), no),
        "t21.2" => flip(&expected_diagram("t21.1", r, t)?),
        "t21.3" => e(join(&[d(&[r]), simples(1)]), ty(&d(&[r + 1])), no),
        "t21.4" => flip(&expected_diagram("t21.3", r, t)?),
        "t21.5" => e(
            join(&["e{2}".into(), simples(t - 1)]),
            join(&[simples(t + 1)]),
            no,
        ),
        "t22.1" => e(ty("u1 d1"), ty("e{1}"), no),
        "t22.2" => e(ty(&d(&[r, r + 3])), ty(&d(&[r + 1, r + 2])), no),
        "t22.3" => e(ty(&d(&[r, r, r + 2])), ty(&d(&[r, r + 1, r + 1])), no),
        "t22.4" => e(
            ty(&d(&[r, r + 2, r + 2])),
            ty(&d(&[r + 1, r + 1, r + 2])),
            no,
        ),
        "t22.5" => e(join(&[d(&[r, r]), simples(1)]), ty(&d(&[r, r + 1])), no),
        "t22.6" => e(
            join(&[d(&[r, r + 1]), simples(1)]),
            ty(&d(&[r + 1, r + 1])),
            vec![("b", ty(&d(&[r, r + 2])))],
        ),
        "t22.7" => {
            let line = join(&[d(&[r + 1]), simples(1)]);
            e(
                join(&[d(&[r]), simples(2)]),
                ty(&d(&[r + 2])),
                vec![("b", line.clone()), ("g", line)],
            )
        }
        "t22.8" => e(
            join(&["e{3}".into(), simples(t - 1)]),
            join(&[simples(t + 2)]),
            vec![("4*b^3 - 27*g^2", join(&["e{2}".into(), simples(t)]))],
        ),
        "t22.9" => {
            let line = join(&["e{2}".into(), simples(t)]);
            e(
                join(&["e{2} e{2}".into(), simples(t - 2)]),
                join(&[simples(t + 2)]),
                vec![("b", line.clone()), ("g", line)],
            )
        }
        _ => return Err(Error::InvalidArgument(format!("unknown proof case {id:?}"))),
    })
}

/// The families of a proof case for size parameter `r` (number of rows of the
/// smallest △) and eigenvalue count `t`, in every eigenvalue variant the proof
/// distinguishes.
pub fn paper_cases(id: &str, r: usize, t: usize) -> Result<Vec<PaperCase>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let min_t = match id {
        "t21.5" | "t22.8" => 1,
        "t22.9" => 2,
        _ => 0,
    };
    if t < min_t {
        return Err(Error::InvalidArgument(format!("{id} needs t >= {min_t}")));
    }
    let expected = expected_diagram(id, r, t)?;
    let (b, g) = (BiPoly::b(), BiPoly::g());
    let case = |variant, family, canonical| PaperCase {
        id: id.to_string(),
        variant,
        family,
        expected: expected.clone(),
        canonical,
    };
    let variants = |f: &dyn Fn(bool) -> PencilFamily, canonical: bool| {
        vec![
            case("finite", f(false), canonical),
            case("infinite", f(true), canonical),
        ]
    };
    Ok(match id {
        "t21.1" | "t21.2" => {
            let mut s = Builder::new();
            let d1 = s.push(delta(r));
            let d2 = s.push(delta(r + 2));
            s.set(2, s.first_row(d1), s.first_col(d2), b);
            let f = s.build(1);
            if id == "t21.1" {
                vec![case("finite", f, true)]
            } else {
                vec![case("finite", f.transpose(), false)]
            }
        }
        "t21.3" | "t21.4" => {
            let build = |inf: bool| {
                let mut s = Builder::new();
                let d = s.push(delta(r));
                if inf {
                    let e = s.push(block_infinite(1).unwrap());
                    s.set(1, s.last_row(d), s.first_col(e), b.clone());
                } else {
                    let e = s.push(lam(1, 1));
                    s.set(2, s.first_row(d), s.first_col(e), b.clone());
                }
                let f = s.build(1);
                if id == "t21.3" {
                    f
                } else {
                    f.transpose()
                }
            };
            variants(&build, id == "t21.3")
        }
        "t21.5" => variants(
            &|inf| {
                let mut s = Builder::new();
                if inf {
                    for v in 1..t as i64 {
                        s.push(lam(v, 1));
                    }
                    let j = s.push(block_infinite(2).unwrap());
                    s.set(1, s.first_row(j) + 1, s.first_col(j), b.clone());
                } else {
                    let j = s.push(lam(1, 2));
                    for v in 2..=t as i64 {
                        s.push(lam(v, 1));
                    }
                    s.set(2, s.first_row(j) + 1, s.first_col(j), b.clone());
                }
                s.build(1)
            },
            true,
        ),
        "t22.1" => {
            let mut s = Builder::new();
            s.push(Pencil::zero(1, 1));
            s.set(1, 0, 0, b.clone());
            s.set(2, 0, 0, g.clone());
            vec![case("finite", s.build(2), true)]
        }
        "t22.2" | "t22.3" | "t22.4" => {
            let mut s = Builder::new();
            match id {
                "t22.2" => {
                    let d1 = s.push(delta(r));
                    let d2 = s.push(delta(r + 3));
                    s.set(2, s.first_row(d1), s.first_col(d2), b);
                    s.set(2, s.first_row(d1), s.first_col(d2) + 1, g);
                }
                "t22.3" => {
                    let d1 = s.push(delta(r));
                    let d2 = s.push(delta(r));
                    let d3 = s.push(delta(r + 2));
                    s.set(2, s.first_row(d1), s.first_col(d3), b);
                    s.set(2, s.first_row(d2), s.first_col(d3), g);
                }
                _ => {
                    let d1 = s.push(delta(r));
                    let d2 = s.push(delta(r + 2));
                    let d3 = s.push(delta(r + 2));
                    s.set(2, s.first_row(d1), s.first_col(d2), b);
                    s.set(2, s.first_row(d1), s.first_col(d3), g);
                }
            }
            vec![case("finite", s.build(2), true)]
        }
        "t22.5" | "t22.6" => variants(
            &|inf| {
                let mut s = Builder::new();
                let d1 = s.push(delta(r));
                let d2 = s.push(delta(if id == "t22.5" { r } else { r + 1 }));
                if inf {
                    let e = s.push(block_infinite(1).unwrap());
                    s.set(1, s.last_row(d1), s.first_col(e), b.clone());
                    s.set(1, s.last_row(d2), s.first_col(e), g.clone());
                } else {
                    let e = s.push(lam(1, 1));
                    s.set(2, s.first_row(d1), s.first_col(e), b.clone());
                    s.set(2, s.first_row(d2), s.first_col(e), g.clone());
                }
                s.build(2)
            },
            true,
        ),
        "t22.7" => variants(
            &|inf| {
                let mut s = Builder::new();
                let d = s.push(delta(r));
                let l = s.push(lam(1, 1));
                s.set(2, s.first_row(d), s.first_col(l), b.clone());
                if inf {
                    let mu = s.push(block_infinite(1).unwrap());
                    s.set(1, s.last_row(d), s.first_col(mu), g.clone());
                } else {
                    let mu = s.push(lam(2, 1));
                    s.set(2, s.first_row(d), s.first_col(mu), g.clone());
                }
                s.build(2)
            },
            true,
        ),
        "t22.8" => variants(
            &|inf| {
                let mut s = Builder::new();
                let (mat, j) = if inf {
                    for v in 1..t as i64 {
                        s.push(lam(v, 1));
                    }
                    (1, s.push(block_infinite(3).unwrap()))
                } else {
                    let j = s.push(lam(1, 3));
                    for v in 1..t as i64 {
                        s.push(lam(10 + v, 1));
                    }
                    (2, j)
                };
                s.set(mat, s.first_row(j) + 1, s.first_col(j), b.clone());
                s.set(mat, s.first_row(j) + 2, s.first_col(j), g.clone());
                s.build(2)
            },
            true,
        ),
        "t22.9" => variants(
            &|inf| {
                let mut s = Builder::new();
                let j1 = s.push(lam(1, 2));
                s.set(2, s.first_row(j1) + 1, s.first_col(j1), b.clone());
                if inf {
                    for v in 2..t as i64 {
                        s.push(lam(v, 1));
                    }
                    let j2 = s.push(block_infinite(2).unwrap());
                    s.set(1, s.first_row(j2) + 1, s.first_col(j2), g.clone());
                } else {
                    let j2 = s.push(lam(2, 2));
                    for v in 3..=t as i64 {
                        s.push(lam(v, 1));
                    }
                    s.set(2, s.first_row(j2) + 1, s.first_col(j2), g.clone());
                }
                s.build(2)
            },
            true,
        ),
        _ => return Err(Error::InvalidArgument(format!("unknown proof case {id:?}"))),
    })
}

fn matches(d: &BifurcationDiagram, e: &ExpectedDiagram) -> bool {
    let mut got: Vec<(String, Option<KroneckerType>)> = d
        .curves()
        .into_iter()
        .map(|(p, t)| (p.normalized().to_string(), t.cloned()))
        .collect();
    let mut want: Vec<(String, Option<KroneckerType>)> = e
        .curves
        .iter()
        .map(|(p, t)| (p.clone(), Some(t.clone())))
        .collect();
    got.sort_by(|x, y| x.0.cmp(&y.0));
    want.sort_by(|x, y| x.0.cmp(&y.0));
    d.origin_type == e.origin && *d.generic_type() == e.generic && got == want
}

fn swap_params(f: &PencilFamily) -> PencilFamily {
    let sw = |v: &[BiPoly]| {
        v.iter()
            .map(|p| p.compose(&BiPoly::g(), &BiPoly::b()))
            .collect()
    };
    let (a, b) = f.matrices();
    PencilFamily::new(f.m(), f.n(), sw(a), sw(b), f.param_count()).unwrap()
}

/// Classifies every variant of a proof case and compares with the stated diagram.
pub fn verify_against_paper(id: &str, r: usize, t: usize, seed: u64) -> Result<Vec<CaseReport>> {
    let mut out = Vec::new();
    for c in paper_cases(id, r, t)? {
        let diagram = classify(&c.family, seed)?;
        let mut notes = Vec::new();
        let mut passed = matches(&diagram, &c.expected);
        if !passed {
            notes.push(format!("classified as {diagram}"));
        }
        let template_agrees = if c.canonical {
            let form = kronecker_structure(&c.family.origin());
            let t = miniversal_template(&form)?;
            let m = family_from_template(&t, Variant::Mprime)?;
            Some(m == c.family || m == swap_params(&c.family))
        } else {
            None
        };
        if template_agrees == Some(false) {
            passed = false;
            notes.push("family differs from the template's M′ family".into());
        }
        if id == "t22.8" {
            let on = kronecker_type(&c.family.eval2(&Q::from_int(3), &Q::from_int(2)));
            let off = kronecker_type(&c.family.eval2(&Q::from_int(3), &Q::from_int(1)));
            let (want_on, want_off) = (&c.expected.curves[0].1, &c.expected.generic);
            if on != *want_on || off != *want_off {
                passed = false;
                notes.push(format!("(3, 2) gives {on}, (3, 1) gives {off}"));
            }
            let cusp = crate::poly::parse_bipoly("4*b^3 - 27*g^2").unwrap();
            debug_assert!(cusp.eval(&Q::from_int(3), &Q::from_int(2)).is_zero());
        }
        out.push(CaseReport {
            id: c.id,
            variant: c.variant,
            passed,
            diagram,
            expected: c.expected,
            template_agrees,
            notes,
        });
    }
    Ok(out)
}

/// Proof case identifiers in order.
pub const CASE_IDS: [&str; 14] = [
    "t21.1", "t21.2", "t21.3", "t21.4", "t21.5", "t22.1", "t22.2", "t22.3", "t22.4", "t22.5",
    "t22.6", "t22.7", "t22.8", "t22.9",
];
