//! Kronecker types of a given size, their stratum codimensions, and the
//! bifurcation diagram patterns of generic families with at most two parameters.

use std::fmt;

use crate::deformation::codimension;
use crate::kronecker::KroneckerType;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StratumDescriptor {
    pub ktype: KroneckerType,
    pub stratum_codim: usize,
}

/// Stratum codimension of a type, through a representative with eigenvalues 1, 2, ...
pub fn stratum_codimension(t: &KroneckerType) -> usize {
    codimension(&t.representative())
        .expect("representatives have split eigenvalue classes")
        .1
}

/// Every Kronecker type of `m × n` pencils.
pub fn all_types(m: usize, n: usize) -> Vec<KroneckerType> {
    let mut out = Vec::new();
    for reg in 0..=m.min(n) {
        let (mr, nr) = (m - reg, n - reg);
        let regular = partition_multisets(reg);
        let mut singular: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for l in mr.saturating_sub(nr)..=mr {
            let r = l + nr - mr;
            let total = mr + r;
            if total < l + r {
                continue;
            }
            for a in l..=total - r {
                for p in partitions_exact(a, l) {
                    for q in partitions_exact(total - a, r) {
                        singular.push((p.clone(), q));
                    }
                }
            }
        }
        for (p, q) in &singular {
            for e in &regular {
                out.push(KroneckerType::new(p.clone(), q.clone(), e.clone()).unwrap());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Types of `m × n` pencils whose stratum has codimension at most `max_codim`,
/// ordered by codimension and then by type.
pub fn enumerate_types(m: usize, n: usize, max_codim: usize) -> Vec<StratumDescriptor> {
    let mut out: Vec<StratumDescriptor> = all_types(m, n)
        .into_iter()
        .filter_map(|t| {
            let c = stratum_codimension(&t);
            (c <= max_codim).then_some(StratumDescriptor {
                ktype: t,
                stratum_codim: c,
            })
        })
        .collect();
    out.sort_by(|x, y| {
        x.stratum_codim
            .cmp(&y.stratum_codim)
            .then_with(|| x.ktype.to_string().cmp(&y.ktype.to_string()))
    });
    out
}

/// Partitions of `total` into exactly `parts` positive parts, non-increasing.
fn partitions_exact(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < parts {
            return;
        }
        for v in (1..=cap.min(rest - (parts - 1))).rev() {
            cur.push(v);
            go(rest - v, parts - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, total, &mut Vec::new(), &mut out);
    out
}

fn partitions(total: usize) -> Vec<Vec<usize>> {
    (1..=total)
        .flat_map(|k| partitions_exact(total, k))
        .collect()
}

/// Multisets of partitions whose sizes add up to `total`.
fn partition_multisets(total: usize) -> Vec<Vec<Vec<usize>>> {
    let mut pool: Vec<Vec<usize>> = (1..=total).flat_map(partitions).collect();
    pool.sort_by(|a, b| b.cmp(a));
    fn go(
        rest: usize,
        start: usize,
        pool: &[Vec<usize>],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, p) in pool.iter().enumerate().skip(start) {
            let s: usize = p.iter().sum();
            if s <= rest {
                cur.push(p.clone());
                go(rest - s, i, pool, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, 0, &pool, &mut Vec::new(), &mut out);
    out
}

/// Shape of a special locus in the parameter plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LocusShape {
    SmoothLine,
    TwoLines,
    Cusp,
}

impl LocusShape {
    pub fn describe(self) -> &'static str {
        match self {
            LocusShape::SmoothLine => "on a smooth line through the origin",
            LocusShape::TwoLines => "on two smooth lines intersecting at the origin",
            LocusShape::Cusp => "on a line with a cusp at the origin",
        }
    }
}

/// A diagram from the lists of generic families: the origin type, the type
/// off the special loci, and the special loci with their types.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramPattern {
    pub id: &'static str,
    pub origin: KroneckerType,
    pub generic: KroneckerType,
    pub special: Vec<(LocusShape, KroneckerType)>,
}

impl fmt::Display for DiagramPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.origin == self.generic {
            return write!(f, "{}", self.origin);
        }
        write!(f, "{} / ", self.origin)?;
        if self.special.is_empty() {
            return write!(f, "{}", self.generic);
        }
        write!(f, "{{")?;
        for (shape, t) in &self.special {
            write!(f, "{t} ({}), ", shape.describe())?;
        }
        write!(f, "{} (elsewhere)}}", self.generic)
    }
}

fn ty(deltas: &[usize], nablas: &[usize], segre: &[&[usize]]) -> KroneckerType {
    KroneckerType::new(
        deltas.to_vec(),
        nablas.to_vec(),
        segre.iter().map(|s| s.to_vec()).collect(),
    )
    .unwrap()
}

fn simple(k: usize) -> Vec<&'static [usize]> {
    vec![&[1]; k]
}

fn all_simple(t: &KroneckerType) -> bool {
    t.eigen_segre().iter().all(|s| s == &[1])
}

fn near_equal(sizes: &[usize]) -> bool {
    match (sizes.iter().min(), sizes.iter().max()) {
        (Some(a), Some(b)) => b - a <= 1,
        _ => true,
    }
}

/// Types of the open stratum: deltas only or nablas only with sizes differing
/// by at most one, or distinct simple eigenvalues only (the 0×0 type included).
pub fn is_e1(t: &KroneckerType) -> bool {
    let (d, q, e) = (t.deltas(), t.nablas(), t.eigen_segre());
    if e.is_empty() && q.is_empty() {
        return near_equal(d);
    }
    if e.is_empty() && d.is_empty() {
        return near_equal(q);
    }
    d.is_empty() && q.is_empty() && all_simple(t)
}

/// Recognizes the origin types of generic zero-, one- and two-parameter
/// families and returns the bifurcation diagram expected for them.
pub fn diagram_pattern(t: &KroneckerType) -> Option<DiagramPattern> {
    if is_e1(t) {
        return Some(DiagramPattern {
            id: "e1",
            origin: t.clone(),
            generic: t.clone(),
            special: vec![],
        });
    }
    if let Some(p) = delta_pattern(t) {
        return Some(p);
    }
    if let Some(p) = delta_pattern(&t.flipped()) {
        let id = match p.id {
            "e2.1" => "e2.2",
            "e2.3" => "e2.4",
            "t22.i" => "t22.i",
            _ => "t22.x",
        };
        return Some(DiagramPattern {
            id,
            origin: p.origin.flipped(),
            generic: p.generic.flipped(),
            special: p
                .special
                .into_iter()
                .map(|(s, k)| (s, k.flipped()))
                .collect(),
        });
    }
    eigen_pattern(t)
}

/// Patterns built from deltas and simple eigenvalues (and △¹▽¹).
fn delta_pattern(t: &KroneckerType) -> Option<DiagramPattern> {
    let (d, q) = (t.deltas(), t.nablas());
    if !all_simple(t) {
        return None;
    }
    let k = t.eigen_segre().len();
    let pat = |id, generic, special| {
        Some(DiagramPattern {
            id,
            origin: t.clone(),
            generic,
            special,
        })
    };
    if d == [1] && q == [1] && k == 0 {
        return pat("t22.i", ty(&[], &[], &[&[1]]), vec![]);
    }
    if !q.is_empty() || d.is_empty() {
        return None;
    }
    let r = d[0];
    match (d.len(), k) {
        (2, 0) if d[1] == r + 2 => pat("e2.1", ty(&[r + 1, r + 1], &[], &[]), vec![]),
        (1, 1) => pat("e2.3", ty(&[r + 1], &[], &[]), vec![]),
        (2, 0) if d[1] == r + 3 => pat("t22.ii", ty(&[r + 1, r + 2], &[], &[]), vec![]),
        (3, 0) if d[1] == r && d[2] == r + 2 => {
            pat("t22.iii", ty(&[r, r + 1, r + 1], &[], &[]), vec![])
        }
        (3, 0) if d[1] == r + 2 && d[2] == r + 2 => {
            pat("t22.iv", ty(&[r + 1, r + 1, r + 2], &[], &[]), vec![])
        }
        (2, 1) if d[1] == r => pat("t22.v", ty(&[r, r + 1], &[], &[]), vec![]),
        (2, 1) if d[1] == r + 1 => pat(
            "t22.vi",
            ty(&[r + 1, r + 1], &[], &[]),
            vec![(LocusShape::SmoothLine, ty(&[r, r + 2], &[], &[]))],
        ),
        (1, 2) => pat(
            "t22.vii",
            ty(&[r + 2], &[], &[]),
            vec![(LocusShape::TwoLines, ty(&[r + 1], &[], &[&[1]]))],
        ),
        _ => None,
    }
}

/// Patterns of square regular types with one or two non-simple eigenvalues.
fn eigen_pattern(t: &KroneckerType) -> Option<DiagramPattern> {
    if !t.deltas().is_empty() || !t.nablas().is_empty() {
        return None;
    }
    let e = t.eigen_segre();
    let rest = e.iter().filter(|s| *s == &[1]).count();
    let others: Vec<&Vec<usize>> = e.iter().filter(|s| *s != &[1]).collect();
    let n = t.regular_size();
    let generic = ty(&[], &[], &simple(n));
    let pat = |id, special| {
        Some(DiagramPattern {
            id,
            origin: t.clone(),
            generic: generic.clone(),
            special,
        })
    };
    let with_double = |extra: usize| {
        let mut s: Vec<&[usize]> = vec![&[2]];
        s.extend(simple(extra));
        ty(&[], &[], &s)
    };
    match others.as_slice() {
        [s] if s.as_slice() == [2] => pat("e2.5", vec![]),
        [s] if s.as_slice() == [3] => {
            pat("t22.viii", vec![(LocusShape::Cusp, with_double(rest + 1))])
        }
        [a, b] if a.as_slice() == [2] && b.as_slice() == [2] => pat(
            "t22.ix",
            vec![(LocusShape::TwoLines, with_double(rest + 2))],
        ),
        _ => None,
    }
}

/// One entry of [`generic_list`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericEntry {
    pub origin: StratumDescriptor,
    pub pattern: Option<DiagramPattern>,
}

impl GenericEntry {
    pub fn pattern_id(&self) -> &'static str {
        self.pattern.as_ref().map_or("unlisted", |p| p.id)
    }
}

/// The types of stratum codimension at most `k ≤ 2`, each with the bifurcation
/// diagram a generic family through it exhibits.
pub fn generic_list(m: usize, n: usize, k: usize) -> Vec<GenericEntry> {
    enumerate_types(m, n, k.min(2))
        .into_iter()
        .map(|d| GenericEntry {
            pattern: diagram_pattern(&d.ktype),
            origin: d,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::parse_type;

    #[test]
    fn counts_partitions() {
        assert_eq!(partitions_exact(5, 2), vec![vec![4, 1], vec![3, 2]]);
        assert_eq!(partition_multisets(2).len(), 3);
        assert_eq!(partition_multisets(3).len(), 6);
    }

    #[test]
    fn recognizes_patterns() {
        let id = |s: &str| diagram_pattern(&parse_type(s).unwrap()).map(|p| p.id);
        assert_eq!(id("u1 d1"), Some("t22.i"));
        assert_eq!(id("u1 u3"), Some("e2.1"));
        assert_eq!(id("d3 d1"), Some("e2.2"));
        assert_eq!(id("d2 e{1}"), Some("e2.4"));
        assert_eq!(id("d2 d2 e{1}"), Some("t22.x"));
        assert_eq!(id("e{3} e{1}"), Some("t22.viii"));
        assert_eq!(id("e{2} e{2}"), Some("t22.ix"));
        assert_eq!(id("e{2.1}"), None);
        assert_eq!(id("empty"), Some("e1"));
    }
}
