//! JSON interchange for pencils, witnesses, templates, families and diagrams.
//!
//! Scalars and polynomials travel as strings. Matrices are arrays of rows, so
//! a `1 × 0` matrix is `[[]]` and a `0 × n` matrix is `[]`; the explicit `m`
//! and `n` fields resolve the shapes.

use serde_json::{json, Map, Value};

use crate::bifurcation::{BifurcationDiagram, PencilFamily};
use crate::deformation::{MiniversalTemplate, PairSpaceBasis, ParameterSlot, SlotKind, Variant};
use crate::error::{Error, Result};
use crate::kronecker::KroneckerForm;
use crate::matrix::Matrix;
use crate::pencil::{EquivalenceWitness, Pencil};
use crate::poly::{parse_bipoly, BiPoly};
use crate::scalar::Q;
use crate::strata::GenericEntry;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn dim(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{key:?} must be a non-negative integer")))
}

fn grid<T>(
    v: &Value,
    rows: usize,
    cols: usize,
    parse: &dyn Fn(&str) -> Result<T>,
) -> Result<Vec<T>> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row
            .as_array()
            .ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, found {}", row.len())));
        }
        for e in row {
            let s = e
                .as_str()
                .ok_or_else(|| bad("matrix entries must be strings"))?;
            out.push(parse(s)?);
        }
    }
    Ok(out)
}

fn rows_of<T: ToString>(entries: &[T], rows: usize, cols: usize) -> Value {
    Value::Array(
        (0..rows)
            .map(|i| {
                Value::Array(
                    (0..cols)
                        .map(|j| Value::String(entries[i * cols + j].to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn parse_scalar(s: &str) -> Result<Q> {
    s.parse::<Q>()
        .map_err(|e| bad(format!("bad scalar {s:?}: {e}")))
}

pub fn matrix_to_json(a: &Matrix) -> Value {
    rows_of(a.entries(), a.rows(), a.cols())
}

pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let e = grid(v, rows, cols, &parse_scalar)?;
    Ok(Matrix::from_fn(rows, cols, |i, j| e[i * cols + j].clone()))
}

pub fn pencil_to_json(p: &Pencil) -> Value {
    json!({
        "m": p.m(),
        "n": p.n(),
        "A": matrix_to_json(p.a()),
        "B": matrix_to_json(p.b()),
    })
}

pub fn pencil_from_json(v: &Value) -> Result<Pencil> {
    let (m, n) = (dim(v, "m")?, dim(v, "n")?);
    let a = matrix_from_json(field(v, "A")?, m, n)?;
    let b = matrix_from_json(field(v, "B")?, m, n)?;
    Pencil::new(a, b)
}

pub fn witness_to_json(w: &EquivalenceWitness) -> Value {
    json!({
        "R": matrix_to_json(w.r()),
        "S": matrix_to_json(w.s()),
    })
}

pub fn witness_from_json(v: &Value, m: usize, n: usize) -> Result<EquivalenceWitness> {
    let r = matrix_from_json(field(v, "R")?, m, m)?;
    let s = matrix_from_json(field(v, "S")?, n, n)?;
    EquivalenceWitness::new(r, s)
}

/// Canonical pencil and type of a form, with the witness carrying the input to it.
pub fn kform_to_json(form: &KroneckerForm, w: &EquivalenceWitness) -> Value {
    json!({
        "type": form.kronecker_type().to_string(),
        "form": pencil_to_json(&form.canonical_pencil()),
        "witness": witness_to_json(w),
    })
}

fn slot_to_json(s: &ParameterSlot) -> Value {
    json!({
        "mat": s.matrix_index,
        "row": s.row,
        "col": s.col,
        "kind": s.kind.as_str(),
        "mprime": !s.removed_in_mprime,
    })
}

fn slot_from_json(v: &Value, m: usize, n: usize) -> Result<ParameterSlot> {
    let mat = dim(v, "mat")?;
    let (row, col) = (dim(v, "row")?, dim(v, "col")?);
    if !(mat == 1 || mat == 2) || row >= m || col >= n {
        return Err(bad(format!("slot ({mat}, {row}, {col}) is out of range")));
    }
    let kind = match v.get("kind") {
        Some(k) => k
            .as_str()
            .ok_or_else(|| bad("slot kind must be a string"))?
            .parse::<SlotKind>()?,
        None => SlotKind::H,
    };
    let keep = v.get("mprime").and_then(Value::as_bool).unwrap_or(true);
    Ok(ParameterSlot {
        matrix_index: mat as u8,
        row,
        col,
        kind,
        removed_in_mprime: !keep,
    })
}

/// The base pencil plus its slots; `mprime` marks the slots kept in `M′`.
/// For `Variant::Mprime` only the kept slots are written.
pub fn template_to_json(t: &MiniversalTemplate, variant: Variant) -> Value {
    let mut v = pencil_to_json(&t.base);
    let obj = v.as_object_mut().unwrap();
    obj.insert(
        "type".into(),
        Value::String(t.form.kronecker_type().to_string()),
    );
    obj.insert(
        "variant".into(),
        Value::String(
            match variant {
                Variant::M => "M",
                Variant::Mprime => "Mprime",
                Variant::Mdoubleprime => "Mdoubleprime",
            }
            .into(),
        ),
    );
    let slots = t
        .slots
        .iter()
        .filter(|s| variant != Variant::Mprime || !s.removed_in_mprime)
        .map(slot_to_json)
        .collect();
    obj.insert("slots".into(), Value::Array(slots));
    v
}

/// Base pencil and the unit directions of the listed slots.
pub fn slots_from_json(v: &Value) -> Result<(Pencil, Vec<ParameterSlot>)> {
    let base = pencil_from_json(v)?;
    let arr = field(v, "slots")?
        .as_array()
        .ok_or_else(|| bad("\"slots\" must be an array"))?;
    let slots = arr
        .iter()
        .map(|s| slot_from_json(s, base.m(), base.n()))
        .collect::<Result<Vec<_>>>()?;
    Ok((base, slots))
}

pub fn slot_directions(base: &Pencil, slots: &[ParameterSlot]) -> PairSpaceBasis {
    let (m, n) = (base.m(), base.n());
    PairSpaceBasis::new(m, n, slots.iter().map(|s| s.direction(m, n)).collect())
        .expect("slot directions share the base shape")
}

pub fn family_to_json(f: &PencilFamily) -> Value {
    let (a, b) = f.matrices();
    json!({
        "m": f.m(),
        "n": f.n(),
        "params": f.param_count(),
        "A": rows_of(a, f.m(), f.n()),
        "B": rows_of(b, f.m(), f.n()),
    })
}

/// A family file. Without a `"params"` field the count is the number of
/// variables the entries use.
pub fn family_from_json(v: &Value) -> Result<PencilFamily> {
    let (m, n) = (dim(v, "m")?, dim(v, "n")?);
    let parse = |s: &str| parse_bipoly(s).map_err(|e| bad(format!("bad polynomial {s:?}: {e}")));
    let a: Vec<BiPoly> = grid(field(v, "A")?, m, n, &parse)?;
    let b: Vec<BiPoly> = grid(field(v, "B")?, m, n, &parse)?;
    let used = if a.iter().chain(&b).any(BiPoly::mentions_g) {
        2
    } else if a.iter().chain(&b).any(BiPoly::mentions_b) {
        1
    } else {
        0
    };
    let k = match v.get("params") {
        Some(p) => p
            .as_u64()
            .ok_or_else(|| bad("\"params\" must be 0, 1 or 2"))? as usize,
        None => used,
    };
    PencilFamily::new(m, n, a, b, k)
}

/// `{"origin", "generic", "curves": [{"poly", "type"}]}`; an untyped curve has
/// `"type": null`.
pub fn diagram_to_json(d: &BifurcationDiagram) -> Value {
    let curves: Vec<Value> = d
        .curves()
        .into_iter()
        .map(|(p, t)| {
            json!({
                "poly": p.to_string(),
                "type": t.map(|t| t.to_string()),
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("origin".into(), Value::String(d.origin_type.to_string()));
    obj.insert(
        "generic".into(),
        Value::String(d.generic_type().to_string()),
    );
    obj.insert("curves".into(), Value::Array(curves));
    Value::Object(obj)
}

pub fn strata_to_json(list: &[GenericEntry]) -> Value {
    Value::Array(
        list.iter()
            .map(|e| {
                json!({
                    "type": e.origin.ktype.to_string(),
                    "codim": e.origin.stratum_codim,
                    "diagram": e.pattern_id(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_shapes_round_trip() {
        for (m, n) in [(1, 0), (0, 3), (0, 0), (2, 1)] {
            let p = Pencil::zero(m, n);
            let v = pencil_to_json(&p);
            if (m, n) == (1, 0) {
                assert_eq!(v["A"], json!([[]]));
            }
            if m == 0 {
                assert_eq!(v["A"], json!([]));
            }
            let s = serde_json::to_string(&v).unwrap();
            let back = pencil_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let v = json!({"m": 2, "n": 2, "A": [["1", "0"], ["0"]], "B": [["0", "0"], ["0", "0"]]});
        assert!(matches!(pencil_from_json(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn family_counts_parameters() {
        let v = json!({"m": 1, "n": 1, "A": [["b"]], "B": [["g + 1/2"]]});
        let f = family_from_json(&v).unwrap();
        assert_eq!(f.param_count(), 2);
        assert_eq!(family_from_json(&family_to_json(&f)).unwrap(), f);
    }
}
