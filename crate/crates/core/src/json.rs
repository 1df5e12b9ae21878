// SPDX-License-Identifier: Apache-2.0
//! Canonical JSON for the domain types.
//!
//! Objects are `serde_json` maps, which keep their keys sorted, and scalars
//! are reduced, so two equal values always serialize to the same bytes.
//! Schemas with worked examples are in `SCHEMAS.md`.

use serde_json::{json, Map, Value};

use crate::clifford::{CliffordAlgebra, CliffordElem};
use crate::compalg::CompositionAlgebra;
use crate::composition::{Composition, PointedComposition, SimilitudeTriple};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quadform::QuadForm;
use crate::report::{Check, Datum, Report};

/// A type with a self-describing canonical JSON form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Compact serialization; keys are already sorted.
pub fn canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn parse_str<T: Json>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    T::from_json(&v)
}

pub fn to_canonical<T: Json>(x: &T) -> String {
    canonical_string(&x.to_json())
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("expected {what}"))
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing key '{key}'")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

fn as_index(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad("a nonnegative integer index"))
}

impl Json for FieldSpec {
    fn to_json(&self) -> Value {
        match self {
            FieldSpec::Rationals => json!({"kind": "Q"}),
            FieldSpec::Prime(p) => json!({"kind": "Fp", "p": p}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match field_of(v, "kind")?.as_str() {
            Some("Q") => Ok(FieldSpec::Rationals),
            Some("Fp") => {
                let p = field_of(v, "p")?.as_u64().ok_or_else(|| bad("an integer p"))?;
                FieldSpec::prime(p).map_err(|e| Error::Parse(e.to_string()))
            }
            _ => Err(bad("field kind \"Q\" or \"Fp\"")),
        }
    }
}

/// `"n/d"` (or `"n"`) over `Q`, the canonical residue as an integer over `F_p`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => Value::String(r.to_string()),
        Scalar::Fp { v, .. } => json!(v),
    }
}

/// Accepts strings over both fields and integers over `F_p`.
pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(field, s).map_err(|e| Error::Parse(e.to_string())),
        Value::Number(n) => match (field, n.as_i64()) {
            (FieldSpec::Prime(_), Some(k)) => Ok(field.int(k)),
            _ => Err(bad("a scalar string over Q")),
        },
        _ => Err(bad("a scalar")),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(field: FieldSpec, v: &Value) -> Result<Vec<Scalar>> {
    as_array(v, "a vector")?.iter().map(|x| scalar_from_json(field, x)).collect()
}

/// A list of rows.
pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_from_json(field: FieldSpec, v: &Value) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = as_array(v, "a matrix")?
        .iter()
        .map(|r| vector_from_json(field, r))
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(field, cols, &rows).map_err(|e| Error::Parse(e.to_string()))
}

impl Json for QuadForm {
    fn to_json(&self) -> Value {
        let upper: Vec<Value> = self
            .entries()
            .iter()
            .map(|(i, j, c)| json!([i, j, scalar_to_json(c)]))
            .collect();
        json!({"field": self.field().to_json(), "dim": self.dim(), "upper": upper})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let field = FieldSpec::from_json(field_of(v, "field")?)?;
        let dim = as_index(field_of(v, "dim")?)?;
        let entries = as_array(field_of(v, "upper")?, "an entry list")?
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([i, j, c]) => Ok((as_index(i)?, as_index(j)?, scalar_from_json(field, c)?)),
                _ => Err(bad("an entry [i, j, c]")),
            })
            .collect::<Result<Vec<_>>>()?;
        QuadForm::from_entries(field, dim, &entries)
    }
}

impl Json for Composition {
    fn to_json(&self) -> Value {
        let n = self.dim();
        let mut tensor = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let c = self.coeff(k, i, j);
                    if !c.is_zero() {
                        tensor.push(json!([k, i, j, scalar_to_json(c)]));
                    }
                }
            }
        }
        json!({
            "q1": self.q(1).to_json(),
            "q2": self.q(2).to_json(),
            "q3": self.q(3).to_json(),
            "tensor": tensor,
        })
    }

    /// Only shapes are checked; multiplicativity is left to `verify`.
    fn from_json(v: &Value) -> Result<Self> {
        let q1 = QuadForm::from_json(field_of(v, "q1")?)?;
        let q2 = QuadForm::from_json(field_of(v, "q2")?)?;
        let q3 = QuadForm::from_json(field_of(v, "q3")?)?;
        let field = q1.field();
        let n = q1.dim();
        let mut tensor = vec![field.zero(); n * n * n];
        for e in as_array(field_of(v, "tensor")?, "a tensor entry list")? {
            let Some([k, i, j, c]) = e.as_array().map(Vec::as_slice) else {
                return Err(bad("a tensor entry [k, i, j, c]"));
            };
            let (k, i, j) = (as_index(k)?, as_index(i)?, as_index(j)?);
            if k >= n || i >= n || j >= n {
                return Err(Error::Parse(format!("tensor index ({k},{i},{j}) out of range")));
            }
            let slot = &mut tensor[(k * n + i) * n + j];
            *slot = &*slot + &scalar_from_json(field, c)?;
        }
        Composition::new(q1, q2, q3, tensor)
    }
}

impl Json for PointedComposition {
    fn to_json(&self) -> Value {
        let mut m = object(self.base().to_json());
        for i in 1..=3 {
            m.insert(format!("e{i}"), vector_to_json(self.point(i)));
        }
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let base = Composition::from_json(v)?;
        let f = base.field();
        let e = |k: &str| vector_from_json(f, field_of(v, k)?);
        PointedComposition::new(base, e("e1")?, e("e2")?, e("e3")?)
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("composition JSON is an object"),
    }
}

impl Json for CompositionAlgebra {
    fn to_json(&self) -> Value {
        let mut m = object(self.composition().to_json());
        m.insert("unit".into(), self.unit().map_or(Value::Null, vector_to_json));
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let comp = Composition::from_json(v)?;
        let unit = match v.get("unit") {
            None | Some(Value::Null) => None,
            Some(u) => Some(vector_from_json(comp.field(), u)?),
        };
        comp.require_composition()?;
        CompositionAlgebra::from_composition(comp, unit)
    }
}

impl Json for CliffordElem {
    /// `{"form": …, "terms": [[mask, c], …]}` with nonzero terms by mask.
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| json!([m, scalar_to_json(c)]))
            .collect();
        json!({"form": self.algebra().form().to_json(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let q = QuadForm::from_json(field_of(v, "form")?)?;
        let alg = CliffordAlgebra::new(&q)?;
        let mut x = alg.zero();
        for t in as_array(field_of(v, "terms")?, "a term list")? {
            let Some([m, c]) = t.as_array().map(Vec::as_slice) else {
                return Err(bad("a term [mask, c]"));
            };
            let m = as_index(m)?;
            if m >= alg.size() {
                return Err(Error::Parse(format!("mask {m} out of range")));
            }
            x = x.add(&alg.monomial(m as u32).scale(&scalar_from_json(q.field(), c)?));
        }
        Ok(x)
    }
}

impl Json for SimilitudeTriple {
    fn to_json(&self) -> Value {
        json!({
            "field": self.g[0].field().to_json(),
            "g": self.g.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "lambda": vector_to_json(&self.lambda),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let field = FieldSpec::from_json(field_of(v, "field")?)?;
        let g = matrix_triple_from_json(field, field_of(v, "g")?)?;
        let lambda: [Scalar; 3] = vector_from_json(field, field_of(v, "lambda")?)?
            .try_into()
            .map_err(|_| bad("three multipliers"))?;
        Ok(SimilitudeTriple { g, lambda })
    }
}

pub fn matrix_triple_from_json(field: FieldSpec, v: &Value) -> Result<[Matrix; 3]> {
    let g: Vec<Matrix> = as_array(v, "three matrices")?
        .iter()
        .map(|m| matrix_from_json(field, m))
        .collect::<Result<_>>()?;
    g.try_into().map_err(|_| bad("three matrices"))
}

fn datum_to_json(d: &Datum) -> Value {
    match d {
        Datum::Vector(v) => vector_to_json(v),
        Datum::Count(n) => json!(n),
        Datum::Flag(b) => json!(b),
    }
}

impl Json for Check {
    fn to_json(&self) -> Value {
        let side = |d: &Option<Datum>| d.as_ref().map_or(Value::Null, datum_to_json);
        json!({
            "identity": self.identity,
            "checked": self.checked,
            "failures": self.failures,
            "indices": self.indices,
            "lhs": side(&self.lhs),
            "rhs": side(&self.rhs),
            "pass": self.pass(),
        })
    }

    /// Sides are not recoverable without a field and are dropped.
    fn from_json(v: &Value) -> Result<Self> {
        let count = |k: &str| as_index(field_of(v, k)?);
        let indices = as_array(field_of(v, "indices")?, "an index list")?
            .iter()
            .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad("a string label")))
            .collect::<Result<_>>()?;
        Ok(Check {
            identity: field_of(v, "identity")?.as_str().ok_or_else(|| bad("an identity name"))?.to_owned(),
            checked: count("checked")?,
            failures: count("failures")?,
            indices,
            lhs: None,
            rhs: None,
        })
    }
}

impl Json for Report {
    fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Json::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let checks = as_array(v, "a check list")?.iter().map(Check::from_json).collect::<Result<_>>()?;
        Ok(Report { checks })
    }
}
