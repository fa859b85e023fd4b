//! JSON codecs for algebras and forms.
//!
//! An algebra document looks like
//!
//! ```json
//! {"field":"R","dim":2,"parity":[0,1],"unit":["1","0"],
//!  "structure":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]}
//! ```
//!
//! `structure` is written as sparse entries `[i, j, k, "c"]` meaning
//! `e_i e_j` has coefficient `c` on `e_k`. On input a dense
//! `dim × dim × dim` nested array is accepted as well. Scalars are exact
//! strings; JSON integers are accepted on input.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{GradedAlgebra, TensorSign};
use crate::clifford::DiagonalForm;
use crate::error::{Error, Result};
use crate::scalar::{FieldTag, PointField};
use crate::{ComplexAlgebra, ComplexForm, RealAlgebra, RealForm};

/// An algebra over either point field, as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Real(RealAlgebra),
    Complex(ComplexAlgebra),
}

/// A diagonal form over either point field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Real(RealForm),
    Complex(ComplexForm),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    field: FieldTag,
    dim: usize,
    parity: Vec<u8>,
    unit: Vec<Value>,
    structure: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormDoc {
    field: FieldTag,
    entries: Vec<Value>,
}

fn scalar<F: PointField>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => F::parse_scalar(s),
        Value::Number(n) if n.is_i64() => Ok(F::from_i64(n.as_i64().unwrap())),
        other => Err(Error::Parse(format!("expected an exact scalar string, got {other}"))),
    }
}

fn index(v: &Value, dim: usize) -> Result<usize> {
    let i = v
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("expected a basis index, got {v}")))? as usize;
    if i >= dim {
        return Err(Error::DimensionMismatch(format!("basis index {i} out of range for dim {dim}")));
    }
    Ok(i)
}

fn algebra_to_value<F: PointField>(a: &GradedAlgebra<F>) -> Value {
    let dim = a.dim();
    let mut structure = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in a.product(i, j) {
                structure.push(json!([i, j, k, c.format_scalar()]));
            }
        }
    }
    json!({
        "field": F::TAG,
        "dim": dim,
        "parity": a.parity(),
        "unit": a.unit().iter().map(PointField::format_scalar).collect::<Vec<_>>(),
        "structure": structure,
    })
}

fn algebra_from_doc<F: PointField>(doc: AlgebraDoc) -> Result<GradedAlgebra<F>> {
    let dim = doc.dim;
    if doc.parity.len() != dim {
        return Err(Error::DimensionMismatch(format!("parity has length {}, dim is {dim}", doc.parity.len())));
    }
    if let Some(p) = doc.parity.iter().find(|p| **p > 1) {
        return Err(Error::Parse(format!("parity entries are 0 or 1, got {p}")));
    }
    let unit = doc.unit.iter().map(scalar::<F>).collect::<Result<Vec<_>>>()?;
    let Value::Array(entries) = doc.structure else {
        return Err(Error::Parse("structure must be an array".into()));
    };
    let dense = entries.first().and_then(Value::as_array).and_then(|r| r.first()).is_some_and(Value::is_array);
    if dense {
        let structure = entries
            .iter()
            .map(|plane| {
                plane
                    .as_array()
                    .ok_or_else(|| Error::Parse("dense structure must be a nested array".into()))?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::Parse("dense structure must be a nested array".into()))?
                            .iter()
                            .map(scalar::<F>)
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return GradedAlgebra::from_dense(doc.parity, unit, structure);
    }
    let mut products = vec![Vec::new(); dim * dim];
    for e in &entries {
        let quad = e.as_array().filter(|q| q.len() == 4).ok_or_else(|| {
            Error::Parse(format!("sparse structure entries are [i, j, k, \"value\"], got {e}"))
        })?;
        let (i, j, k) = (index(&quad[0], dim)?, index(&quad[1], dim)?, index(&quad[2], dim)?);
        products[i * dim + j].push((k, scalar::<F>(&quad[3])?));
    }
    GradedAlgebra::from_sparse(doc.parity, unit, products)
}

impl AnyAlgebra {
    pub fn from_value(v: Value) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        match doc.field {
            FieldTag::RealPoint => algebra_from_doc(doc).map(AnyAlgebra::Real),
            FieldTag::ComplexPoint => algebra_from_doc(doc).map(AnyAlgebra::Complex),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(v)
    }

    pub fn to_value(&self) -> Value {
        match self {
            AnyAlgebra::Real(a) => algebra_to_value(a),
            AnyAlgebra::Complex(a) => algebra_to_value(a),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    pub fn field(&self) -> FieldTag {
        match self {
            AnyAlgebra::Real(_) => FieldTag::RealPoint,
            AnyAlgebra::Complex(_) => FieldTag::ComplexPoint,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AnyAlgebra::Real(a) => a.validate(),
            AnyAlgebra::Complex(a) => a.validate(),
        }
    }

    /// Graded tensor product; both factors must live over the same point.
    pub fn graded_tensor(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyAlgebra::Real(a), AnyAlgebra::Real(b)) => Ok(AnyAlgebra::Real(a.tensor_with(b, TensorSign::Koszul))),
            (AnyAlgebra::Complex(a), AnyAlgebra::Complex(b)) => {
                Ok(AnyAlgebra::Complex(a.tensor_with(b, TensorSign::Koszul)))
            }
            _ => Err(Error::FieldMismatch(format!("cannot tensor an {} algebra with a {} algebra", self.field(), other.field()))),
        }
    }
}

impl From<RealAlgebra> for AnyAlgebra {
    fn from(a: RealAlgebra) -> Self {
        AnyAlgebra::Real(a)
    }
}

impl From<ComplexAlgebra> for AnyAlgebra {
    fn from(a: ComplexAlgebra) -> Self {
        AnyAlgebra::Complex(a)
    }
}

fn form_to_value<F: PointField>(f: &DiagonalForm<F>) -> Value {
    json!({
        "field": F::TAG,
        "entries": f.entries().iter().map(PointField::format_scalar).collect::<Vec<_>>(),
    })
}

fn form_from_doc<F: PointField>(doc: &FormDoc) -> Result<DiagonalForm<F>> {
    DiagonalForm::new(doc.entries.iter().map(scalar::<F>).collect::<Result<Vec<_>>>()?)
}

impl AnyForm {
    /// Parses the comma-separated syntax `"1,1,-1"` at the given point.
    pub fn parse(text: &str, field: FieldTag) -> Result<Self> {
        Ok(match field {
            FieldTag::RealPoint => AnyForm::Real(DiagonalForm::parse(text)?),
            FieldTag::ComplexPoint => AnyForm::Complex(DiagonalForm::parse(text)?),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FormDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(match doc.field {
            FieldTag::RealPoint => AnyForm::Real(form_from_doc(&doc)?),
            FieldTag::ComplexPoint => AnyForm::Complex(form_from_doc(&doc)?),
        })
    }

    pub fn to_value(&self) -> Value {
        match self {
            AnyForm::Real(f) => form_to_value(f),
            AnyForm::Complex(f) => form_to_value(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{clifford, quaternion_algebra};
    use crate::{GaussianRational, Rational};

    #[test]
    fn algebra_round_trip_is_exact() {
        let form = RealForm::parse("1/3,-2,5/7").unwrap();
        let a: AnyAlgebra = clifford(&form).unwrap().into();
        let text = a.to_json();
        let back = AnyAlgebra::from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), text);

        let form = ComplexForm::parse("1+1 i,-1/2 i").unwrap();
        let c: AnyAlgebra = clifford(&form).unwrap().into();
        let text = c.to_json();
        assert_eq!(AnyAlgebra::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn dense_input_matches_sparse() {
        let dense = r#"{"field":"R","dim":2,"parity":[0,1],"unit":["1","0"],
            "structure":[[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]}"#;
        let a = AnyAlgebra::from_json(dense).unwrap();
        let expected = clifford(&RealForm::from_ints(&[-1]).unwrap()).unwrap();
        assert_eq!(a, AnyAlgebra::Real(expected));
        a.validate().unwrap();
    }

    #[test]
    fn integers_are_accepted_as_scalars() {
        let text = r#"{"field":"R","dim":1,"parity":[0],"unit":[1],"structure":[[0,0,0,1]]}"#;
        assert_eq!(AnyAlgebra::from_json(text).unwrap(), AnyAlgebra::Real(RealAlgebra::ground()));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let floats = r#"{"field":"R","dim":1,"parity":[0],"unit":[1.0],"structure":[]}"#;
        assert!(matches!(AnyAlgebra::from_json(floats), Err(Error::Parse(_))));
        let range = r#"{"field":"R","dim":1,"parity":[0],"unit":["1"],"structure":[[0,0,3,"1"]]}"#;
        assert!(matches!(AnyAlgebra::from_json(range), Err(Error::DimensionMismatch(_))));
        let field = r#"{"field":"H","dim":1,"parity":[0],"unit":["1"],"structure":[]}"#;
        assert!(AnyAlgebra::from_json(field).is_err());
        let parity = r#"{"field":"R","dim":1,"parity":[2],"unit":["1"],"structure":[]}"#;
        assert!(AnyAlgebra::from_json(parity).is_err());
    }

    #[test]
    fn mixed_fields_do_not_tensor() {
        let r = AnyAlgebra::Real(quaternion_algebra(Rational::from_integer((-1).into()), Rational::from_integer((-1).into())));
        let c = AnyAlgebra::Complex(GradedAlgebra::<GaussianRational>::ground());
        assert!(matches!(r.graded_tensor(&c), Err(Error::FieldMismatch(_))));
        assert_eq!(r.graded_tensor(&r).unwrap().field(), FieldTag::RealPoint);
    }

    #[test]
    fn form_codec() {
        let f = AnyForm::parse("1,-1/2", FieldTag::RealPoint).unwrap();
        let text = f.to_value().to_string();
        assert_eq!(text, r#"{"entries":["1","-1/2"],"field":"R"}"#);
        assert_eq!(AnyForm::from_json(&text).unwrap(), f);
        assert!(matches!(AnyForm::parse("1,0", FieldTag::RealPoint), Err(Error::ZeroEntry { .. })));
    }
}
