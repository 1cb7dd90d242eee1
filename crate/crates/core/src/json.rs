//! JSON forms of the main objects. Scalars are strings (`"-3/2"`), vectors
//! are maps from basis names to non-zero coefficients, and every map is
//! ordered so that output is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{BasisElement, GradedAlgebra};
use crate::cochain::Cochain2;
use crate::deformation::DeformationTriple;
use crate::error::Result;
use crate::scalar::{Field, Scalar};
use crate::structure::PmnCoordinates;

/// File format for an algebra: structure constants as `[i, j, k, "c"]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: String,
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    pub constants: Vec<(usize, usize, usize, String)>,
}

pub fn algebra_to_file(a: &GradedAlgebra) -> AlgebraFile {
    AlgebraFile {
        field: a.field().to_string(),
        basis: a.basis().to_vec(),
        unit: a.unit(),
        constants: a.constants().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect(),
    }
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<GradedAlgebra> {
    let field: Field = file.field.parse()?;
    let constants = file
        .constants
        .iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, field.parse(c)?)))
        .collect::<Result<Vec<_>>>()?;
    GradedAlgebra::new(field, file.basis.clone(), file.unit, constants)
}

/// Parses an [`AlgebraFile`] from JSON text.
pub fn parse_algebra(text: &str) -> Result<GradedAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    algebra_from_file(&file)
}

pub fn algebra_to_json(a: &GradedAlgebra) -> Value {
    serde_json::to_value(algebra_to_file(a)).expect("algebra serializes")
}

/// `{name: "c"}` over the non-zero coordinates.
pub fn vector_to_json(a: &GradedAlgebra, v: &[Scalar]) -> Value {
    let map: BTreeMap<&str, String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (a.name(i), c.to_string()))
        .collect();
    json!(map)
}

/// Non-zero values `ψ(x, y)` as `{"x": .., "y": .., "value": {..}}`.
pub fn cochain_to_json(a: &GradedAlgebra, psi: &Cochain2) -> Value {
    let values: Vec<Value> = psi
        .entries()
        .map(|(i, j, v)| json!({"x": a.name(i), "y": a.name(j), "value": vector_to_json(a, v)}))
        .collect();
    json!({"d": psi.d(), "values": values})
}

pub fn triple_to_json(t: &DeformationTriple) -> Value {
    let big = t.big();
    let j: BTreeMap<&str, Value> = (0..big.dim())
        .map(|i| (big.name(i), vector_to_json(t.base(), t.j().image(i))))
        .collect();
    json!({
        "d": t.d(),
        "t": big.name(t.t_index()),
        "algebra": algebra_to_json(big),
        "base": algebra_to_json(t.base()),
        "j": j,
    })
}

pub fn coordinates_to_json(c: &PmnCoordinates) -> Value {
    let strings = |m: BTreeMap<String, Scalar>| -> BTreeMap<String, String> {
        m.into_iter().map(|(k, v)| (k, v.to_string())).collect()
    };
    json!({
        "m": c.m,
        "n": c.n,
        "d": c.d,
        "field": c.field.to_string(),
        "a": strings(c.a_terms()),
        "b": strings(c.b_terms()),
    })
}

/// Parses a list of scalars such as `"1, -2/3, 0"`; empty input gives an
/// empty list.
pub fn parse_scalars(field: Field, text: &str) -> Result<Vec<Scalar>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| field.parse(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pmn;

    #[test]
    fn algebra_round_trip() {
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            let a = pmn(2, 1, field).unwrap();
            let text = serde_json::to_string(&algebra_to_file(&a)).unwrap();
            assert_eq!(parse_algebra(&text).unwrap(), a);
        }
    }

    #[test]
    fn vectors_are_name_maps() {
        let q = Field::Rational;
        let a = pmn(1, 1, q).unwrap();
        let mut v = a.zero();
        v[1] = q.parse("-3/2").unwrap();
        assert_eq!(vector_to_json(&a, &v), json!({"u^0*v^1": "-3/2"}));
    }

    #[test]
    fn scalar_lists() {
        let q = Field::Rational;
        assert_eq!(parse_scalars(q, "1, -2/3").unwrap(), vec![q.one(), q.parse("-2/3").unwrap()]);
        assert!(parse_scalars(q, "").unwrap().is_empty());
        assert!(parse_scalars(q, "x").is_err());
    }
}
