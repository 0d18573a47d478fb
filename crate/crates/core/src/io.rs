//! JSON formats for integer matrices, group-ring matrices, chain complexes and
//! simplicial complexes.
//!
//! * integer matrix: array of rows; entries are JSON integers or decimal strings
//! * group-ring matrix: array of rows; entries are polynomial strings or integers
//! * complex: `{"ring": "Z" | {"laurent_rank": n}, "ranks": [...], "differentials": [...]}`
//! * simplicial complex: `{"vertices": v, "facets": [[0, 1], ...]}`

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::groupring::{parse_poly, GroupRingMatrix};
use crate::torsionlab::{GRChainComplex, IntChainComplex, SimplicialComplex};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn rows_of(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid("matrix must be an array of rows"))
}

fn shape(rows: &[Value], expected: Option<(usize, usize)>) -> Result<(usize, usize)> {
    let r = rows.len();
    let c = match rows.first() {
        Some(row) => row
            .as_array()
            .ok_or_else(|| invalid("matrix row must be an array"))?
            .len(),
        None => expected.map_or(0, |e| e.1),
    };
    if let Some(e) = expected {
        if e != (r, c) {
            return Err(Error::Shape(format!(
                "matrix is {r}x{c}, expected {}x{}",
                e.0, e.1
            )));
        }
    }
    Ok((r, c))
}

fn parse_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| invalid(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| invalid(format!("{s:?} is not a decimal integer"))),
        other => Err(invalid(format!("{other} is not an integer entry"))),
    }
}

/// Integer matrix from JSON; `expected` fixes the shape of empty matrices.
pub fn int_matrix_from_json(v: &Value, expected: Option<(usize, usize)>) -> Result<IntMatrix> {
    let rows = rows_of(v)?;
    let (r, c) = shape(rows, expected)?;
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| invalid("matrix row must be an array"))?;
        if row.len() != c {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        for x in row {
            data.push(parse_integer(x)?);
        }
    }
    IntMatrix::from_vec(r, c, data)
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| {
                            x.to_i64()
                                .map_or_else(|| json!(x.to_string()), |n| json!(n))
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Group-ring matrix over ℚ[ℤ^rank] from JSON.
pub fn gr_matrix_from_json(
    v: &Value,
    rank: usize,
    expected: Option<(usize, usize)>,
) -> Result<GroupRingMatrix> {
    let rows = rows_of(v)?;
    let (r, c) = shape(rows, expected)?;
    let mut entries = Vec::with_capacity(r * c);
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| invalid("matrix row must be an array"))?;
        if row.len() != c {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        for x in row {
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(invalid(format!("{other} is not a polynomial entry"))),
            };
            entries.push(parse_poly(&text, rank)?);
        }
    }
    GroupRingMatrix::new(rank, r, c, entries)
}

pub fn gr_matrix_to_json(m: &GroupRingMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| json!(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// A complex over ℤ or over ℤ[ℤⁿ].
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexInput {
    Integer(IntChainComplex),
    GroupRing(GRChainComplex),
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })
}

pub fn complex_from_json(v: &Value) -> Result<ComplexInput> {
    let ranks: Vec<usize> = v
        .get("ranks")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("complex needs a \"ranks\" array"))?
        .iter()
        .map(|r| {
            r.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| invalid("ranks must be natural numbers"))
        })
        .collect::<Result<_>>()?;
    let diffs = v
        .get("differentials")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("complex needs a \"differentials\" array"))?;
    if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
        return Err(Error::MalformedComplex(format!(
            "{} ranks but {} differentials",
            ranks.len(),
            diffs.len()
        )));
    }
    let shape_of = |k: usize| Some((ranks[k], ranks[k + 1]));
    match v.get("ring") {
        Some(Value::String(s)) if s == "Z" => {
            let ms = diffs
                .iter()
                .enumerate()
                .map(|(k, d)| int_matrix_from_json(d, shape_of(k)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComplexInput::Integer(IntChainComplex::new(ranks, ms)?))
        }
        Some(Value::Object(o)) => {
            let rank = o
                .get("laurent_rank")
                .and_then(Value::as_u64)
                .ok_or_else(|| invalid("ring object needs \"laurent_rank\""))?
                as usize;
            let ms = diffs
                .iter()
                .enumerate()
                .map(|(k, d)| gr_matrix_from_json(d, rank, shape_of(k)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComplexInput::GroupRing(GRChainComplex::new(
                rank, ranks, ms,
            )?))
        }
        _ => Err(invalid("\"ring\" must be \"Z\" or {\"laurent_rank\": n}")),
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexInput> {
    complex_from_json(&parse_json(text)?)
}

pub fn complex_to_json(c: &ComplexInput) -> Value {
    match c {
        ComplexInput::Integer(c) => json!({
            "ring": "Z",
            "ranks": c.ranks(),
            "differentials": c.differentials().iter().map(int_matrix_to_json).collect::<Vec<_>>(),
        }),
        ComplexInput::GroupRing(c) => json!({
            "ring": {"laurent_rank": c.ambient_rank()},
            "ranks": c.ranks(),
            "differentials": c.differentials().iter().map(gr_matrix_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn parse_simplicial(text: &str) -> Result<SimplicialComplex> {
    let raw: SimplicialComplex = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    SimplicialComplex::new(raw.vertices, raw.facets)
}

pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    int_matrix_from_json(&parse_json(text)?, None)
}

pub fn parse_gr_matrix(text: &str, rank: usize) -> Result<GroupRingMatrix> {
    gr_matrix_from_json(&parse_json(text)?, rank, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_matrix_round_trip() {
        let m = parse_int_matrix(r#"[[1, "-2"], ["123456789012345678901234567890", 0]]"#).unwrap();
        assert_eq!(m[(0, 1)], BigInt::from(-2));
        assert_eq!(
            parse_int_matrix(&int_matrix_to_json(&m).to_string()).unwrap(),
            m
        );
        assert!(parse_int_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_int_matrix("[[1.5]]").is_err());
    }

    #[test]
    fn complexes() {
        let z = r#"{"ring": "Z", "ranks": [1, 2], "differentials": [[[-1, 2]]]}"#;
        let ComplexInput::Integer(c) = parse_complex(z).unwrap() else {
            panic!()
        };
        assert_eq!(c.ranks(), &[1, 2]);
        let back = complex_to_json(&ComplexInput::Integer(c.clone()));
        assert_eq!(
            parse_complex(&back.to_string()).unwrap(),
            ComplexInput::Integer(c)
        );

        let gr = r#"{"ring": {"laurent_rank": 1}, "ranks": [2, 2], "differentials": [[["1 - 2*z", "-z"], ["-z", "1 - z"]]]}"#;
        let parsed = parse_complex(gr).unwrap();
        assert!(matches!(parsed, ComplexInput::GroupRing(_)));
        assert_eq!(
            parse_complex(&complex_to_json(&parsed).to_string()).unwrap(),
            parsed
        );

        let empty = r#"{"ring": "Z", "ranks": [0, 3], "differentials": [[]]}"#;
        assert!(parse_complex(empty).is_ok());
        assert!(parse_complex(r#"{"ring": "Q", "ranks": [1], "differentials": []}"#).is_err());
        assert!(parse_complex(
            r#"{"ring": "Z", "ranks": [1, 1, 1], "differentials": [[[1]], [[1]]]}"#
        )
        .is_err());
        assert!(parse_complex("not json").is_err());
    }

    #[test]
    fn simplicial() {
        let s = parse_simplicial(r#"{"vertices": 3, "facets": [[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(s.facets.len(), 3);
        assert!(parse_simplicial(r#"{"vertices": 2, "facets": [[0,5]]}"#).is_err());
    }
}
