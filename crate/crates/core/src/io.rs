//! JSON file formats.
//!
//! * Instance: `{"powers": [..], "friends": [[i, j], ..], "adversaries": [[i, j], ..]}`
//! * Allocation: `{"matrix": [[..], ..]}`
//! * Edge vector: `{"ordering": [[i, j], ..], "v": [..]}`
//! * Solution: `{"method": "..", "ordering": [..], "v": [..], "matrix": [[..], ..]}`
//!
//! Indices are 0-based. Numbers may be JSON numbers or `"p/q"` strings;
//! writers use the string form only for values no decimal represents.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::balanced::EdgeVector;
use crate::error::FormatError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;
use crate::solvers::Method;

pub fn serialize_scalar<T: Scalar, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    x.to_json().serialize(s)
}

pub fn deserialize_scalar<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
    let v = Value::deserialize(d)?;
    T::from_json(&v)
        .ok_or_else(|| serde::de::Error::custom(format!("cannot represent {v} as a scalar")))
}

pub fn serialize_scalars<T: Scalar, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(Scalar::to_json))
}

pub fn serialize_rows<T: Scalar, S: Serializer>(rows: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    powers: Vec<Value>,
    #[serde(default)]
    friends: Vec<(usize, usize)>,
    #[serde(default)]
    adversaries: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawAllocation {
    matrix: Option<Vec<Vec<Value>>>,
    ordering: Option<Vec<(usize, usize)>>,
    v: Option<Vec<Value>>,
}

fn scalar<T: Scalar>(field: &'static str, v: &Value) -> Result<T, FormatError> {
    T::from_json(v).ok_or_else(|| FormatError::Unrepresentable {
        field,
        value: v.to_string(),
    })
}

fn scalars<T: Scalar>(field: &'static str, vs: &[Value]) -> Result<Vec<T>, FormatError> {
    vs.iter().map(|v| scalar(field, v)).collect()
}

pub fn parse_instance<T: Scalar>(text: &str) -> Result<EnvironmentGraph<T>, FormatError> {
    let raw: RawInstance = serde_json::from_str(text)?;
    let powers = scalars("powers", &raw.powers)?;
    Ok(EnvironmentGraph::new(
        powers,
        &raw.friends,
        &raw.adversaries,
    )?)
}

/// Contents of a file passed where an allocation is expected.
#[derive(Debug, Clone, PartialEq)]
pub enum AllocationInput<T> {
    Matrix(AllocationMatrix<T>),
    EdgeVector(EdgeVector<T>),
}

/// Reads an allocation, solution or edge-vector file. A `matrix` field takes
/// precedence; otherwise `v` is read against the adversary pairs of `g`.
pub fn parse_allocation_input<T: Scalar>(
    g: &EnvironmentGraph<T>,
    text: &str,
) -> Result<AllocationInput<T>, FormatError> {
    let raw: RawAllocation = serde_json::from_str(text)?;
    if let Some(rows) = raw.matrix {
        let rows = rows
            .iter()
            .map(|r| scalars("matrix", r))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(AllocationInput::Matrix(AllocationMatrix::from_dense(rows)?));
    }
    let Some(v) = raw.v else {
        return Err(FormatError::Schema(
            "expected a `matrix` or a `v` field".into(),
        ));
    };
    let edges: Vec<_> = g.adversary_edges().collect();
    if let Some(ordering) = raw.ordering {
        let normalised: Vec<_> = ordering
            .iter()
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        if normalised != edges {
            return Err(FormatError::Schema(
                "edge-vector ordering does not match the instance's adversary pairs".into(),
            ));
        }
    }
    if v.len() != edges.len() {
        return Err(FormatError::Schema(format!(
            "edge vector has {} entries but the instance has {} adversary pairs",
            v.len(),
            edges.len()
        )));
    }
    Ok(AllocationInput::EdgeVector(EdgeVector::new(scalars(
        "v", &v,
    )?)?))
}

pub fn parse_allocation<T: Scalar>(text: &str) -> Result<AllocationMatrix<T>, FormatError> {
    let raw: RawAllocation = serde_json::from_str(text)?;
    let rows = raw
        .matrix
        .ok_or_else(|| FormatError::Schema("expected a `matrix` field".into()))?;
    let rows = rows
        .iter()
        .map(|r| scalars("matrix", r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AllocationMatrix::from_dense(rows)?)
}

#[derive(Serialize)]
struct InstanceOut<'a, T: Scalar> {
    #[serde(serialize_with = "serialize_scalars")]
    powers: &'a [T],
    friends: Vec<(usize, usize)>,
    adversaries: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct AllocationOut<T: Scalar> {
    #[serde(serialize_with = "serialize_rows")]
    matrix: Vec<Vec<T>>,
}

#[derive(Serialize)]
struct EdgeVectorOut<'a, T: Scalar> {
    ordering: Vec<(usize, usize)>,
    #[serde(serialize_with = "serialize_scalars")]
    v: &'a [T],
}

#[derive(Serialize)]
struct SolutionOut<'a, T: Scalar> {
    method: Method,
    ordering: Vec<(usize, usize)>,
    #[serde(serialize_with = "serialize_scalars")]
    v: &'a [T],
    #[serde(serialize_with = "serialize_rows")]
    matrix: Vec<Vec<T>>,
}

fn pretty<S: Serialize>(value: &S) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    text
}

pub fn write_instance<T: Scalar>(g: &EnvironmentGraph<T>) -> String {
    pretty(&InstanceOut {
        powers: g.powers(),
        friends: g.friend_edges().collect(),
        adversaries: g.adversary_edges().collect(),
    })
}

pub fn write_allocation<T: Scalar>(u: &AllocationMatrix<T>) -> String {
    pretty(&AllocationOut {
        matrix: u.to_dense(),
    })
}

pub fn write_edge_vector<T: Scalar>(g: &EnvironmentGraph<T>, v: &EdgeVector<T>) -> String {
    pretty(&EdgeVectorOut {
        ordering: g.adversary_edges().collect(),
        v: v.as_slice(),
    })
}

pub fn write_solution<T: Scalar>(
    g: &EnvironmentGraph<T>,
    method: Method,
    v: &EdgeVector<T>,
    u: &AllocationMatrix<T>,
) -> String {
    pretty(&SolutionOut {
        method,
        ordering: g.adversary_edges().collect(),
        v: v.as_slice(),
        matrix: u.to_dense(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    const TRIANGLE: &str = r#"{"powers": [8, 6, 4], "adversaries": [[0, 1], [0, 2], [1, 2]]}"#;

    #[test]
    fn reads_instances() {
        let g: EnvironmentGraph<Exact> = parse_instance(TRIANGLE).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.adversary_edge_count(), 3);
        let f: EnvironmentGraph<f64> = parse_instance(TRIANGLE).unwrap();
        assert_eq!(f.powers(), &[8.0, 6.0, 4.0]);
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(matches!(
            parse_instance::<Exact>("{"),
            Err(FormatError::Json(_))
        ));
        assert!(matches!(
            parse_instance::<Exact>(r#"{"powers": [1], "weights": []}"#),
            Err(FormatError::Json(_))
        ));
        assert!(matches!(
            parse_instance::<Exact>(r#"{"powers": [-1]}"#),
            Err(FormatError::Model(_))
        ));
        assert!(matches!(
            parse_instance::<Exact>(r#"{"powers": [1e300]}"#),
            Err(FormatError::Unrepresentable { .. })
        ));
    }

    #[test]
    fn instance_round_trip() {
        let text = r#"{"powers": [1.5, "1/3", 2], "friends": [[1, 0]], "adversaries": [[2, 0]]}"#;
        let g: EnvironmentGraph<Exact> = parse_instance(text).unwrap();
        let written = write_instance(&g);
        assert_eq!(parse_instance::<Exact>(&written).unwrap(), g);
        assert!(written.contains("\"1/3\""));
    }

    #[test]
    fn detects_matrix_and_edge_vector_files() {
        let g: EnvironmentGraph<Exact> = parse_instance(TRIANGLE).unwrap();
        let m = parse_allocation_input(&g, r#"{"matrix": [[0,5,3],[5,0,1],[3,1,0]]}"#).unwrap();
        assert!(matches!(m, AllocationInput::Matrix(_)));
        let v = parse_allocation_input(&g, r#"{"ordering": [[0,1],[0,2],[1,2]], "v": [5,3,1]}"#)
            .unwrap();
        assert!(matches!(v, AllocationInput::EdgeVector(_)));
        assert!(parse_allocation_input(&g, r#"{"ordering": [[0,1]], "v": [5]}"#).is_err());
        assert!(parse_allocation_input(&g, r#"{"v": [5, 3]}"#).is_err());
        assert!(parse_allocation_input(&g, "{}").is_err());
    }

    #[test]
    fn solution_file_reads_back_as_matrix() {
        let g: EnvironmentGraph<Exact> = parse_instance(TRIANGLE).unwrap();
        let u = parse_allocation::<Exact>(r#"{"matrix": [[0,5,3],[5,0,1],[3,1,0]]}"#).unwrap();
        let v = crate::balanced::beta(&g, &u).unwrap();
        let text = write_solution(&g, Method::Complete, &v, &u);
        assert!(text.contains("\"method\": \"complete\""));
        match parse_allocation_input(&g, &text).unwrap() {
            AllocationInput::Matrix(back) => assert_eq!(back, u),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_allocation_input(&g, &write_edge_vector(&g, &v)).unwrap(),
            AllocationInput::EdgeVector(v)
        );
    }
}
