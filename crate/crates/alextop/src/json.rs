//! JSON wire formats.
//!
//! Three payload kinds, told apart by their distinguishing field:
//!
//! * topology — `{"points": ["a","b"], "opens": [[], ["b"], ["a","b"]]}`
//! * closure map — `{"points": ["a","b"], "closure": {"a": ["a"], "b": ["a","b"]}}`
//! * quasi-metric — `{"points": ["a","b"], "dist": [["0","0"],["1","0"]]}`
//!
//! Member lists are sets: order-insensitive on input, canonical (carrier
//! order within a set, indicator-word order across sets) on output.
//! Distance entries are exact rationals written as `"p/q"` or bare
//! integer strings; rows are distances *from* the row's point.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::carrier::{CarrierError, PointSubset, PointUniverse, SetFamily};
use crate::closure_map::{ClosureMapViolation, PointClosureMap};
use crate::qmetric::{MetricError, QuasiMetric, Rational};
use crate::report::ValidationReport;
use crate::topology::{FamilyViolation, FiniteTopology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {message}")]
    Syntax { message: String },
    #[error("schema violation: {message}")]
    Schema { message: String },
    #[error("payload must contain exactly one of the fields \"opens\", \"closure\", \"dist\"")]
    UnknownPayloadKind,
    #[error("field \"points\": {0}")]
    Points(CarrierError),
    #[error("field {field:?}: unknown point label {label:?}")]
    UnknownLabel { field: &'static str, label: String },
    #[error("field \"closure\": missing key for point {label:?}")]
    MissingClosureKey { label: String },
    #[error("field \"closure\": unknown key {label:?}")]
    UnknownClosureKey { label: String },
    #[error("field \"dist\": expected {n} rows of {n} entries each")]
    DistShape { n: usize },
    #[error("field \"dist\", row {row}, column {col}: {problem}")]
    BadRational { row: usize, col: usize, problem: String },
}

/// A parse failure (schema level) or a construction failure (the payload
/// is well-formed but describes an invalid object, e.g. a negative
/// distance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PayloadError {
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// A successfully constructed payload. A topology payload is delivered as
/// its raw set family so that callers can diagnose axiom failures
/// themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Family(SetFamily),
    ClosureMap(PointClosureMap),
    Metric(QuasiMetric),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Family(_) => "topology",
            Payload::ClosureMap(_) => "closure map",
            Payload::Metric(_) => "quasi-metric",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyWire {
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClosureMapWire {
    points: Vec<String>,
    closure: std::collections::BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricWire {
    points: Vec<String>,
    dist: Vec<Vec<String>>,
}

pub fn parse_payload(text: &str) -> Result<Payload, PayloadError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| JsonError::Syntax { message: e.to_string() })?;
    let keys = ["opens", "closure", "dist"]
        .into_iter()
        .filter(|k| value.get(k).is_some())
        .collect::<Vec<_>>();
    match keys.as_slice() {
        ["opens"] => Ok(Payload::Family(parse_topology_family(value)?)),
        ["closure"] => Ok(Payload::ClosureMap(parse_closure_map(value)?)),
        ["dist"] => Ok(Payload::Metric(parse_quasimetric(value)?)),
        _ => Err(JsonError::UnknownPayloadKind.into()),
    }
}

fn schema<T: serde::de::DeserializeOwned>(value: Value) -> Result<T, JsonError> {
    serde_json::from_value(value).map_err(|e| JsonError::Schema { message: e.to_string() })
}

fn parse_points(points: Vec<String>) -> Result<Arc<PointUniverse>, JsonError> {
    PointUniverse::new(points).map(Arc::new).map_err(JsonError::Points)
}

fn parse_subset(
    universe: &Arc<PointUniverse>,
    labels: &[String],
    field: &'static str,
) -> Result<PointSubset, JsonError> {
    PointSubset::from_labels(universe, labels.iter().map(String::as_str)).map_err(|e| match e {
        CarrierError::UnknownLabel { label } => JsonError::UnknownLabel { field, label },
        other => JsonError::Points(other),
    })
}

fn parse_topology_family(value: Value) -> Result<SetFamily, JsonError> {
    let wire: TopologyWire = schema(value)?;
    let universe = parse_points(wire.points)?;
    let sets = wire
        .opens
        .iter()
        .map(|labels| parse_subset(&universe, labels, "opens"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetFamily::new(&universe, sets).expect("subsets were built over this carrier"))
}

fn parse_closure_map(value: Value) -> Result<PointClosureMap, JsonError> {
    let wire: ClosureMapWire = schema(value)?;
    let universe = parse_points(wire.points)?;
    if let Some(label) = wire.closure.keys().find(|k| universe.index_of(k).is_none()) {
        return Err(JsonError::UnknownClosureKey { label: label.clone() });
    }
    let mut images = Vec::with_capacity(universe.len());
    for x in 0..universe.len() {
        let label = universe.label(x);
        let members = wire
            .closure
            .get(label)
            .ok_or_else(|| JsonError::MissingClosureKey { label: label.to_string() })?;
        images.push(parse_subset(&universe, members, "closure")?);
    }
    Ok(PointClosureMap::new(&universe, images).expect("one image per point over this carrier"))
}

fn parse_quasimetric(value: Value) -> Result<QuasiMetric, PayloadError> {
    let wire: MetricWire = schema(value)?;
    let universe = parse_points(wire.points)?;
    let n = universe.len();
    if wire.dist.len() != n || wire.dist.iter().any(|row| row.len() != n) {
        return Err(JsonError::DistShape { n }.into());
    }
    let mut entries = Vec::with_capacity(n * n);
    for (row, row_entries) in wire.dist.iter().enumerate() {
        for (col, token) in row_entries.iter().enumerate() {
            let rational = parse_rational(token)
                .map_err(|problem| JsonError::BadRational { row, col, problem })?;
            entries.push(rational);
        }
    }
    Ok(QuasiMetric::new(&universe, entries)?)
}

/// Parse `"p/q"` or a bare integer string into an exact rational.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let (numer, denom) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| format!("cannot parse {numer:?} as an integer"))?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| format!("cannot parse {d:?} as an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text for a rational: reduced `p/q`, or a bare integer when
/// the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

fn points_value(universe: &PointUniverse) -> Value {
    Value::from(universe.labels().to_vec())
}

pub fn subset_value(set: &PointSubset) -> Value {
    Value::from(set.labels().map(str::to_string).collect::<Vec<_>>())
}

fn word_value(universe: &PointUniverse, word: u64) -> Value {
    Value::from(
        (0..universe.len())
            .filter(|&i| word >> i & 1 == 1)
            .map(|i| universe.label(i).to_string())
            .collect::<Vec<_>>(),
    )
}

pub fn family_value(family: &SetFamily) -> Value {
    json!({
        "points": points_value(family.universe()),
        "opens": family.sets().iter().map(subset_value).collect::<Vec<_>>(),
    })
}

pub fn topology_value(t: &FiniteTopology) -> Value {
    family_value(t.opens())
}

pub fn closure_map_value(m: &PointClosureMap) -> Value {
    let universe = m.universe();
    let mut closure = Map::new();
    for (x, image) in m.images().iter().enumerate() {
        closure.insert(universe.label(x).to_string(), subset_value(image));
    }
    json!({
        "points": points_value(universe),
        "closure": closure,
    })
}

pub fn quasimetric_value(d: &QuasiMetric) -> Value {
    let n = d.universe().len();
    let rows: Vec<Value> = (0..n)
        .map(|x| {
            Value::from(
                (0..n)
                    .map(|y| format_rational(d.distance(x, y)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    json!({
        "points": points_value(d.universe()),
        "dist": rows,
    })
}

fn report_value(violations: Vec<Value>) -> Value {
    json!({
        "valid": violations.is_empty(),
        "violations": violations,
    })
}

pub fn closure_map_report_value(
    report: &ValidationReport<ClosureMapViolation>,
    universe: &PointUniverse,
) -> Value {
    let label = |x: usize| universe.label(x).to_string();
    let violations = report
        .violations()
        .iter()
        .map(|v| match *v {
            ClosureMapViolation::NotInjective { x, y } => {
                json!({"kind": "not_injective", "x": label(x), "y": label(y)})
            }
            ClosureMapViolation::NotExtensive { x } => {
                json!({"kind": "not_extensive", "x": label(x)})
            }
            ClosureMapViolation::NotHereditary { x, y } => {
                json!({"kind": "not_hereditary", "x": label(x), "y": label(y)})
            }
        })
        .collect();
    report_value(violations)
}

pub fn metric_report_value(
    report: &ValidationReport<crate::qmetric::MetricViolation>,
    universe: &PointUniverse,
) -> Value {
    use crate::qmetric::MetricViolation;
    let label = |x: usize| universe.label(x).to_string();
    let violations = report
        .violations()
        .iter()
        .map(|v| match *v {
            MetricViolation::NonzeroDiagonal { x } => {
                json!({"kind": "nonzero_diagonal", "x": label(x)})
            }
            MetricViolation::Triangle { from, to, via } => {
                json!({"kind": "triangle", "from": label(from), "to": label(to), "via": label(via)})
            }
            MetricViolation::Separation { from, to } => {
                json!({"kind": "separation", "x": label(from), "y": label(to)})
            }
        })
        .collect();
    report_value(violations)
}

pub fn family_report_value(
    report: &ValidationReport<FamilyViolation>,
    universe: &PointUniverse,
) -> Value {
    let violations = report
        .violations()
        .iter()
        .map(|v| match *v {
            FamilyViolation::MissingEmptySet => json!({"kind": "missing_empty_set"}),
            FamilyViolation::MissingCarrier => json!({"kind": "missing_carrier"}),
            FamilyViolation::UnionMissing { a, b } => json!({
                "kind": "union_missing",
                "a": word_value(universe, a),
                "b": word_value(universe, b),
            }),
            FamilyViolation::IntersectionMissing { a, b } => json!({
                "kind": "intersection_missing",
                "a": word_value(universe, a),
                "b": word_value(universe, b),
            }),
        })
        .collect();
    report_value(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Payload {
        parse_payload(text).unwrap()
    }

    #[test]
    fn topology_payload_round_trips() {
        let text = r#"{"points": ["a", "b"], "opens": [[], ["b"], ["a", "b"]]}"#;
        let Payload::Family(family) = parse(text) else { panic!("expected topology") };
        assert_eq!(family.words().collect::<Vec<_>>(), vec![0b00, 0b10, 0b11]);
        let emitted = family_value(&family);
        assert_eq!(
            serde_json::to_string(&emitted).unwrap(),
            r#"{"points":["a","b"],"opens":[[],["b"],["a","b"]]}"#
        );
        // Member order is irrelevant on input; output is canonical.
        let shuffled = r#"{"points": ["a", "b"], "opens": [["b", "a"], ["b"], []]}"#;
        let Payload::Family(same) = parse(shuffled) else { panic!() };
        assert_eq!(family, same);
    }

    #[test]
    fn closure_map_payload_round_trips() {
        let text = r#"{"points": ["a", "b"], "closure": {"a": ["a"], "b": ["a", "b"]}}"#;
        let Payload::ClosureMap(map) = parse(text) else { panic!("expected closure map") };
        assert_eq!(map.image(0).word(), 0b01);
        assert_eq!(map.image(1).word(), 0b11);
        assert_eq!(
            serde_json::to_string(&closure_map_value(&map)).unwrap(),
            r#"{"points":["a","b"],"closure":{"a":["a"],"b":["a","b"]}}"#
        );
    }

    #[test]
    fn quasimetric_payload_round_trips() {
        let text = r#"{"points": ["a", "b"], "dist": [["0", "0"], ["1/2", "0"]]}"#;
        let Payload::Metric(metric) = parse(text) else { panic!("expected quasi-metric") };
        assert_eq!(*metric.distance(1, 0), Rational::new(1.into(), 2.into()));
        assert_eq!(
            serde_json::to_string(&quasimetric_value(&metric)).unwrap(),
            r#"{"points":["a","b"],"dist":[["0","0"],["1/2","0"]]}"#
        );
    }

    #[test]
    fn unknown_payload_kinds_are_rejected() {
        let err = parse_payload(r#"{"points": ["a"]}"#).unwrap_err();
        assert_eq!(err, PayloadError::Json(JsonError::UnknownPayloadKind));
        let err = parse_payload(r#"{"opens": [], "dist": []}"#).unwrap_err();
        assert_eq!(err, PayloadError::Json(JsonError::UnknownPayloadKind));
    }

    #[test]
    fn schema_violations_name_the_field() {
        let err = parse_payload(r#"{"points": ["a"], "opens": [[]], "extra": 1}"#).unwrap_err();
        let PayloadError::Json(JsonError::Schema { message }) = err else { panic!() };
        assert!(message.contains("extra"), "{message}");

        let err = parse_payload(r#"{"points": ["a", "a"], "opens": [[]]}"#).unwrap_err();
        assert_eq!(
            err,
            PayloadError::Json(JsonError::Points(CarrierError::DuplicateLabel {
                label: "a".into()
            }))
        );

        let err = parse_payload(r#"{"points": ["a"], "opens": [["z"]]}"#).unwrap_err();
        assert_eq!(
            err,
            PayloadError::Json(JsonError::UnknownLabel { field: "opens", label: "z".into() })
        );
    }

    #[test]
    fn closure_keys_must_match_the_points() {
        let err =
            parse_payload(r#"{"points": ["a", "b"], "closure": {"a": ["a"]}}"#).unwrap_err();
        assert_eq!(
            err,
            PayloadError::Json(JsonError::MissingClosureKey { label: "b".into() })
        );
        let err = parse_payload(
            r#"{"points": ["a"], "closure": {"a": ["a"], "z": []}}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            PayloadError::Json(JsonError::UnknownClosureKey { label: "z".into() })
        );
    }

    #[test]
    fn dist_matrix_shape_and_entries_are_checked() {
        let err = parse_payload(r#"{"points": ["a", "b"], "dist": [["0", "0"]]}"#).unwrap_err();
        assert_eq!(err, PayloadError::Json(JsonError::DistShape { n: 2 }));

        let err = parse_payload(r#"{"points": ["a"], "dist": [["1/0"]]}"#).unwrap_err();
        assert!(matches!(
            err,
            PayloadError::Json(JsonError::BadRational { row: 0, col: 0, .. })
        ));

        let err = parse_payload(r#"{"points": ["a", "b"], "dist": [["0", "-1"], ["1", "0"]]}"#)
            .unwrap_err();
        assert_eq!(err, PayloadError::Metric(MetricError::NegativeEntry { row: 0, col: 1 }));
    }

    #[test]
    fn rational_parsing_is_exact_and_canonical() {
        assert_eq!(parse_rational("2/4").unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert_eq!(format_rational(&parse_rational("3/1").unwrap()), "3");
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one").is_err());
    }

    #[test]
    fn report_values_carry_labels() {
        let universe =
            Arc::new(PointUniverse::new(["a", "b", "c"]).unwrap());
        let map = PointClosureMap::from_words(&universe, &[0b001, 0b011, 0b110]).unwrap();
        let value = closure_map_report_value(&map.validate(), &universe);
        assert_eq!(
            serde_json::to_string(&value).unwrap(),
            r#"{"valid":false,"violations":[{"kind":"not_hereditary","x":"c","y":"b"}]}"#
        );
    }
}
