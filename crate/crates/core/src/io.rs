//! Instance file format.
//!
//! ```json
//! {"n": 3, "edges": [{"u": 0, "v": 1, "predicted": "2/1", "actual": "1/1"}, ...]}
//! ```
//!
//! Weights are exact fraction strings (decimal literals are also accepted on
//! input); the position of an edge in `edges` is its `EdgeId`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WmstError};
use crate::graph::{Graph, WmstInstance};
use crate::weight::{format_fraction, parse_weight, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstance {
    pub n: usize,
    pub edges: Vec<RawEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
}

/// Checks simplicity, connectivity and weight positivity.
pub fn validate_instance<W: Weight>(raw: &RawInstance) -> Result<WmstInstance<W>> {
    let pairs: Vec<_> = raw.edges.iter().map(|e| (e.u, e.v)).collect();
    let graph = Graph::new(raw.n, &pairs)?;
    let mut predicted = Vec::with_capacity(raw.edges.len());
    let mut actual = Vec::with_capacity(raw.edges.len());
    for (id, e) in raw.edges.iter().enumerate() {
        for (which, text, out) in [
            ("predicted", &e.predicted, &mut predicted),
            ("actual", &e.actual, &mut actual),
        ] {
            let text = text
                .as_deref()
                .ok_or(WmstError::MissingWeight { edge: id, which })?;
            let w: W = parse_weight(text)?;
            if !w.is_positive() {
                return Err(WmstError::NonpositiveWeight { edge: id, which });
            }
            out.push(w);
        }
    }
    WmstInstance::new(graph, predicted, actual)
}

pub fn to_raw<W: Weight>(instance: &WmstInstance<W>) -> RawInstance {
    RawInstance {
        n: instance.graph().n(),
        edges: instance
            .graph()
            .edges()
            .iter()
            .map(|e| RawEdge {
                u: e.u,
                v: e.v,
                predicted: Some(format_fraction(&instance.predicted()[e.id])),
                actual: Some(format_fraction(&instance.actual()[e.id])),
            })
            .collect(),
    }
}

pub fn parse_instance<W: Weight>(json: &str) -> Result<WmstInstance<W>> {
    let raw: RawInstance = serde_json::from_str(json)?;
    validate_instance(&raw)
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn instance_to_json<W: Weight>(instance: &WmstInstance<W>) -> String {
    let mut s = serde_json::to_string_pretty(&to_raw(instance)).expect("raw instance serializes");
    s.push('\n');
    s
}

pub fn read_instance<W: Weight>(path: &Path) -> Result<WmstInstance<W>> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance<W: Weight>(path: &Path, instance: &WmstInstance<W>) -> Result<()> {
    std::fs::write(path, instance_to_json(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, Rational64};

    const TRIANGLE: &str = r#"{"n": 3, "edges": [
        {"u": 0, "v": 1, "predicted": "2", "actual": "1"},
        {"u": 1, "v": 2, "predicted": "3/1", "actual": "1/1"},
        {"u": 0, "v": 2, "predicted": "2.0", "actual": "4/2"}
    ]}"#;

    #[test]
    fn parses_the_triangle() {
        let inst: WmstInstance<Rational64> = parse_instance(TRIANGLE).unwrap();
        assert_eq!(inst.graph().n(), 3);
        assert_eq!(inst.graph().m(), 3);
        assert_eq!(inst.predicted()[1], Rational64::from_int(3));
        assert_eq!(inst.actual()[2], Rational64::from_int(2));
    }

    #[test]
    fn canonical_json_round_trips() {
        let inst: WmstInstance<Rational> = parse_instance(TRIANGLE).unwrap();
        let json = instance_to_json(&inst);
        let again: WmstInstance<Rational> = parse_instance(&json).unwrap();
        assert_eq!(again, inst);
        assert_eq!(instance_to_json(&again), json);
        assert!(json.contains("\"predicted\": \"3/1\""));
    }

    #[test]
    fn reports_validation_errors() {
        let missing = r#"{"n": 2, "edges": [{"u": 0, "v": 1, "predicted": "1"}]}"#;
        assert!(matches!(
            parse_instance::<Rational>(missing),
            Err(WmstError::MissingWeight { edge: 0, which: "actual" })
        ));
        let zero = r#"{"n": 2, "edges": [{"u": 0, "v": 1, "predicted": "0", "actual": "1"}]}"#;
        assert!(matches!(
            parse_instance::<Rational>(zero),
            Err(WmstError::NonpositiveWeight { edge: 0, which: "predicted" })
        ));
        let disconnected = r#"{"n": 4, "edges": [
            {"u": 0, "v": 1, "predicted": "1", "actual": "1"},
            {"u": 2, "v": 3, "predicted": "1", "actual": "1"}]}"#;
        assert!(matches!(
            parse_instance::<Rational>(disconnected),
            Err(WmstError::DisconnectedGraph)
        ));
        let junk = r#"{"n": 2, "edges": [{"u": 0, "v": 1, "predicted": "one", "actual": "1"}]}"#;
        assert!(matches!(parse_instance::<Rational>(junk), Err(WmstError::ParseWeight(_))));
        assert!(matches!(parse_instance::<Rational>("{"), Err(WmstError::Json(_))));
    }
}
