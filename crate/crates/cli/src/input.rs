//! JSON graph files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "orbits": [{"id": "A", "potential": "0"}, {"id": "B"}],
//!   "edges": [{"from": "A", "to": "B", "offset": [1, 0], "weight": "1/2"}]
//! }
//! ```
//!
//! Ids may be strings or integers. Rationals are strings such as `"-3/4"`
//! or `"5"`; integer JSON numbers are also accepted, floats are not. A
//! missing potential or weight is filled in at random unless labels are
//! requested strictly.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use flatband_core::graph::{canonicalize_edge, EdgeClass, PeriodicGraph};
use flatband_core::labeling::Labeling;
use flatband_core::sampling::{random_labeling, random_nonzero_rational, random_rational, trial_rng};

/// Offsets beyond this magnitude are rejected so exponent arithmetic can
/// never overflow.
pub const MAX_OFFSET: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpecFile {
    pub dimension: usize,
    pub orbits: Vec<OrbitSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSpec {
    pub id: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: Value,
    pub to: Value,
    pub offset: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Value>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("at least one orbit is required")]
    NoOrbits,
    #[error("{at}: id must be a string or an integer")]
    BadId { at: String },
    #[error("{at}: duplicate orbit id {id}")]
    DuplicateId { at: String, id: String },
    #[error("{at}: unknown orbit id {id}")]
    UnknownId { at: String, id: String },
    #[error("{at}: offset has length {got}, expected dimension {expected}")]
    OffsetLength { at: String, expected: usize, got: usize },
    #[error("{at}: offset entry {value} exceeds the supported range")]
    OffsetRange { at: String, value: i64 },
    #[error("{at}: self-edge with zero offset")]
    ZeroSelfEdge { at: String },
    #[error("{at}: edge class {class} listed twice")]
    DuplicateClass { at: String, class: String },
    #[error("{at}: {text:?} is not a rational (use \"p/q\" or an integer)")]
    BadRational { at: String, text: String },
    #[error("{at}: weight is zero")]
    ZeroWeight { at: String },
    #[error("--labels=given but {0} has no value")]
    MissingLabel(String),
}

fn id_text(v: &Value, at: &str) -> Result<String, InputError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(InputError::BadId { at: at.to_string() }),
    }
}

pub fn parse_rational(v: &Value, at: &str) -> Result<BigRational, InputError> {
    let bad = || InputError::BadRational { at: at.to_string(), text: v.to_string() };
    match v {
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| bad()),
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())).ok_or_else(bad),
        _ => Err(bad()),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// How labels are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    /// Values from the file; missing ones drawn at random.
    Auto,
    /// Values from the file; a missing one is an error.
    Given,
    /// Every value drawn at random, ignoring the file.
    Random,
}

/// A validated graph file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: PeriodicGraph,
    pub orbit_ids: Vec<String>,
    pub potentials: Vec<Option<BigRational>>,
    pub weights: BTreeMap<EdgeClass, Option<BigRational>>,
}

impl ParsedGraph {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let spec: GraphSpecFile = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_spec(spec: &GraphSpecFile) -> Result<Self, InputError> {
        if spec.dimension == 0 {
            return Err(InputError::ZeroDimension);
        }
        if spec.orbits.is_empty() {
            return Err(InputError::NoOrbits);
        }
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut orbit_ids = Vec::new();
        let mut potentials = Vec::new();
        for (k, orbit) in spec.orbits.iter().enumerate() {
            let at = format!("orbits[{k}]");
            let id = id_text(&orbit.id, &at)?;
            if index.insert(id.clone(), k).is_some() {
                return Err(InputError::DuplicateId { at, id });
            }
            orbit_ids.push(id);
            potentials.push(orbit.potential.as_ref().map(|v| parse_rational(v, &format!("{at}.potential"))).transpose()?);
        }
        let mut weights = BTreeMap::new();
        for (k, edge) in spec.edges.iter().enumerate() {
            let at = format!("edges[{k}]");
            let lookup = |v: &Value, field: &str| -> Result<usize, InputError> {
                let id = id_text(v, &format!("{at}.{field}"))?;
                index.get(&id).copied().ok_or(InputError::UnknownId { at: format!("{at}.{field}"), id })
            };
            let (i, j) = (lookup(&edge.from, "from")?, lookup(&edge.to, "to")?);
            if edge.offset.len() != spec.dimension {
                return Err(InputError::OffsetLength { at, expected: spec.dimension, got: edge.offset.len() });
            }
            if let Some(&value) = edge.offset.iter().find(|a| a.abs() > MAX_OFFSET) {
                return Err(InputError::OffsetRange { at, value });
            }
            let class = canonicalize_edge(i, j, &edge.offset).map_err(|_| InputError::ZeroSelfEdge { at: at.clone() })?;
            let weight = edge.weight.as_ref().map(|v| parse_rational(v, &format!("{at}.weight"))).transpose()?;
            if weight.as_ref().is_some_and(Zero::is_zero) {
                return Err(InputError::ZeroWeight { at });
            }
            if weights.contains_key(&class) {
                return Err(InputError::DuplicateClass { at, class: describe_class(&class, &orbit_ids) });
            }
            weights.insert(class, weight);
        }
        let graph = PeriodicGraph::new(
            spec.dimension,
            orbit_ids.len(),
            weights.keys().map(|c| (c.from, c.to, c.offset.clone())),
        )
        .expect("validated above");
        Ok(ParsedGraph { graph, orbit_ids, potentials, weights })
    }

    /// Builds the labeling; random draws come from `trial_rng(seed, 0)`.
    pub fn labeling(&self, mode: LabelMode, seed: u64) -> Result<Labeling, InputError> {
        let mut rng = trial_rng(seed, 0);
        if mode == LabelMode::Random {
            return Ok(random_labeling(&self.graph, &mut rng));
        }
        let mut potentials = Vec::with_capacity(self.potentials.len());
        for (k, v) in self.potentials.iter().enumerate() {
            potentials.push(match (v, mode) {
                (Some(v), _) => v.clone(),
                (None, LabelMode::Given) => {
                    return Err(InputError::MissingLabel(format!("potential of orbit {}", self.orbit_ids[k])))
                }
                (None, _) => random_rational(&mut rng),
            });
        }
        let mut weights = BTreeMap::new();
        for (class, w) in &self.weights {
            let value = match (w, mode) {
                (Some(w), _) => w.clone(),
                (None, LabelMode::Given) => {
                    return Err(InputError::MissingLabel(format!("weight of {}", describe_class(class, &self.orbit_ids))))
                }
                (None, _) => random_nonzero_rational(&mut rng),
            };
            weights.insert(class.clone(), value);
        }
        Ok(Labeling::new(&self.graph, potentials, weights).expect("labels cover the graph"))
    }

    pub fn has_all_labels(&self) -> bool {
        self.potentials.iter().all(Option::is_some) && self.weights.values().all(Option::is_some)
    }
}

pub fn describe_class(class: &EdgeClass, ids: &[String]) -> String {
    let offset: Vec<String> = class.offset.iter().map(i64::to_string).collect();
    format!("({}, {}, [{}])", ids[class.from], ids[class.to], offset.join(", "))
}

/// A graph file for `graph`, orbits numbered `1..=n`, with labels if given.
pub fn to_spec_file(graph: &PeriodicGraph, labeling: Option<&Labeling>) -> GraphSpecFile {
    let text = |r: &BigRational| Value::String(format_rational(r));
    GraphSpecFile {
        dimension: graph.dimension(),
        orbits: (0..graph.num_orbits())
            .map(|u| OrbitSpec { id: Value::from(u + 1), potential: labeling.map(|l| text(l.potential(u))) })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|c| EdgeSpec {
                from: Value::from(c.from + 1),
                to: Value::from(c.to + 1),
                offset: c.offset.clone(),
                weight: labeling.and_then(|l| l.weight(c)).map(text),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIEB: &str = r#"{
        "dimension": 2,
        "orbits": [{"id": 1, "potential": "0"}, {"id": 2, "potential": 0}, {"id": 3, "potential": "0"}],
        "edges": [
            {"from": 1, "to": 2, "offset": [0, 0], "weight": "1"},
            {"from": 2, "to": 3, "offset": [0, 0], "weight": "1"},
            {"from": 1, "to": 2, "offset": [1, 0], "weight": "1"},
            {"from": 3, "to": 2, "offset": [0, 1], "weight": "1"}
        ]
    }"#;

    #[test]
    fn parses_lieb() {
        let p = ParsedGraph::from_json(LIEB).unwrap();
        assert_eq!(p.graph, PeriodicGraph::lieb());
        assert!(p.has_all_labels());
        assert_eq!(p.labeling(LabelMode::Given, 0).unwrap(), Labeling::unit(&p.graph));
    }

    #[test]
    fn round_trip() {
        let p = ParsedGraph::from_json(LIEB).unwrap();
        let lab = p.labeling(LabelMode::Random, 3).unwrap();
        let spec = to_spec_file(&p.graph, Some(&lab));
        let text = serde_json::to_string(&spec).unwrap();
        let q = ParsedGraph::from_json(&text).unwrap();
        assert_eq!(q.graph, p.graph);
        assert_eq!(q.labeling(LabelMode::Given, 0).unwrap(), lab);
        let bare = serde_json::to_string(&to_spec_file(&p.graph, None)).unwrap();
        assert_eq!(ParsedGraph::from_json(&bare).unwrap().graph, p.graph);
    }

    #[test]
    fn label_modes() {
        let text = r#"{"dimension": 1, "orbits": [{"id": "a", "potential": "1/2"}, {"id": "b"}],
                       "edges": [{"from": "a", "to": "b", "offset": [2]}]}"#;
        let p = ParsedGraph::from_json(text).unwrap();
        assert!(matches!(p.labeling(LabelMode::Given, 0), Err(InputError::MissingLabel(_))));
        let auto = p.labeling(LabelMode::Auto, 5).unwrap();
        assert_eq!(auto.potential(0), &BigRational::new(1.into(), 2.into()));
        assert_eq!(auto, p.labeling(LabelMode::Auto, 5).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            (r#"{"dimension": 2, "orbits": [{"id": 1}], "edges": [{"from": 1, "to": 1, "offset": [1]}]}"#, "expected dimension"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}], "edges": [{"from": 1, "to": 1, "offset": [0]}]}"#, "zero offset"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}, {"id": 1}]}"#, "duplicate orbit"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}], "edges": [{"from": 1, "to": 2, "offset": [1]}]}"#, "unknown orbit"),
            (r#"{"dimension": 1, "orbits": [{"id": 1, "potential": 0.5}]}"#, "not a rational"),
            (r#"{"dimension": 1, "orbits": [{"id": 1, "potential": "1/0"}]}"#, "not a rational"),
            (r#"{"dimension": 0, "orbits": [{"id": 1}]}"#, "dimension"),
            (r#"{"dimension": 1, "orbits": []}"#, "at least one orbit"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}, {"id": 2}], "edges": [
                {"from": 1, "to": 2, "offset": [1]}, {"from": 2, "to": 1, "offset": [-1]}]}"#, "listed twice"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}], "edges": [{"from": 1, "to": 1, "offset": [1], "weight": "0"}]}"#, "zero"),
            (r#"{"dimension": 1, "orbits": [{"id": 1}], "oops": 1}"#, "unknown field"),
            ("{\"dimension\": 1,\n \"orbits\": [", "line 2"),
        ];
        for (text, needle) in cases {
            let err = ParsedGraph::from_json(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} / {needle}");
        }
    }
}
