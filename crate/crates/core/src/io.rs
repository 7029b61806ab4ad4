//! JSON documents for graphs and fans.
//!
//! A graph document looks like
//!
//! ```json
//! {
//!   "vertices": [{"id": "u", "genus": 0}, {"id": "v", "genus": 0}],
//!   "edges": [{"id": "e1", "from": "u", "to": "v"}],
//!   "legs": [{"id": "x1", "vertex": "u", "weight": 3}],
//!   "twist": 0
//! }
//! ```
//!
//! Ids may be strings or numbers. Integers may be JSON numbers or decimal
//! strings; emitted integers switch to strings beyond 2^53 in absolute
//! value. `edges` and `legs` may be omitted when empty.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cones::Cone;
use crate::fan::Fan;
use crate::graph::{Graph, GraphBuilder, GraphError, ValidationReport};
use crate::linalg::IntVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid graph: {0}")]
    Validation(ValidationReport),
}

impl IoError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Largest magnitude emitted as a JSON number.
const SAFE_INTEGER: i64 = 1 << 53;

/// An arbitrary-precision integer in JSON: a number when it is safely
/// representable as a double, a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) if x.abs() <= SAFE_INTEGER => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| IoError::at(format!("{path}/{key}"), "missing"))
}

fn id_of(v: &Value, path: &str) -> Result<String, IoError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(IoError::at(path, "expected a string or number id")),
    }
}

fn int_of(v: &Value, path: &str) -> Result<i64, IoError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| IoError::at(path, "expected an integer")),
        Value::String(s) => s
            .parse()
            .map_err(|_| IoError::at(path, "expected an integer")),
        _ => Err(IoError::at(path, "expected an integer")),
    }
}

fn list<'a>(doc: &'a Value, key: &str, required: bool) -> Result<&'a [Value], IoError> {
    match doc.get(key) {
        None if !required => Ok(&[]),
        None => Err(IoError::at(format!("/{key}"), "missing")),
        Some(Value::Array(items)) => Ok(items),
        Some(_) => Err(IoError::at(format!("/{key}"), "expected an array")),
    }
}

/// Parse and validate a graph document.
pub fn parse_graph_json(text: &str) -> Result<Graph, IoError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| IoError::at("", e.to_string()))?;
    if !doc.is_object() {
        return Err(IoError::at("", "expected an object"));
    }
    let twist = int_of(field(&doc, "twist", "")?, "/twist")?;
    let mut b = GraphBuilder::new(twist);

    let mut vertices: BTreeMap<String, usize> = BTreeMap::new();
    for (i, v) in list(&doc, "vertices", true)?.iter().enumerate() {
        let path = format!("/vertices/{i}");
        let id = id_of(field(v, "id", &path)?, &format!("{path}/id"))?;
        let genus = int_of(field(v, "genus", &path)?, &format!("{path}/genus"))?;
        if vertices.contains_key(&id) {
            return Err(IoError::at(
                format!("{path}/id"),
                format!("duplicate vertex id {id:?}"),
            ));
        }
        vertices.insert(id.clone(), b.vertex(id, genus));
    }
    let vertex_ref = |v: &Value, path: String| -> Result<usize, IoError> {
        let id = id_of(v, &path)?;
        vertices
            .get(&id)
            .copied()
            .ok_or_else(|| IoError::at(path, format!("unknown vertex {id:?}")))
    };

    let mut seen = BTreeMap::new();
    for (i, e) in list(&doc, "edges", false)?.iter().enumerate() {
        let path = format!("/edges/{i}");
        let id = id_of(field(e, "id", &path)?, &format!("{path}/id"))?;
        let from = vertex_ref(field(e, "from", &path)?, format!("{path}/from"))?;
        let to = vertex_ref(field(e, "to", &path)?, format!("{path}/to"))?;
        if seen.insert(id.clone(), ()).is_some() {
            return Err(IoError::at(
                format!("{path}/id"),
                format!("duplicate edge id {id:?}"),
            ));
        }
        b.edge(id, from, to);
    }
    let mut seen = BTreeMap::new();
    for (i, l) in list(&doc, "legs", false)?.iter().enumerate() {
        let path = format!("/legs/{i}");
        let id = id_of(field(l, "id", &path)?, &format!("{path}/id"))?;
        let at = vertex_ref(field(l, "vertex", &path)?, format!("{path}/vertex"))?;
        let weight = int_of(field(l, "weight", &path)?, &format!("{path}/weight"))?;
        if seen.insert(id.clone(), ()).is_some() {
            return Err(IoError::at(
                format!("{path}/id"),
                format!("duplicate leg id {id:?}"),
            ));
        }
        b.leg(id, at, weight);
    }
    b.build().map_err(|e| match e {
        GraphError::Invalid(report) => IoError::Validation(report),
        other => IoError::at("", other.to_string()),
    })
}

#[derive(Serialize)]
struct VertexOut<'a> {
    id: &'a str,
    genus: u32,
}

#[derive(Serialize)]
struct EdgeOut<'a> {
    id: &'a str,
    from: &'a str,
    to: &'a str,
}

#[derive(Serialize)]
struct LegOut<'a> {
    id: &'a str,
    vertex: &'a str,
    weight: i64,
}

#[derive(Serialize)]
struct GraphOut<'a> {
    vertices: Vec<VertexOut<'a>>,
    edges: Vec<EdgeOut<'a>>,
    legs: Vec<LegOut<'a>>,
    twist: i64,
}

/// A graph document for `g`, pretty-printed, ending in a newline.
pub fn emit_graph_json(g: &Graph) -> String {
    let l = g.labels();
    let vname = |v: usize| l.vertices[v].as_str();
    let doc = GraphOut {
        vertices: (0..g.num_vertices())
            .map(|v| VertexOut {
                id: vname(v),
                genus: g.vertex_genus(v),
            })
            .collect(),
        edges: (0..g.num_edges())
            .map(|e| {
                let (a, b) = g.edge_endpoints(e);
                EdgeOut {
                    id: &l.edges[e],
                    from: vname(a),
                    to: vname(b),
                }
            })
            .collect(),
        legs: g
            .legs()
            .iter()
            .enumerate()
            .map(|(i, &h)| LegOut {
                id: &l.legs[i],
                vertex: vname(g.end(h)),
                weight: g.leg_weight(h).unwrap(),
            })
            .collect(),
        twist: g.twist(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    /// Flow on each edge, keyed by edge id in edge order.
    pub flows: IndexMap<String, JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDocument {
    pub rays: Vec<usize>,
    pub dim: usize,
    pub maximal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub rays: usize,
    pub maximal: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub edge_order: Vec<String>,
    pub rays: Vec<Vec<JsonInt>>,
    pub cones: Vec<ConeDocument>,
    pub counts: Counts,
}

impl FanDocument {
    pub fn from_fan(f: &Fan) -> Self {
        let labels = f.edge_labels();
        FanDocument {
            edge_order: labels.to_vec(),
            rays: f
                .rays()
                .iter()
                .map(|r| r.iter().cloned().map(JsonInt).collect())
                .collect(),
            cones: f
                .cones()
                .iter()
                .map(|c| ConeDocument {
                    rays: c.rays.clone(),
                    dim: c.dim,
                    maximal: c.maximal,
                    witness: c.witness.as_ref().map(|flows| WitnessDocument {
                        flows: labels
                            .iter()
                            .cloned()
                            .zip(flows.iter().map(|&x| JsonInt(x.into())))
                            .collect(),
                    }),
                })
                .collect(),
            counts: Counts {
                rays: f.rays().len(),
                maximal: f.maximal_cones().count(),
                total: f.cones().len(),
            },
        }
    }

    /// Rebuild the fan: each cone is spanned by its listed rays.
    pub fn to_fan(&self) -> Result<Fan, IoError> {
        let d = self.edge_order.len();
        let rays: Vec<IntVec> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect();
        if let Some(i) = rays.iter().position(|r| r.len() != d) {
            return Err(IoError::at(
                format!("/rays/{i}"),
                format!("expected {d} entries"),
            ));
        }
        let mut cones = Vec::with_capacity(self.cones.len());
        for (i, c) in self.cones.iter().enumerate() {
            let mut gens = Vec::with_capacity(c.rays.len());
            for (j, &r) in c.rays.iter().enumerate() {
                gens.push(rays.get(r).cloned().ok_or_else(|| {
                    IoError::at(format!("/cones/{i}/rays/{j}"), format!("no ray {r}"))
                })?);
            }
            let witness = match &c.witness {
                None => None,
                Some(w) => {
                    let flows = self
                        .edge_order
                        .iter()
                        .map(|e| {
                            let x = w.flows.get(e).ok_or_else(|| {
                                IoError::at(format!("/cones/{i}/witness/flows/{e}"), "missing")
                            })?;
                            i64::try_from(&x.0).map_err(|_| {
                                IoError::at(
                                    format!("/cones/{i}/witness/flows/{e}"),
                                    "flow out of range",
                                )
                            })
                        })
                        .collect::<Result<Vec<i64>, IoError>>()?;
                    Some(flows)
                }
            };
            cones.push((Cone::from_generators(d, &gens), witness));
        }
        Ok(Fan::from_cones(self.edge_order.clone(), cones))
    }
}

/// The fan document, pretty-printed, ending in a newline. Identical fans
/// give identical bytes.
pub fn emit_fan_json(f: &Fan) -> String {
    serde_json::to_string_pretty(&FanDocument::from_fan(f)).expect("plain data serializes") + "\n"
}

pub fn parse_fan_json(text: &str) -> Result<FanDocument, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::at("", e.to_string()))
}
