//! Admissible graphs `Gₙ`: `n` numbered vertices plus boundary vertices
//! `L`, `R`; each numbered vertex `k` emits an ordered pair of edges
//! `(e_k¹, e_k²)` ending at two different vertices, neither equal to `k`.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::GraphError;

/// Target of an admissible-graph edge: a numbered vertex (1-based) or a
/// boundary vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ATarget {
    Num(usize),
    L,
    R,
}

impl fmt::Display for ATarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ATarget::Num(k) => write!(f, "{k}"),
            ATarget::L => write!(f, "L"),
            ATarget::R => write!(f, "R"),
        }
    }
}

impl Serialize for ATarget {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            ATarget::Num(k) => ser.serialize_u64(*k as u64),
            ATarget::L => ser.serialize_str("L"),
            ATarget::R => ser.serialize_str("R"),
        }
    }
}

impl<'de> Deserialize<'de> for ATarget {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .filter(|&k| k >= 1)
                .map(|k| ATarget::Num(k as usize))
                .ok_or_else(|| D::Error::custom("numbered target must be a positive integer")),
            serde_json::Value::String(s) => match s.as_str() {
                "L" => Ok(ATarget::L),
                "R" => Ok(ATarget::R),
                other => Err(D::Error::custom(format!(
                    "unknown target {other:?}: expected \"L\", \"R\", or a vertex number"
                ))),
            },
            _ => Err(D::Error::custom("target must be a number or \"L\"/\"R\"")),
        }
    }
}

/// An admissible graph: for each numbered vertex the ordered pair of
/// targets of its two outgoing edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "AdmGraphJson", into = "AdmGraphJson")]
pub struct AdmGraph {
    n: usize,
    targets: Vec<(ATarget, ATarget)>,
}

#[derive(Serialize, Deserialize)]
struct AdmGraphJson {
    n: usize,
    targets: Vec<(ATarget, ATarget)>,
}

impl From<AdmGraph> for AdmGraphJson {
    fn from(g: AdmGraph) -> Self {
        AdmGraphJson {
            n: g.n,
            targets: g.targets,
        }
    }
}

impl TryFrom<AdmGraphJson> for AdmGraph {
    type Error = GraphError;
    fn try_from(j: AdmGraphJson) -> Result<Self, GraphError> {
        AdmGraph::new(j.n, j.targets)
    }
}

impl AdmGraph {
    /// Validates the target table: one pair per vertex, targets in range,
    /// no loops, and the two edges of a vertex end at different vertices.
    pub fn new(n: usize, targets: Vec<(ATarget, ATarget)>) -> Result<Self, GraphError> {
        if targets.len() != n {
            return Err(GraphError::Shape(format!(
                "expected {n} target pairs, got {}",
                targets.len()
            )));
        }
        for (k0, &(t1, t2)) in targets.iter().enumerate() {
            let k = k0 + 1;
            for t in [t1, t2] {
                if let ATarget::Num(j) = t {
                    if j < 1 || j > n {
                        return Err(GraphError::Shape(format!(
                            "vertex {k}: target {j} outside [1, {n}]"
                        )));
                    }
                    if j == k {
                        return Err(GraphError::Shape(format!("vertex {k}: loop edge")));
                    }
                }
            }
            if t1 == t2 {
                return Err(GraphError::Shape(format!(
                    "vertex {k}: both edges end at {t1}"
                )));
            }
        }
        Ok(AdmGraph { n, targets })
    }

    /// The empty graph.
    pub fn empty() -> Self {
        AdmGraph {
            n: 0,
            targets: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Targets `(e_k¹, e_k²)` of vertex `k` (1-based).
    pub fn targets_of(&self, k: usize) -> (ATarget, ATarget) {
        self.targets[k - 1]
    }

    /// Edges terminating at `t`, as `(source vertex, edge index 1|2)` pairs
    /// in ascending source order.
    pub fn edges_into(&self, t: ATarget) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (k0, &(t1, t2)) in self.targets.iter().enumerate() {
            if t1 == t {
                out.push((k0 + 1, 1));
            }
            if t2 == t {
                out.push((k0 + 1, 2));
            }
        }
        out
    }

    /// Stable text key, e.g. `"1:[[L,R]]"`; used for weight tables.
    pub fn key(&self) -> String {
        let body: Vec<String> = self
            .targets
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect();
        format!("{}:[{}]", self.n, body.join(","))
    }
}

/// All admissible graphs with `n` numbered vertices, in lexicographic
/// target order; there are `(n(n+1))ⁿ` of them.
pub fn enum_admissible(n: usize) -> impl Iterator<Item = AdmGraph> {
    let per_vertex: Vec<Vec<(ATarget, ATarget)>> = (1..=n)
        .map(|k| {
            let options: Vec<ATarget> = (1..=n)
                .filter(|&j| j != k)
                .map(ATarget::Num)
                .chain([ATarget::L, ATarget::R])
                .collect();
            let mut pairs = Vec::new();
            for &t1 in &options {
                for &t2 in &options {
                    if t1 != t2 {
                        pairs.push((t1, t2));
                    }
                }
            }
            pairs
        })
        .collect();
    let total: usize = per_vertex.iter().map(|p| p.len()).product();
    (0..total).map(move |mut idx| {
        let mut targets = Vec::with_capacity(n);
        for choices in per_vertex.iter().rev() {
            targets.push(choices[idx % choices.len()]);
            idx /= choices.len();
        }
        targets.reverse();
        AdmGraph {
            n,
            targets,
        }
    })
}
