//! Labeled two-type graphs `G_{n,m}`: `n` first-type vertices carrying all
//! edges and `m` second-type vertices `1̄..m̄`; every first-type vertex has
//! an ordered star of pairwise distinct targets, `2n + m − 2` edges total.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::GraphError;

/// Target of a formality-graph edge: a first-type vertex (JSON: integer)
/// or a second-type vertex (JSON: string `"b{j}"`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FTarget {
    First(usize),
    Second(usize),
}

impl fmt::Display for FTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTarget::First(k) => write!(f, "{k}"),
            FTarget::Second(j) => write!(f, "b{j}"),
        }
    }
}

impl Serialize for FTarget {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            FTarget::First(k) => ser.serialize_u64(*k as u64),
            FTarget::Second(_) => ser.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for FTarget {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .filter(|&k| k >= 1)
                .map(|k| FTarget::First(k as usize))
                .ok_or_else(|| D::Error::custom("first-type target must be a positive integer")),
            serde_json::Value::String(s) => s
                .strip_prefix('b')
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&j| j >= 1)
                .map(FTarget::Second)
                .ok_or_else(|| {
                    D::Error::custom(format!("unknown target {s:?}: expected \"b<j>\""))
                }),
            _ => Err(D::Error::custom("target must be a number or \"b<j>\"")),
        }
    }
}

/// A formality graph: ordered stars of the `n` first-type vertices over
/// `m` second-type vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FormalityGraphJson", into = "FormalityGraphJson")]
pub struct FormalityGraph {
    n: usize,
    m: usize,
    stars: Vec<Vec<FTarget>>,
}

#[derive(Serialize, Deserialize)]
struct FormalityGraphJson {
    n: usize,
    m: usize,
    stars: Vec<Vec<FTarget>>,
}

impl From<FormalityGraph> for FormalityGraphJson {
    fn from(g: FormalityGraph) -> Self {
        FormalityGraphJson {
            n: g.n,
            m: g.m,
            stars: g.stars,
        }
    }
}

impl TryFrom<FormalityGraphJson> for FormalityGraph {
    type Error = GraphError;
    fn try_from(j: FormalityGraphJson) -> Result<Self, GraphError> {
        FormalityGraph::new(j.n, j.m, j.stars)
    }
}

impl FormalityGraph {
    /// Validates ranges, no loops, distinct targets per star, and the
    /// edge-count condition `Σ |star(k)| = 2n + m − 2`.
    pub fn new(n: usize, m: usize, stars: Vec<Vec<FTarget>>) -> Result<Self, GraphError> {
        if stars.len() != n {
            return Err(GraphError::Shape(format!(
                "expected {n} stars, got {}",
                stars.len()
            )));
        }
        for (k0, star) in stars.iter().enumerate() {
            let k = k0 + 1;
            for (a, &t) in star.iter().enumerate() {
                match t {
                    FTarget::First(j) => {
                        if j < 1 || j > n {
                            return Err(GraphError::Shape(format!(
                                "vertex {k}: target {j} outside [1, {n}]"
                            )));
                        }
                        if j == k {
                            return Err(GraphError::Shape(format!("vertex {k}: loop edge")));
                        }
                    }
                    FTarget::Second(j) => {
                        if j < 1 || j > m {
                            return Err(GraphError::Shape(format!(
                                "vertex {k}: target b{j} outside [1, {m}]"
                            )));
                        }
                    }
                }
                if star[..a].contains(&t) {
                    return Err(GraphError::Shape(format!(
                        "vertex {k}: multiple edges to {t}"
                    )));
                }
            }
        }
        let edges: usize = stars.iter().map(|s| s.len()).sum();
        if 2 * n + m < 2 || edges != 2 * n + m - 2 {
            return Err(GraphError::Shape(format!(
                "expected {} edges, got {edges}",
                2 * n as i64 + m as i64 - 2
            )));
        }
        Ok(FormalityGraph { n, m, stars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Ordered star of first-type vertex `k` (1-based).
    pub fn star(&self, k: usize) -> &[FTarget] {
        &self.stars[k - 1]
    }

    pub fn num_edges(&self) -> usize {
        self.stars.iter().map(|s| s.len()).sum()
    }

    /// Stable text key, e.g. `"1,2:[[b1,b2]]"`; used for weight tables.
    pub fn key(&self) -> String {
        let body: Vec<String> = self
            .stars
            .iter()
            .map(|star| {
                let ts: Vec<String> = star.iter().map(|t| t.to_string()).collect();
                format!("[{}]", ts.join(","))
            })
            .collect();
        format!("{},{}:[{}]", self.n, self.m, body.join(","))
    }
}

/// Ordered injective `len`-tuples over `options`, in lexicographic order.
fn injective_tuples(options: &[FTarget], len: usize) -> Vec<Vec<FTarget>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for &t in options {
        let rest: Vec<FTarget> = options.iter().copied().filter(|&u| u != t).collect();
        for mut tail in injective_tuples(&rest, len - 1) {
            tail.insert(0, t);
            out.push(tail);
        }
    }
    out
}

/// All formality graphs with `n` first-type and `m` second-type vertices;
/// empty when `2n + m − 2 < 0`.
pub fn enum_formality(n: usize, m: usize) -> impl Iterator<Item = FormalityGraph> {
    let mut result: Vec<FormalityGraph> = Vec::new();
    if 2 * n + m >= 2 {
        let total_edges = 2 * n + m - 2;
        let per_vertex: Vec<Vec<Vec<FTarget>>> = (1..=n)
            .map(|k| {
                let options: Vec<FTarget> = (1..=n)
                    .filter(|&j| j != k)
                    .map(FTarget::First)
                    .chain((1..=m).map(FTarget::Second))
                    .collect();
                (0..=options.len())
                    .flat_map(|len| injective_tuples(&options, len))
                    .collect()
            })
            .collect();
        let mut stack: Vec<(usize, Vec<Vec<FTarget>>, usize)> = vec![(0, Vec::new(), 0)];
        while let Some((k, stars, used)) = stack.pop() {
            if k == n {
                if used == total_edges {
                    result.push(FormalityGraph {
                        n,
                        m,
                        stars,
                    });
                }
                continue;
            }
            // Push in reverse so graphs appear in per-vertex star order.
            for star in per_vertex[k].iter().rev() {
                if used + star.len() <= total_edges {
                    let mut next = stars.clone();
                    next.push(star.clone());
                    stack.push((k + 1, next, used + star.len()));
                }
            }
        }
    }
    result.into_iter()
}
