//! Double graphs `𝔾ₙ^{(l,r)}`: each numbered vertex of an admissible graph
//! splits into a block `{k.1, k.2}`, the boundary acquires `l₁ + r₁`
//! ordinary and `l₂ + r₂` loop vertices, and every proper edge `e` gains a
//! reflected partner `*e` running from the target of `e` back into the
//! source block.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::adm::{ATarget, AdmGraph};
use crate::GraphError;

/// Vertex of a double graph. Ordering follows the canonical vertex order:
/// numbered blocks ascending (part 1 before part 2), then left, right,
/// left-loop, right-loop vertices. All indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DVertex {
    /// `k.part` with `part` in `{1, 2}`.
    Num(usize, u8),
    Left(usize),
    Right(usize),
    LLoop(usize),
    RLoop(usize),
}

impl fmt::Display for DVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DVertex::Num(k, p) => write!(f, "{k}.{p}"),
            DVertex::Left(t) => write!(f, "L_{t}"),
            DVertex::Right(s) => write!(f, "R_{s}"),
            DVertex::LLoop(p) => write!(f, "Ol_{p}"),
            DVertex::RLoop(q) => write!(f, "Or_{q}"),
        }
    }
}

impl FromStr for DVertex {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::Shape(format!("unknown vertex label {s:?}"));
        let idx = |t: &str| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        if let Some(t) = s.strip_prefix("L_") {
            Ok(DVertex::Left(idx(t)?))
        } else if let Some(t) = s.strip_prefix("R_") {
            Ok(DVertex::Right(idx(t)?))
        } else if let Some(t) = s.strip_prefix("Ol_") {
            Ok(DVertex::LLoop(idx(t)?))
        } else if let Some(t) = s.strip_prefix("Or_") {
            Ok(DVertex::RLoop(idx(t)?))
        } else if let Some((k, p)) = s.split_once('.') {
            let part = match p {
                "1" => 1,
                "2" => 2,
                _ => return Err(bad()),
            };
            Ok(DVertex::Num(idx(k)?, part))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for DVertex {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DVertex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|e: GraphError| D::Error::custom(e.to_string()))
    }
}

/// Edge of a double graph: proper edge `e_k^i`, its reflected partner
/// `*e_k^i`, or a fixed loop at a loop vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DEdge {
    Proper(usize, u8),
    Reflected(usize, u8),
    LLoop(usize),
    RLoop(usize),
}

impl fmt::Display for DEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DEdge::Proper(k, i) => write!(f, "e{k}.{i}"),
            DEdge::Reflected(k, i) => write!(f, "*e{k}.{i}"),
            DEdge::LLoop(p) => write!(f, "Ol_{p}"),
            DEdge::RLoop(q) => write!(f, "Or_{q}"),
        }
    }
}

impl FromStr for DEdge {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::Shape(format!("unknown edge label {s:?}"));
        let idx = |t: &str| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        let proper = |t: &str| -> Result<(usize, u8), GraphError> {
            let (k, i) = t.split_once('.').ok_or_else(bad)?;
            let i = match i {
                "1" => 1,
                "2" => 2,
                _ => return Err(bad()),
            };
            Ok((idx(k)?, i))
        };
        if let Some(t) = s.strip_prefix("*e") {
            let (k, i) = proper(t)?;
            Ok(DEdge::Reflected(k, i))
        } else if let Some(t) = s.strip_prefix("Ol_") {
            Ok(DEdge::LLoop(idx(t)?))
        } else if let Some(t) = s.strip_prefix("Or_") {
            Ok(DEdge::RLoop(idx(t)?))
        } else if let Some(t) = s.strip_prefix('e') {
            let (k, i) = proper(t)?;
            Ok(DEdge::Proper(k, i))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for DEdge {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DEdge {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|e: GraphError| D::Error::custom(e.to_string()))
    }
}

/// A double graph over `n` blocks with boundary profile `l = (l₁, l₂)`,
/// `r = (r₁, r₂)`; `targets[k-1]` holds the endpoints of `(e_k¹, e_k²)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "DGraphJson", into = "DGraphJson")]
pub struct DGraph {
    n: usize,
    l: (usize, usize),
    r: (usize, usize),
    targets: Vec<(DVertex, DVertex)>,
}

#[derive(Serialize, Deserialize)]
struct DGraphJson {
    n: usize,
    l: (usize, usize),
    r: (usize, usize),
    targets: Vec<(DVertex, DVertex)>,
}

impl From<DGraph> for DGraphJson {
    fn from(g: DGraph) -> Self {
        DGraphJson {
            n: g.n,
            l: g.l,
            r: g.r,
            targets: g.targets,
        }
    }
}

impl TryFrom<DGraphJson> for DGraph {
    type Error = GraphError;
    fn try_from(j: DGraphJson) -> Result<Self, GraphError> {
        DGraph::new(j.n, j.l, j.r, j.targets)
    }
}

impl DGraph {
    /// Validates the block condition: `e_k¹` and `e_k²` must either end in
    /// two different blocks away from block `k`, or one at a boundary
    /// vertex and one at a numbered vertex outside block `k`, or one on
    /// the left side and one on the right side.
    pub fn new(
        n: usize,
        l: (usize, usize),
        r: (usize, usize),
        targets: Vec<(DVertex, DVertex)>,
    ) -> Result<Self, GraphError> {
        if targets.len() != n {
            return Err(GraphError::Shape(format!(
                "expected {n} target pairs, got {}",
                targets.len()
            )));
        }
        let range_ok = |v: DVertex| match v {
            DVertex::Num(k, _) => k >= 1 && k <= n,
            DVertex::Left(t) => t >= 1 && t <= l.0,
            DVertex::Right(s) => s >= 1 && s <= r.0,
            DVertex::LLoop(p) => p >= 1 && p <= l.1,
            DVertex::RLoop(q) => q >= 1 && q <= r.1,
        };
        #[derive(PartialEq)]
        enum Side {
            LeftSide,
            RightSide,
            Block(usize),
        }
        let side = |v: DVertex| match v {
            DVertex::Num(k, _) => Side::Block(k),
            DVertex::Left(_) | DVertex::LLoop(_) => Side::LeftSide,
            DVertex::Right(_) | DVertex::RLoop(_) => Side::RightSide,
        };
        for (k0, &(t1, t2)) in targets.iter().enumerate() {
            let k = k0 + 1;
            for t in [t1, t2] {
                if !range_ok(t) {
                    return Err(GraphError::Shape(format!(
                        "block {k}: target {t} outside the vertex set"
                    )));
                }
                if side(t) == Side::Block(k) {
                    return Err(GraphError::Shape(format!(
                        "block {k}: edge ends in its own block"
                    )));
                }
            }
            let ok = match (side(t1), side(t2)) {
                (Side::Block(a), Side::Block(b)) => a != b,
                (Side::Block(_), _) | (_, Side::Block(_)) => true,
                (a, b) => a != b,
            };
            if !ok {
                return Err(GraphError::Shape(format!(
                    "block {k}: targets {t1}, {t2} violate the block condition"
                )));
            }
        }
        Ok(DGraph { n, l, r, targets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> (usize, usize) {
        self.l
    }

    pub fn r(&self) -> (usize, usize) {
        self.r
    }

    pub fn targets_of(&self, k: usize) -> (DVertex, DVertex) {
        self.targets[k - 1]
    }

    /// Start vertex of an edge; reflected edges start at the target of
    /// their proper partner.
    pub fn start_of(&self, e: DEdge) -> DVertex {
        match e {
            DEdge::Proper(k, i) => DVertex::Num(k, i),
            DEdge::Reflected(k, i) => self.end_of(DEdge::Proper(k, i)),
            DEdge::LLoop(p) => DVertex::LLoop(p),
            DEdge::RLoop(q) => DVertex::RLoop(q),
        }
    }

    /// End vertex of an edge; `*e_k¹` ends at `k.2` and `*e_k²` at `k.1`.
    pub fn end_of(&self, e: DEdge) -> DVertex {
        match e {
            DEdge::Proper(k, i) => {
                let (t1, t2) = self.targets[k - 1];
                if i == 1 {
                    t1
                } else {
                    t2
                }
            }
            DEdge::Reflected(k, i) => DVertex::Num(k, 3 - i),
            DEdge::LLoop(p) => DVertex::LLoop(p),
            DEdge::RLoop(q) => DVertex::RLoop(q),
        }
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> Vec<DVertex> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            out.push(DVertex::Num(k, 1));
            out.push(DVertex::Num(k, 2));
        }
        out.extend((1..=self.l.0).map(DVertex::Left));
        out.extend((1..=self.r.0).map(DVertex::Right));
        out.extend((1..=self.l.1).map(DVertex::LLoop));
        out.extend((1..=self.r.1).map(DVertex::RLoop));
        out
    }

    /// All edges in canonical order: proper, reflected, then loops.
    pub fn edges(&self) -> Vec<DEdge> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            out.push(DEdge::Proper(k, 1));
            out.push(DEdge::Proper(k, 2));
        }
        for k in 1..=self.n {
            out.push(DEdge::Reflected(k, 1));
            out.push(DEdge::Reflected(k, 2));
        }
        out.extend((1..=self.l.1).map(DEdge::LLoop));
        out.extend((1..=self.r.1).map(DEdge::RLoop));
        out
    }

    /// `E(v)`: proper edges terminating at `v`, ordered by source block.
    /// The two edges of a block never share a target, so the order is
    /// strict.
    pub fn proper_into(&self, v: DVertex) -> Vec<DEdge> {
        let mut out = Vec::new();
        for (k0, &(t1, t2)) in self.targets.iter().enumerate() {
            let k = k0 + 1;
            if t1 == v {
                out.push(DEdge::Proper(k, 1));
            }
            if t2 == v {
                out.push(DEdge::Proper(k, 2));
            }
        }
        out
    }

    /// Forgets the doubling: deletes reflected edges and loops, merges
    /// each block to one vertex and each boundary side to `L` or `R`.
    pub fn merge(&self) -> AdmGraph {
        let collapse = |v: DVertex| match v {
            DVertex::Num(k, _) => ATarget::Num(k),
            DVertex::Left(_) | DVertex::LLoop(_) => ATarget::L,
            DVertex::Right(_) | DVertex::RLoop(_) => ATarget::R,
        };
        let targets = self
            .targets
            .iter()
            .map(|&(t1, t2)| (collapse(t1), collapse(t2)))
            .collect();
        AdmGraph::new(self.n, targets).expect("merge of a valid double graph is admissible")
    }
}

/// All double graphs over `Γ` with boundary profile `(l, r)`, as
/// independent lifts of each edge target: a numbered target `j` lifts to
/// `j.1` or `j.2`, `L` to any left or left-loop vertex, `R` to any right
/// or right-loop vertex.
pub fn enum_double_fiber(
    gamma: &AdmGraph,
    l: (usize, usize),
    r: (usize, usize),
) -> impl Iterator<Item = DGraph> {
    let n = gamma.n();
    let lift = |t: ATarget| -> Vec<DVertex> {
        match t {
            ATarget::Num(j) => vec![DVertex::Num(j, 1), DVertex::Num(j, 2)],
            ATarget::L => (1..=l.0)
                .map(DVertex::Left)
                .chain((1..=l.1).map(DVertex::LLoop))
                .collect(),
            ATarget::R => (1..=r.0)
                .map(DVertex::Right)
                .chain((1..=r.1).map(DVertex::RLoop))
                .collect(),
        }
    };
    let slots: Vec<Vec<DVertex>> = (1..=n)
        .flat_map(|k| {
            let (t1, t2) = gamma.targets_of(k);
            [lift(t1), lift(t2)]
        })
        .collect();
    let total: usize = slots.iter().map(|s| s.len()).product();
    (0..total).map(move |mut idx| {
        let mut picks = Vec::with_capacity(slots.len());
        for choices in slots.iter().rev() {
            picks.push(choices[idx % choices.len()]);
            idx /= choices.len();
        }
        picks.reverse();
        let targets = picks.chunks(2).map(|c| (c[0], c[1])).collect();
        DGraph::new(n, l, r, targets).expect("lift of an admissible graph is a double graph")
    })
}
