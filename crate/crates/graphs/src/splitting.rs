//! Splittings of a double graph into `l₁ + r₁` boundary paths plus cycles,
//! and the bijection between principal splittings and tuples of
//! permutations `(σ_v)` with `σ_v ∈ S(|E(v)|)`.

use perm_core::Perm;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::double::{DEdge, DGraph, DVertex};
use crate::GraphError;

/// A splitting: the boundary paths in order `τ₁..τ_{l₁}, τ̄₁..τ̄_{r₁}`
/// (possibly empty), then the cycles. Cycles are stored rotated so the
/// smallest edge comes first and sorted among themselves.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Splitting {
    pub paths: Vec<Vec<DEdge>>,
    pub cycles: Vec<Vec<DEdge>>,
}

impl Splitting {
    /// Rotates each cycle to start at its smallest edge and sorts the
    /// cycle list; path order is fixed by the boundary vertices.
    pub fn canonicalize(&mut self) {
        for c in &mut self.cycles {
            if let Some(min_at) = c.iter().enumerate().min_by_key(|&(_, e)| e).map(|(i, _)| i) {
                c.rotate_left(min_at);
            }
        }
        self.cycles.sort();
    }
}

/// One permutation per vertex with incoming proper edges: position `p` of
/// `σ_v` names the `σ_v(p)`-th edge of `E(v)` in source-block order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PermTuple {
    pub perms: BTreeMap<DVertex, Perm>,
}

impl PermTuple {
    /// The identity tuple for every vertex of `g` with `E(v)` nonempty.
    pub fn identity(g: &DGraph) -> Self {
        let mut perms = BTreeMap::new();
        for v in g.vertices() {
            let deg = g.proper_into(v).len();
            if deg > 0 {
                perms.insert(v, Perm::identity(deg));
            }
        }
        PermTuple { perms }
    }

    /// Checks the tuple keys and degrees against `g`.
    pub fn matches(&self, g: &DGraph) -> Result<(), GraphError> {
        for v in g.vertices() {
            let deg = g.proper_into(v).len();
            match self.perms.get(&v) {
                None if deg == 0 => {}
                Some(p) if p.degree() == deg => {}
                _ => {
                    return Err(GraphError::Shape(format!(
                        "permutation tuple does not match degree {deg} at vertex {v}"
                    )))
                }
            }
        }
        if self.perms.len() != g.vertices().iter().filter(|&&v| !g.proper_into(v).is_empty()).count()
        {
            return Err(GraphError::Shape(
                "permutation tuple mentions vertices without incoming proper edges".into(),
            ));
        }
        Ok(())
    }
}

/// All permutation tuples for `g`, in lexicographic per-vertex order.
pub fn all_perm_tuples(g: &DGraph) -> impl Iterator<Item = PermTuple> {
    let slots: Vec<(DVertex, Vec<Perm>)> = g
        .vertices()
        .into_iter()
        .filter_map(|v| {
            let deg = g.proper_into(v).len();
            if deg == 0 {
                None
            } else {
                Some((v, Perm::all(deg)))
            }
        })
        .collect();
    let total: usize = slots.iter().map(|(_, ps)| ps.len()).product();
    (0..total).map(move |mut idx| {
        let mut perms = BTreeMap::new();
        for (v, ps) in slots.iter().rev() {
            perms.insert(*v, ps[idx % ps.len()].clone());
            idx /= ps.len();
        }
        PermTuple { perms }
    })
}

/// Number of splittings of `g`, i.e. `∏_v |E(v)|!`.
pub fn num_splittings(g: &DGraph) -> u64 {
    g.vertices()
        .iter()
        .map(|&v| (1..=g.proper_into(v).len() as u64).product::<u64>())
        .product()
}

struct EdgeIndex {
    /// edge -> (container, position); containers `0..paths.len()` are the
    /// boundary paths, the rest cycles.
    place: BTreeMap<DEdge, (usize, usize)>,
    containers: Vec<Vec<DEdge>>,
    num_paths: usize,
}

impl EdgeIndex {
    fn build(g: &DGraph, s: &Splitting) -> Result<Self, GraphError> {
        let mut place = BTreeMap::new();
        let mut containers = Vec::new();
        for part in s.paths.iter().chain(s.cycles.iter()) {
            let id = containers.len();
            for (pos, &e) in part.iter().enumerate() {
                if place.insert(e, (id, pos)).is_some() {
                    return Err(GraphError::BadSplitting(format!("edge {e} occurs twice")));
                }
            }
            containers.push(part.clone());
        }
        for e in g.edges() {
            if !place.contains_key(&e) {
                return Err(GraphError::BadSplitting(format!("edge {e} is missing")));
            }
        }
        Ok(EdgeIndex {
            place,
            containers,
            num_paths: s.paths.len(),
        })
    }

    /// Edge following `e` in its path or cycle; `None` when `e` closes a
    /// boundary path.
    fn next_after(&self, e: DEdge) -> Option<DEdge> {
        let (id, pos) = self.place[&e];
        let part = &self.containers[id];
        if pos + 1 < part.len() {
            Some(part[pos + 1])
        } else if id < self.num_paths {
            None
        } else {
            Some(part[0])
        }
    }
}

/// Reads the word `w_v` off every vertex of a splitting and returns the
/// permutation tuple; fails if some word misses an edge of `E(v)`, i.e.
/// the splitting is not principal.
pub fn perms_from_splitting(g: &DGraph, s: &Splitting) -> Result<PermTuple, GraphError> {
    if s.paths.len() != g.l().0 + g.r().0 {
        return Err(GraphError::BadSplitting(format!(
            "expected {} boundary paths, got {}",
            g.l().0 + g.r().0,
            s.paths.len()
        )));
    }
    let index = EdgeIndex::build(g, s)?;
    // Follower of a proper edge: the next edge in its path or cycle, when
    // that edge is reflected; a proper or loop follower or the end of a
    // boundary path closes the word.
    let follower = |e: DEdge| -> Option<DEdge> {
        match index.next_after(e) {
            Some(DEdge::Reflected(k, i)) => Some(DEdge::Proper(k, i)),
            _ => None,
        }
    };
    let first_edge = |v: DVertex| -> Result<Option<DEdge>, GraphError> {
        match v {
            DVertex::Left(t) => Ok(start_of_boundary_word(&index, t - 1)),
            DVertex::Right(s0) => Ok(start_of_boundary_word(&index, g.l().0 + s0 - 1)),
            DVertex::LLoop(p) => Ok(edge_after_loop(&index, DEdge::LLoop(p))),
            DVertex::RLoop(q) => Ok(edge_after_loop(&index, DEdge::RLoop(q))),
            DVertex::Num(k, part) => {
                // The unique reflected edge terminating at k.part.
                let arriving = DEdge::Reflected(k, 3 - part);
                match index.next_after(arriving) {
                    Some(DEdge::Reflected(k2, i2)) => Ok(Some(DEdge::Proper(k2, i2))),
                    _ => Ok(None),
                }
            }
        }
    };
    let mut perms = BTreeMap::new();
    for v in g.vertices() {
        let ev = g.proper_into(v);
        if ev.is_empty() {
            continue;
        }
        let mut word = Vec::new();
        let mut cur = first_edge(v)?;
        while let Some(e) = cur {
            if word.contains(&e) {
                break;
            }
            word.push(e);
            cur = follower(e);
        }
        let images: Vec<usize> = word
            .iter()
            .filter_map(|e| ev.iter().position(|x| x == e).map(|p| p + 1))
            .collect();
        if images.len() != ev.len() {
            return Err(GraphError::NotPrincipal(v.to_string()));
        }
        let perm = Perm::from_one_line(images)
            .map_err(|_| GraphError::NotPrincipal(v.to_string()))?;
        perms.insert(v, perm);
    }
    Ok(PermTuple { perms })
}

fn start_of_boundary_word(index: &EdgeIndex, path_id: usize) -> Option<DEdge> {
    match index.containers[path_id].first() {
        Some(DEdge::Reflected(k, i)) => Some(DEdge::Proper(*k, *i)),
        _ => None,
    }
}

fn edge_after_loop(index: &EdgeIndex, loop_edge: DEdge) -> Option<DEdge> {
    match index.next_after(loop_edge) {
        Some(DEdge::Reflected(k, i)) => Some(DEdge::Proper(k, i)),
        _ => None,
    }
}

/// Builds the principal splitting realizing a permutation tuple: the
/// boundary paths first, then cycles through the remaining edges. Total
/// on tuples matching `g`.
pub fn splitting_from_perms(g: &DGraph, t: &PermTuple) -> Result<Splitting, GraphError> {
    t.matches(g)?;
    let word = |v: DVertex| -> Vec<DEdge> {
        let ev = g.proper_into(v);
        match t.perms.get(&v) {
            None => Vec::new(),
            Some(p) => (1..=p.degree()).map(|i| ev[p.apply(i) - 1]).collect()
        }
    };
    // Successor of the last edge of a partial path or cycle; `None` ends a
    // boundary path.
    let successor = |last: DEdge| -> Option<DEdge> {
        let v = g.end_of(last);
        let w = word(v);
        let reflect = |e: DEdge| match e {
            DEdge::Proper(k, i) => DEdge::Reflected(k, i),
            _ => unreachable!("words consist of proper edges"),
        };
        match v {
            DVertex::Left(_) | DVertex::Right(_) => {
                let p = w.iter().position(|&e| e == last).expect("arrival edge is proper into v");
                if p + 1 == w.len() {
                    None
                } else {
                    Some(reflect(w[p + 1]))
                }
            }
            DVertex::LLoop(_) | DVertex::RLoop(_) => {
                let loop_edge = match v {
                    DVertex::LLoop(p) => DEdge::LLoop(p),
                    DVertex::RLoop(q) => DEdge::RLoop(q),
                    _ => unreachable!(),
                };
                if last == loop_edge {
                    if w.is_empty() {
                        Some(loop_edge)
                    } else {
                        Some(reflect(w[0]))
                    }
                } else {
                    let p = w.iter().position(|&e| e == last).expect("arrival edge is proper into v");
                    if p + 1 == w.len() {
                        Some(loop_edge)
                    } else {
                        Some(reflect(w[p + 1]))
                    }
                }
            }
            DVertex::Num(k, part) => {
                let out = DEdge::Proper(k, part);
                if w.is_empty() {
                    Some(out)
                } else if matches!(last, DEdge::Reflected(..)) {
                    Some(reflect(w[0]))
                } else {
                    let h = w.iter().position(|&e| e == last).expect("arrival edge is proper into v");
                    if h + 1 == w.len() {
                        Some(out)
                    } else {
                        Some(reflect(w[h + 1]))
                    }
                }
            }
        }
    };
    let mut paths = Vec::new();
    let mut used: BTreeSet<DEdge> = BTreeSet::new();
    let boundary: Vec<DVertex> = (1..=g.l().0)
        .map(DVertex::Left)
        .chain((1..=g.r().0).map(DVertex::Right))
        .collect();
    for v in boundary {
        let w = word(v);
        let mut path = Vec::new();
        if let Some(&first_proper) = w.first() {
            let mut cur = match first_proper {
                DEdge::Proper(k, i) => DEdge::Reflected(k, i),
                _ => unreachable!(),
            };
            loop {
                path.push(cur);
                used.insert(cur);
                match successor(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        paths.push(path);
    }
    let mut cycles = Vec::new();
    for start in g.edges() {
        if used.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        used.insert(start);
        let mut cur = start;
        loop {
            let next = successor(cur).ok_or_else(|| {
                GraphError::BadSplitting(format!("cycle through {start} ran into a path end"))
            })?;
            if next == start {
                break;
            }
            cycle.push(next);
            used.insert(next);
            cur = next;
        }
        cycles.push(cycle);
    }
    let mut s = Splitting { paths, cycles };
    s.canonicalize();
    Ok(s)
}

/// Checks the defining conditions of a splitting directly, without the
/// word calculus: path shape, distinct endpoints, exact edge cover,
/// orientation, no `e·*e` pattern, and reflected-in implies reflected-out
/// at numbered vertices with reflected out-edges. Returns all violations.
pub fn validate_splitting(g: &DGraph, s: &Splitting) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let (l1, r1) = (g.l().0, g.r().0);
    if s.paths.len() != l1 + r1 {
        errs.push(format!(
            "expected {} boundary paths, found {}",
            l1 + r1,
            s.paths.len()
        ));
        return Err(errs);
    }
    let start_vertex = |i: usize| {
        if i < l1 {
            DVertex::Left(i + 1)
        } else {
            DVertex::Right(i - l1 + 1)
        }
    };
    // Shape of boundary paths and their endpoints.
    let mut endpoints = Vec::new();
    for (i, path) in s.paths.iter().enumerate() {
        let v0 = start_vertex(i);
        if path.is_empty() {
            if !g.proper_into(v0).is_empty() {
                errs.push(format!(
                    "path {i} at {v0} is empty although proper edges end there"
                ));
            }
            endpoints.push(v0);
            continue;
        }
        if g.proper_into(v0).is_empty() {
            errs.push(format!(
                "path {i} at {v0} is nonempty although no proper edge ends there"
            ));
        }
        if g.start_of(path[0]) != v0 {
            errs.push(format!("path {i} does not start at {v0}"));
        }
        let end = g.end_of(*path.last().expect("nonempty"));
        if !matches!(end, DVertex::Left(_) | DVertex::Right(_)) {
            errs.push(format!("path {i} ends at {end}, not a boundary vertex"));
        }
        endpoints.push(end);
    }
    for i in 0..endpoints.len() {
        for j in i + 1..endpoints.len() {
            if endpoints[i] == endpoints[j] {
                errs.push(format!(
                    "paths {i} and {j} share the endpoint {}",
                    endpoints[i]
                ));
            }
        }
    }
    // Exact edge cover.
    let mut seen: BTreeMap<DEdge, usize> = BTreeMap::new();
    for part in s.paths.iter().chain(s.cycles.iter()) {
        for &e in part {
            *seen.entry(e).or_insert(0) += 1;
        }
    }
    for e in g.edges() {
        match seen.remove(&e) {
            Some(1) => {}
            Some(m) => errs.push(format!("edge {e} used {m} times")),
            None => errs.push(format!("edge {e} unused")),
        }
    }
    for (e, _) in seen {
        errs.push(format!("edge {e} does not belong to the graph"));
    }
    // Orientation, forbidden e·*e pattern, and the reflected-in /
    // reflected-out rule, on consecutive pairs (cyclically for cycles).
    fn check_pair(g: &DGraph, errs: &mut Vec<String>, a: DEdge, b: DEdge, wherein: &str) {
        if g.end_of(a) != g.start_of(b) {
            errs.push(format!("{wherein}: {b} does not continue {a}"));
        }
        if let (DEdge::Proper(k, i), DEdge::Reflected(k2, i2)) = (a, b) {
            if k == k2 && i == i2 {
                errs.push(format!("{wherein}: pattern {a}·{b}"));
            }
        }
        let v = g.end_of(a);
        if matches!(v, DVertex::Num(..))
            && !g.proper_into(v).is_empty()
            && matches!(a, DEdge::Reflected(..))
            && !matches!(b, DEdge::Reflected(..))
        {
            errs.push(format!(
                "{wherein}: arrives at {v} on {a} but leaves on {b}"
            ));
        }
    }
    for (i, path) in s.paths.iter().enumerate() {
        for pair in path.windows(2) {
            check_pair(g, &mut errs, pair[0], pair[1], &format!("path {i}"));
        }
    }
    for (i, cycle) in s.cycles.iter().enumerate() {
        if cycle.is_empty() {
            errs.push(format!("cycle {i} is empty"));
            continue;
        }
        for j in 0..cycle.len() {
            check_pair(
                g,
                &mut errs,
                cycle[j],
                cycle[(j + 1) % cycle.len()],
                &format!("cycle {i}"),
            );
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// The endpoint permutation of a splitting: boundary slots are
/// `L₁..L_{l₁}, R₁..R_{r₁}`, and the path starting at slot `k` ends at
/// slot `σ(k)`.
pub fn sigma_of_splitting(g: &DGraph, s: &Splitting) -> Result<Perm, GraphError> {
    let (l1, r1) = (g.l().0, g.r().0);
    if s.paths.len() != l1 + r1 {
        return Err(GraphError::BadSplitting(format!(
            "expected {} boundary paths, got {}",
            l1 + r1,
            s.paths.len()
        )));
    }
    let slot = |v: DVertex| -> Result<usize, GraphError> {
        match v {
            DVertex::Left(t) => Ok(t),
            DVertex::Right(q) => Ok(l1 + q),
            other => Err(GraphError::BadSplitting(format!(
                "boundary path ends at {other}"
            ))),
        }
    };
    let mut images = vec![0usize; l1 + r1];
    for (i, path) in s.paths.iter().enumerate() {
        let end = match path.last() {
            None => {
                if i < l1 {
                    DVertex::Left(i + 1)
                } else {
                    DVertex::Right(i - l1 + 1)
                }
            }
            Some(&e) => g.end_of(e),
        };
        images[i] = slot(end)?;
    }
    Perm::from_one_line(images)
        .map_err(|_| GraphError::BadSplitting("path endpoints are not pairwise distinct".into()))
}

/// All principal splittings of `g`, one per permutation tuple.
pub fn splittings_of(g: &DGraph) -> impl Iterator<Item = Splitting> + '_ {
    all_perm_tuples(g).map(move |t| {
        splitting_from_perms(g, &t).expect("every permutation tuple yields a splitting")
    })
}
