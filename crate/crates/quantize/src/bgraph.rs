//! The bidifferential operator of an admissible graph: decorated vertex
//! tensors of a principal splitting, walk words along its paths and
//! cycles, the per-splitting matrix, and the fiber sum.

use std::collections::{BTreeMap, BTreeSet};

use double_poisson::DoubleBracket;
use free_algebra::{partial_chain, CyclicWord, Letter, NaturalElem, NcPoly, Rat, TensorElem, Word};
use graphs::{
    enum_double_fiber, perms_from_splitting, sigma_of_splitting, splittings_of, AdmGraph, DEdge,
    DGraph, DVertex, PermTuple, Splitting,
};
use num::One;
use oalgebra::{left_act, OElem, OTerm, TraceMonomial};
use perm_core::{cross, Perm};

use crate::{letter_tuples, mixed_radix, BoundaryData, QuantizeError};

/// Proper edges `e₁¹, e₁², …, e_n¹, e_n²` of `g`.
fn proper_edges(g: &DGraph) -> Vec<DEdge> {
    (1..=g.n())
        .flat_map(|k| [DEdge::Proper(k, 1), DEdge::Proper(k, 2)])
        .collect()
}

/// Looks up the decoration of `e` and range-checks it.
fn decoration(
    imap: &BTreeMap<DEdge, Letter>,
    e: DEdge,
    d: Letter,
) -> Result<Letter, QuantizeError> {
    match imap.get(&e) {
        Some(&i) if (1..=d).contains(&i) => Ok(i),
        Some(&i) => Err(QuantizeError::DecorationRange { letter: i, d }),
        None => Err(QuantizeError::MissingDecoration(e.to_string())),
    }
}

/// Sweedler terms `(w′, w″, c)` of `{{x_i, x_j}}`.
fn bracket_terms(b: &DoubleBracket, i: Letter, j: Letter) -> Vec<(Word, Word, Rat)> {
    b.pair(i, j)
        .terms()
        .map(|(ws, c)| (ws[0].clone(), ws[1].clone(), c.clone()))
        .collect()
}

/// Checks the boundary data against the graph boundary profile.
fn check_profile(g: &DGraph, data: &BoundaryData) -> Result<(), QuantizeError> {
    let checks = [
        ("left word slots", g.l().0, data.a.len()),
        ("left trace slots", g.l().1, data.f.len()),
        ("right word slots", g.r().0, data.b.len()),
        ("right trace slots", g.r().1, data.g.len()),
        ("left permutation degree", data.a.len(), data.u.degree()),
        ("right permutation degree", data.b.len(), data.v.degree()),
    ];
    for (what, expected, got) in checks {
        if expected != got {
            return Err(QuantizeError::Count {
                what,
                expected,
                got,
            });
        }
    }
    Ok(())
}

/// Word permutations and boundary permutation of one splitting.
struct SplitData {
    tuple: PermTuple,
    sigma: Perm,
}

fn prepare(g: &DGraph, s: &Splitting) -> Result<SplitData, QuantizeError> {
    let tuple = perms_from_splitting(g, s)?;
    let sigma = sigma_of_splitting(g, s)?;
    Ok(SplitData { tuple, sigma })
}

/// The base polynomial at `v` under one joint Sweedler choice `k ↦
/// (w′, w″)`: the matching half at a numbered vertex, the boundary
/// entry otherwise.
fn vertex_base(v: DVertex, data: &BoundaryData, choice: &BTreeMap<usize, (Word, Word)>) -> NcPoly {
    match v {
        DVertex::Num(k, 1) => NcPoly::word(choice[&k].0.clone()),
        DVertex::Num(k, _) => NcPoly::word(choice[&k].1.clone()),
        DVertex::Left(t) => data.a[t - 1].clone(),
        DVertex::Right(s) => data.b[s - 1].clone(),
        DVertex::LLoop(p) => data.f[p - 1].clone(),
        DVertex::RLoop(q) => data.g[q - 1].clone(),
    }
}

/// The decorated chain tensor at `v`: the partial chain of `base` along
/// the word `w_v`, twisted so that slot `1 + rank(e)` carries the leg of
/// edge `e` in `E(v)` order and slot `1` the head.
fn chain_tensor(
    g: &DGraph,
    tuple: &PermTuple,
    imap: &BTreeMap<DEdge, Letter>,
    d: Letter,
    v: DVertex,
    base: &NcPoly,
) -> Result<TensorElem, QuantizeError> {
    let ev = g.proper_into(v);
    if ev.is_empty() {
        return Ok(TensorElem::from_poly(base));
    }
    let w = &tuple.perms[&v];
    let ks: Vec<Letter> = (1..=ev.len())
        .map(|t| decoration(imap, ev[w.apply(t) - 1], d))
        .collect::<Result<_, _>>()?;
    Ok(partial_chain(&ks, base).permute_slots(&cross(&Perm::identity(1), w)))
}

/// The word slot consumed on walking edge `e` into its end vertex: slot
/// `rank(e)` for a proper edge, the head slot for reflected and loop
/// edges.
fn arrival(g: &DGraph, e: DEdge) -> (DVertex, usize) {
    let v = g.end_of(e);
    match e {
        DEdge::Proper(..) => {
            let rank = g
                .proper_into(v)
                .iter()
                .position(|&x| x == e)
                .expect("proper edge ends at its target");
            (v, rank + 1)
        }
        _ => (v, 0),
    }
}

/// The boundary vertex starting path `idx`.
fn path_start(g: &DGraph, idx: usize) -> DVertex {
    let (l1, _) = g.l();
    if idx < l1 {
        DVertex::Left(idx + 1)
    } else {
        DVertex::Right(idx - l1 + 1)
    }
}

/// The word read along path `idx`: the head of the start vertex, then
/// the arrival slot of each edge.
fn path_word(g: &DGraph, s: &Splitting, idx: usize, chosen: &BTreeMap<DVertex, &Vec<Word>>) -> Word {
    let mut w = chosen[&path_start(g, idx)][0].clone();
    for &e in &s.paths[idx] {
        let (v, slot) = arrival(g, e);
        w.extend_from_slice(&chosen[&v][slot]);
    }
    w
}

/// The word read along a cycle from its stored rotation; the result is
/// only used cyclically.
fn cycle_word(g: &DGraph, cyc: &[DEdge], chosen: &BTreeMap<DVertex, &Vec<Word>>) -> Word {
    let mut w = Word::new();
    for &e in cyc {
        let (v, slot) = arrival(g, e);
        w.extend_from_slice(&chosen[&v][slot]);
    }
    w
}

/// Sums `coefficient × assemble(chosen)` over the joint Sweedler choices
/// of the blocks meeting `visited` and the term choices of each visited
/// vertex tensor.
fn walk_sum(
    g: &DGraph,
    sd: &SplitData,
    imap: &BTreeMap<DEdge, Letter>,
    data: &BoundaryData,
    b: &DoubleBracket,
    visited: &BTreeSet<DVertex>,
    mut sink: impl FnMut(&BTreeMap<DVertex, &Vec<Word>>, Rat),
) -> Result<(), QuantizeError> {
    let d = b.num_generators();
    let blocks: Vec<usize> = visited
        .iter()
        .filter_map(|v| match v {
            DVertex::Num(k, _) => Some(*k),
            _ => None,
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut block_terms = Vec::with_capacity(blocks.len());
    for &k in &blocks {
        let i1 = decoration(imap, DEdge::Proper(k, 1), d)?;
        let i2 = decoration(imap, DEdge::Proper(k, 2), d)?;
        block_terms.push(bracket_terms(b, i1, i2));
    }
    let vertices: Vec<DVertex> = visited.iter().copied().collect();
    for pick in mixed_radix(block_terms.iter().map(Vec::len).collect()) {
        let mut coef0 = Rat::one();
        let mut choice = BTreeMap::new();
        for (slot, &t) in pick.iter().enumerate() {
            let (w1, w2, c) = &block_terms[slot][t];
            coef0 = &coef0 * c;
            choice.insert(blocks[slot], (w1.clone(), w2.clone()));
        }
        let mut vterms: Vec<Vec<(Vec<Word>, Rat)>> = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            let base = vertex_base(v, data, &choice);
            let tensor = chain_tensor(g, &sd.tuple, imap, d, v, &base)?;
            vterms.push(tensor.terms().map(|(ws, c)| (ws.clone(), c.clone())).collect());
        }
        for combo in mixed_radix(vterms.iter().map(Vec::len).collect()) {
            let mut coef = coef0.clone();
            let mut chosen: BTreeMap<DVertex, &Vec<Word>> = BTreeMap::new();
            for (slot, &t) in combo.iter().enumerate() {
                let (ws, c) = &vterms[slot][t];
                coef = &coef * c;
                chosen.insert(vertices[slot], ws);
            }
            sink(&chosen, coef);
        }
    }
    Ok(())
}

/// The decorated vertex tensor `X_{I,𝒮}(v)`: the chain tensor of the
/// base at `v` along the splitting word `w_v`. At a numbered vertex the
/// base is the matching Sweedler half of its block bracket with the
/// bracket coefficient attached, so the two marginals of one block each
/// absorb the coefficient once; the per-splitting matrix instead
/// expands both halves of a block jointly.
pub fn vertex_tensor(
    g: &DGraph,
    s: &Splitting,
    imap: &BTreeMap<DEdge, Letter>,
    v: DVertex,
    data: &BoundaryData,
    b: &DoubleBracket,
) -> Result<TensorElem, QuantizeError> {
    check_profile(g, data)?;
    let sd = prepare(g, s)?;
    let d = b.num_generators();
    let base = match v {
        DVertex::Num(k, part) => {
            if k < 1 || k > g.n() {
                return Err(QuantizeError::Count {
                    what: "vertex block",
                    expected: g.n(),
                    got: k,
                });
            }
            let i1 = decoration(imap, DEdge::Proper(k, 1), d)?;
            let i2 = decoration(imap, DEdge::Proper(k, 2), d)?;
            let mut p = NcPoly::zero();
            for (w1, w2, c) in bracket_terms(b, i1, i2) {
                p.add_term(if part == 1 { w1 } else { w2 }, c);
            }
            p
        }
        DVertex::Left(t) => slot_poly(&data.a, t, "left word index")?,
        DVertex::Right(t) => slot_poly(&data.b, t, "right word index")?,
        DVertex::LLoop(t) => slot_poly(&data.f, t, "left trace index")?,
        DVertex::RLoop(t) => slot_poly(&data.g, t, "right trace index")?,
    };
    chain_tensor(g, &sd.tuple, imap, d, v, &base)
}

fn slot_poly(slots: &[NcPoly], t: usize, what: &'static str) -> Result<NcPoly, QuantizeError> {
    if t < 1 || t > slots.len() {
        return Err(QuantizeError::Count {
            what,
            expected: slots.len(),
            got: t,
        });
    }
    Ok(slots[t - 1].clone())
}

/// The word polynomial read along path `idx` of the splitting, with one
/// Sweedler choice per block the walk visits.
pub fn path_value(
    g: &DGraph,
    s: &Splitting,
    imap: &BTreeMap<DEdge, Letter>,
    idx: usize,
    data: &BoundaryData,
    b: &DoubleBracket,
) -> Result<NcPoly, QuantizeError> {
    check_profile(g, data)?;
    let sd = prepare(g, s)?;
    if idx >= s.paths.len() {
        return Err(QuantizeError::Count {
            what: "path index",
            expected: s.paths.len(),
            got: idx,
        });
    }
    let mut visited = BTreeSet::new();
    visited.insert(path_start(g, idx));
    for &e in &s.paths[idx] {
        visited.insert(g.end_of(e));
    }
    let mut out = NcPoly::zero();
    walk_sum(g, &sd, imap, data, b, &visited, |chosen, coef| {
        out.add_term(path_word(g, s, idx, chosen), coef);
    })?;
    Ok(out)
}

/// The necklace read along cycle `idx` of the splitting; the value does
/// not depend on the stored rotation of the cycle.
pub fn cycle_value(
    g: &DGraph,
    s: &Splitting,
    imap: &BTreeMap<DEdge, Letter>,
    idx: usize,
    data: &BoundaryData,
    b: &DoubleBracket,
) -> Result<NaturalElem, QuantizeError> {
    check_profile(g, data)?;
    let sd = prepare(g, s)?;
    if idx >= s.cycles.len() {
        return Err(QuantizeError::Count {
            what: "cycle index",
            expected: s.cycles.len(),
            got: idx,
        });
    }
    let cyc = &s.cycles[idx];
    let mut visited = BTreeSet::new();
    for &e in cyc {
        visited.insert(g.end_of(e));
    }
    let mut out = NaturalElem::zero();
    walk_sum(g, &sd, imap, data, b, &visited, |chosen, coef| {
        out.add_term(CyclicWord::new(cycle_word(g, cyc, chosen)), coef);
    })?;
    Ok(out)
}

/// One decorated summand of the per-splitting matrix: the joint Sweedler
/// expansion over all blocks, one term choice per vertex tensor, path
/// words into word slots and cycle necklaces into trace slots, the whole
/// sum moved by the left action of `σ(𝒮)`.
fn splitting_summand(
    g: &DGraph,
    s: &Splitting,
    sd: &SplitData,
    imap: &BTreeMap<DEdge, Letter>,
    data: &BoundaryData,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    let visited: BTreeSet<DVertex> = g.vertices().into_iter().collect();
    let mut out = OElem::zero();
    walk_sum(g, sd, imap, data, b, &visited, |chosen, coef| {
        let words: Vec<Word> = (0..s.paths.len())
            .map(|i| path_word(g, s, i, chosen))
            .collect();
        let cycles: Vec<CyclicWord> = s
            .cycles
            .iter()
            .map(|c| CyclicWord::new(cycle_word(g, c, chosen)))
            .collect();
        out.add_term(
            OTerm::new(words, TraceMonomial::new(cycles), cross(&data.u, &data.v)),
            coef,
        );
    })?;
    left_act(&sd.sigma, &out).map_err(QuantizeError::from)
}

/// The matrix `𝔹_{𝔊,𝒮}` of a principal splitting applied to boundary
/// data, summed over all proper edge decorations. Summing this over all
/// splittings of all double graphs over an admissible graph gives a
/// value independent of the chosen trace lifts; see [`b_graph`].
pub fn b_split_boundary(
    g: &DGraph,
    s: &Splitting,
    data: &BoundaryData,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    check_profile(g, data)?;
    let sd = prepare(g, s)?;
    let props = proper_edges(g);
    let mut out = OElem::zero();
    for tup in letter_tuples(props.len(), b.num_generators()) {
        let imap: BTreeMap<DEdge, Letter> = props.iter().copied().zip(tup).collect();
        out = out.add(&splitting_summand(g, s, &sd, &imap, data, b)?);
    }
    Ok(out)
}

/// The matrix `𝔹_{𝔊,𝒮}` of a principal splitting applied to a pair of
/// 𝒪(A) terms with their canonical trace lifts.
pub fn b_split(
    g: &DGraph,
    s: &Splitting,
    left: &OTerm,
    right: &OTerm,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    b_split_boundary(g, s, &BoundaryData::from_terms(left, right), b)
}

/// The bidifferential operator `𝔹_Γ(α, β)`: for each pair of terms, the
/// sum of the per-splitting matrices over all principal splittings of
/// every double graph over `Γ` with the matching boundary profile.
pub fn b_graph(
    gamma: &AdmGraph,
    alpha: &OElem,
    beta: &OElem,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    let mut out = OElem::zero();
    for (lt, lc) in alpha.terms() {
        for (rt, rc) in beta.terms() {
            let data = BoundaryData::from_terms(lt, rt);
            let l = (lt.words.len(), lt.traces.factors().len());
            let r = (rt.words.len(), rt.traces.factors().len());
            let c = lc * rc;
            for g in enum_double_fiber(gamma, l, r) {
                for s in splittings_of(&g) {
                    out = out.add(&b_split_boundary(&g, &s, &data, b)?.scale(&c));
                }
            }
        }
    }
    Ok(out)
}
