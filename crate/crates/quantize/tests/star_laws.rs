//! Frozen values, representation-side oracles, and compatibility laws
//! for the graph bidifferential operators, the star product, and the
//! induced double bracket.

use std::collections::BTreeMap;

use double_poisson::DoubleBracket;
use free_algebra::{rat, rat_int, CyclicWord, NaturalElem, NcPoly, TensorElem};
use graphs::{
    enum_admissible, enum_double_fiber, splitting_from_perms, splittings_of, ATarget, AdmGraph,
    DEdge, DGraph, DVertex, PermTuple, Splitting,
};
use oalgebra::{
    ad_act, block_swap, hat1, left_act, o_mul, pi, right_act, OElem, OTerm, TraceMonomial,
};
use perm_core::{blowup, cross, Perm};
use quantize::{
    associativity_defect, b_graph, b_split, b_split_boundary, cycle_value, dt_bracket, path_value,
    star, vertex_tensor, BoundaryData, QuantizeError, WeightTable,
};
use repspace::{
    comm_b_graph, eval_element, index_tuples, pair, rep_poisson, CommPoly, MatUnitTensor,
};

fn cb() -> DoubleBracket {
    DoubleBracket::constant(2).unwrap()
}

/// `{{x, x}} = x ⊗ 1 − 1 ⊗ x` on one generator.
fn linear() -> DoubleBracket {
    let mut v = TensorElem::zero(2);
    v.add_term(vec![vec![1], vec![]], rat_int(1));
    v.add_term(vec![vec![], vec![1]], rat_int(-1));
    DoubleBracket::from_table(1, vec![(1, 1, v)]).unwrap()
}

fn word_term(ws: Vec<Vec<u8>>, perm: Perm) -> OTerm {
    OTerm::new(ws, TraceMonomial::one(), perm)
}

fn word_elem(w: &[u8]) -> OElem {
    OElem::from_term(word_term(vec![w.to_vec()], Perm::identity(1)), rat_int(1))
}

fn gen(k: u8) -> OElem {
    word_elem(&[k])
}

/// The bracket image of `1 ⊗ 1`: `(ε, ε) ⊗ 𝟙 ⊗ (12)`.
fn unit_pair() -> OElem {
    OElem::from_term(word_term(vec![vec![], vec![]], block_swap(1, 1)), rat_int(1))
}

fn units(rows: &[u8], cols: &[u8]) -> MatUnitTensor {
    MatUnitTensor::new(rows.iter().zip(cols).map(|(&r, &c)| (r, c)).collect())
}

/// Pairs `x` with every elementary tuple at size `n`.
fn pushes_to_zero(x: &OElem, n: u8) -> bool {
    if x.is_zero() {
        return true;
    }
    let g = x.grade().unwrap();
    for rows in index_tuples(g, n) {
        for cols in index_tuples(g, n) {
            if !pair(x, &units(&rows, &cols), n).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn push_equal(a: &OElem, b: &OElem, n: u8) -> bool {
    pushes_to_zero(&a.sub(b), n)
}

fn lr() -> AdmGraph {
    AdmGraph::new(1, vec![(ATarget::L, ATarget::R)]).unwrap()
}

fn rl() -> AdmGraph {
    AdmGraph::new(1, vec![(ATarget::R, ATarget::L)]).unwrap()
}

#[test]
fn one_vertex_splitting_of_the_constant_bracket_freezes() {
    let gamma = lr();
    let fibers: Vec<DGraph> = enum_double_fiber(&gamma, (1, 0), (1, 0)).collect();
    assert_eq!(fibers.len(), 1);
    let g = &fibers[0];
    let splits: Vec<Splitting> = splittings_of(g).collect();
    assert_eq!(splits.len(), 1);
    let left = word_term(vec![vec![1]], Perm::identity(1));
    let right = word_term(vec![vec![2]], Perm::identity(1));
    let value = b_split(g, &splits[0], &left, &right, &cb()).unwrap();
    assert_eq!(value, unit_pair());
    // (value | E_{i₁j₁} ⊗ E_{i₂j₂}) = δ_{i₂j₁} δ_{i₁j₂} at N = 2.
    for t in index_tuples(4, 2) {
        let got = pair(&value, &units(&[t[0], t[2]], &[t[1], t[3]]), 2).unwrap();
        let want = if t[2] == t[1] && t[0] == t[3] {
            CommPoly::one()
        } else {
            CommPoly::zero()
        };
        assert_eq!(got, want);
    }
}

#[test]
fn empty_graph_operator_multiplies() {
    let mut alpha = OElem::from_term(
        word_term(vec![vec![1], vec![2, 1]], block_swap(1, 1)),
        rat(1, 2),
    );
    alpha.add_term(
        OTerm::new(
            vec![vec![2]],
            TraceMonomial::new(vec![CyclicWord::new(vec![1, 2])]),
            Perm::identity(1),
        ),
        rat_int(-1),
    );
    let beta = OElem::from_term(word_term(vec![vec![2, 2]], Perm::identity(1)), rat_int(3));
    let got = b_graph(&AdmGraph::empty(), &alpha, &beta, &cb()).unwrap();
    assert_eq!(got, o_mul(&alpha, &beta));
}

#[test]
fn one_vertex_operators_on_generators_freeze() {
    let b = cb();
    let t = unit_pair();
    assert_eq!(b_graph(&lr(), &gen(1), &gen(2), &b).unwrap(), t);
    assert_eq!(b_graph(&rl(), &gen(1), &gen(2), &b).unwrap(), t.neg());
    assert_eq!(b_graph(&lr(), &gen(2), &gen(1), &b).unwrap(), t.neg());
    assert_eq!(b_graph(&rl(), &gen(2), &gen(1), &b).unwrap(), t);
}

#[test]
fn calibration_fixes_the_order_one_weights() {
    // With weights ±c on the two one-vertex graphs, the skew part of
    // the order-one coefficient on generators is 4c times the bracket
    // image; the contract value 1 forces c = 1/4.
    let b = cb();
    let skew = |gamma: &AdmGraph| -> OElem {
        let fwd = b_graph(gamma, &gen(1), &gen(2), &b).unwrap();
        let rev = b_graph(gamma, &gen(2), &gen(1), &b).unwrap();
        fwd.sub(&ad_act(&block_swap(1, 1), &rev).unwrap())
    };
    assert_eq!(skew(&lr()), unit_pair().scale(&rat_int(2)));
    assert_eq!(skew(&rl()), unit_pair().scale(&rat_int(-2)));
    let w = WeightTable::order_one();
    assert_eq!(w.star_weight(&AdmGraph::empty()).unwrap(), rat_int(1));
    assert_eq!(w.star_weight(&lr()).unwrap(), rat(1, 4));
    assert_eq!(w.star_weight(&rl()).unwrap(), rat(-1, 4));
    assert_eq!(dt_bracket(&gen(1), &gen(2), &b).unwrap(), unit_pair());
}

#[test]
fn graph_operators_match_the_representation_oracle() {
    let b = cb();
    let graphs: Vec<AdmGraph> = enum_admissible(1)
        .chain([
            AdmGraph::new(
                2,
                vec![(ATarget::Num(2), ATarget::L), (ATarget::L, ATarget::R)],
            )
            .unwrap(),
            AdmGraph::new(
                2,
                vec![(ATarget::L, ATarget::R), (ATarget::R, ATarget::L)],
            )
            .unwrap(),
        ])
        .collect();
    let alphas = [
        word_elem(&[1]),
        word_elem(&[1, 2]),
        OElem::from_term(
            OTerm::new(
                vec![vec![1]],
                TraceMonomial::new(vec![CyclicWord::new(vec![2])]),
                Perm::identity(1),
            ),
            rat_int(1),
        ),
    ];
    let betas = [word_elem(&[2]), word_elem(&[2, 1])];
    for gamma in &graphs {
        for alpha in &alphas {
            for beta in &betas {
                let elem = b_graph(gamma, alpha, beta, &b).unwrap();
                for n in [1u8, 2] {
                    for ra in index_tuples(1, n) {
                        for ca in index_tuples(1, n) {
                            for rb in index_tuples(1, n) {
                                for cbt in index_tuples(1, n) {
                                    let f = eval_element(alpha, &ra, &ca, n).unwrap();
                                    let h = eval_element(beta, &rb, &cbt, n).unwrap();
                                    let want = comm_b_graph(gamma, &f, &h, &b, n);
                                    let rows = [ra[0], rb[0]];
                                    let cols = [ca[0], cbt[0]];
                                    let got = pair(&elem, &units(&rows, &cols), n).unwrap();
                                    assert_eq!(got, want);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn star_order_zero_multiplies_and_units_are_neutral() {
    let b = cb();
    let w = WeightTable::order_one();
    let alpha = word_elem(&[1, 2]);
    let beta = word_elem(&[2]);
    let s = star(&alpha, &beta, 0, &w, &b).unwrap();
    assert_eq!(s.order(), 0);
    assert_eq!(s.coefficient(0), &o_mul(&alpha, &beta));
    let left = star(&OElem::one(), &beta, 1, &w, &b).unwrap();
    assert_eq!(left.coefficient(0), &beta);
    assert!(left.coefficient(1).is_zero());
    let right = star(&beta, &OElem::one(), 1, &w, &b).unwrap();
    assert_eq!(right.coefficient(0), &beta);
    assert!(right.coefficient(1).is_zero());
}

#[test]
fn star_order_one_on_generators_is_half_the_bracket_image() {
    let s = star(&gen(1), &gen(2), 1, &WeightTable::order_one(), &cb()).unwrap();
    assert_eq!(s.coefficient(0), &o_mul(&gen(1), &gen(2)));
    assert_eq!(s.coefficient(1), &unit_pair().scale(&rat(1, 2)));
}

#[test]
fn truncations_need_weights_for_every_graph() {
    let err = star(&gen(1), &gen(2), 2, &WeightTable::order_one(), &cb()).unwrap_err();
    assert!(matches!(err, QuantizeError::MissingWeight(_)));
    let err = star(&gen(1), &gen(2), 0, &WeightTable::empty(), &cb()).unwrap_err();
    assert!(matches!(err, QuantizeError::MissingWeight(k) if k == AdmGraph::empty().key()));
}

#[test]
fn trivial_paths_and_untouched_loops_read_the_boundary_entry() {
    // One block pointing at `L₁` and `R₁`; `L₂` and the left loop
    // vertex receive no edges.
    let g = DGraph::new(
        1,
        (2, 1),
        (1, 0),
        vec![(DVertex::Left(1), DVertex::Right(1))],
    )
    .unwrap();
    let splits: Vec<Splitting> = splittings_of(&g).collect();
    assert_eq!(splits.len(), 1);
    let s = &splits[0];
    assert!(s.paths[1].is_empty());
    let mut a2 = NcPoly::word(vec![2, 1]);
    a2.add_term(vec![2], rat(1, 2));
    let data = BoundaryData::new(
        vec![NcPoly::word(vec![1]), a2.clone()],
        vec![NcPoly::word(vec![1, 2])],
        vec![NcPoly::word(vec![2])],
        vec![],
        Perm::identity(2),
        Perm::identity(1),
    )
    .unwrap();
    let imap: BTreeMap<DEdge, u8> =
        [(DEdge::Proper(1, 1), 1), (DEdge::Proper(1, 2), 2)].into();
    let b = cb();
    assert_eq!(path_value(&g, s, &imap, 1, &data, &b).unwrap(), a2);
    let loop_idx = s
        .cycles
        .iter()
        .position(|c| c == &vec![DEdge::LLoop(1)])
        .unwrap();
    assert_eq!(
        cycle_value(&g, s, &imap, loop_idx, &data, &b).unwrap(),
        NaturalElem::from_term(CyclicWord::new(vec![1, 2]), rat_int(1))
    );
}

#[test]
fn forced_decoration_makes_numbered_tensors_units() {
    let gamma = lr();
    let g: DGraph = enum_double_fiber(&gamma, (1, 0), (1, 0)).next().unwrap();
    let s: Splitting = splittings_of(&g).next().unwrap();
    let left = word_term(vec![vec![1]], Perm::identity(1));
    let right = word_term(vec![vec![2]], Perm::identity(1));
    let data = BoundaryData::from_terms(&left, &right);
    let imap: BTreeMap<DEdge, u8> =
        [(DEdge::Proper(1, 1), 1), (DEdge::Proper(1, 2), 2)].into();
    let b = cb();
    for part in [1u8, 2] {
        assert_eq!(
            vertex_tensor(&g, &s, &imap, DVertex::Num(1, part), &data, &b).unwrap(),
            TensorElem::from_term(vec![vec![]], rat_int(1))
        );
    }
    // A decoration killing the bracket kills the tensor.
    let dead: BTreeMap<DEdge, u8> =
        [(DEdge::Proper(1, 1), 1), (DEdge::Proper(1, 2), 1)].into();
    assert!(vertex_tensor(&g, &s, &dead, DVertex::Num(1, 1), &data, &b)
        .unwrap()
        .is_zero());
}

#[test]
fn reordered_vertex_words_twist_the_chain_slots() {
    // Two blocks feeding one left loop vertex; with the splitting word
    // (e₂¹, e₁¹) the base is differentiated along e₂¹ first, so the
    // slot of e₁¹ carries the later segment.
    let g = DGraph::new(
        2,
        (0, 1),
        (1, 0),
        vec![
            (DVertex::LLoop(1), DVertex::Right(1)),
            (DVertex::LLoop(1), DVertex::Right(1)),
        ],
    )
    .unwrap();
    let data = BoundaryData::new(
        vec![],
        vec![NcPoly::word(vec![2, 3, 1, 3, 3])],
        vec![NcPoly::word(vec![1])],
        vec![],
        Perm::identity(0),
        Perm::identity(1),
    )
    .unwrap();
    let b = DoubleBracket::zero(3);
    let mut tuple = PermTuple::identity(&g);
    tuple
        .perms
        .insert(DVertex::LLoop(1), Perm::from_one_line(vec![2, 1]).unwrap());
    let s = splitting_from_perms(&g, &tuple).unwrap();
    let imap: BTreeMap<DEdge, u8> = [
        (DEdge::Proper(1, 1), 1),
        (DEdge::Proper(1, 2), 1),
        (DEdge::Proper(2, 1), 2),
        (DEdge::Proper(2, 2), 1),
    ]
    .into();
    assert_eq!(
        vertex_tensor(&g, &s, &imap, DVertex::LLoop(1), &data, &b).unwrap(),
        TensorElem::from_term(vec![vec![], vec![3, 3], vec![3]], rat_int(1))
    );
    // With the identity word and swapped decorations, the same
    // derivative sequence lands in block order instead.
    let s_id = splitting_from_perms(&g, &PermTuple::identity(&g)).unwrap();
    let swapped: BTreeMap<DEdge, u8> = [
        (DEdge::Proper(1, 1), 2),
        (DEdge::Proper(1, 2), 1),
        (DEdge::Proper(2, 1), 1),
        (DEdge::Proper(2, 2), 1),
    ]
    .into();
    assert_eq!(
        vertex_tensor(&g, &s_id, &swapped, DVertex::LLoop(1), &data, &b).unwrap(),
        TensorElem::from_term(vec![vec![], vec![3], vec![3, 3]], rat_int(1))
    );
}

#[test]
fn cycle_necklaces_ignore_the_stored_rotation() {
    let b = cb();
    let left = OTerm::new(
        vec![vec![1]],
        TraceMonomial::new(vec![CyclicWord::new(vec![1, 2])]),
        Perm::identity(1),
    );
    let right = OTerm::new(
        vec![vec![2]],
        TraceMonomial::new(vec![CyclicWord::new(vec![2, 2])]),
        Perm::identity(1),
    );
    let data = BoundaryData::from_terms(&left, &right);
    let mut checked = 0;
    for gamma in enum_admissible(1) {
        for g in enum_double_fiber(&gamma, (1, 1), (1, 1)) {
            for s in splittings_of(&g) {
                for (idx, cyc) in s.cycles.iter().enumerate() {
                    for r in 1..cyc.len() {
                        let mut rot = s.clone();
                        rot.cycles[idx].rotate_left(r);
                        for tup in index_tuples(2, 2) {
                            let imap: BTreeMap<DEdge, u8> = [
                                (DEdge::Proper(1, 1), tup[0]),
                                (DEdge::Proper(1, 2), tup[1]),
                            ]
                            .into();
                            assert_eq!(
                                cycle_value(&g, &s, &imap, idx, &data, &b).unwrap(),
                                cycle_value(&g, &rot, &imap, idx, &data, &b).unwrap()
                            );
                        }
                        assert_eq!(
                            b_split_boundary(&g, &s, &data, &b).unwrap(),
                            b_split_boundary(&g, &rot, &data, &b).unwrap()
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
    // A two-block graph with longer cycles, sampled.
    let gamma = AdmGraph::new(
        2,
        vec![(ATarget::L, ATarget::Num(2)), (ATarget::L, ATarget::R)],
    )
    .unwrap();
    for g in enum_double_fiber(&gamma, (1, 1), (1, 1)).take(6) {
        for s in splittings_of(&g).take(4) {
            let mut rot = s.clone();
            let mut moved = false;
            for c in &mut rot.cycles {
                if c.len() > 1 {
                    c.rotate_left(1);
                    moved = true;
                }
            }
            if !moved {
                continue;
            }
            assert_eq!(
                b_split_boundary(&g, &s, &data, &b).unwrap(),
                b_split_boundary(&g, &rot, &data, &b).unwrap()
            );
        }
    }
}

#[test]
fn split_sums_do_not_depend_on_trace_lifts() {
    let b = cb();
    let left = OTerm::new(
        vec![vec![1]],
        TraceMonomial::new(vec![CyclicWord::new(vec![1, 2])]),
        Perm::identity(1),
    );
    let right = word_term(vec![vec![2]], Perm::identity(1));
    let canon = BoundaryData::from_terms(&left, &right);
    let mut rotated = canon.clone();
    rotated.f[0] = NcPoly::word(vec![2, 1]);
    let graphs: Vec<AdmGraph> = enum_admissible(1)
        .chain([AdmGraph::new(
            2,
            vec![(ATarget::Num(2), ATarget::L), (ATarget::L, ATarget::R)],
        )
        .unwrap()])
        .collect();
    for gamma in graphs {
        let total = |data: &BoundaryData| -> OElem {
            let mut out = OElem::zero();
            for g in enum_double_fiber(&gamma, (1, 1), (1, 0)) {
                for s in splittings_of(&g) {
                    out = out.add(&b_split_boundary(&g, &s, data, &b).unwrap());
                }
            }
            out
        };
        assert_eq!(total(&canon), total(&rotated));
    }
}

#[test]
fn operators_intertwine_the_trace_contraction() {
    let b = cb();
    let alpha = OElem::from_term(word_term(vec![vec![1], vec![2]], block_swap(1, 1)), rat_int(1));
    let beta = OElem::from_term(
        word_term(vec![vec![2], vec![1, 1]], Perm::identity(2)),
        rat_int(1),
    );
    for gamma in enum_admissible(1) {
        let base = b_graph(&gamma, &alpha, &beta, &b).unwrap();
        // Contracting the first argument commutes on the nose.
        let lhs = b_graph(&gamma, &pi(&alpha).unwrap(), &beta, &b).unwrap();
        assert!(push_equal(&lhs, &pi(&base).unwrap(), 2));
        // Contracting the second argument first carries its lead slot
        // across the first block.
        let lhs = b_graph(&gamma, &alpha, &pi(&beta).unwrap(), &b).unwrap();
        let conj = cross(&block_swap(2, 1), &Perm::identity(1));
        let rhs = pi(&ad_act(&conj, &base).unwrap()).unwrap();
        assert!(push_equal(&lhs, &rhs, 2));
    }
}

#[test]
fn operators_intertwine_the_unit_insertion() {
    let b = cb();
    let alpha = OElem::from_term(
        OTerm::new(
            vec![vec![1], vec![2]],
            TraceMonomial::new(vec![CyclicWord::new(vec![1])]),
            block_swap(1, 1),
        ),
        rat_int(1),
    );
    let beta = OElem::from_term(
        word_term(vec![vec![2], vec![1, 1]], Perm::identity(2)),
        rat_int(1),
    );
    for gamma in enum_admissible(1) {
        let base = b_graph(&gamma, &alpha, &beta, &b).unwrap();
        let lhs = b_graph(&gamma, &hat1(&alpha), &beta, &b).unwrap();
        assert!(push_equal(&lhs, &hat1(&base), 2));
        let lhs = b_graph(&gamma, &alpha, &hat1(&beta), &b).unwrap();
        let conj = cross(&block_swap(1, 2), &Perm::identity(2));
        let rhs = ad_act(&conj, &hat1(&base)).unwrap();
        assert!(push_equal(&lhs, &rhs, 2));
    }
}

#[test]
fn operators_commute_with_slot_permutations() {
    let b = cb();
    let w = block_swap(1, 1);
    let alpha = OElem::from_term(word_term(vec![vec![1], vec![2, 2]], block_swap(1, 1)), rat_int(1));
    let beta = OElem::from_term(
        word_term(vec![vec![2], vec![1, 1]], Perm::identity(2)),
        rat_int(1),
    );
    for gamma in enum_admissible(1) {
        let base = b_graph(&gamma, &alpha, &beta, &b).unwrap();
        let lhs = b_graph(
            &gamma,
            &left_act(&w, &alpha).unwrap(),
            &left_act(&w, &beta).unwrap(),
            &b,
        )
        .unwrap();
        let rhs = left_act(&cross(&w, &w), &base).unwrap();
        assert!(push_equal(&lhs, &rhs, 2));
        let lhs = b_graph(
            &gamma,
            &right_act(&alpha, &w).unwrap(),
            &right_act(&beta, &w).unwrap(),
            &b,
        )
        .unwrap();
        let rhs = right_act(&base, &cross(&w, &w)).unwrap();
        assert!(push_equal(&lhs, &rhs, 2));
    }
}

#[test]
fn induced_bracket_is_skew_exactly() {
    let cases = [
        (cb(), gen(1), word_elem(&[2, 1])),
        (
            cb(),
            OElem::from_term(word_term(vec![vec![1], vec![2]], block_swap(1, 1)), rat_int(1)),
            gen(2),
        ),
        (linear(), gen(1), word_elem(&[1, 1])),
    ];
    for (b, alpha, beta) in cases {
        let ga = alpha.grade().unwrap();
        let gb = beta.grade().unwrap();
        let fwd = dt_bracket(&alpha, &beta, &b).unwrap();
        let rev = dt_bracket(&beta, &alpha, &b).unwrap();
        assert_eq!(rev, ad_act(&block_swap(ga, gb), &fwd).unwrap().neg());
    }
}

#[test]
fn induced_bracket_satisfies_leibniz_on_the_representation() {
    let b = cb();
    let cases = [
        (gen(1), gen(2), word_elem(&[1, 2])),
        (
            gen(2),
            word_elem(&[1]),
            OElem::from_term(word_term(vec![vec![2], vec![1]], block_swap(1, 1)), rat_int(1)),
        ),
    ];
    for (alpha, beta, gamma) in cases {
        let (ga, gb, gc) = (
            alpha.grade().unwrap(),
            beta.grade().unwrap(),
            gamma.grade().unwrap(),
        );
        let lhs = dt_bracket(&alpha, &o_mul(&beta, &gamma), &b).unwrap();
        let t1 = o_mul(&dt_bracket(&alpha, &beta, &b).unwrap(), &gamma);
        let tau = Perm::from_one_line(vec![2, 1, 3]).unwrap();
        let t2 = ad_act(
            &blowup(&tau, &[gb, ga, gc]),
            &o_mul(&beta, &dt_bracket(&alpha, &gamma, &b).unwrap()),
        )
        .unwrap();
        assert!(push_equal(&lhs, &t1.add(&t2), 2));
    }
}

#[test]
fn induced_bracket_satisfies_jacobi_on_the_representation() {
    let cases = [
        (cb(), gen(1), gen(2), word_elem(&[1, 2])),
        (linear(), gen(1), gen(1), word_elem(&[1, 1])),
    ];
    for (b, alpha, beta, gamma) in cases {
        let (ga, gb, gc) = (1, 1, 1);
        let dt = |x: &OElem, y: &OElem| dt_bracket(x, y, &b).unwrap();
        let j1 = dt(&alpha, &dt(&beta, &gamma));
        let j2 = ad_act(
            &blowup(&Perm::from_one_line(vec![2, 3, 1]).unwrap(), &[gb, gc, ga]),
            &dt(&beta, &dt(&gamma, &alpha)),
        )
        .unwrap();
        let j3 = ad_act(
            &blowup(&Perm::from_one_line(vec![3, 1, 2]).unwrap(), &[gc, ga, gb]),
            &dt(&gamma, &dt(&alpha, &beta)),
        )
        .unwrap();
        assert!(pushes_to_zero(&j1.add(&j2).add(&j3), 2));
    }
}

#[test]
fn induced_bracket_matches_the_representation_poisson_bracket() {
    for (b, d) in [(cb(), 2u8), (linear(), 1u8)] {
        for i in 1..=d {
            for j in 1..=d {
                let e = dt_bracket(&gen(i), &gen(j), &b).unwrap();
                for t in index_tuples(4, 2) {
                    let f = eval_element(&gen(i), &[t[0]], &[t[1]], 2).unwrap();
                    let h = eval_element(&gen(j), &[t[2]], &[t[3]], 2).unwrap();
                    let want = rep_poisson(&f, &h, &b, 2);
                    let got = pair(&e, &units(&[t[0], t[2]], &[t[1], t[3]]), 2).unwrap();
                    assert_eq!(got, want);
                }
            }
        }
    }
    assert!(dt_bracket(&gen(1), &gen(1), &cb()).unwrap().is_zero());
}

#[test]
fn first_order_associativity_defect_pushes_to_zero() {
    let b = cb();
    let defects = associativity_defect(
        &gen(1),
        &gen(2),
        &word_elem(&[1, 2]),
        1,
        &WeightTable::order_one(),
        &b,
    )
    .unwrap();
    assert!(defects[0].is_zero());
    assert!(pushes_to_zero(&defects[1], 2));
}

#[test]
fn boundary_profiles_are_validated() {
    let gamma = lr();
    let g: DGraph = enum_double_fiber(&gamma, (1, 0), (1, 0)).next().unwrap();
    let s: Splitting = splittings_of(&g).next().unwrap();
    let data = BoundaryData::new(
        vec![NcPoly::word(vec![1]), NcPoly::word(vec![2])],
        vec![],
        vec![NcPoly::word(vec![2])],
        vec![],
        Perm::identity(2),
        Perm::identity(1),
    )
    .unwrap();
    let err = b_split_boundary(&g, &s, &data, &cb()).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { .. }));
    let bad = BoundaryData::new(
        vec![NcPoly::word(vec![1])],
        vec![],
        vec![NcPoly::word(vec![2])],
        vec![],
        Perm::identity(2),
        Perm::identity(1),
    );
    assert!(bad.is_err());
}
