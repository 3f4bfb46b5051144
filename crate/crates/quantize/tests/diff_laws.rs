//! Frozen values and representation-side oracles for the multi-index
//! differential operators and the formality graph components, plus the
//! serialization formats of the weight table and the ħ-series.

use double_poisson::DoubleBracket;
use free_algebra::{rat, rat_int, CyclicWord, Letter};
use graphs::{enum_formality, FTarget, FormalityGraph};
use oalgebra::{block_swap, o_mul, OElem, OTerm, TraceMonomial};
use perm_core::Perm;
use quantize::{
    diff_op, dt_bracket, poly_diff_op, u_graph, HbarSeries, PolyVectorSpec, QuantizeError,
    WeightTable,
};
use repspace::{
    comm_u_graph, eval_element, index_tuples, pair, rep_partial, CommPolyVector, MatUnitTensor,
};

fn cb() -> DoubleBracket {
    DoubleBracket::constant(2).unwrap()
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

fn units(rows: &[u8], cols: &[u8]) -> MatUnitTensor {
    MatUnitTensor::new(rows.iter().zip(cols).map(|(&r, &c)| (r, c)).collect())
}

#[test]
fn empty_chain_is_the_identity() {
    let mut alpha = OElem::from_term(
        OTerm::new(
            vec![vec![1, 2], vec![2]],
            TraceMonomial::new(vec![CyclicWord::new(vec![1])]),
            block_swap(1, 1),
        ),
        rat(1, 2),
    );
    alpha.add_term(
        OTerm::new(
            vec![],
            TraceMonomial::new(vec![CyclicWord::new(vec![1, 2])]),
            Perm::identity(0),
        ),
        rat_int(-3),
    );
    assert_eq!(diff_op(&[], &alpha).unwrap(), alpha);
}

#[test]
fn single_derivative_of_a_word_freezes() {
    let got = diff_op(&[1], &word_elem(&[1, 2])).unwrap();
    let want = OElem::from_term(
        word_term(vec![vec![], vec![2]], block_swap(1, 1)),
        rat_int(1),
    );
    assert_eq!(got, want);
}

#[test]
fn double_derivative_of_a_word_freezes() {
    let got = diff_op(&[1, 2], &word_elem(&[1, 2])).unwrap();
    let want = OElem::from_term(
        word_term(
            vec![vec![], vec![], vec![]],
            Perm::from_one_line(vec![2, 3, 1]).unwrap(),
        ),
        rat_int(1),
    );
    assert_eq!(got, want);
}

#[test]
fn operators_match_the_coordinate_partials() {
    let alphas = [
        gen(1),
        word_elem(&[1, 2]),
        OElem::from_term(word_term(vec![vec![1], vec![2]], block_swap(1, 1)), rat_int(1)),
        OElem::from_term(
            OTerm::new(
                vec![vec![1, 2]],
                TraceMonomial::new(vec![CyclicWord::new(vec![2, 2])]),
                Perm::identity(1),
            ),
            rat_int(1),
        ),
        OElem::from_term(
            OTerm::new(
                vec![],
                TraceMonomial::new(vec![CyclicWord::new(vec![1, 2])]),
                Perm::identity(0),
            ),
            rat_int(1),
        ),
        OElem::one(),
        gen(1).sub(&gen(2)),
    ];
    let kss: [&[Letter]; 6] = [&[], &[1], &[2], &[1, 1], &[1, 2], &[2, 2]];
    for alpha in &alphas {
        let g = alpha.grade().unwrap();
        for ks in kss {
            let m = ks.len();
            let elem = diff_op(ks, alpha).unwrap();
            for pq in index_tuples(2 * m, 2) {
                for rows in index_tuples(g, 2) {
                    for cols in index_tuples(g, 2) {
                        let mut f = eval_element(alpha, &rows, &cols, 2).unwrap();
                        for (t, &k) in ks.iter().enumerate() {
                            f = rep_partial(k, pq[2 * t], pq[2 * t + 1], &f);
                        }
                        let mut pairs: Vec<(u8, u8)> =
                            (0..m).map(|t| (pq[2 * t + 1], pq[2 * t])).collect();
                        pairs.extend(rows.iter().zip(&cols).map(|(&r, &c)| (r, c)));
                        let got = pair(&elem, &MatUnitTensor::new(pairs), 2).unwrap();
                        assert_eq!(got, f);
                    }
                }
            }
        }
    }
}

#[test]
fn single_member_families_reduce_to_the_plain_operator() {
    let alpha = OElem::from_term(
        OTerm::new(
            vec![vec![1, 2]],
            TraceMonomial::new(vec![CyclicWord::new(vec![2])]),
            Perm::identity(1),
        ),
        rat_int(1),
    );
    let ks = vec![1, 2];
    assert_eq!(
        poly_diff_op(&[ks.clone()], &[alpha.clone()]).unwrap(),
        diff_op(&ks, &alpha).unwrap()
    );
}

#[test]
fn derivative_free_families_multiply() {
    let alpha = OElem::from_term(word_term(vec![vec![1], vec![2]], block_swap(1, 1)), rat(2, 3));
    let beta = word_elem(&[2, 1]);
    assert_eq!(
        poly_diff_op(&[vec![], vec![]], &[alpha.clone(), beta.clone()]).unwrap(),
        o_mul(&alpha, &beta)
    );
    assert_eq!(poly_diff_op(&[], &[]).unwrap(), OElem::one());
    assert!(poly_diff_op(&[vec![]], &[OElem::zero()]).unwrap().is_zero());
    let err = poly_diff_op(&[vec![1]], &[]).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { .. }));
}

#[test]
fn families_match_products_of_coordinate_partials() {
    let alpha = word_elem(&[1, 2]);
    let beta = gen(2);
    let elem = poly_diff_op(&[vec![1, 2], vec![]], &[alpha.clone(), beta.clone()]).unwrap();
    for pq in index_tuples(4, 2) {
        for x1 in index_tuples(2, 2) {
            for x2 in index_tuples(2, 2) {
                let fa = eval_element(&alpha, &[x1[0]], &[x1[1]], 2).unwrap();
                let da = rep_partial(2, pq[2], pq[3], &rep_partial(1, pq[0], pq[1], &fa));
                let fb = eval_element(&beta, &[x2[0]], &[x2[1]], 2).unwrap();
                let want = da.mul(&fb);
                let pairs = vec![
                    (pq[1], pq[0]),
                    (pq[3], pq[2]),
                    (x1[0], x1[1]),
                    (x2[0], x2[1]),
                ];
                let got = pair(&elem, &MatUnitTensor::new(pairs), 2).unwrap();
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn bracket_tables_agree_with_the_induced_bracket_on_generators() {
    let b = cb();
    let via_dt = PolyVectorSpec::from_fn(2, 2, |args| {
        dt_bracket(&gen(args[0]), &gen(args[1]), &b).unwrap()
    })
    .unwrap();
    assert_eq!(via_dt, PolyVectorSpec::from_bracket(&b));
}

#[test]
fn polyvector_tables_validate_grades_and_default_to_zero() {
    let err = PolyVectorSpec::from_fn(2, 2, |_| gen(1)).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { .. }));
    let spec = PolyVectorSpec::from_fn(1, 2, |args| {
        if args[0] == 1 {
            gen(1)
        } else {
            OElem::zero()
        }
    })
    .unwrap();
    assert_eq!(spec.value(&[1]), gen(1));
    assert!(spec.value(&[2]).is_zero());
    assert_eq!(spec.arity(), 1);
    assert_eq!(spec.num_generators(), 2);
}

#[test]
fn edgeless_formality_graphs_multiply() {
    let gamma = FormalityGraph::new(0, 2, vec![]).unwrap();
    let alpha = OElem::from_term(
        OTerm::new(
            vec![vec![1]],
            TraceMonomial::new(vec![CyclicWord::new(vec![2])]),
            Perm::identity(1),
        ),
        rat_int(2),
    );
    let beta = word_elem(&[2, 1]);
    assert_eq!(
        u_graph(&gamma, &[], &[alpha.clone(), beta.clone()], 2).unwrap(),
        o_mul(&alpha, &beta)
    );
}

#[test]
fn formality_components_match_the_representation_oracle() {
    let b = cb();
    let phi = PolyVectorSpec::from_bracket(&b);
    let graphs: Vec<FormalityGraph> = enum_formality(1, 2)
        .chain([
            FormalityGraph::new(
                2,
                2,
                vec![
                    vec![FTarget::Second(1), FTarget::Second(2)],
                    vec![FTarget::Second(1), FTarget::Second(2)],
                ],
            )
            .unwrap(),
            FormalityGraph::new(
                2,
                2,
                vec![
                    vec![FTarget::First(2), FTarget::Second(1)],
                    vec![FTarget::Second(1), FTarget::Second(2)],
                ],
            )
            .unwrap(),
        ])
        .collect();
    let alphas = [gen(1), word_elem(&[2, 1])];
    for gamma in &graphs {
        let phis = vec![phi.clone(); gamma.n()];
        let elem = u_graph(gamma, &phis, &alphas, 2).unwrap();
        let comm_phis = vec![CommPolyVector::from_bracket(&b, 2); gamma.n()];
        for r1 in 1..=2u8 {
            for c1 in 1..=2u8 {
                for r2 in 1..=2u8 {
                    for c2 in 1..=2u8 {
                        let evals = vec![
                            eval_element(&alphas[0], &[r1], &[c1], 2).unwrap(),
                            eval_element(&alphas[1], &[r2], &[c2], 2).unwrap(),
                        ];
                        let want = comm_u_graph(gamma, &comm_phis, &evals, 2, 2).unwrap();
                        let got = pair(&elem, &units(&[r1, r2], &[c1, c2]), 2).unwrap();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }
}

#[test]
fn formality_components_validate_their_inputs() {
    let gamma = enum_formality(1, 2).next().unwrap();
    let phi = PolyVectorSpec::from_bracket(&cb());
    let alphas = [gen(1), gen(2)];
    let err = u_graph(&gamma, &[], &alphas, 2).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { what: "polyvectors", .. }));
    let err = u_graph(&gamma, &[phi.clone()], &alphas[..1], 2).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { what: "arguments", .. }));
    let narrow = PolyVectorSpec::from_fn(1, 2, |args| gen(args[0])).unwrap();
    let err = u_graph(&gamma, &[narrow], &alphas, 2).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { what: "polyvector arity", .. }));
    let err = u_graph(&gamma, &[phi], &alphas, 3).unwrap_err();
    assert!(matches!(
        err,
        QuantizeError::Count {
            what: "polyvector generator range",
            ..
        }
    ));
}

#[test]
fn weight_tables_roundtrip_through_json() {
    let mut table = WeightTable::order_one();
    let gamma = enum_formality(1, 2).next().unwrap();
    table.set_formality(&gamma, rat(-3, 8));
    let text = serde_json::to_string(&table).unwrap();
    let back: WeightTable = serde_json::from_str(&text).unwrap();
    assert_eq!(back, table);
    let hand: WeightTable = serde_json::from_str(r#"{"star":{"0:[]":"1/1"}}"#).unwrap();
    assert_eq!(
        hand.star_weight(&graphs::AdmGraph::empty()).unwrap(),
        rat_int(1)
    );
    assert_eq!(hand.formality_entries().count(), 0);
    assert!(serde_json::from_str::<WeightTable>(r#"{"star":{"0:[]":"x"}}"#).is_err());
}

#[test]
fn hbar_series_wraps_coefficient_lists() {
    let z = HbarSeries::zero(2);
    assert_eq!(z.order(), 2);
    assert!(z.coefficients().iter().all(OElem::is_zero));
    let err = HbarSeries::from_coefficients(vec![]).unwrap_err();
    assert!(matches!(err, QuantizeError::Count { .. }));
    let s = HbarSeries::from_coefficients(vec![gen(1), OElem::zero()]).unwrap();
    assert_eq!(s.order(), 1);
    assert_eq!(s.coefficient(0), &gen(1));
    let text = serde_json::to_string(&s).unwrap();
    let back: HbarSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
}
