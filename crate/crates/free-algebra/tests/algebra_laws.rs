use free_algebra::{
    cyclic_canonical, double_derive, nc_mul, natural_project, partial_chain, partial_word, rat,
    rat_int, CyclicWord, NcPoly, TensorElem, Word,
};
use perm_core::Perm;

fn w(letters: &[u8]) -> Word {
    letters.to_vec()
}

/// All words over {1,…,d} of length ≤ max_len.
fn all_words(d: u8, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &layer {
            for l in 1..=d {
                let mut v = word.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn nc_mul_examples() {
    let one = NcPoly::one();
    let x1 = NcPoly::gen(1);
    let x2 = NcPoly::gen(2);
    assert_eq!(nc_mul(&one, &x1), x1);
    assert_eq!(nc_mul(&x1, &x2), NcPoly::word(w(&[1, 2])));
    let sum = x1.add(&x2);
    let expect = NcPoly::word(w(&[1, 1])).add(&NcPoly::word(w(&[2, 1])));
    assert_eq!(nc_mul(&sum, &x1), expect);
}

#[test]
fn nc_mul_is_associative() {
    let words = all_words(2, 2);
    for a in &words {
        for b in &words {
            for c in &words {
                let (pa, pb, pc) = (
                    NcPoly::word(a.clone()),
                    NcPoly::word(b.clone()),
                    NcPoly::word(c.clone()),
                );
                assert_eq!(nc_mul(&nc_mul(&pa, &pb), &pc), nc_mul(&pa, &nc_mul(&pb, &pc)));
            }
        }
    }
}

#[test]
fn cyclic_canonical_examples() {
    assert_eq!(cyclic_canonical(&w(&[2, 1, 2])), w(&[1, 2, 2]));
    assert_eq!(cyclic_canonical(&w(&[])), w(&[]));
    assert_eq!(cyclic_canonical(&w(&[1, 1])), w(&[1, 1]));
    assert_eq!(cyclic_canonical(&w(&[2, 1])), w(&[1, 2]));
}

#[test]
fn cyclic_words_identify_rotations() {
    for word in all_words(2, 4) {
        let c = CyclicWord::new(word.clone());
        for r in 0..word.len() {
            let mut rot = word[r..].to_vec();
            rot.extend_from_slice(&word[..r]);
            assert_eq!(CyclicWord::new(rot), c);
        }
    }
}

#[test]
fn natural_project_kills_commutators() {
    let x1 = NcPoly::gen(1);
    let x2 = NcPoly::gen(2);
    let comm = nc_mul(&x1, &x2).sub(&nc_mul(&x2, &x1));
    assert!(natural_project(&comm).is_zero());
    assert_eq!(
        natural_project(&x1),
        free_algebra::NaturalElem::from_term(CyclicWord::new(w(&[1])), rat_int(1))
    );
    let p = NcPoly::from_term(w(&[2, 1]), rat_int(2)).add(&NcPoly::from_term(w(&[1, 2]), rat_int(3)));
    assert_eq!(
        natural_project(&p),
        free_algebra::NaturalElem::from_term(CyclicWord::new(w(&[1, 2])), rat_int(5))
    );
}

#[test]
fn natural_project_merges_products_both_ways() {
    let words = all_words(2, 3);
    for a in &words {
        for b in &words {
            let ab = nc_mul(&NcPoly::word(a.clone()), &NcPoly::word(b.clone()));
            let ba = nc_mul(&NcPoly::word(b.clone()), &NcPoly::word(a.clone()));
            assert_eq!(natural_project(&ab), natural_project(&ba));
        }
    }
}

#[test]
fn double_derive_examples() {
    assert!(double_derive(1, &NcPoly::gen(2)).is_zero());
    assert_eq!(
        double_derive(1, &NcPoly::gen(1)),
        TensorElem::from_term(vec![w(&[]), w(&[])], rat_int(1))
    );
    let p = NcPoly::word(w(&[1, 2, 1]));
    let mut expect = TensorElem::zero(2);
    expect.add_term(vec![w(&[]), w(&[2, 1])], rat_int(1));
    expect.add_term(vec![w(&[1, 2]), w(&[])], rat_int(1));
    assert_eq!(double_derive(1, &p), expect);
}

#[test]
fn double_derive_is_a_double_derivation() {
    // ∂_k(ab) = ∂_k(a)·b + a·∂_k(b) with outer actions.
    let words = all_words(2, 3);
    for k in 1..=2 {
        for a in &words {
            for b in &words {
                let (pa, pb) = (NcPoly::word(a.clone()), NcPoly::word(b.clone()));
                let lhs = double_derive(k, &nc_mul(&pa, &pb));
                let rhs = double_derive(k, &pa)
                    .outer_act(&NcPoly::one(), &pb)
                    .add(&double_derive(k, &pb).outer_act(&pa, &NcPoly::one()));
                assert_eq!(lhs, rhs, "k={k} a={a:?} b={b:?}");
            }
        }
    }
}

#[test]
fn flip_exchanges_outer_and_inner_actions() {
    let words = all_words(2, 2);
    let x = {
        let mut t = TensorElem::zero(2);
        t.add_term(vec![w(&[1]), w(&[2, 2])], rat(1, 2));
        t.add_term(vec![w(&[]), w(&[1, 2])], rat_int(-3));
        t
    };
    for a in &words {
        for b in &words {
            let (pa, pb) = (NcPoly::word(a.clone()), NcPoly::word(b.clone()));
            assert_eq!(
                x.outer_act(&pa, &pb).flip(),
                x.flip().inner_act(&pa, &pb),
                "a={a:?} b={b:?}"
            );
        }
    }
}

#[test]
fn partial_chain_examples() {
    let p = NcPoly::word(w(&[1, 2])).add(&NcPoly::gen(2));
    assert_eq!(partial_chain(&[], &p), TensorElem::from_poly(&p));
    assert_eq!(
        partial_chain(&[1], &NcPoly::gen(1)),
        TensorElem::from_term(vec![w(&[]), w(&[])], rat_int(1))
    );
    assert_eq!(
        partial_chain(&[1, 2], &NcPoly::word(w(&[1, 2]))),
        TensorElem::from_term(vec![w(&[]), w(&[]), w(&[])], rat_int(1))
    );
}

#[test]
fn partial_word_identity_is_chain() {
    for word in all_words(2, 3) {
        let p = NcPoly::word(word);
        for ks in [[1u8, 2].as_slice(), &[2, 1], &[1, 1]] {
            assert_eq!(
                partial_word(&Perm::identity(2), ks, &p),
                partial_chain(ks, &p)
            );
        }
    }
}

/// ∂^{(w)}_{k₁,…,k_m}(p) = ∂_{k_{w(1)}} … ∂_{k_{w(m)}} chain, exhaustively
/// for m ≤ 3, d = 2, word length ≤ 3.
#[test]
fn partial_word_reorders_to_first_slot_chain() {
    let words = all_words(2, 3);
    for m in 0..=3usize {
        let mut kss = vec![vec![]];
        for _ in 0..m {
            kss = kss
                .into_iter()
                .flat_map(|v: Vec<u8>| {
                    (1..=2u8).map(move |k| {
                        let mut nv = v.clone();
                        nv.push(k);
                        nv
                    })
                })
                .collect();
        }
        for perm in Perm::all(m) {
            for ks in &kss {
                let permuted: Vec<u8> = (1..=m).map(|t| ks[perm.apply(t) - 1]).collect();
                for word in &words {
                    let p = NcPoly::word(word.clone());
                    assert_eq!(
                        partial_word(&perm, ks, &p),
                        partial_chain(&permuted, &p),
                        "w={perm} ks={ks:?} word={word:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn tensor_slot_permutation_is_left_place_action() {
    // (σ·x) slot t = x slot σ⁻¹(t): the 3-cycle [2,3,1] sends slot1→slot2.
    let x = TensorElem::from_term(vec![w(&[1]), w(&[2]), w(&[1, 1])], rat_int(1));
    let sigma = Perm::from_one_line(vec![2, 3, 1]).unwrap();
    assert_eq!(
        x.permute_slots(&sigma),
        TensorElem::from_term(vec![w(&[1, 1]), w(&[1]), w(&[2])], rat_int(1))
    );
}

#[test]
fn json_round_trips() {
    let p = NcPoly::from_term(w(&[1, 2]), rat(3, 4)).add(&NcPoly::from_term(w(&[]), rat_int(-1)));
    let s = serde_json::to_string(&p).unwrap();
    let q: NcPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(p, q);
    assert_eq!(s, r#"[["-1/1",[]],["3/4",[1,2]]]"#);

    let mut t = TensorElem::zero(2);
    t.add_term(vec![w(&[1]), w(&[])], rat(1, 2));
    let s = serde_json::to_string(&t).unwrap();
    assert_eq!(s, r#"[["1/2",[1],[]]]"#);
    let u: TensorElem = serde_json::from_str(&s).unwrap();
    assert_eq!(t, u);
}
