//! Multi-index differential operators on the double coordinate ring:
//! the symmetrized chain operator on one word and its Leibniz extension
//! to arbitrary terms and term families.

use free_algebra::{partial_chain, Letter, NcPoly, Rat, Word};
use num::One;
use oalgebra::{ad_act, block_swap, o_mul, pi_pow, right_act, OElem, OTerm, TraceMonomial};
use perm_core::{blowup, cross, Perm};

use crate::{mixed_radix, QuantizeError};

/// The symmetrized chain operator on one word: the sum over orderings
/// of the derivative labels of the decorated partial chain, conjugated
/// so that derivative slot `t` carries label `k_t` and the head slot
/// sits last.
fn dtilde(ks: &[Letter], base: &Word) -> OElem {
    let m = ks.len();
    if m == 0 {
        return OElem::from_term(
            OTerm::new(vec![base.clone()], TraceMonomial::one(), Perm::identity(1)),
            Rat::one(),
        );
    }
    let p = NcPoly::word(base.clone());
    let mut out = OElem::zero();
    for w in Perm::all(m) {
        let klist: Vec<Letter> = (1..=m).map(|t| ks[w.apply(t) - 1]).collect();
        let mut inner = OElem::zero();
        for (ws, c) in partial_chain(&klist, &p).terms() {
            inner.add_term(
                OTerm::new(ws.clone(), TraceMonomial::one(), block_swap(m, 1)),
                c.clone(),
            );
        }
        let moved = ad_act(&cross(&w, &Perm::identity(1)), &inner).expect("degree match");
        out = out.add(&moved);
    }
    out
}

/// `𝒟` on a single term: sums over assignments of each derivative label
/// to a word or trace slot, multiplies the per-slot chain operators,
/// regroups the slots to the layout `traces, derivatives, words`,
/// contracts the trace slots with `π`, and restores the term
/// permutation behind the derivative block.
fn diff_term(ks: &[Letter], term: &OTerm) -> Result<OElem, QuantizeError> {
    let l = term.words.len();
    let r = term.traces.factors().len();
    let m = ks.len();
    let mut out = OElem::zero();
    for asg in mixed_radix(vec![l + r; m]) {
        // Derivative labels per slot, ascending; slots are words then
        // trace lifts.
        let mut per_slot: Vec<Vec<usize>> = vec![Vec::new(); l + r];
        for (i0, &s) in asg.iter().enumerate() {
            per_slot[s].push(i0 + 1);
        }
        let mut prod = OElem::one();
        for t in 0..l {
            let kt: Vec<Letter> = per_slot[t].iter().map(|&i| ks[i - 1]).collect();
            prod = o_mul(&prod, &dtilde(&kt, &term.words[t]));
        }
        for p in 0..r {
            let kt: Vec<Letter> = per_slot[l + p].iter().map(|&i| ks[i - 1]).collect();
            prod = o_mul(&prod, &dtilde(&kt, term.traces.factors()[p].rep()));
        }
        // φ sends each result slot to its position in the product
        // layout; each factor occupies its derivative slots then its
        // head.
        let sizes: Vec<usize> = per_slot.iter().map(|s| s.len() + 1).collect();
        let mut off = Vec::with_capacity(l + r);
        let mut acc = 0;
        for &sz in &sizes {
            off.push(acc);
            acc += sz;
        }
        let mut phi = Vec::with_capacity(r + m + l);
        for j in 0..r {
            phi.push(off[l + j] + sizes[l + j]);
        }
        for i in 1..=m {
            let t = asg[i - 1];
            let rank = per_slot[t].iter().position(|&x| x == i).expect("assigned") + 1;
            phi.push(off[t] + rank);
        }
        for t in 0..l {
            phi.push(off[t] + sizes[t]);
        }
        let phi = Perm::from_one_line(phi).expect("bijection");
        let regrouped = ad_act(&phi.inverse(), &prod)?;
        let contracted = pi_pow(&regrouped, r)?;
        out = out.add(&right_act(&contracted, &cross(&Perm::identity(m), &term.perm))?);
    }
    Ok(out)
}

/// The multi-index differential operator `𝒟_{k₁…k_m}(α)`: Leibniz over
/// the word and trace slots of every term of `α`, with the derivative
/// slots `k₁ … k_m` leading the result in label order.
pub fn diff_op(ks: &[Letter], alpha: &OElem) -> Result<OElem, QuantizeError> {
    let mut out = OElem::zero();
    for (t, c) in alpha.terms() {
        out = out.add(&diff_term(ks, t)?.scale(c));
    }
    Ok(out)
}

/// The polydifferential operator on a family: `𝒟` factor-wise, then the
/// block shuffle gathering all derivative slots before all argument
/// slots, both in family order.
pub fn poly_diff_op(ktuples: &[Vec<Letter>], alphas: &[OElem]) -> Result<OElem, QuantizeError> {
    if ktuples.len() != alphas.len() {
        return Err(QuantizeError::Count {
            what: "derivative tuples",
            expected: alphas.len(),
            got: ktuples.len(),
        });
    }
    let n = alphas.len();
    if n == 0 {
        return Ok(OElem::one());
    }
    if alphas.iter().any(|a| a.is_zero()) {
        return Ok(OElem::zero());
    }
    let mut prod = OElem::one();
    let mut sizes = Vec::with_capacity(2 * n);
    for (kt, a) in ktuples.iter().zip(alphas) {
        prod = o_mul(&prod, &diff_op(kt, a)?);
        sizes.push(kt.len());
        sizes.push(a.grade()?);
    }
    let mut tau = Vec::with_capacity(2 * n);
    for i in 1..=n {
        tau.push(i);
        tau.push(n + i);
    }
    let sigma = blowup(&Perm::from_one_line(tau).expect("bijection"), &sizes);
    ad_act(&sigma, &prod).map_err(QuantizeError::from)
}
