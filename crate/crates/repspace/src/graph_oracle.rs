//! Commutative graph operators: the bidifferential operator of an
//! admissible graph and the Kontsevich operator of a formality graph, both
//! computed directly on `CommPoly`. Each edge carries a decoration
//! `(k,i,j) ∈ [1,d]×[1,N]²`; an edge into a vertex differentiates that
//! vertex's factor by `∂/∂x_(k,i,j)`, and the results are multiplied and
//! summed over all decorations.

use crate::{advance, pair, rep_partial, var_poisson, CommPoly, MatUnitTensor, RepError, RepVar};
use double_poisson::DoubleBracket;
use free_algebra::Letter;
use graphs::{ATarget, AdmGraph, FTarget, FormalityGraph};
use oalgebra::OElem;
use std::collections::BTreeMap;
use std::fmt;

/// All edge decorations `(k,i,j) ∈ [1,d]×[1,N]²` in lexicographic order.
fn decorations(d: Letter, n: u8) -> Vec<RepVar> {
    let mut out = Vec::new();
    for k in 1..=d {
        for i in 1..=n {
            for j in 1..=n {
                out.push((k, i, j));
            }
        }
    }
    out
}

/// Flat edge id of the admissible-graph edge `e_src^half`.
fn edge_id(src: usize, half: u8) -> usize {
    2 * (src - 1) + (half as usize - 1)
}

/// The bidifferential operator of an admissible graph on the commutative
/// side: the sum over all edge decorations of the product of one Poisson
/// bracket factor `{x_𝓘(e_k¹), x_𝓘(e_k²)}` per numbered vertex and the
/// decorated partials of `f` (vertex `L`) and `g` (vertex `R`).
pub fn comm_b_graph(
    gamma: &AdmGraph,
    f: &CommPoly,
    g: &CommPoly,
    b: &DoubleBracket,
    n: u8,
) -> CommPoly {
    let nv = gamma.n();
    let d = b.num_generators();
    assert!(d >= 1 && n >= 1, "need at least one generator and N ≥ 1");
    let options = decorations(d, n);
    let ids = |pairs: Vec<(usize, u8)>| -> Vec<usize> {
        pairs.into_iter().map(|(s, h)| edge_id(s, h)).collect()
    };
    let into_num: Vec<Vec<usize>> = (1..=nv)
        .map(|k| ids(gamma.edges_into(ATarget::Num(k))))
        .collect();
    let into_l = ids(gamma.edges_into(ATarget::L));
    let into_r = ids(gamma.edges_into(ATarget::R));
    // The bracket factor depends on two counter coordinates and the partial
    // chains of `f` and `g` on the coordinates of their incoming edges, so
    // each distinct value is computed once across the decoration sum.
    let vp: Vec<Vec<CommPoly>> = options
        .iter()
        .map(|&v| options.iter().map(|&w| var_poisson(b, n, v, w)).collect())
        .collect();
    let mut f_chains: BTreeMap<Vec<usize>, CommPoly> = BTreeMap::new();
    let mut g_chains: BTreeMap<Vec<usize>, CommPoly> = BTreeMap::new();
    let mut out = CommPoly::zero();
    let mut counter = vec![0usize; 2 * nv];
    loop {
        'term: {
            let mut acc = CommPoly::one();
            for k in 1..=nv {
                let mut factor = vp[counter[edge_id(k, 1)]][counter[edge_id(k, 2)]].clone();
                for &e in &into_num[k - 1] {
                    let (kk, p, q) = options[counter[e]];
                    factor = rep_partial(kk, p, q, &factor);
                }
                if factor.is_zero() {
                    break 'term;
                }
                acc = acc.mul(&factor);
            }
            let fkey: Vec<usize> = into_l.iter().map(|&e| counter[e]).collect();
            let fp = &*f_chains.entry(fkey).or_insert_with(|| {
                let mut fp = f.clone();
                for &e in &into_l {
                    let (kk, p, q) = options[counter[e]];
                    fp = rep_partial(kk, p, q, &fp);
                }
                fp
            });
            if fp.is_zero() {
                break 'term;
            }
            let gkey: Vec<usize> = into_r.iter().map(|&e| counter[e]).collect();
            let gp = &*g_chains.entry(gkey).or_insert_with(|| {
                let mut gp = g.clone();
                for &e in &into_r {
                    let (kk, p, q) = options[counter[e]];
                    gp = rep_partial(kk, p, q, &gp);
                }
                gp
            });
            if gp.is_zero() {
                break 'term;
            }
            for (m, c) in acc.mul(fp).mul(gp).terms() {
                out.add_term(m.clone(), c.clone());
            }
        }
        if !advance(&mut counter, options.len()) {
            return out;
        }
    }
}

/// A polyvector field on the representation space with a fixed arity: an
/// assignment of a polynomial to every tuple of coordinate variables.
/// Zero values are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CommPolyVector {
    arity: usize,
    values: BTreeMap<Vec<RepVar>, CommPoly>,
}

impl CommPolyVector {
    /// Builds the table by evaluating `f` on every decoration tuple.
    pub fn from_fn(
        arity: usize,
        d: Letter,
        n: u8,
        mut f: impl FnMut(&[RepVar]) -> CommPoly,
    ) -> Self {
        assert!(d >= 1 && n >= 1, "need at least one generator and N ≥ 1");
        let options = decorations(d, n);
        let mut values = BTreeMap::new();
        let mut counter = vec![0usize; arity];
        loop {
            let args: Vec<RepVar> = counter.iter().map(|&c| options[c]).collect();
            let v = f(&args);
            if !v.is_zero() {
                values.insert(args, v);
            }
            if !advance(&mut counter, options.len()) {
                return CommPolyVector { arity, values };
            }
        }
    }

    /// The arity-2 table of a double bracket: the induced Poisson bracket
    /// on pairs of coordinate variables.
    pub fn from_bracket(b: &DoubleBracket, n: u8) -> Self {
        CommPolyVector::from_fn(2, b.num_generators(), n, |args| {
            var_poisson(b, n, args[0], args[1])
        })
    }

    /// Builds the table from a noncommutative spec: `g` maps a tuple of
    /// generator letters to a double coordinate ring element, which is
    /// paired with the matrix units of the decoration tuple.
    pub fn from_oelems(
        arity: usize,
        d: Letter,
        n: u8,
        mut g: impl FnMut(&[Letter]) -> OElem,
    ) -> Result<Self, RepError> {
        assert!(d >= 1 && n >= 1, "need at least one generator and N ≥ 1");
        let options = decorations(d, n);
        let mut values = BTreeMap::new();
        let mut counter = vec![0usize; arity];
        loop {
            let args: Vec<RepVar> = counter.iter().map(|&c| options[c]).collect();
            let letters: Vec<Letter> = args.iter().map(|a| a.0).collect();
            let x = MatUnitTensor::new(args.iter().map(|a| (a.1, a.2)).collect());
            let v = pair(&g(&letters), &x, n)?;
            if !v.is_zero() {
                values.insert(args, v);
            }
            if !advance(&mut counter, options.len()) {
                return Ok(CommPolyVector { arity, values });
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The value at a decoration tuple (zero if no entry is stored).
    pub fn value(&self, args: &[RepVar]) -> CommPoly {
        assert_eq!(args.len(), self.arity, "polyvector arity mismatch");
        self.values
            .get(args)
            .cloned()
            .unwrap_or_else(CommPoly::zero)
    }

    /// The stored nonzero entries.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<RepVar>, &CommPoly)> {
        self.values.iter()
    }
}

impl fmt::Debug for CommPolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CommPolyVector(arity={}, {} entries)",
            self.arity,
            self.values.len()
        )
    }
}

/// The Kontsevich operator of a formality graph on the commutative side:
/// each first-type vertex `i` carries `phis[i−1]` evaluated at the
/// decorations of its star, each second-type vertex `j̄` carries
/// `fs[j−1]`, and every edge differentiates the factor at its endpoint.
pub fn comm_u_graph(
    gamma: &FormalityGraph,
    phis: &[CommPolyVector],
    fs: &[CommPoly],
    d: Letter,
    n: u8,
) -> Result<CommPoly, RepError> {
    let nv = gamma.n();
    let m = gamma.m();
    if phis.len() != nv {
        return Err(RepError::WrongCount {
            what: "polyvectors",
            expected: nv,
            got: phis.len(),
        });
    }
    if fs.len() != m {
        return Err(RepError::WrongCount {
            what: "arguments",
            expected: m,
            got: fs.len(),
        });
    }
    let mut star_start = Vec::with_capacity(nv);
    let mut targets: Vec<FTarget> = Vec::new();
    for k in 1..=nv {
        let star = gamma.star(k);
        if phis[k - 1].arity() != star.len() {
            return Err(RepError::WrongArity {
                vertex: k,
                expected: star.len(),
                got: phis[k - 1].arity(),
            });
        }
        star_start.push(targets.len());
        targets.extend_from_slice(star);
    }
    let num_edges = targets.len();
    let into_first: Vec<Vec<usize>> = (1..=nv)
        .map(|i| {
            (0..num_edges)
                .filter(|&e| targets[e] == FTarget::First(i))
                .collect()
        })
        .collect();
    let into_second: Vec<Vec<usize>> = (1..=m)
        .map(|j| {
            (0..num_edges)
                .filter(|&e| targets[e] == FTarget::Second(j))
                .collect()
        })
        .collect();
    assert!(d >= 1 && n >= 1, "need at least one generator and N ≥ 1");
    let options = decorations(d, n);
    // Partial chains of the arguments depend only on the counter
    // coordinates of their incoming edges, so each value is computed once.
    let mut arg_chains: Vec<BTreeMap<Vec<usize>, CommPoly>> = vec![BTreeMap::new(); m];
    let mut out = CommPoly::zero();
    let mut counter = vec![0usize; num_edges];
    loop {
        'term: {
            let mut acc = CommPoly::one();
            for k in 1..=nv {
                let star_len = gamma.star(k).len();
                let args: Vec<RepVar> = (0..star_len)
                    .map(|h| options[counter[star_start[k - 1] + h]])
                    .collect();
                let mut factor = phis[k - 1].value(&args);
                for &e in &into_first[k - 1] {
                    let (kk, p, q) = options[counter[e]];
                    factor = rep_partial(kk, p, q, &factor);
                }
                if factor.is_zero() {
                    break 'term;
                }
                acc = acc.mul(&factor);
            }
            for j in 1..=m {
                let key: Vec<usize> = into_second[j - 1].iter().map(|&e| counter[e]).collect();
                let factor = &*arg_chains[j - 1].entry(key).or_insert_with(|| {
                    let mut fp = fs[j - 1].clone();
                    for &e in &into_second[j - 1] {
                        let (kk, p, q) = options[counter[e]];
                        fp = rep_partial(kk, p, q, &fp);
                    }
                    fp
                });
                if factor.is_zero() {
                    break 'term;
                }
                acc = acc.mul(factor);
            }
            for (mo, c) in acc.terms() {
                out.add_term(mo.clone(), c.clone());
            }
        }
        if !advance(&mut counter, options.len()) {
            return Ok(out);
        }
    }
}
