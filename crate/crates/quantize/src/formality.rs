//! Polyvector value tables and the graph components of the formality
//! map.

use std::collections::BTreeMap;

use double_poisson::DoubleBracket;
use free_algebra::Letter;
use graphs::{FTarget, FormalityGraph};
use oalgebra::{bimodule_act, block_swap, o_mul, pi_pow, OElem, OTerm, TraceMonomial};
use perm_core::Perm;

use crate::{diff_op, letter_tuples, QuantizeError};

/// A polyvector given by its values on generator tuples: a table
/// `[1, d]^arity → 𝒪(A)` whose values are homogeneous of grade `arity`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVectorSpec {
    arity: usize,
    d: Letter,
    values: BTreeMap<Vec<Letter>, OElem>,
}

impl PolyVectorSpec {
    /// Builds the table from a function; every value must be zero or
    /// homogeneous of grade `arity`.
    pub fn from_fn(
        arity: usize,
        d: Letter,
        mut f: impl FnMut(&[Letter]) -> OElem,
    ) -> Result<Self, QuantizeError> {
        let mut values = BTreeMap::new();
        for args in letter_tuples(arity, d) {
            let v = f(&args);
            if v.is_zero() {
                continue;
            }
            let g = v.grade()?;
            if g != arity {
                return Err(QuantizeError::Count {
                    what: "polyvector value grade",
                    expected: arity,
                    got: g,
                });
            }
            values.insert(args, v);
        }
        Ok(PolyVectorSpec { arity, d, values })
    }

    /// The arity-2 table of a double bracket: `(i, j)` maps to the
    /// Sweedler terms of `{{x_i, x_j}}` as word pairs carrying the slot
    /// swap.
    pub fn from_bracket(b: &DoubleBracket) -> Self {
        let d = b.num_generators();
        let swap = block_swap(1, 1);
        let mut values = BTreeMap::new();
        for args in letter_tuples(2, d) {
            let mut v = OElem::zero();
            for (ws, c) in b.pair(args[0], args[1]).terms() {
                v.add_term(
                    OTerm::new(
                        vec![ws[0].clone(), ws[1].clone()],
                        TraceMonomial::one(),
                        swap.clone(),
                    ),
                    c.clone(),
                );
            }
            if !v.is_zero() {
                values.insert(args, v);
            }
        }
        PolyVectorSpec { arity: 2, d, values }
    }

    /// The number of generator arguments.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The generator range of the table.
    pub fn num_generators(&self) -> Letter {
        self.d
    }

    /// The stored value on `args`, or zero.
    pub fn value(&self, args: &[Letter]) -> OElem {
        assert_eq!(args.len(), self.arity, "argument count matches arity");
        self.values.get(args).cloned().unwrap_or_else(OElem::zero)
    }
}

/// The formality component `𝒰_Γ(Φ₁, …, Φₙ; α₁, …, α_m)`: decorates the
/// edges with generator letters, applies the multi-index differential
/// operator of the incoming letters to each vertex value, multiplies
/// the factors in vertex order, shuffles the slots to the pairing
/// layout, and contracts two `π` per edge.
pub fn u_graph(
    gamma: &FormalityGraph,
    phis: &[PolyVectorSpec],
    alphas: &[OElem],
    d: Letter,
) -> Result<OElem, QuantizeError> {
    let nv = gamma.n();
    let m = gamma.m();
    if phis.len() != nv {
        return Err(QuantizeError::Count {
            what: "polyvectors",
            expected: nv,
            got: phis.len(),
        });
    }
    if alphas.len() != m {
        return Err(QuantizeError::Count {
            what: "arguments",
            expected: m,
            got: alphas.len(),
        });
    }
    for (i, phi) in phis.iter().enumerate() {
        let want = gamma.star(i + 1).len();
        if phi.arity() != want {
            return Err(QuantizeError::Count {
                what: "polyvector arity",
                expected: want,
                got: phi.arity(),
            });
        }
        if phi.num_generators() != d {
            return Err(QuantizeError::Count {
                what: "polyvector generator range",
                expected: d as usize,
                got: phi.num_generators() as usize,
            });
        }
    }
    if alphas.iter().any(|a| a.is_zero()) {
        return Ok(OElem::zero());
    }
    let mut grades = Vec::with_capacity(m);
    for a in alphas {
        grades.push(a.grade()?);
    }

    // Flat edge list: stars in vertex order, each star in order.
    let mut flat: Vec<FTarget> = Vec::new();
    let mut star_pos: Vec<Vec<usize>> = Vec::with_capacity(nv);
    for i in 1..=nv {
        let start = flat.len();
        flat.extend(gamma.star(i).iter().copied());
        star_pos.push((start + 1..=flat.len()).collect());
    }
    let e = flat.len();
    let find = |t: FTarget| -> Vec<usize> {
        flat.iter()
            .enumerate()
            .filter(|&(_, x)| *x == t)
            .map(|(a, _)| a + 1)
            .collect()
    };
    let into_first: Vec<Vec<usize>> = (1..=nv).map(|i| find(FTarget::First(i))).collect();
    let into_second: Vec<Vec<usize>>= (1..=m).map(|j| find(FTarget::Second(j))).collect();

    // Pairing layout: per edge a two contraction slots 2a−1, 2a, then
    // the argument blocks; the two shuffles route each product slot
    // there.
    let total = 2 * e + grades.iter().sum::<usize>();
    let mut xoff = Vec::with_capacity(m);
    let mut acc = 2 * e;
    for &g in &grades {
        xoff.push(acc);
        acc += g;
    }
    let mut inv1 = Vec::with_capacity(total);
    let mut inv2 = Vec::with_capacity(total);
    for i in 0..nv {
        for &a in &into_first[i] {
            inv1.push(2 * a);
            inv2.push(2 * a - 1);
        }
        for &a in &star_pos[i] {
            inv1.push(2 * a - 1);
            inv2.push(2 * a);
        }
    }
    for j in 0..m {
        for &a in &into_second[j] {
            inv1.push(2 * a);
            inv2.push(2 * a - 1);
        }
        for x in 1..=grades[j] {
            inv1.push(xoff[j] + x);
            inv2.push(xoff[j] + x);
        }
    }
    let sigma1 = Perm::from_one_line(inv1).expect("bijection").inverse();
    let sigma2 = Perm::from_one_line(inv2).expect("bijection").inverse();

    let mut out = OElem::zero();
    'decor: for letters in letter_tuples(e, d) {
        let mut prod = OElem::one();
        for i in 0..nv {
            let star_letters: Vec<Letter> =
                star_pos[i].iter().map(|&a| letters[a - 1]).collect();
            let val = phis[i].value(&star_letters);
            if val.is_zero() {
                continue 'decor;
            }
            let kt: Vec<Letter> = into_first[i].iter().map(|&a| letters[a - 1]).collect();
            let f = diff_op(&kt, &val)?;
            if f.is_zero() {
                continue 'decor;
            }
            prod = o_mul(&prod, &f);
        }
        for j in 0..m {
            let kt: Vec<Letter> = into_second[j].iter().map(|&a| letters[a - 1]).collect();
            let f = diff_op(&kt, &alphas[j])?;
            if f.is_zero() {
                continue 'decor;
            }
            prod = o_mul(&prod, &f);
        }
        let conj = bimodule_act(&sigma2.inverse(), &prod, &sigma1)?;
        out = out.add(&pi_pow(&conj, 2 * e)?);
    }
    Ok(out)
}
