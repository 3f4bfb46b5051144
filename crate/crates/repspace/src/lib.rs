//! The commutative oracle: the coordinate ring of the space of `N × N`
//! matrix representations of `k⟨x₁,…,x_d⟩`, modeled exactly as the
//! polynomial ring `k[x_(k,i,j)]` with `k ∈ [1,d]`, `i,j ∈ [1,N]`.
//!
//! Provides evaluation of double coordinate ring elements into this ring,
//! the Poisson bracket induced by a double bracket, the coordinate partial
//! derivatives, and commutative versions of the graph operators. The graph
//! operators are computed directly on `CommPoly` and share no code with
//! the noncommutative machinery they serve as an oracle for.

mod graph_oracle;

pub use graph_oracle::{comm_b_graph, comm_u_graph, CommPolyVector};

use double_poisson::DoubleBracket;
use free_algebra::{coef_from_str, coef_to_string, Letter, Rat, Word};
use num::{One, Zero};
use oalgebra::OElem;
use perm_core::Perm;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Errors for evaluation and the commutative graph operators.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    /// A matrix index lies outside `[1, N]`.
    #[error("matrix index {index} outside [1, {n}]")]
    IndexOutOfRange { index: u8, n: u8 },
    /// A term grade disagrees with the index-tuple length.
    #[error("term grade {grade} does not match index-tuple length {tuple}")]
    GradeMismatch { grade: usize, tuple: usize },
    /// Row and column tuples must have equal length.
    #[error("row tuple has length {rows}, column tuple has length {cols}")]
    TupleMismatch { rows: usize, cols: usize },
    /// A graph operator received the wrong number of data slots.
    #[error("graph needs {expected} {what}, got {got}")]
    WrongCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A polyvector arity disagrees with the star size of its vertex.
    #[error("vertex {vertex} emits {expected} edges but its polyvector has arity {got}")]
    WrongArity {
        vertex: usize,
        expected: usize,
        got: usize,
    },
}

/// A coordinate variable `x_(k,i,j)`: matrix entry `(i,j)` of the image of
/// the generator `x_k`.
pub type RepVar = (Letter, u8, u8);

/// A commutative polynomial in the coordinate variables with exact
/// rational coefficients; monomials are stored as sorted variable lists.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Vec<RepVar>, Rat>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        CommPoly::from_term(Vec::new(), c)
    }

    pub fn one() -> Self {
        CommPoly::constant(Rat::one())
    }

    /// The variable `x_(k,i,j)`.
    pub fn var(k: Letter, i: u8, j: u8) -> Self {
        CommPoly::from_term(vec![(k, i, j)], Rat::one())
    }

    pub fn from_term(mono: Vec<RepVar>, c: Rat) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(mono, c);
        p
    }

    /// Adds a monomial; the variable list is sorted here, so any order is
    /// accepted.
    pub fn add_term(&mut self, mut mono: Vec<RepVar>, c: Rat) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<RepVar>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The set of variables occurring in some monomial.
    pub fn vars(&self) -> BTreeSet<RepVar> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn scale(&self, c: &Rat) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> CommPoly {
        self.scale(&-Rat::one())
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

fn mono_string(m: &[RepVar]) -> String {
    if m.is_empty() {
        "1".to_string()
    } else {
        m.iter()
            .map(|(k, i, j)| format!("x({k},{i},{j})"))
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}·{}", c, mono_string(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct CommTermJson {
    coef: String,
    vars: Vec<RepVar>,
}

impl Serialize for CommPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<CommTermJson> = self
            .terms
            .iter()
            .map(|(m, c)| CommTermJson {
                coef: coef_to_string(c),
                vars: m.clone(),
            })
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CommPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw: Vec<CommTermJson> = Vec::deserialize(de)?;
        let mut out = CommPoly::zero();
        for t in raw {
            out.add_term(t.vars, coef_from_str(&t.coef).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

/// A pure tensor of matrix units `E*_{i₁j₁} ⊗ … ⊗ E*_{iₙjₙ}`, stored as
/// the list of `(row, col)` pairs; index bounds are checked against `N`
/// when the tensor is paired.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<(u8, u8)>", into = "Vec<(u8, u8)>")]
pub struct MatUnitTensor {
    pairs: Vec<(u8, u8)>,
}

impl MatUnitTensor {
    pub fn new(pairs: Vec<(u8, u8)>) -> Self {
        MatUnitTensor { pairs }
    }

    /// The empty tensor (grade 0).
    pub fn empty() -> Self {
        MatUnitTensor { pairs: Vec::new() }
    }

    /// The single matrix unit `E*_{ij}`.
    pub fn single(i: u8, j: u8) -> Self {
        MatUnitTensor {
            pairs: vec![(i, j)],
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn rows(&self) -> Vec<u8> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn cols(&self) -> Vec<u8> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Concatenation `X ⊗ Y`.
    pub fn tensor(&self, other: &MatUnitTensor) -> MatUnitTensor {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        MatUnitTensor { pairs }
    }

    /// `vect(σ)`: permutes the row tuple, row `t` of the result being row
    /// `σ⁻¹(t)` of the input; columns stay in place.
    pub fn vect(&self, sigma: &Perm) -> MatUnitTensor {
        assert_eq!(self.pairs.len(), sigma.degree(), "vect degree mismatch");
        let inv = sigma.inverse();
        let pairs = (0..self.pairs.len())
            .map(|t| (self.pairs[inv.apply0(t)].0, self.pairs[t].1))
            .collect();
        MatUnitTensor { pairs }
    }

    /// `covect(σ)`: permutes the column tuple the same way; rows stay in
    /// place.
    pub fn covect(&self, sigma: &Perm) -> MatUnitTensor {
        assert_eq!(self.pairs.len(), sigma.degree(), "covect degree mismatch");
        let inv = sigma.inverse();
        let pairs = (0..self.pairs.len())
            .map(|t| (self.pairs[t].0, self.pairs[inv.apply0(t)].1))
            .collect();
        MatUnitTensor { pairs }
    }
}

impl From<Vec<(u8, u8)>> for MatUnitTensor {
    fn from(pairs: Vec<(u8, u8)>) -> Self {
        MatUnitTensor { pairs }
    }
}

impl From<MatUnitTensor> for Vec<(u8, u8)> {
    fn from(x: MatUnitTensor) -> Self {
        x.pairs
    }
}

/// All tuples in `[1, n]^len` in lexicographic order.
pub fn index_tuples(len: usize, n: u8) -> Vec<Vec<u8>> {
    if n == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut t = vec![1u8; len];
    'outer: loop {
        out.push(t.clone());
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            if t[pos] < n {
                t[pos] += 1;
                for v in &mut t[pos + 1..] {
                    *v = 1;
                }
                continue 'outer;
            }
        }
        return out;
    }
}

/// Advances a mixed-radix counter with the first position fastest; returns
/// false once the counter wraps around to all zeros.
pub(crate) fn advance(counter: &mut [usize], radix: usize) -> bool {
    for c in counter.iter_mut() {
        *c += 1;
        if *c < radix {
            return true;
        }
        *c = 0;
    }
    false
}

/// Matrix entry of a word:
/// `(y₁…y_L)_{ij} = Σ_c x_(y₁,i,c₁) x_(y₂,c₁,c₂) … x_(y_L,c_{L−1},j)` over
/// all chains `c ∈ [1,N]^{L−1}`; the empty word gives `δ_{ij}`.
pub fn word_entry(w: &Word, i: u8, j: u8, n: u8) -> CommPoly {
    if w.is_empty() {
        return if i == j {
            CommPoly::one()
        } else {
            CommPoly::zero()
        };
    }
    let mut out = CommPoly::zero();
    for chain in index_tuples(w.len() - 1, n) {
        let mut mono: Vec<RepVar> = Vec::with_capacity(w.len());
        let mut row = i;
        for (t, &y) in w.iter().enumerate() {
            let col = if t + 1 == w.len() { j } else { chain[t] };
            mono.push((y, row, col));
            row = col;
        }
        out.add_term(mono, Rat::one());
    }
    out
}

/// Trace of a word, invariant under rotation:
/// `tr(y₁…y_L) = Σ_c x_(y₁,c₁,c₂) … x_(y_L,c_L,c₁)` over `c ∈ [1,N]^L`;
/// the empty word gives `tr(1̄) = N`.
pub fn trace_entry(w: &Word, n: u8) -> CommPoly {
    if w.is_empty() {
        return CommPoly::constant(Rat::from_integer((n as i64).into()));
    }
    let mut out = CommPoly::zero();
    for chain in index_tuples(w.len(), n) {
        let mono: Vec<RepVar> = w
            .iter()
            .enumerate()
            .map(|(t, &y)| (y, chain[t], chain[(t + 1) % w.len()]))
            .collect();
        out.add_term(mono, Rat::one());
    }
    out
}

/// Evaluates a grade-`n` element at row indices `rows` and column indices
/// `cols`: for a term `(a₁⊗…⊗aₙ) ⊗ f₁…f_m ⊗ u` the value is
/// `∏ₜ (aₜ)_{rows[u⁻¹(t)] cols[t]} · ∏ₛ tr(fₛ)`.
pub fn eval_element(alpha: &OElem, rows: &[u8], cols: &[u8], n: u8) -> Result<CommPoly, RepError> {
    if rows.len() != cols.len() {
        return Err(RepError::TupleMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    for &ix in rows.iter().chain(cols.iter()) {
        if ix < 1 || ix > n {
            return Err(RepError::IndexOutOfRange { index: ix, n });
        }
    }
    let mut out = CommPoly::zero();
    for (t, c) in alpha.terms() {
        if t.grade() != rows.len() {
            return Err(RepError::GradeMismatch {
                grade: t.grade(),
                tuple: rows.len(),
            });
        }
        let uinv = t.perm.inverse();
        let mut acc = CommPoly::constant(c.clone());
        for (s0, w) in t.words.iter().enumerate() {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(&word_entry(w, rows[uinv.apply0(s0)], cols[s0], n));
        }
        for f in t.traces.factors() {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(&trace_entry(f.rep(), n));
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// The pairing `(α | E*_{i₁j₁}⊗…⊗E*_{iₙjₙ}) = α_{ij}`.
pub fn pair(alpha: &OElem, x: &MatUnitTensor, n: u8) -> Result<CommPoly, RepError> {
    eval_element(alpha, &x.rows(), &x.cols(), n)
}

/// The coordinate partial derivative `∂/∂x_(k,p,q)`.
pub fn rep_partial(k: Letter, p: u8, q: u8, f: &CommPoly) -> CommPoly {
    let v = (k, p, q);
    let mut out = CommPoly::zero();
    for (m, c) in f.terms() {
        let cnt = m.iter().filter(|&&x| x == v).count();
        if cnt == 0 {
            continue;
        }
        let mut m2 = m.clone();
        let pos = m2.iter().position(|&x| x == v).expect("occurrence present");
        m2.remove(pos);
        out.add_term(m2, c * Rat::from_integer((cnt as i64).into()));
    }
    out
}

/// The induced Poisson bracket of two coordinate variables:
/// `{x_(k₁,p₁,q₁), x_(k₂,p₂,q₂)}` is the double bracket value
/// `{{x_{k₁}, x_{k₂}}}` with the first Sweedler factor evaluated at
/// `(p₂,q₁)` and the second at `(p₁,q₂)`.
pub fn var_poisson(b: &DoubleBracket, n: u8, v: RepVar, w: RepVar) -> CommPoly {
    let (k1, p1, q1) = v;
    let (k2, p2, q2) = w;
    let mut out = CommPoly::zero();
    for (uv, c) in b.pair(k1, k2).terms() {
        out = out.add(
            &word_entry(&uv[0], p2, q1, n)
                .mul(&word_entry(&uv[1], p1, q2, n))
                .scale(c),
        );
    }
    out
}

/// The induced Poisson bracket on the coordinate ring: the generator rule
/// `{a_{ij}, b_{kl}} = {{a,b}}′_{kj} {{a,b}}″_{il}` extended as a
/// biderivation in both arguments.
pub fn rep_poisson(f: &CommPoly, g: &CommPoly, b: &DoubleBracket, n: u8) -> CommPoly {
    let mut out = CommPoly::zero();
    for v in f.vars() {
        let df = rep_partial(v.0, v.1, v.2, f);
        for w in g.vars() {
            let vp = var_poisson(b, n, v, w);
            if vp.is_zero() {
                continue;
            }
            let dg = rep_partial(w.0, w.1, w.2, g);
            out = out.add(&df.mul(&dg).mul(&vp));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn advance_covers_all_counters() {
        let mut c = vec![0usize; 2];
        let mut seen = vec![c.clone()];
        while advance(&mut c, 3) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(c, vec![0, 0]);
    }

    #[test]
    fn index_tuples_are_lexicographic() {
        assert_eq!(
            index_tuples(2, 2),
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        assert_eq!(index_tuples(0, 3), vec![Vec::<u8>::new()]);
    }
}
