//! The free associative algebra `A = k⟨x₁,…,x_d⟩` over exact rationals,
//! its cyclic quotient `A_♮`, tensor powers `A^{⊗m}`, and double
//! derivations `∂_k`.
//!
//! Words are sequences of generator indices in `[1, d]`; the empty word is
//! the unit. All coefficients are arbitrary-precision rationals.

use num::BigRational;
use num::{One, Zero};
use perm_core::Perm;
use serde::de::Error as DeError;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exact rational coefficient.
pub type Rat = BigRational;

/// Generator index, `1 ..= d`.
pub type Letter = u8;

/// A word in the generators; empty means the unit `1`.
pub type Word = Vec<Letter>;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Renders a coefficient as `"num/den"` (denominator always present).
pub fn coef_to_string(c: &Rat) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"num/den"` or a bare integer string.
pub fn coef_from_str(s: &str) -> Result<Rat, String> {
    let parse_int = |t: &str| {
        num::BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn word_string(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|l| format!("x{l}")).collect::<Vec<_>>().join("")
    }
}

/// An exact-rational linear combination of words: an element of `A`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    /// The unit `1` (the empty word).
    pub fn one() -> Self {
        NcPoly::from_term(Vec::new(), Rat::one())
    }

    /// The generator `x_k`.
    pub fn gen(k: Letter) -> Self {
        NcPoly::from_term(vec![k], Rat::one())
    }

    /// A single word with coefficient 1.
    pub fn word(w: Word) -> Self {
        NcPoly::from_term(w, Rat::one())
    }

    pub fn from_term(w: Word, c: Rat) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Largest word length appearing (0 for the zero polynomial).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// Concatenation product of `A`, extended bilinearly.
pub fn nc_mul(p: &NcPoly, q: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w1, c1) in p.terms() {
        for (w2, c2) in q.terms() {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            out.add_term(w, c1 * c2);
        }
    }
    out
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}·{}", c, word_string(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&(coef_to_string(c), w))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw: Vec<(String, Word)> = Vec::deserialize(de)?;
        let mut out = NcPoly::zero();
        for (cs, w) in raw {
            out.add_term(w, coef_from_str(&cs).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

/// A word up to cyclic rotation, stored as its lexicographically minimal
/// rotation. The empty cyclic word `1̄` is allowed and distinct from zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Word", into = "Word")]
pub struct CyclicWord(Word);

impl CyclicWord {
    /// Canonicalizes by taking the lexicographically minimal rotation.
    pub fn new(w: Word) -> Self {
        CyclicWord(cyclic_canonical(&w))
    }

    pub fn rep(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Word> for CyclicWord {
    fn from(w: Word) -> Self {
        CyclicWord::new(w)
    }
}

impl From<CyclicWord> for Word {
    fn from(c: CyclicWord) -> Word {
        c.0
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟲{}", word_string(&self.0))
    }
}

/// Lexicographically minimal rotation of a word.
pub fn cyclic_canonical(w: &Word) -> Word {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    (0..n)
        .map(|r| {
            let mut v = Vec::with_capacity(n);
            v.extend_from_slice(&w[r..]);
            v.extend_from_slice(&w[..r]);
            v
        })
        .min()
        .unwrap()
}

/// An element of `A_♮ = A/[A,A]`: a combination of cyclic words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NaturalElem {
    terms: BTreeMap<CyclicWord, Rat>,
}

impl NaturalElem {
    pub fn zero() -> Self {
        NaturalElem::default()
    }

    pub fn from_term(w: CyclicWord, c: Rat) -> Self {
        let mut out = NaturalElem::zero();
        out.add_term(w, c);
        out
    }

    pub fn add_term(&mut self, w: CyclicWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
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

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Rat)> {
        self.terms.iter()
    }

    /// An arbitrary but fixed lift back to `A`: each cyclic word is replaced
    /// by its canonical representative.
    pub fn lift(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.rep().clone(), c.clone());
        }
        out
    }
}

impl fmt::Debug for NaturalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}·{:?}", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The projection `A → A_♮`, `a ↦ ā`.
pub fn natural_project(p: &NcPoly) -> NaturalElem {
    let mut out = NaturalElem::zero();
    for (w, c) in p.terms() {
        out.add_term(CyclicWord::new(w.clone()), c.clone());
    }
    out
}

/// An element of `A^{⊗m}` with a fixed arity `m ≥ 0`; arity 0 is the scalar
/// line (the empty tuple with a coefficient).
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Rat>,
}

impl TensorElem {
    pub fn zero(arity: usize) -> Self {
        TensorElem {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1⊗…⊗1` with coefficient 1.
    pub fn unit(arity: usize) -> Self {
        TensorElem::from_term(vec![Vec::new(); arity], Rat::one())
    }

    pub fn from_term(words: Vec<Word>, c: Rat) -> Self {
        let mut t = TensorElem::zero(words.len());
        t.add_term(words, c);
        t
    }

    /// Lifts an `NcPoly` to arity 1.
    pub fn from_poly(p: &NcPoly) -> Self {
        let mut t = TensorElem::zero(1);
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// Collapses an arity-1 tensor back to `NcPoly`.
    pub fn into_poly(&self) -> NcPoly {
        assert_eq!(self.arity, 1, "into_poly needs arity 1");
        let mut p = NcPoly::zero();
        for (ws, c) in &self.terms {
            p.add_term(ws[0].clone(), c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Rat) {
        assert_eq!(words.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(words);
        match entry {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch in add");
        let mut out = self.clone();
        for (ws, c) in other.terms() {
            out.add_term(ws.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> TensorElem {
        if c.is_zero() {
            return TensorElem::zero(self.arity);
        }
        TensorElem {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(ws, x)| (ws.clone(), x * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> TensorElem {
        self.scale(&-Rat::one())
    }

    /// The flip `x ↦ x°` exchanging the two factors; arity 2 only.
    pub fn flip(&self) -> TensorElem {
        assert_eq!(self.arity, 2, "flip is defined on A⊗A");
        let mut out = TensorElem::zero(2);
        for (ws, c) in &self.terms {
            out.add_term(vec![ws[1].clone(), ws[0].clone()], c.clone());
        }
        out
    }

    /// Outer bimodule action on arity 2: `a·(x′⊗x″)·b = (a x′) ⊗ (x″ b)`.
    pub fn outer_act(&self, a: &NcPoly, b: &NcPoly) -> TensorElem {
        assert_eq!(self.arity, 2, "outer action is defined on A⊗A");
        let mut out = TensorElem::zero(2);
        for (ws, c) in &self.terms {
            let left = nc_mul(a, &NcPoly::word(ws[0].clone()));
            let right = nc_mul(&NcPoly::word(ws[1].clone()), b);
            for (w1, c1) in left.terms() {
                for (w2, c2) in right.terms() {
                    out.add_term(vec![w1.clone(), w2.clone()], c * c1 * c2);
                }
            }
        }
        out
    }

    /// Inner bimodule action on arity 2: `a∗(x′⊗x″)∗b = (x′ b) ⊗ (a x″)`.
    pub fn inner_act(&self, a: &NcPoly, b: &NcPoly) -> TensorElem {
        assert_eq!(self.arity, 2, "inner action is defined on A⊗A");
        let mut out = TensorElem::zero(2);
        for (ws, c) in &self.terms {
            let left = nc_mul(&NcPoly::word(ws[0].clone()), b);
            let right = nc_mul(a, &NcPoly::word(ws[1].clone()));
            for (w1, c1) in left.terms() {
                for (w2, c2) in right.terms() {
                    out.add_term(vec![w1.clone(), w2.clone()], c * c1 * c2);
                }
            }
        }
        out
    }

    /// Multiplies slot `j` (1-based) as `left · w_j · right`.
    pub fn act_slot(&self, j: usize, left: &NcPoly, right: &NcPoly) -> TensorElem {
        assert!(j >= 1 && j <= self.arity, "slot out of range");
        let mut out = TensorElem::zero(self.arity);
        for (ws, c) in &self.terms {
            let prod = nc_mul(&nc_mul(left, &NcPoly::word(ws[j - 1].clone())), right);
            for (w, cw) in prod.terms() {
                let mut nws = ws.clone();
                nws[j - 1] = w.clone();
                out.add_term(nws, c * cw);
            }
        }
        out
    }

    /// Tensor concatenation `x ⊗ y` of arities `m` and `k` into `m+k`.
    pub fn tensor(&self, other: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero(self.arity + other.arity);
        for (ws1, c1) in &self.terms {
            for (ws2, c2) in &other.terms {
                let mut ws = ws1.clone();
                ws.extend(ws2.iter().cloned());
                out.add_term(ws, c1 * c2);
            }
        }
        out
    }

    /// Permutes the slots: slot `t` of the result is slot `σ⁻¹(t)` of the
    /// input (the left place-permutation action).
    pub fn permute_slots(&self, sigma: &Perm) -> TensorElem {
        assert_eq!(self.arity, sigma.degree(), "slot permutation degree");
        let mut out = TensorElem::zero(self.arity);
        let inv = sigma.inverse();
        for (ws, c) in &self.terms {
            let nws: Vec<Word> = (0..self.arity).map(|t| ws[inv.apply0(t)].clone()).collect();
            out.add_term(nws, c.clone());
        }
        out
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0⊗{}", self.arity);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(ws, c)| {
                let body = ws.iter().map(word_string).collect::<Vec<_>>().join("⊗");
                format!("{c}·{body}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for TensorElem {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (ws, c) in &self.terms {
            let mut row: Vec<serde_json::Value> = vec![serde_json::Value::String(coef_to_string(c))];
            for w in ws {
                row.push(serde_json::to_value(w).map_err(serde::ser::Error::custom)?);
            }
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl TensorElem {
    /// Parses the JSON term list `[[coef, w₁, …, w_m], …]` with a known
    /// arity (needed because the empty list carries none).
    pub fn from_json_terms(v: &serde_json::Value, arity: usize) -> Result<TensorElem, String> {
        let rows = v.as_array().ok_or("tensor JSON must be a list")?;
        let mut out = TensorElem::zero(arity);
        for row in rows {
            let row = row.as_array().ok_or("tensor term must be a list")?;
            if row.len() != arity + 1 {
                return Err(format!(
                    "tensor term needs 1 coefficient + {arity} words, got {} entries",
                    row.len()
                ));
            }
            let c = coef_from_str(row[0].as_str().ok_or("coefficient must be a string")?)?;
            let mut ws = Vec::with_capacity(arity);
            for w in &row[1..] {
                ws.push(
                    serde_json::from_value::<Word>(w.clone())
                        .map_err(|e| format!("bad word: {e}"))?,
                );
            }
            out.add_term(ws, c);
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for TensorElem {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        let rows = v.as_array().ok_or_else(|| D::Error::custom("expected list"))?;
        let arity = rows
            .first()
            .and_then(|r| r.as_array())
            .map(|r| r.len().saturating_sub(1))
            .unwrap_or(0);
        TensorElem::from_json_terms(&v, arity).map_err(D::Error::custom)
    }
}

/// The double derivation `∂_k`: on a word, sums over occurrences of `x_k`,
/// producing `prefix ⊗ suffix`.
pub fn double_derive(k: Letter, p: &NcPoly) -> TensorElem {
    let mut out = TensorElem::zero(2);
    for (w, c) in p.terms() {
        for t in 0..w.len() {
            if w[t] == k {
                out.add_term(vec![w[..t].to_vec(), w[t + 1..].to_vec()], c.clone());
            }
        }
    }
    out
}

/// `∂_k^{(j)}`: the double derivation applied inside tensor slot `j`
/// (1-based), expanding that slot into two adjacent slots.
pub fn partial_slot(k: Letter, j: usize, x: &TensorElem) -> TensorElem {
    let m = x.arity();
    assert!(j >= 1 && j <= m, "derivation slot out of range");
    let mut out = TensorElem::zero(m + 1);
    for (ws, c) in x.terms() {
        let w = &ws[j - 1];
        for t in 0..w.len() {
            if w[t] == k {
                let mut nws = Vec::with_capacity(m + 1);
                nws.extend_from_slice(&ws[..j - 1]);
                nws.push(w[..t].to_vec());
                nws.push(w[t + 1..].to_vec());
                nws.extend_from_slice(&ws[j..]);
                out.add_term(nws, c.clone());
            }
        }
    }
    out
}

/// `∂_{k₁,…,k_m} = ∂_{k₁}^{(1)} … ∂_{k_m}^{(1)}`, rightmost applied first;
/// the empty chain returns `p` at arity 1.
pub fn partial_chain(ks: &[Letter], p: &NcPoly) -> TensorElem {
    let mut t = TensorElem::from_poly(p);
    for &k in ks.iter().rev() {
        t = partial_slot(k, 1, &t);
    }
    t
}

/// The slot tuple `i(w)`: `i(w)_s` is the position of `s` in the
/// permutational word of `w` after deleting all letters smaller than `s`.
pub fn i_tuple(w: &Perm) -> Vec<usize> {
    let m = w.degree();
    let word: Vec<usize> = (1..=m).map(|p| w.apply(p)).collect();
    (1..=m)
        .map(|s| {
            word.iter()
                .filter(|&&v| v >= s)
                .position(|&v| v == s)
                .expect("letter present")
                + 1
        })
        .collect()
}

/// `∂^{(w)}_{k₁,…,k_m} = ∂_{k₁}^{(i(w)₁)} … ∂_{k_m}^{(i(w)_m)}`, rightmost
/// applied first.
pub fn partial_word(w: &Perm, ks: &[Letter], p: &NcPoly) -> TensorElem {
    let m = w.degree();
    assert_eq!(ks.len(), m, "one generator index per derivation");
    let iw = i_tuple(w);
    let mut t = TensorElem::from_poly(p);
    for s in (0..m).rev() {
        t = partial_slot(ks[s], iw[s], &t);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_tuple_examples() {
        let w = Perm::from_one_line(vec![1, 2, 5, 4, 3]).unwrap();
        assert_eq!(i_tuple(&w), vec![1, 1, 3, 2, 1]);
        assert_eq!(i_tuple(&Perm::identity(5)), vec![1, 1, 1, 1, 1]);
        let w = Perm::from_one_line(vec![3, 2, 1]).unwrap();
        assert_eq!(i_tuple(&w), vec![3, 2, 1]);
    }

    #[test]
    fn coef_strings() {
        assert_eq!(coef_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(coef_from_str("-2").unwrap(), rat_int(-2));
        assert!(coef_from_str("1/0").is_err());
        assert_eq!(coef_to_string(&rat(1, 1)), "1/1");
    }
}
