//! The double coordinate ring `𝒪(A) = ⊕ₙ A^{⊗n} ⊗ S(A_♮) ⊗ k[S(n)]` of the
//! free algebra: graded basis terms (word tuple, trace monomial,
//! permutation), the twisted-commutative product, the `S(n)` bimodule
//! actions, and the operators `π` (contraction) and `1̂` (unit insertion).

use free_algebra::{coef_from_str, coef_to_string, CyclicWord, Rat, Word};
use num::{One, Zero};
use perm_core::{blowup, cross, kerov_project, Perm};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OError {
    /// A bimodule action was applied to a term of the wrong grade.
    #[error("action degree {action} does not match term grade {grade}")]
    GradeMismatch { action: usize, grade: usize },
    /// `π` was applied to a grade-0 term.
    #[error("π is undefined on grade-0 terms")]
    GradeZero,
    /// An operation required a homogeneous element.
    #[error("element is not homogeneous: grades {0:?}")]
    Inhomogeneous(Vec<usize>),
}

/// A multiset of cyclic words: a basis monomial of `S(A_♮)`. The empty
/// cyclic word `1̄` may occur with multiplicity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TraceMonomial(Vec<CyclicWord>);

impl TraceMonomial {
    pub fn one() -> Self {
        TraceMonomial::default()
    }

    pub fn new(mut factors: Vec<CyclicWord>) -> Self {
        factors.sort();
        TraceMonomial(factors)
    }

    pub fn factors(&self) -> &[CyclicWord] {
        &self.0
    }

    pub fn mul(&self, other: &TraceMonomial) -> TraceMonomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        TraceMonomial::new(v)
    }

    pub fn push(&self, w: CyclicWord) -> TraceMonomial {
        let mut v = self.0.clone();
        v.push(w);
        TraceMonomial::new(v)
    }
}

impl fmt::Debug for TraceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "𝟙");
        }
        let parts: Vec<String> = self.0.iter().map(|w| format!("{w:?}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A basis term of `𝒪(A)`: an `n`-tuple of words, a trace monomial, and a
/// permutation of degree `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OTerm {
    pub words: Vec<Word>,
    pub traces: TraceMonomial,
    pub perm: Perm,
}

impl OTerm {
    pub fn new(words: Vec<Word>, traces: TraceMonomial, perm: Perm) -> Self {
        assert_eq!(
            words.len(),
            perm.degree(),
            "permutation degree must equal the number of word slots"
        );
        OTerm {
            words,
            traces,
            perm,
        }
    }

    /// The grade-0 unit term.
    pub fn unit() -> Self {
        OTerm::new(Vec::new(), TraceMonomial::one(), Perm::identity(0))
    }

    pub fn grade(&self) -> usize {
        self.words.len()
    }
}

impl fmt::Debug for OTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} ⊗ {:?} ⊗ {})", self.words, self.traces, self.perm)
    }
}

/// An exact-rational combination of `OTerm`s, possibly of mixed grades.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OElem {
    terms: BTreeMap<OTerm, Rat>,
}

impl OElem {
    pub fn zero() -> Self {
        OElem::default()
    }

    /// The unit `𝟙` of `𝒪(A)` (grade 0).
    pub fn one() -> Self {
        OElem::from_term(OTerm::unit(), Rat::one())
    }

    pub fn from_term(t: OTerm, c: Rat) -> Self {
        let mut e = OElem::zero();
        e.add_term(t, c);
        e
    }

    /// The grade-1 element `a ⊗ 𝟙 ⊗ id₁` for a single word `a`.
    pub fn from_word(w: Word) -> Self {
        OElem::from_term(
            OTerm::new(vec![w], TraceMonomial::one(), Perm::identity(1)),
            Rat::one(),
        )
    }

    pub fn add_term(&mut self, t: OTerm, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&OTerm, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &OElem) -> OElem {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OElem) -> OElem {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> OElem {
        if c.is_zero() {
            return OElem::zero();
        }
        OElem {
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.clone(), x * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> OElem {
        self.scale(&-Rat::one())
    }

    /// The set of grades present.
    pub fn grades(&self) -> Vec<usize> {
        let mut gs: Vec<usize> = self.terms.keys().map(|t| t.grade()).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// The common grade of a homogeneous nonzero element.
    pub fn grade(&self) -> Result<usize, OError> {
        let gs = self.grades();
        match gs.as_slice() {
            [g] => Ok(*g),
            _ => Err(OError::Inhomogeneous(gs)),
        }
    }
}

impl fmt::Debug for OElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| format!("{c}·{t:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of `𝒪(A)`: `(m₁⊗f₁⊗τ₁)(m₂⊗f₂⊗τ₂) = (m₁,m₂) ⊗ f₁f₂ ⊗ (τ₁×τ₂)`,
/// extended bilinearly.
pub fn o_mul(a: &OElem, b: &OElem) -> OElem {
    let mut out = OElem::zero();
    for (t1, c1) in a.terms() {
        for (t2, c2) in b.terms() {
            let mut words = t1.words.clone();
            words.extend(t2.words.iter().cloned());
            out.add_term(
                OTerm::new(words, t1.traces.mul(&t2.traces), cross(&t1.perm, &t2.perm)),
                c1 * c2,
            );
        }
    }
    out
}

/// Two-sided `S(n)` action on a grade-`n` element:
/// `σ·(m⊗f⊗u)·τ = (σ-permuted m) ⊗ f ⊗ (σuτ)` where word slot `t` of the
/// result is old slot `σ⁻¹(t)`.
pub fn bimodule_act(sigma: &Perm, a: &OElem, tau: &Perm) -> Result<OElem, OError> {
    let n = sigma.degree();
    if tau.degree() != n {
        return Err(OError::GradeMismatch {
            action: tau.degree(),
            grade: n,
        });
    }
    let sinv = sigma.inverse();
    let mut out = OElem::zero();
    for (t, c) in a.terms() {
        if t.grade() != n {
            return Err(OError::GradeMismatch {
                action: n,
                grade: t.grade(),
            });
        }
        let words: Vec<Word> = (0..n).map(|s| t.words[sinv.apply0(s)].clone()).collect();
        out.add_term(
            OTerm::new(words, t.traces.clone(), sigma.compose(&t.perm).compose(tau)),
            c.clone(),
        );
    }
    Ok(out)
}

/// Left action `σ·α`.
pub fn left_act(sigma: &Perm, a: &OElem) -> Result<OElem, OError> {
    bimodule_act(sigma, a, &Perm::identity(sigma.degree()))
}

/// Right action `α·τ`.
pub fn right_act(a: &OElem, tau: &Perm) -> Result<OElem, OError> {
    bimodule_act(&Perm::identity(tau.degree()), a, tau)
}

/// Conjugate action `Ad(σ)(α) = σ·α·σ⁻¹`.
pub fn ad_act(sigma: &Perm, a: &OElem) -> Result<OElem, OError> {
    bimodule_act(sigma, a, &sigma.inverse())
}

/// The contraction `π`: grade `n ↦ n−1`. For a term `(a, f, u)`:
/// if `u(1) = 1`, the first word drops into the traces; otherwise the first
/// word is multiplied into the slot it maps onto. Either way the
/// permutation is Kerov-projected.
pub fn pi(a: &OElem) -> Result<OElem, OError> {
    let mut out = OElem::zero();
    for (t, c) in a.terms() {
        let n = t.grade();
        if n == 0 {
            return Err(OError::GradeZero);
        }
        let u1 = t.perm.apply(1);
        let kp = kerov_project(&t.perm);
        if u1 == 1 {
            let words = t.words[1..].to_vec();
            let traces = t.traces.push(CyclicWord::new(t.words[0].clone()));
            out.add_term(OTerm::new(words, traces, kp), c.clone());
        } else {
            // New slot j holds old word a_{j+1}, except slot u(1)−1 which
            // holds the concatenation a₁·a_{u(1)}.
            let k = u1;
            let mut words: Vec<Word> = t.words[1..].to_vec();
            let mut merged = t.words[0].clone();
            merged.extend(t.words[k - 1].iter().copied());
            words[k - 2] = merged;
            out.add_term(OTerm::new(words, t.traces.clone(), kp), c.clone());
        }
    }
    Ok(out)
}

/// `π` iterated `r` times.
pub fn pi_pow(a: &OElem, r: usize) -> Result<OElem, OError> {
    let mut out = a.clone();
    for _ in 0..r {
        out = pi(&out)?;
    }
    Ok(out)
}

/// The unit insertion `1̂`: prepends the empty word and shifts the
/// permutation, `1̂(a⊗f⊗u) = (1,a) ⊗ f ⊗ (id₁×u)`.
pub fn hat1(a: &OElem) -> OElem {
    let mut out = OElem::zero();
    for (t, c) in a.terms() {
        let mut words = vec![Vec::new()];
        words.extend(t.words.iter().cloned());
        out.add_term(
            OTerm::new(
                words,
                t.traces.clone(),
                cross(&Perm::identity(1), &t.perm),
            ),
            c.clone(),
        );
    }
    out
}

/// `1̂` iterated `r` times.
pub fn hat1_pow(a: &OElem, r: usize) -> OElem {
    let mut out = a.clone();
    for _ in 0..r {
        out = hat1(&out);
    }
    out
}

/// The twist `(12)^{p,q} ∈ S(p+q)` exchanging a first block of size `p`
/// with a second block of size `q`.
pub fn block_swap(p: usize, q: usize) -> Perm {
    blowup(&Perm::from_images0(vec![1, 0]), &[p, q])
}

#[derive(Serialize, Deserialize)]
struct OTermJson {
    coef: String,
    words: Vec<Word>,
    traces: Vec<Word>,
    perm: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OElemJson {
    terms: Vec<OTermJson>,
}

impl Serialize for OElem {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| OTermJson {
                coef: coef_to_string(c),
                words: t.words.clone(),
                traces: t.traces.factors().iter().map(|w| w.rep().clone()).collect(),
                perm: t.perm.one_line(),
            })
            .collect();
        OElemJson { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for OElem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = OElemJson::deserialize(de)?;
        let mut out = OElem::zero();
        for t in raw.terms {
            let coef = coef_from_str(&t.coef).map_err(D::Error::custom)?;
            let perm = Perm::from_one_line(t.perm).map_err(D::Error::custom)?;
            if perm.degree() != t.words.len() {
                return Err(D::Error::custom(format!(
                    "term has {} words but a degree-{} permutation",
                    t.words.len(),
                    perm.degree()
                )));
            }
            let traces = TraceMonomial::new(t.traces.into_iter().map(CyclicWord::new).collect());
            out.add_term(OTerm::new(t.words, traces, perm), coef);
        }
        Ok(out)
    }
}
