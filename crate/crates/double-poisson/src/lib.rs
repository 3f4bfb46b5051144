//! Double Poisson brackets on the free algebra: construction from a
//! generator table with skew closure, Leibniz evaluation on arbitrary
//! polynomials, the double Jacobi defect, and the induced bracket on the
//! cyclic quotient `A_♮`.

use free_algebra::{Letter, NaturalElem, NcPoly, TensorElem, Word};
use perm_core::Perm;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("generator index {0} outside [1, {1}]")]
    BadIndex(Letter, Letter),
    #[error("entry ({0},{1}) must have i ≤ j")]
    UnorderedEntry(Letter, Letter),
    #[error("bracket value must live in A⊗A, got arity {0}")]
    WrongArity(usize),
    #[error("diagonal entry {{{{x_{0},x_{0}}}}} is not anti-flip-symmetric")]
    DiagonalNotSkew(Letter),
    #[error("the constant bracket needs an even number of generators, got {0}")]
    OddGenerators(Letter),
}

/// A double bracket on `A = k⟨x₁,…,x_d⟩`, determined by the values
/// `{{x_i, x_j}} ∈ A⊗A` for `i ≤ j`; the remaining pairs follow from skew
/// symmetry `{{x_j, x_i}} = −{{x_i, x_j}}°`.
#[derive(Clone, PartialEq, Eq)]
pub struct DoubleBracket {
    d: Letter,
    table: BTreeMap<(Letter, Letter), TensorElem>,
}

impl DoubleBracket {
    /// Validates and stores a generator table given on pairs `i ≤ j`.
    pub fn from_table(
        d: Letter,
        entries: Vec<(Letter, Letter, TensorElem)>,
    ) -> Result<Self, BracketError> {
        let mut table = BTreeMap::new();
        for (i, j, v) in entries {
            if i == 0 || i > d {
                return Err(BracketError::BadIndex(i, d));
            }
            if j == 0 || j > d {
                return Err(BracketError::BadIndex(j, d));
            }
            if i > j {
                return Err(BracketError::UnorderedEntry(i, j));
            }
            if v.arity() != 2 {
                return Err(BracketError::WrongArity(v.arity()));
            }
            if i == j && !v.add(&v.flip()).is_zero() {
                return Err(BracketError::DiagonalNotSkew(i));
            }
            if !v.is_zero() {
                table.insert((i, j), v);
            }
        }
        Ok(DoubleBracket { d, table })
    }

    /// The zero bracket on `d` generators.
    pub fn zero(d: Letter) -> Self {
        DoubleBracket {
            d,
            table: BTreeMap::new(),
        }
    }

    /// The constant bracket: `{{x_{2i−1}, x_{2i}}} = 1⊗1` for each pair of
    /// generators; requires an even `d`.
    pub fn constant(d: Letter) -> Result<Self, BracketError> {
        if d % 2 != 0 {
            return Err(BracketError::OddGenerators(d));
        }
        let entries = (1..=d / 2)
            .map(|i| (2 * i - 1, 2 * i, TensorElem::unit(2)))
            .collect();
        DoubleBracket::from_table(d, entries)
    }

    pub fn num_generators(&self) -> Letter {
        self.d
    }

    /// `{{x_i, x_j}}` for any pair, with skew closure applied for `i > j`.
    pub fn pair(&self, i: Letter, j: Letter) -> TensorElem {
        assert!(i >= 1 && i <= self.d && j >= 1 && j <= self.d);
        if i <= j {
            self.table
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| TensorElem::zero(2))
        } else {
            self.table
                .get(&(j, i))
                .map(|v| v.flip().neg())
                .unwrap_or_else(|| TensorElem::zero(2))
        }
    }

    /// The stored entries (`i ≤ j`, nonzero values only).
    pub fn entries(&self) -> impl Iterator<Item = (&(Letter, Letter), &TensorElem)> {
        self.table.iter()
    }
}

impl std::fmt::Debug for DoubleBracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DoubleBracket(d={}, {:?})", self.d, self.table)
    }
}

/// `{{p, q}}` for arbitrary polynomials, by the closed Leibniz expansion:
/// for words `z₁…z_l` and `y₁…y_m`, the `(s,t)` term contributes
/// `(y_{<t} u′ z_{>s}) ⊗ (z_{<s} u″ y_{>t})` for each Sweedler term
/// `u′⊗u″` of `{{z_s, y_t}}`.
pub fn bracket_eval(b: &DoubleBracket, p: &NcPoly, q: &NcPoly) -> TensorElem {
    let mut out = TensorElem::zero(2);
    for (z, cz) in p.terms() {
        for (y, cy) in q.terms() {
            let c = cz * cy;
            for s in 0..z.len() {
                for t in 0..y.len() {
                    let val = b.pair(z[s], y[t]);
                    if val.is_zero() {
                        continue;
                    }
                    for (uv, cu) in val.terms() {
                        let mut left: Word = y[..t].to_vec();
                        left.extend_from_slice(&uv[0]);
                        left.extend_from_slice(&z[s + 1..]);
                        let mut right: Word = z[..s].to_vec();
                        right.extend_from_slice(&uv[1]);
                        right.extend_from_slice(&y[t + 1..]);
                        out.add_term(vec![left, right], &c * cu);
                    }
                }
            }
        }
    }
    out
}

/// The left extension `{{x_a, −}}_L` on `A⊗A`:
/// `{{a, u′⊗u″}}_L = {{a, u′}} ⊗ u″ ∈ A^{⊗3}`.
fn left_extend(b: &DoubleBracket, a: Letter, t: &TensorElem) -> TensorElem {
    assert_eq!(t.arity(), 2);
    let mut out = TensorElem::zero(3);
    let xa = NcPoly::gen(a);
    for (uv, c) in t.terms() {
        let inner = bracket_eval(b, &xa, &NcPoly::word(uv[0].clone()));
        for (pq, ci) in inner.terms() {
            out.add_term(vec![pq[0].clone(), pq[1].clone(), uv[1].clone()], c * ci);
        }
    }
    out
}

/// The double Jacobi defect
/// `{{x_i,{{x_j,x_k}}}}_L + ρ·{{x_j,{{x_k,x_i}}}}_L + ρ²·{{x_k,{{x_i,x_j}}}}_L`
/// with `ρ` the cyclic slot rotation `(t₁,t₂,t₃) ↦ (t₃,t₁,t₂)`; the bracket
/// is double Poisson iff this vanishes on all generator triples.
pub fn jacobi_defect(b: &DoubleBracket, i: Letter, j: Letter, k: Letter) -> TensorElem {
    let rho = Perm::from_one_line(vec![2, 3, 1]).unwrap();
    let t1 = left_extend(b, i, &bracket_eval(b, &NcPoly::gen(j), &NcPoly::gen(k)));
    let t2 = left_extend(b, j, &bracket_eval(b, &NcPoly::gen(k), &NcPoly::gen(i)));
    let t3 = left_extend(b, k, &bracket_eval(b, &NcPoly::gen(i), &NcPoly::gen(j)));
    t1.add(&t2.permute_slots(&rho))
        .add(&t3.permute_slots(&rho).permute_slots(&rho))
}

/// Checks the double Jacobi identity on all generator triples.
pub fn is_double_poisson(b: &DoubleBracket) -> bool {
    let d = b.num_generators();
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                if !jacobi_defect(b, i, j, k).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Multiplies all tensor slots together: `m(u₁⊗…⊗u_m) = u₁⋯u_m`.
pub fn mul_fold(t: &TensorElem) -> NcPoly {
    let mut out = NcPoly::zero();
    for (ws, c) in t.terms() {
        let mut w = Vec::new();
        for part in ws {
            w.extend_from_slice(part);
        }
        out.add_term(w, c.clone());
    }
    out
}

/// The induced bracket `{f̄, a} = m ∘ {{f*, a}}` of `A_♮` acting on `A`;
/// independent of the chosen lift `f*`.
pub fn natural_bracket(b: &DoubleBracket, f: &NaturalElem, a: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (cw, c) in f.terms() {
        let lift = NcPoly::word(cw.rep().clone());
        out = out.add(&mul_fold(&bracket_eval(b, &lift, a)).scale(c));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: Letter,
    j: Letter,
    value: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    d: Letter,
    entries: Vec<EntryJson>,
}

impl Serialize for DoubleBracket {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .table
            .iter()
            .map(|(&(i, j), v)| {
                Ok(EntryJson {
                    i,
                    j,
                    value: serde_json::to_value(v).map_err(serde::ser::Error::custom)?,
                })
            })
            .collect::<Result<Vec<_>, S::Error>>()?;
        BracketJson { d: self.d, entries }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DoubleBracket {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = BracketJson::deserialize(de)?;
        let mut entries = Vec::new();
        for e in raw.entries {
            let v = TensorElem::from_json_terms(&e.value, 2).map_err(D::Error::custom)?;
            entries.push((e.i, e.j, v));
        }
        DoubleBracket::from_table(raw.d, entries).map_err(D::Error::custom)
    }
}
