//! Boundary input for double graph operators.

use free_algebra::NcPoly;
use oalgebra::OTerm;
use perm_core::Perm;

use crate::QuantizeError;

/// Boundary data of a double admissible graph: word polynomials
/// `a₁, …, a_{l₁}` and `b₁, …, b_{r₁}`, trace lift polynomials
/// `f₁, …, f_{l₂}` and `g₁, …, g_{r₂}`, and the boundary permutations
/// `u ∈ S(l₁)`, `v ∈ S(r₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    pub a: Vec<NcPoly>,
    pub f: Vec<NcPoly>,
    pub b: Vec<NcPoly>,
    pub g: Vec<NcPoly>,
    pub u: Perm,
    pub v: Perm,
}

impl BoundaryData {
    /// Wraps the slot polynomials, checking the permutation degrees
    /// against the word slot counts.
    pub fn new(
        a: Vec<NcPoly>,
        f: Vec<NcPoly>,
        b: Vec<NcPoly>,
        g: Vec<NcPoly>,
        u: Perm,
        v: Perm,
    ) -> Result<BoundaryData, QuantizeError> {
        if u.degree() != a.len() {
            return Err(QuantizeError::Count {
                what: "left permutation degree",
                expected: a.len(),
                got: u.degree(),
            });
        }
        if v.degree() != b.len() {
            return Err(QuantizeError::Count {
                what: "right permutation degree",
                expected: b.len(),
                got: v.degree(),
            });
        }
        Ok(BoundaryData { a, f, b, g, u, v })
    }

    /// The canonical boundary data of a pair of 𝒪(A) terms: plain words
    /// for the word slots and canonical representatives for the trace
    /// slots.
    pub fn from_terms(left: &OTerm, right: &OTerm) -> BoundaryData {
        let lift = |ws: &[free_algebra::CyclicWord]| -> Vec<NcPoly> {
            ws.iter().map(|c| NcPoly::word(c.rep().clone())).collect()
        };
        BoundaryData {
            a: left.words.iter().map(|w| NcPoly::word(w.clone())).collect(),
            f: lift(left.traces.factors()),
            b: right.words.iter().map(|w| NcPoly::word(w.clone())).collect(),
            g: lift(right.traces.factors()),
            u: left.perm.clone(),
            v: right.perm.clone(),
        }
    }

    /// The boundary profile `(l, r) = ((l₁, l₂), (r₁, r₂))`.
    pub fn profile(&self) -> ((usize, usize), (usize, usize)) {
        ((self.a.len(), self.f.len()), (self.b.len(), self.g.len()))
    }
}
