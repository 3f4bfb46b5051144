//! Weight tables, truncated ħ-series, the di-twisted star product, and
//! the induced double bracket on the double coordinate ring.

use std::collections::BTreeMap;

use double_poisson::DoubleBracket;
use free_algebra::{coef_from_str, coef_to_string, rat, rat_int, Rat};
use graphs::{enum_admissible, ATarget, AdmGraph, FormalityGraph};
use oalgebra::{ad_act, block_swap, OElem};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{b_graph, QuantizeError};

/// Rational weights for admissible and formality graphs, keyed by the
/// stable graph keys. Serializes as `{"star": {key: "num/den"},
/// "formality": {key: "num/den"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightTable {
    star: BTreeMap<String, Rat>,
    formality: BTreeMap<String, Rat>,
}

impl WeightTable {
    /// The empty table.
    pub fn empty() -> Self {
        WeightTable::default()
    }

    /// The order-one table fixed by the bracket calibration: weight `1`
    /// on the empty graph, `1/4` on the one-vertex graph `(L, R)` and
    /// `-1/4` on `(R, L)`.
    pub fn order_one() -> Self {
        let mut t = WeightTable::default();
        t.set_star(&AdmGraph::empty(), rat_int(1));
        let lr = AdmGraph::new(1, vec![(ATarget::L, ATarget::R)]).expect("valid graph");
        let rl = AdmGraph::new(1, vec![(ATarget::R, ATarget::L)]).expect("valid graph");
        t.set_star(&lr, rat(1, 4));
        t.set_star(&rl, rat(-1, 4));
        t
    }

    /// Sets the weight of an admissible graph.
    pub fn set_star(&mut self, g: &AdmGraph, w: Rat) {
        self.star.insert(g.key(), w);
    }

    /// Sets the weight of a formality graph.
    pub fn set_formality(&mut self, g: &FormalityGraph, w: Rat) {
        self.formality.insert(g.key(), w);
    }

    /// The weight of an admissible graph, or an error naming the key.
    pub fn star_weight(&self, g: &AdmGraph) -> Result<Rat, QuantizeError> {
        self.star
            .get(&g.key())
            .cloned()
            .ok_or_else(|| QuantizeError::MissingWeight(g.key()))
    }

    /// The weight of a formality graph, or an error naming the key.
    pub fn formality_weight(&self, g: &FormalityGraph) -> Result<Rat, QuantizeError> {
        self.formality
            .get(&g.key())
            .cloned()
            .ok_or_else(|| QuantizeError::MissingWeight(g.key()))
    }

    /// Star weight entries, keyed by graph key.
    pub fn star_entries(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.star.iter()
    }

    /// Formality weight entries, keyed by graph key.
    pub fn formality_entries(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.formality.iter()
    }
}

#[derive(Serialize, Deserialize)]
struct WeightTableRepr {
    #[serde(default)]
    star: BTreeMap<String, String>,
    #[serde(default)]
    formality: BTreeMap<String, String>,
}

impl Serialize for WeightTable {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let render = |m: &BTreeMap<String, Rat>| -> BTreeMap<String, String> {
            m.iter().map(|(k, v)| (k.clone(), coef_to_string(v))).collect()
        };
        WeightTableRepr {
            star: render(&self.star),
            formality: render(&self.formality),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WeightTable {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = WeightTableRepr::deserialize(de)?;
        let parse = |m: BTreeMap<String, String>| -> Result<BTreeMap<String, Rat>, D::Error> {
            m.into_iter()
                .map(|(k, v)| Ok((k, coef_from_str(&v).map_err(DeError::custom)?)))
                .collect()
        };
        Ok(WeightTable {
            star: parse(repr.star)?,
            formality: parse(repr.formality)?,
        })
    }
}

/// A truncated formal series `Σ_{k ≤ order} ħᵏ c_k` with coefficients in
/// the double coordinate ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HbarSeries {
    order: usize,
    coefficients: Vec<OElem>,
}

impl HbarSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        HbarSeries {
            order,
            coefficients: vec![OElem::zero(); order + 1],
        }
    }

    /// Wraps explicit coefficients `c₀, …, c_order`.
    pub fn from_coefficients(coefficients: Vec<OElem>) -> Result<Self, QuantizeError> {
        if coefficients.is_empty() {
            return Err(QuantizeError::Count {
                what: "series coefficients",
                expected: 1,
                got: 0,
            });
        }
        Ok(HbarSeries {
            order: coefficients.len() - 1,
            coefficients,
        })
    }

    /// The truncation order.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The coefficient of `ħᵏ`.
    pub fn coefficient(&self, k: usize) -> &OElem {
        &self.coefficients[k]
    }

    /// All coefficients, constant term first.
    pub fn coefficients(&self) -> &[OElem] {
        &self.coefficients
    }
}

/// The order-`n` graph sum `Σ_{Γ ∈ Gₙ} w_Γ 𝔹_Γ(α, β)`; every graph of
/// `Gₙ` must have a table entry.
pub fn star_coefficient(
    n: usize,
    alpha: &OElem,
    beta: &OElem,
    weights: &WeightTable,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    let mut out = OElem::zero();
    for gamma in enum_admissible(n) {
        let w = weights.star_weight(&gamma)?;
        out = out.add(&b_graph(&gamma, alpha, beta, b)?.scale(&w));
    }
    Ok(out)
}

/// The truncated di-twisted star product `α ⋆ β = Σₙ ħⁿ Σ_{Γ ∈ Gₙ} w_Γ
/// 𝔹_Γ(α, β)`; the order-zero coefficient is the product `αβ` whenever
/// the empty graph has weight `1`.
pub fn star(
    alpha: &OElem,
    beta: &OElem,
    order: usize,
    weights: &WeightTable,
    b: &DoubleBracket,
) -> Result<HbarSeries, QuantizeError> {
    let mut coefficients = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coefficients.push(star_coefficient(n, alpha, beta, weights, b)?);
    }
    HbarSeries::from_coefficients(coefficients)
}

/// The double bracket induced by the order-one star coefficient with the
/// calibrated weights: `{α, β} = C₁(α, β) − Ad(σ) C₁(β, α)` where `σ`
/// swaps the `|β|` and `|α|` slot blocks.
pub fn dt_bracket(
    alpha: &OElem,
    beta: &OElem,
    b: &DoubleBracket,
) -> Result<OElem, QuantizeError> {
    if alpha.is_zero() || beta.is_zero() {
        return Ok(OElem::zero());
    }
    let ga = alpha.grade()?;
    let gb = beta.grade()?;
    let weights = WeightTable::order_one();
    let fwd = star_coefficient(1, alpha, beta, &weights, b)?;
    let rev = star_coefficient(1, beta, alpha, &weights, b)?;
    Ok(fwd.sub(&ad_act(&block_swap(gb, ga), &rev)?))
}

/// Associativity defects of the truncated star product: entry `k` is
/// the `ħᵏ` coefficient of `(α ⋆ β) ⋆ γ − α ⋆ (β ⋆ γ)`.
pub fn associativity_defect(
    alpha: &OElem,
    beta: &OElem,
    gamma: &OElem,
    order: usize,
    weights: &WeightTable,
    b: &DoubleBracket,
) -> Result<Vec<OElem>, QuantizeError> {
    let mut defects = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut dk = OElem::zero();
        for i in 0..=k {
            let ab = star_coefficient(i, alpha, beta, weights, b)?;
            let left = star_coefficient(k - i, &ab, gamma, weights, b)?;
            let bc = star_coefficient(i, beta, gamma, weights, b)?;
            let right = star_coefficient(k - i, alpha, &bc, weights, b)?;
            dk = dk.add(&left).sub(&right);
        }
        defects.push(dk);
    }
    Ok(defects)
}
