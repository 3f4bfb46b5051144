//! Bidifferential operators of double admissible graphs, the di-twisted
//! star product on the double coordinate ring, multi-index differential
//! operators, and the graph components of the formality map.

mod bgraph;
mod boundary;
mod diffop;
mod formality;
mod star;

pub use bgraph::{b_graph, b_split, b_split_boundary, cycle_value, path_value, vertex_tensor};
pub use boundary::BoundaryData;
pub use diffop::{diff_op, poly_diff_op};
pub use formality::{u_graph, PolyVectorSpec};
pub use star::{
    associativity_defect, dt_bracket, star, star_coefficient, HbarSeries, WeightTable,
};

use free_algebra::Letter;
use graphs::GraphError;
use oalgebra::OError;
use thiserror::Error;

/// Errors raised by graph operators and the star product.
#[derive(Error, Debug, PartialEq, Eq)]
pub enum QuantizeError {
    /// A truncation referenced a graph with no table entry.
    #[error("no weight for graph key {0}")]
    MissingWeight(String),
    /// An input collection or index has the wrong size for its graph.
    #[error("{what}: expected {expected}, got {got}")]
    Count {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// An edge decoration map misses a proper edge.
    #[error("edge {0} has no decoration")]
    MissingDecoration(String),
    /// An edge decoration letter lies outside the generator range.
    #[error("decoration letter {letter} outside [1, {d}]")]
    DecorationRange { letter: Letter, d: Letter },
    /// A double coordinate ring operation failed.
    #[error(transparent)]
    Algebra(#[from] OError),
    /// A graph or splitting was malformed or not principal.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// All maps `[1, len] → [1, d]` as letter tuples, in lexicographic order.
pub(crate) fn letter_tuples(len: usize, d: Letter) -> impl Iterator<Item = Vec<Letter>> {
    let base = d as usize;
    let total = base.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut tup = vec![0 as Letter; len];
        for slot in (0..len).rev() {
            tup[slot] = (idx % base) as Letter + 1;
            idx /= base;
        }
        tup
    })
}

/// All digit vectors with `digits[i] < radices[i]`, in lexicographic order.
pub(crate) fn mixed_radix(radices: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = radices.iter().product();
    (0..total).map(move |mut idx| {
        let mut digits = vec![0usize; radices.len()];
        for slot in (0..radices.len()).rev() {
            digits[slot] = idx % radices[slot];
            idx /= radices[slot];
        }
        digits
    })
}
