//! Graph combinatorics for the di-twisted star-product: admissible graphs
//! `Gₙ`, two-type formality graphs `G_{n,m}`, double admissible graphs
//! `𝔾ₙ^{(l,r)}` with their merge map, and principal splittings together
//! with the forward and inverse word algorithms.

mod adm;
mod double;
mod formality;
mod splitting;

pub use adm::{enum_admissible, ATarget, AdmGraph};
pub use double::{enum_double_fiber, DEdge, DGraph, DVertex};
pub use formality::{enum_formality, FTarget, FormalityGraph};
pub use splitting::{
    all_perm_tuples, num_splittings, perms_from_splitting, sigma_of_splitting,
    splitting_from_perms, splittings_of, validate_splitting, PermTuple, Splitting,
};

use thiserror::Error;

/// Errors raised by graph construction and the splitting algorithms.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A graph or tuple violates a structural constraint.
    #[error("invalid graph data: {0}")]
    Shape(String),
    /// A splitting is structurally broken (bad edge cover or walk).
    #[error("invalid splitting: {0}")]
    BadSplitting(String),
    /// A valid splitting whose word at the named vertex is not
    /// permutational.
    #[error("splitting is not principal at vertex {0}")]
    NotPrincipal(String),
}
