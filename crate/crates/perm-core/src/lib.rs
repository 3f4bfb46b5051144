//! Permutations of finite ranges `{1, …, n}` together with the three special
//! constructions used throughout the workspace: edge blow-up, middle
//! insertion, and the Kerov canonical projection.
//!
//! Composition is function composition: `compose(p, q)` maps `i` to
//! `p(q(i))`. All public indices are 1-based; internal storage is 0-based.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Errors for constructing or combining permutations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    /// The image list does not describe a bijection of `{1, …, n}`.
    #[error("not a permutation in one-line notation: {0}")]
    InvalidOneLine(String),
    /// `insert(w, l, τ, r)` requires `l + r = degree(w)`.
    #[error("insert split l={l} + r={r} does not match degree {n}")]
    InsertSplit { l: usize, r: usize, n: usize },
}

/// A permutation of `{1, …, n}` in one-line notation.
///
/// Stored 0-based internally; serialized as the 1-based image array, e.g.
/// `[2,1,3]` for the transposition of 1 and 2 inside `S(3)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// The identity of `S(n)`; `n = 0` gives the empty permutation.
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based one-line image list.
    pub fn from_one_line(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::InvalidOneLine(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|v| v - 1).collect(),
        })
    }

    /// Builds a permutation from 0-based images. Panics if not a bijection.
    pub fn from_images0(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v < n && !seen[v], "not a bijection: {images:?}");
            seen[v] = true;
        }
        Perm { images }
    }

    /// The transposition of `a` and `b` (1-based) inside `S(n)`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && a <= n && b >= 1 && b <= n && a != b);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Perm { images }
    }

    /// Degree `n`: the permutation acts on `{1, …, n}`.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// Image of 0-based `i`.
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The 1-based one-line image list.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// All of `S(n)` in lexicographic one-line order. `n = 0` gives the
    /// single empty permutation.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(remaining: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Perm>) {
            if remaining.is_empty() {
                out.push(Perm {
                    images: prefix.clone(),
                });
                return;
            }
            for (idx, &v) in remaining.iter().enumerate() {
                let mut rest = remaining.to_vec();
                rest.remove(idx);
                prefix.push(v);
                rec(&rest, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
        out
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.one_line()
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Perm, PermError> {
        Perm::from_one_line(v)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

/// Block juxtaposition `w × τ`: the first `n` nodes permuted as `w`, the last
/// `m` as `τ` shifted by `n`.
pub fn cross(w: &Perm, tau: &Perm) -> Perm {
    let n = w.degree();
    let mut images = Vec::with_capacity(n + tau.degree());
    images.extend(w.images.iter().copied());
    images.extend(tau.images.iter().map(|&v| v + n));
    Perm { images }
}

/// Edge blow-up `τ^{k₁,…,kₙ}`: splits the nodes into `n` consecutive blocks
/// of sizes `kᵢ` and transports block `i` to block-slot `τ(i)`, preserving
/// the order inside each block. Empty blocks (`kᵢ = 0`) are dropped.
pub fn blowup(tau: &Perm, k: &[usize]) -> Perm {
    let n = tau.degree();
    assert_eq!(k.len(), n, "blowup needs one block size per node");
    let total: usize = k.iter().sum();
    // Output block-slot g holds the block arriving from input block τ⁻¹(g).
    let tinv = tau.inverse();
    let mut out_start = vec![0usize; n];
    let mut acc = 0;
    for g in 0..n {
        out_start[g] = acc;
        acc += k[tinv.apply0(g)];
    }
    let mut images = vec![0; total];
    let mut in_pos = 0;
    for (i, &ki) in k.iter().enumerate() {
        let base = out_start[tau.apply0(i)];
        for c in 0..ki {
            images[in_pos] = base + c;
            in_pos += 1;
        }
    }
    Perm { images }
}

/// Middle insertion `w′ *_l τ *_r w″`: cuts `w ∈ S(l+r)` between positions
/// `l` and `l+1`, inserts `τ ∈ S(m)` there, and keeps all edges of `w`
/// running over the inserted block.
pub fn insert(w: &Perm, l: usize, tau: &Perm, r: usize) -> Result<Perm, PermError> {
    let n = w.degree();
    if l + r != n {
        return Err(PermError::InsertSplit { l, r, n });
    }
    let m = tau.degree();
    // φ relabels the nodes of w around the inserted block (0-based).
    let phi = |i: usize| if i < l { i } else { i + m };
    let mut images = vec![0; n + m];
    for i in 0..n {
        images[phi(i)] = phi(w.apply0(i));
    }
    for j in 0..m {
        images[l + j] = l + tau.apply0(j);
    }
    Ok(Perm { images })
}

/// Conjugation `Ad(σ)(u) = σ u σ⁻¹`.
pub fn ad(sigma: &Perm, u: &Perm) -> Perm {
    sigma.compose(u).compose(&sigma.inverse())
}

/// The Kerov canonical projection `S(n+1) → S(n)`: restriction when `u`
/// fixes 1, otherwise 1 is removed from its cycle and `{2,…,n+1}` is
/// relabelled to `{1,…,n}`.
pub fn kerov_project(u: &Perm) -> Perm {
    let m = u.degree();
    assert!(m >= 1, "kerov_project needs a permutation of positive degree");
    let mut images = Vec::with_capacity(m - 1);
    for i in 1..m {
        let v = if u.images[i] == 0 {
            u.images[0]
        } else {
            u.images[i]
        };
        images.push(v - 1);
    }
    Perm { images }
}
