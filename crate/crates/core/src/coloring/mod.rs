//! Distinguishing colorings: the distinguishing number, the threshold, and
//! the counts Φ_k / φ_k of non-equivalent distinguishing colorings.
//!
//! Two colorings are equivalent when an automorphism carries one onto the
//! other; colors themselves are never permuted.

mod closed;
mod count;

use crate::error::{Error, Result};
use crate::group::{Action, Permutation, PermutationGroup};

pub use closed::closed_form_phi;
pub use count::{count_phi, distinguishing_number, threshold, GraphSymmetry, ORACLE_LIMIT};

/// A vertex coloring with colors drawn from `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    labels: Vec<u32>,
    k: u32,
}

impl Coloring {
    pub fn new(labels: Vec<u32>, k: u32) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&c| c < 1 || c > k) {
            return Err(Error::InvalidInput(format!("color {bad} outside 1..={k}")));
        }
        Ok(Coloring { labels, k })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn palette_size(&self) -> u32 {
        self.k
    }

    pub fn color(&self, v: usize) -> u32 {
        self.labels[v]
    }

    /// True if every color of the palette is used.
    pub fn is_surjective(&self) -> bool {
        let mut used = vec![false; self.k as usize];
        for &c in &self.labels {
            used[c as usize - 1] = true;
        }
        used.into_iter().all(|u| u)
    }

    /// True if `p` maps every vertex to one of the same color.
    pub fn is_preserved_by(&self, p: &Permutation) -> bool {
        (0..self.labels.len()).all(|v| self.labels[p.image(v)] == self.labels[v])
    }
}

impl Action for Coloring {
    fn degree(&self) -> usize {
        self.labels.len()
    }

    /// `(p·c)(v) = c(p⁻¹(v))`.
    fn act_unchecked(&self, p: &Permutation) -> Self {
        let mut labels = vec![0; self.labels.len()];
        for (v, &c) in self.labels.iter().enumerate() {
            labels[p.image(v)] = c;
        }
        Coloring { labels, k: self.k }
    }
}

/// True iff no non-identity element of `aut` preserves `c`.
pub fn is_distinguishing(c: &Coloring, aut: &PermutationGroup) -> Result<bool> {
    if c.degree() != aut.degree() {
        return Err(Error::DegreeMismatch {
            expected: aut.degree(),
            found: c.degree(),
        });
    }
    Ok(aut.non_identity().all(|p| !c.is_preserved_by(p)))
}
