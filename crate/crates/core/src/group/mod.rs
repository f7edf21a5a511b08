//! Permutations, finite permutation groups with a materialized element list,
//! automorphism search and subgroup lattices.

mod automorphism;
mod lattice;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use automorphism::{
    automorphism_group, automorphism_group_with, count_automorphisms, count_isomorphisms,
    SearchLimits,
};
pub use lattice::{
    subgroup_lattice, subgroup_lattice_with, Subgroup, SubgroupLattice, DEFAULT_LATTICE_BOUND,
};

use crate::error::{Error, Result};
use crate::partition::SetPartition;

/// A bijection on `0..n`, stored as its image sequence.
///
/// Composition follows function notation: `p.compose(q)` maps `i` to `p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// Disjoint cycles, each starting at its least point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Something a permutation of `0..n` acts on from the left.
pub trait Action: Sized {
    fn degree(&self) -> usize;

    /// Applies `p`; callers guarantee matching degrees.
    fn act_unchecked(&self, p: &Permutation) -> Self;
}

/// Left action of `p` on a coloring or partition: `act(pq, x) = act(p, act(q, x))`.
pub fn act<T: Action>(p: &Permutation, target: &T) -> Result<T> {
    if p.degree() != target.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: target.degree(),
        });
    }
    Ok(target.act_unchecked(p))
}

/// A finite permutation group with every element listed.
///
/// Elements are kept in lexicographic order of their image sequences, so the
/// identity is always element 0.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    /// The trivial group on `0..n`.
    pub fn trivial(n: usize) -> Self {
        Self::from_closed_elements(n, vec![Permutation::identity(n)])
    }

    /// Closes `generators` under composition.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(elements[0].clone());
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            next += 1;
            for g in generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    elements.push(y);
                }
            }
        }
        Ok(Self::from_closed_elements(degree, elements))
    }

    /// Builds a group from a list already known to be closed (e.g. every
    /// automorphism of a graph). The list is sorted and a generating set picked.
    pub(crate) fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(elements.first().is_some_and(Permutation::is_identity));
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut group = PermutationGroup {
            degree,
            elements,
            generators: Vec::new(),
            index,
        };
        group.generators = group.pick_generators();
        group
    }

    /// Greedy generating set: scan elements in order, keep any element not
    /// already in the subgroup generated so far.
    fn pick_generators(&self) -> Vec<usize> {
        let order = self.order();
        let mut member = vec![false; order];
        member[0] = true;
        let mut span = vec![0usize];
        let mut gens = Vec::new();
        for candidate in 1..order {
            if member[candidate] {
                continue;
            }
            gens.push(candidate);
            // re-close the span under the enlarged generator list
            let mut next = 0;
            span.push(candidate);
            member[candidate] = true;
            while next < span.len() {
                let x = span[next];
                next += 1;
                for &g in &gens {
                    let y = self.multiply(x, g);
                    if !member[y] {
                        member[y] = true;
                        span.push(y);
                    }
                }
            }
            if span.len() == order {
                break;
            }
        }
        gens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]);
        self.index[&p]
    }

    /// Non-identity elements.
    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements.iter().skip(1)
    }

    /// Orbit partition of `0..degree` under the whole group.
    pub fn orbits(&self) -> SetPartition {
        orbits_under(self.elements.iter(), self.degree)
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators().collect::<Vec<_>>())
            .finish()
    }
}

/// Orbit partition of `0..n` under the permutations in `sub`.
pub fn orbits_under<'a, I>(sub: I, n: usize) -> SetPartition
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in sub {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, p.image(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    SetPartition::from_labels(&labels)
}
