use std::cmp::Ordering;

use num_bigint::BigUint;

use super::set_partition::{RgsWalker, SetPartition};
use crate::coloring::closed_form_phi;
use crate::combinat::bell;
use crate::error::{Error, Result};
use crate::graph::{FamilyKind, FamilySpec, Graph};
use crate::group::{automorphism_group, PermutationGroup};
use crate::index::{Backend, IndexValue, Mode, Rule};

/// Largest Bell number the orbit enumeration accepts.
pub const MAX_PARTITIONS: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionFamily {
    /// All partitions.
    Pi,
    /// Partitions whose cells are fixed together only by the identity.
    Psi,
    /// Partitions preserved, even up to permuting cells, only by the identity.
    Xi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerKind {
    /// No non-identity automorphism maps every cell onto itself.
    pub cellwise_trivial: bool,
    /// No non-identity automorphism maps the partition onto itself.
    pub setwise_trivial: bool,
}

impl StabilizerKind {
    pub fn admits(self, family: PartitionFamily) -> bool {
        match family {
            PartitionFamily::Pi => true,
            PartitionFamily::Psi => self.cellwise_trivial,
            PartitionFamily::Xi => self.setwise_trivial,
        }
    }
}

/// One orbit of set partitions under the automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    /// Least member of the orbit in restricted-growth-string order.
    pub representative: SetPartition,
    pub orbit_size: usize,
    pub stabilizer_kind: StabilizerKind,
}

/// Stream of partition orbits with at most `max_cells` cells.
///
/// Partitions are generated in restricted-growth-string order and a partition
/// is emitted only if no group element maps it to a smaller one.
pub struct PartitionOrbits {
    walker: RgsWalker,
    /// Inverses of the non-identity group elements as image vectors.
    inverses: Vec<Vec<usize>>,
    group_order: usize,
    relabel: Vec<u32>,
}

/// Orbits of set partitions of `g` under its full automorphism group.
pub fn partition_orbits(g: &Graph, max_cells: usize) -> Result<PartitionOrbits> {
    PartitionOrbits::new(&automorphism_group(g)?, max_cells)
}

impl PartitionOrbits {
    pub fn new(group: &PermutationGroup, max_cells: usize) -> Result<Self> {
        let n = group.degree();
        let b = bell(n);
        if b > MAX_PARTITIONS {
            return Err(Error::size_bound(
                "set partitions Bell(n)",
                b,
                MAX_PARTITIONS,
            ));
        }
        Ok(PartitionOrbits {
            walker: RgsWalker::new(n, max_cells),
            inverses: group
                .non_identity()
                .map(|p| p.inverse().images().to_vec())
                .collect(),
            group_order: group.order(),
            relabel: vec![u32::MAX; n],
        })
    }

    /// Compares the canonical form of `g(a)` with `a`, where `inv` is `g⁻¹`.
    fn compare_image(relabel: &mut [u32], a: &[u32], inv: &[usize]) -> Ordering {
        relabel.fill(u32::MAX);
        let mut next = 0;
        for (i, &from) in inv.iter().enumerate() {
            let l = a[from] as usize;
            if relabel[l] == u32::MAX {
                relabel[l] = next;
                next += 1;
            }
            match relabel[l].cmp(&a[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

impl Iterator for PartitionOrbits {
    type Item = PartitionClass;

    fn next(&mut self) -> Option<PartitionClass> {
        'outer: loop {
            let a = self.walker.next_rgs()?;
            let mut setwise = 1;
            let mut cellwise_fixed = false;
            for inv in &self.inverses {
                match Self::compare_image(&mut self.relabel, a, inv) {
                    Ordering::Less => continue 'outer,
                    Ordering::Greater => {}
                    Ordering::Equal => {
                        setwise += 1;
                        if inv.iter().enumerate().all(|(i, &j)| a[i] == a[j]) {
                            cellwise_fixed = true;
                        }
                    }
                }
            }
            return Some(PartitionClass {
                representative: SetPartition::from_rgs(a.to_vec()),
                orbit_size: self.group_order / setwise,
                stabilizer_kind: StabilizerKind {
                    cellwise_trivial: !cellwise_fixed,
                    setwise_trivial: setwise == 1,
                },
            });
        }
    }
}

/// Orbit counts per exact cell count for the three families.
#[derive(Debug, Clone)]
pub struct PartitionCensus {
    /// `exact[r] = [Π-count, Ψ-count, Ξ-count]` for partitions with `r` cells.
    exact: Vec<[u64; 3]>,
}

impl PartitionCensus {
    pub fn for_group(group: &PermutationGroup, max_cells: usize) -> Result<Self> {
        let max_cells = max_cells.min(group.degree());
        let mut exact = vec![[0u64; 3]; max_cells + 1];
        for class in PartitionOrbits::new(group, max_cells)? {
            let r = class.representative.cell_count();
            let kind = class.stabilizer_kind;
            exact[r][0] += 1;
            exact[r][1] += kind.cellwise_trivial as u64;
            exact[r][2] += kind.setwise_trivial as u64;
        }
        Ok(PartitionCensus { exact })
    }

    pub fn for_graph(g: &Graph, max_cells: usize) -> Result<Self> {
        Self::for_group(&automorphism_group(g)?, max_cells)
    }

    fn slot(family: PartitionFamily) -> usize {
        match family {
            PartitionFamily::Pi => 0,
            PartitionFamily::Psi => 1,
            PartitionFamily::Xi => 2,
        }
    }

    /// Classes with at most `k` cells; `k` beyond the census range counts everything enumerated.
    pub fn at_most(&self, family: PartitionFamily, k: usize) -> u64 {
        let s = Self::slot(family);
        self.exact.iter().take(k + 1).map(|c| c[s]).sum()
    }

    /// Classes with exactly `k` cells, as the difference of at-most counts.
    pub fn exact(&self, family: PartitionFamily, k: usize) -> u64 {
        let upper = self.at_most(family, k);
        let lower = if k == 0 {
            0
        } else {
            self.at_most(family, k - 1)
        };
        upper - lower
    }

    pub fn count(&self, family: PartitionFamily, k: usize, mode: Mode) -> u64 {
        match mode {
            Mode::AtMost => self.at_most(family, k),
            Mode::Exact => self.exact(family, k),
        }
    }

    /// Least cell count of a distinguishing partition, if any exists.
    pub fn dp(&self) -> Option<usize> {
        (0..self.exact.len()).find(|&r| self.exact[r][2] > 0)
    }
}

pub fn count_partition_index(
    g: &Graph,
    k: usize,
    family: PartitionFamily,
    mode: Mode,
) -> Result<IndexValue> {
    if k < 1 {
        return Err(Error::InvalidInput(
            "cell count k must be at least 1".into(),
        ));
    }
    let census = PartitionCensus::for_graph(g, k)?;
    Ok(IndexValue::new(
        census.count(family, k, mode),
        Backend::Oracle,
    ))
}

/// Minimum number of cells in a distinguishing partition, or `None` if the
/// graph has none.
pub fn dp_number(g: &Graph) -> Result<Option<IndexValue>> {
    let census = PartitionCensus::for_graph(g, g.vertex_count())?;
    Ok(census.dp().map(|r| IndexValue::new(r, Backend::Oracle)))
}

/// Closed forms for ψ_k on paths (`k = 2`, `k = n-1`) and cycles (`k = n-1`).
pub fn closed_form_psi(spec: &FamilySpec, k: usize) -> Result<IndexValue> {
    let n = spec.params()[0];
    let none = || Error::NoClosedForm(format!("ψ_{k} of {spec}"));
    match spec.kind() {
        FamilyKind::Path if k == 2 && n >= 2 => {
            // Every 2-cell partition yields two exact 2-colorings. For odd n they
            // are never equivalent; for even n the 2^(n/2-1) partitions whose
            // color swap equals the reversal are counted once by φ_2.
            let phi2 = closed_form_phi(spec, 2, Mode::Exact)?.value;
            let value = if n % 2 == 1 {
                phi2 / 2u32
            } else {
                (phi2 + (BigUint::from(1u32) << (n / 2 - 1))) / 2u32
            };
            Ok(IndexValue::new(
                value,
                Backend::ClosedForm(Rule::PathTwoCells),
            ))
        }
        // n ≤ 3 fails: the lone shared cell of P_2, P_3 can be reversal-symmetric with nothing else moving
        FamilyKind::Path if n >= 4 && k == n - 1 => Ok(IndexValue::new(
            n * n / 4,
            Backend::ClosedForm(Rule::OneSharedCell),
        )),
        FamilyKind::Cycle if k == n - 1 => {
            let value = match n {
                3 => 0,
                4 => 1,
                _ => n / 2,
            };
            Ok(IndexValue::new(
                value,
                Backend::ClosedForm(Rule::OneSharedCell),
            ))
        }
        _ => Err(none()),
    }
}
