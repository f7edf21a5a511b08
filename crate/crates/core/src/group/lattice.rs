//! Exhaustive subgroup lattices of small permutation groups.
//!
//! Every subgroup is generated by cyclic subgroups, so starting from all
//! cyclic subgroups and repeatedly joining a known subgroup with a cyclic one
//! reaches the whole lattice. Joins are closures computed on the group's
//! multiplication table.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{orbits_under, PermutationGroup};
use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_BOUND: usize = 2000;

/// A subgroup given by indices into the parent group's element list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elements: Vec<usize>,
    bits: Vec<u64>,
    orbit_count: usize,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of orbits of the subgroup on the points `0..degree`.
    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    pub fn contains(&self, element: usize) -> bool {
        self.bits[element / 64] >> (element % 64) & 1 == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    /// `above[h]`: indices of subgroups strictly containing `h`.
    above: Vec<Vec<usize>>,
    moebius_rows: Vec<OnceLock<Vec<i64>>>,
    lookup: HashMap<Vec<u64>, usize>,
}

pub fn subgroup_lattice(group: &PermutationGroup) -> Result<SubgroupLattice> {
    subgroup_lattice_with(group, DEFAULT_LATTICE_BOUND)
}

pub fn subgroup_lattice_with(group: &PermutationGroup, bound: usize) -> Result<SubgroupLattice> {
    let order = group.order();
    if order > bound {
        return Err(Error::size_bound(
            "subgroup lattice group order",
            order,
            bound,
        ));
    }
    let table = MulTable::new(group);
    let words = order.div_ceil(64);

    let mut found: HashMap<Vec<u64>, usize> = HashMap::new();
    // (bits, generators) for every subgroup discovered so far
    let mut list: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    let mut cyclic_gens = Vec::new();
    for g in 0..order {
        let bits = table.closure(&[g], words);
        if !found.contains_key(&bits) {
            found.insert(bits.clone(), list.len());
            list.push((bits, vec![g]));
            cyclic_gens.push(g);
        }
    }

    let mut next = 0;
    while next < list.len() {
        let (bits, gens) = list[next].clone();
        next += 1;
        for &c in &cyclic_gens {
            if bits[c / 64] >> (c % 64) & 1 == 1 {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(c);
            let joined = table.closure(&joined_gens, words);
            if !found.contains_key(&joined) {
                found.insert(joined.clone(), list.len());
                list.push((joined, joined_gens));
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = list
        .into_iter()
        .map(|(bits, _)| {
            let elements: Vec<usize> = (0..order)
                .filter(|&i| bits[i / 64] >> (i % 64) & 1 == 1)
                .collect();
            let orbit_count =
                orbits_under(elements.iter().map(|&i| group.element(i)), group.degree())
                    .cell_count();
            Subgroup {
                elements,
                bits,
                orbit_count,
            }
        })
        .collect();
    subgroups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));

    let above = (0..subgroups.len())
        .map(|h| {
            (h + 1..subgroups.len())
                .filter(|&k| {
                    subgroups[k].order() > subgroups[h].order()
                        && subgroups[h].is_subgroup_of(&subgroups[k])
                })
                .collect()
        })
        .collect();
    let lookup = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits.clone(), i))
        .collect();
    let moebius_rows = (0..subgroups.len()).map(|_| OnceLock::new()).collect();
    Ok(SubgroupLattice {
        subgroups,
        above,
        moebius_rows,
        lookup,
    })
}

impl SubgroupLattice {
    /// Subgroups sorted by order, then by element indices; index 0 is trivial.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Subgroups strictly above `h`.
    pub fn strictly_above(&self, h: usize) -> &[usize] {
        &self.above[h]
    }

    pub fn contains(&self, h: usize, k: usize) -> bool {
        h == k || self.above[h].binary_search(&k).is_ok()
    }

    /// The subgroup whose element set is exactly `elements`.
    pub fn find(&self, elements: &[usize]) -> Option<usize> {
        let words = self.subgroups[0].bits.len();
        let mut bits = vec![0u64; words];
        for &e in elements {
            if e / 64 >= words {
                return None;
            }
            bits[e / 64] |= 1 << (e % 64);
        }
        self.lookup.get(&bits).copied()
    }

    /// `μ(h, k)`, zero unless `h ≤ k`.
    pub fn moebius(&self, h: usize, k: usize) -> i64 {
        self.moebius_row(h)[k]
    }

    /// `μ(h, ·)` over all subgroups, computed on first use by the recursion
    /// `μ(h,h) = 1`, `μ(h,k) = -Σ_{h ≤ l < k} μ(h,l)`.
    pub fn moebius_row(&self, h: usize) -> &[i64] {
        self.moebius_rows[h].get_or_init(|| {
            let mut row = vec![0i64; self.len()];
            row[h] = 1;
            // `above[h]` is sorted by order, so every l < k is done before k
            for &k in &self.above[h] {
                let sum: i64 = std::iter::once(h)
                    .chain(self.above[h].iter().copied())
                    .filter(|&l| l != k && self.contains(l, k))
                    .map(|l| row[l])
                    .sum();
                row[k] = -sum;
            }
            row
        })
    }
}

struct MulTable {
    order: usize,
    table: Vec<u32>,
}

impl MulTable {
    fn new(group: &PermutationGroup) -> Self {
        let order = group.order();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = group.multiply(a, b) as u32;
            }
        }
        MulTable { order, table }
    }

    fn closure(&self, gens: &[usize], words: usize) -> Vec<u64> {
        let mut bits = vec![0u64; words];
        bits[0] |= 1;
        let mut members = vec![0usize];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &g in gens {
                let y = self.table[x * self.order + g] as usize;
                if bits[y / 64] >> (y % 64) & 1 == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    members.push(y);
                }
            }
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Graph};
    use crate::group::automorphism_group;

    fn aut(s: &str) -> PermutationGroup {
        let g: Graph = make_family(&s.parse().unwrap()).unwrap();
        automorphism_group(&g).unwrap()
    }

    fn check_moebius_identity(lat: &SubgroupLattice) {
        for h in 0..lat.len() {
            for k in 0..lat.len() {
                if !lat.contains(h, k) {
                    assert_eq!(lat.moebius(h, k), 0);
                    continue;
                }
                let sum: i64 = (0..lat.len())
                    .filter(|&l| lat.contains(h, l) && lat.contains(l, k))
                    .map(|l| lat.moebius(h, l))
                    .sum();
                assert_eq!(sum, (h == k) as i64, "interval ({h},{k})");
            }
        }
    }

    #[test]
    fn order_two_lattice() {
        let lat = subgroup_lattice(&aut("path:4")).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.moebius(0, 1), -1);
        check_moebius_identity(&lat);
    }

    #[test]
    fn trivial_lattice() {
        let lat = subgroup_lattice(&PermutationGroup::trivial(3)).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.moebius(0, 0), 1);
    }

    #[test]
    fn dihedral_of_square_has_ten_subgroups() {
        let lat = subgroup_lattice(&aut("cycle:4")).unwrap();
        assert_eq!(lat.len(), 10);
        check_moebius_identity(&lat);
        // D4 is a 2-group that is not elementary abelian, so μ(1, D4) = 0
        assert_eq!(lat.moebius(0, lat.top()), 0);
    }

    #[test]
    fn symmetric_group_s5_lattice() {
        // Petersen graph automorphisms form S5: 156 subgroups, μ(1,S5) = 60 (checked
        // against a separate closure of all 2-generated subgroups of S5)
        let lat = subgroup_lattice(&aut("kneser:5,2")).unwrap();
        assert_eq!(lat.len(), 156);
        assert_eq!(lat.moebius(0, lat.top()), 60);
    }

    #[test]
    fn lookup_by_element_set() {
        let group = aut("cycle:6");
        let lat = subgroup_lattice(&group).unwrap();
        for (i, s) in lat.subgroups().iter().enumerate() {
            assert_eq!(lat.find(s.elements()), Some(i));
        }
        assert_eq!(
            lat.find(&[0, 1]).is_some(),
            lat.subgroups().iter().any(|s| s.elements() == [0, 1])
        );
    }

    #[test]
    fn orbit_counts_and_lagrange() {
        let group = aut("cycle:6");
        let lat = subgroup_lattice(&group).unwrap();
        for s in lat.subgroups() {
            let orbits = orbits_under(s.elements().iter().map(|&i| group.element(i)), 6);
            assert_eq!(orbits.cell_count(), s.orbit_count());
            for cell in orbits.cells() {
                assert_eq!(s.order() % cell.len(), 0);
            }
        }
    }

    #[test]
    fn bound_enforced() {
        let err = subgroup_lattice_with(&aut("cycle:6"), 10).unwrap_err();
        assert!(err.is_resource_bound());
    }
}
