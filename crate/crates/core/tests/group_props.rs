mod common;

use proptest::prelude::*;
use symbreak::coloring::Coloring;
use symbreak::group::{
    act, automorphism_group, orbits_under, subgroup_lattice, Permutation, PermutationGroup,
};
use symbreak::partition::SetPartition;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn labels(n: usize, k: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1..=k, n)
}

/// Two permutations and a coloring, all of one degree.
fn triple() -> impl Strategy<Value = (Permutation, Permutation, Coloring)> {
    (1usize..=9).prop_flat_map(|n| {
        (permutation(n), permutation(n), labels(n, 4))
            .prop_map(|(p, q, l)| (p, q, Coloring::new(l, 4).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn action_is_compatible_with_composition((p, q, c) in triple()) {
        let id = Permutation::identity(p.degree());
        prop_assert_eq!(act(&id, &c).unwrap(), c.clone());
        let pq = p.compose(&q);
        prop_assert_eq!(act(&pq, &c).unwrap(), act(&p, &act(&q, &c).unwrap()).unwrap());

        let part = SetPartition::from_labels(c.labels());
        prop_assert_eq!(act(&id, &part).unwrap(), part.clone());
        prop_assert_eq!(act(&pq, &part).unwrap(), act(&p, &act(&q, &part).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A coloring is preserved by `g` exactly when it is constant on each cycle of `g`.
    #[test]
    fn preserved_iff_constant_on_cycles(
        spec_index in 0usize..6,
        seed_labels in labels(10, 3),
    ) {
        let specs = ["path:6", "cycle:6", "cycle:8", "complete:4", "kneser:5,2", "biclique:2,3"];
        let g = common::family(specs[spec_index]);
        let n = g.vertex_count();
        let c = Coloring::new(seed_labels[..n].to_vec(), 3).unwrap();
        for p in automorphism_group(&g).unwrap().elements() {
            let constant = p
                .cycles()
                .iter()
                .all(|cycle| cycle.iter().all(|&v| c.color(v) == c.color(cycle[0])));
            prop_assert_eq!(c.is_preserved_by(p), constant);
            prop_assert_eq!(act(p, &c).unwrap() == c, constant);
        }
    }
}

fn lattices() -> Vec<(&'static str, PermutationGroup)> {
    [
        "path:4",
        "cycle:6",
        "cycle:8",
        "complete:4",
        "biclique:2,3",
        "kneser:5,2",
    ]
    .into_iter()
    .map(|s| (s, automorphism_group(&common::family(s)).unwrap()))
    .collect()
}

#[test]
fn moebius_sums_vanish_on_proper_intervals() {
    for (name, group) in lattices() {
        let lattice = subgroup_lattice(&group).unwrap();
        let subs = lattice.subgroups();
        for h in 0..subs.len() {
            for k in 0..subs.len() {
                if !lattice.contains(h, k) {
                    continue;
                }
                let sum: i64 = (0..subs.len())
                    .filter(|&l| lattice.contains(h, l) && lattice.contains(l, k))
                    .map(|l| lattice.moebius(h, l))
                    .sum();
                assert_eq!(sum, i64::from(h == k), "{name}: interval [{h}, {k}]");
            }
        }
    }
}

#[test]
fn orbit_sizes_divide_subgroup_orders() {
    for (name, group) in lattices() {
        let lattice = subgroup_lattice(&group).unwrap();
        for sub in lattice.subgroups() {
            let orbits = orbits_under(
                sub.elements().iter().map(|&i| group.element(i)),
                group.degree(),
            );
            assert_eq!(orbits.cell_count(), sub.orbit_count(), "{name}");
            for cell in orbits.cells() {
                assert_eq!(sub.order() % cell.len(), 0, "{name}: orbit {cell:?}");
            }
            assert_eq!(group.order() % sub.order(), 0, "{name}");
        }
    }
}

#[test]
fn lattice_sizes() {
    // Z_2, D_6, D_8, S_4, S_2 x S_3 (isomorphic to D_6), S_5
    let sizes: Vec<usize> = lattices()
        .iter()
        .map(|(_, g)| subgroup_lattice(g).unwrap().len())
        .collect();
    assert_eq!(sizes, vec![2, 16, 19, 30, 16, 156]);
}
