#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symbreak::graph::{make_family, Graph};
use symbreak::group::PermutationGroup;
use symbreak::partition::RgsWalker;
use symbreak::partition::SetPartition;

pub fn family(spec: &str) -> Graph {
    make_family(&spec.parse().unwrap()).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Deterministic random graphs with `1 ≤ n ≤ max_n`.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.2..0.8);
            random_graph(&mut rng, n, p)
        })
        .collect()
}

/// θ by definition: one more than the largest number of colors in a
/// coloring some non-identity automorphism preserves. A coloring with `r`
/// colors is a partition into `r` cells, preserved iff every cell is fixed.
pub fn threshold_by_definition(group: &PermutationGroup) -> usize {
    let n = group.degree();
    let mut walker = RgsWalker::new(n, n);
    let mut worst = 0;
    while let Some(rgs) = walker.next_rgs() {
        let p = SetPartition::from_labels(rgs);
        let r = p.cell_count();
        if r > worst && group.non_identity().any(|g| p.is_fixed_cellwise_by(g)) {
            worst = r;
        }
    }
    worst + 1
}
