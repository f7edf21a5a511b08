mod common;

use proptest::prelude::*;
use symbreak::coloring::threshold;
use symbreak::graph::{lexicographic_product, parse_graph6, serialize_graph6, x_join, Graph};
use symbreak::group::count_automorphisms;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Pairs of small graphs with `|X|·|Y| <= 30`.
fn product_pair() -> impl Strategy<Value = (Graph, Graph)> {
    (1usize..=6).prop_flat_map(|a| {
        let b_max = 30 / a;
        (
            graph_strategy(a).prop_filter("nonempty", |g| g.vertex_count() > 0),
            1..=b_max,
        )
            .prop_flat_map(move |(x, b)| (Just(x), graph_strategy(b)))
            .prop_filter("nonempty", |(_, y)| y.vertex_count() > 0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(62)) {
        let text = serialize_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_counts((x, y) in product_pair()) {
        let z = lexicographic_product(&x, &y);
        let (nx, ny) = (x.vertex_count(), y.vertex_count());
        prop_assert_eq!(z.vertex_count(), nx * ny);
        prop_assert_eq!(z.edge_count(), x.edge_count() * ny * ny + nx * y.edge_count());
    }

    #[test]
    fn constant_fibers_give_the_product((x, y) in product_pair()) {
        let fibers = vec![y.clone(); x.vertex_count()];
        prop_assert_eq!(x_join(&x, &fibers).unwrap(), lexicographic_product(&x, &y));
    }

    #[test]
    fn twins_decide_threshold(g in graph_strategy(8).prop_filter("n >= 2", |g| g.vertex_count() >= 2)) {
        let n = g.vertex_count() as u32;
        let theta = threshold(&g).unwrap().value;
        match g.twin_obstruction() {
            Some(_) => prop_assert!(theta >= n.into()),
            None => prop_assert!(theta <= (n - 1).into()),
        }
    }
}

#[test]
fn family_automorphism_counts() {
    let factorial = |n: u64| (1..=n).product::<u64>();
    for n in 2..=8u64 {
        let order = |s: String| count_automorphisms(&common::family(&s)).unwrap();
        assert_eq!(order(format!("path:{n}")), 2u32.into());
        assert_eq!(order(format!("complete:{n}")), factorial(n).into());
        if n >= 3 {
            assert_eq!(order(format!("cycle:{n}")), (2 * n).into());
        }
    }
}

#[test]
fn graph6_reference_words() {
    assert_eq!(parse_graph6("A_").unwrap(), common::family("complete:2"));
    assert_eq!(
        serialize_graph6(&common::family("complete:4")).unwrap(),
        "C~"
    );
    assert_eq!(serialize_graph6(&common::family("path:3")).unwrap(), "Bg");
}
