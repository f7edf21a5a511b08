mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use symbreak::coloring::GraphSymmetry;
use symbreak::graph::{lexicographic_product, Graph};
use symbreak::group::count_automorphisms;
use symbreak::products::{d_lexicographic, d_xjoin_upper_bound, naturality_check};
use symbreak::Error;

const FIBERS: [&str; 6] = [
    "path:1",
    "path:2",
    "empty:2",
    "path:3",
    "complete:3",
    "path:4",
];

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if seed >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::from_edges(n, edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn natural_count_of_constant_fibers(
        x in graph_strategy(1, 4),
        y in graph_strategy(1, 3),
    ) {
        let z = lexicographic_product(&x, &y);
        let fibers = vec![y.clone(); x.vertex_count()];
        let analysis = naturality_check(&z, &x, &fibers).unwrap();
        let expected = count_automorphisms(&x).unwrap()
            * count_automorphisms(&y).unwrap().pow(x.vertex_count() as u32);
        prop_assert_eq!(&analysis.natural_count, &expected);
        prop_assert!(analysis.natural_count <= analysis.full_aut_order);
    }

    /// With natural automorphisms only, the product rule gives the direct value.
    #[test]
    fn lexicographic_rule_matches_direct(
        x in graph_strategy(1, 4),
        y in graph_strategy(1, 3),
    ) {
        let z = lexicographic_product(&x, &y);
        let direct = match GraphSymmetry::new(&z).and_then(|s| s.distinguishing_number()) {
            Ok(d) => d.value,
            // highly symmetric unnatural products exceed the counting bounds
            Err(e) if e.is_resource_bound() => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let result = d_lexicographic(&x, &y).unwrap();
        prop_assert_eq!(&result.value.value, &direct);
        prop_assert_eq!(result.fallback, !result.analysis.all_natural);
        if z.vertex_count() <= 14 {
            prop_assert_eq!(result.direct, Some(direct));
        }
    }

    #[test]
    fn xjoin_bound_is_an_upper_bound(
        x in graph_strategy(1, 4),
        choice in proptest::collection::vec(0usize..FIBERS.len(), 4),
    ) {
        let fibers: Vec<Graph> = choice[..x.vertex_count()]
            .iter()
            .map(|&i| common::family(FIBERS[i]))
            .collect();
        match d_xjoin_upper_bound(&x, &fibers) {
            Ok(result) => {
                let direct = result.direct.expect("small joins are counted directly");
                prop_assert!(direct.value <= BigUint::from(result.bound));
                prop_assert!(result.candidates >= 1);
                prop_assert_eq!(result.witness.df, result.bound);
            }
            Err(Error::NotNatural { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn product_examples() {
    let d = |a: &str, b: &str| {
        let r = d_lexicographic(&common::family(a), &common::family(b)).unwrap();
        (r.value.value.clone(), r.fallback)
    };
    // D(P_3) = 2 and Φ_2(P_2) = 1 < 2 <= Φ_3(P_2) = 3
    assert_eq!(d("path:3", "path:2"), (3u32.into(), false));
    // D(C_4) = 3 and Φ_2(P_3) = 2 < 3 <= Φ_3(P_3) = 9
    assert_eq!(d("cycle:4", "path:3"), (3u32.into(), false));
    // K_2 o K_2 = K_4 has unnatural automorphisms
    assert_eq!(d("complete:2", "complete:2"), (4u32.into(), true));
}

#[test]
fn unnatural_joins_are_rejected() {
    let x = common::family("complete:2");
    let fibers = vec![common::family("complete:2"), common::family("complete:2")];
    assert!(matches!(
        d_xjoin_upper_bound(&x, &fibers),
        Err(Error::NotNatural { .. })
    ));
    let wrong = [common::family("path:1")];
    assert!(matches!(
        d_xjoin_upper_bound(&x, &wrong),
        Err(Error::Fiber(_))
    ));
}
