use super::Graph;
use crate::error::{Error, Result};

/// The X-join of `fibers` over `base`.
///
/// Vertex `(u, i)` (vertex `i` of fiber `u`) gets index `offset(u) + i`, so
/// vertices are laid out fiber by fiber in base order. `(u,i)` and `(u',i')`
/// are adjacent when `uu'` is a base edge, or `u = u'` and `ii'` is an edge
/// of fiber `u`.
pub fn x_join(base: &Graph, fibers: &[Graph]) -> Result<Graph> {
    let n = base.vertex_count();
    if fibers.len() != n {
        return Err(Error::Fiber(format!(
            "base has {n} vertices but {} fibers were given",
            fibers.len()
        )));
    }
    if let Some(u) = fibers.iter().position(|f| f.vertex_count() == 0) {
        return Err(Error::Fiber(format!("fiber at base vertex {u} is empty")));
    }

    let offsets = fiber_offsets(fibers);
    let total = offsets[n];
    let mut z = Graph::empty(total);
    for u in 0..n {
        let fiber = &fibers[u];
        for (i, j) in fiber.edges() {
            z.set_edge(offsets[u] + i, offsets[u] + j);
        }
        for w in (u + 1)..n {
            if base.has_edge(u, w) {
                for a in offsets[u]..offsets[u + 1] {
                    for b in offsets[w]..offsets[w + 1] {
                        z.set_edge(a, b);
                    }
                }
            }
        }
    }
    Ok(z)
}

/// `X ∘ Y`: the X-join in which every fiber is `y`.
pub fn lexicographic_product(x: &Graph, y: &Graph) -> Graph {
    let n = x.vertex_count();
    let m = y.vertex_count();
    let mut z = Graph::empty(n * m);
    for u in 0..n {
        for w in 0..n {
            for i in 0..m {
                for j in 0..m {
                    let (a, b) = (u * m + i, w * m + j);
                    if a < b && (x.has_edge(u, w) || (u == w && y.has_edge(i, j))) {
                        z.set_edge(a, b);
                    }
                }
            }
        }
    }
    z
}

/// Prefix sums of fiber sizes; fiber `u` occupies `offsets[u]..offsets[u+1]`.
pub(crate) fn fiber_offsets(fibers: &[Graph]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(fibers.len() + 1);
    offsets.push(0);
    for f in fibers {
        offsets.push(offsets.last().unwrap() + f.vertex_count());
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_family;
    use proptest::prelude::*;

    fn family(s: &str) -> Graph {
        make_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn product_examples() {
        let z = lexicographic_product(&family("cycle:4"), &family("complete:2"));
        assert_eq!((z.vertex_count(), z.edge_count()), (8, 20));

        let p5 = family("path:5");
        assert_eq!(lexicographic_product(&p5, &family("complete:1")), p5);

        let k2 = family("complete:2");
        assert_eq!(lexicographic_product(&k2, &k2), family("complete:4"));
    }

    #[test]
    fn join_examples() {
        let k3 = x_join(
            &family("complete:2"),
            &[family("complete:1"), family("complete:2")],
        )
        .unwrap();
        assert_eq!(k3, family("complete:3"));

        // P3 = a-b-c with fibers K1, K1, K2 is the paw
        let paw = x_join(
            &family("path:3"),
            &[
                family("complete:1"),
                family("complete:1"),
                family("complete:2"),
            ],
        )
        .unwrap();
        let expected = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(paw, expected);
    }

    #[test]
    fn join_errors() {
        let p3 = family("path:3");
        assert!(x_join(&p3, &[family("complete:1")]).is_err());
        assert!(x_join(
            &p3,
            &[family("complete:1"), Graph::empty(0), family("complete:1")]
        )
        .is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn product_counts_and_join_coincide(x in arb_graph(6), y in arb_graph(5)) {
            prop_assume!(x.vertex_count() * y.vertex_count() <= 30);
            let (nx, ny) = (x.vertex_count(), y.vertex_count());
            let z = lexicographic_product(&x, &y);
            prop_assert_eq!(z.vertex_count(), nx * ny);
            prop_assert_eq!(z.edge_count(), x.edge_count() * ny * ny + nx * y.edge_count());
            let fibers = vec![y.clone(); nx];
            prop_assert_eq!(x_join(&x, &fibers).unwrap(), z);
        }
    }
}
