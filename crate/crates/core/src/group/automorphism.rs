//! Backtracking search for graph automorphisms and isomorphisms.
//!
//! Vertices of the source graph are placed one at a time in an order that
//! keeps each new vertex adjacent to as many placed ones as possible. A
//! candidate image must carry the same degree and neighbor-degree profile and
//! agree on adjacency with every vertex already placed.

use std::ops::ControlFlow;

use num_bigint::BigUint;

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Resource bounds for the automorphism search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Largest vertex count accepted.
    pub max_vertices: usize,
    /// Largest group materialized as an element list.
    pub max_elements: usize,
    /// Largest number of mappings a counting search will visit.
    pub max_count: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_vertices: 64,
            max_elements: 200_000,
            max_count: 50_000_000,
        }
    }
}

pub fn automorphism_group(g: &Graph) -> Result<PermutationGroup> {
    automorphism_group_with(g, &SearchLimits::default())
}

/// The full automorphism group of `g`, elements in lexicographic order.
pub fn automorphism_group_with(g: &Graph, limits: &SearchLimits) -> Result<PermutationGroup> {
    check_size(g, limits)?;
    let mut elements = Vec::new();
    let mut overflow = false;
    Matcher::new(g, g).search(&mut |images| {
        if elements.len() == limits.max_elements {
            overflow = true;
            return ControlFlow::Break(());
        }
        elements.push(Permutation(images.to_vec()));
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::size_bound(
            "automorphism group order",
            format!("> {}", limits.max_elements),
            limits.max_elements,
        ));
    }
    Ok(PermutationGroup::from_closed_elements(
        g.vertex_count(),
        elements,
    ))
}

/// `|Aut(g)|` without materializing the group.
pub fn count_automorphisms(g: &Graph) -> Result<BigUint> {
    count_isomorphisms(g, g)
}

/// Number of isomorphisms from `a` onto `b` (zero when they are not isomorphic).
pub fn count_isomorphisms(a: &Graph, b: &Graph) -> Result<BigUint> {
    let limits = SearchLimits::default();
    check_size(a, &limits)?;
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(BigUint::default());
    }
    let mut count = 0u64;
    let mut overflow = false;
    Matcher::new(a, b).search(&mut |_| {
        if count == limits.max_count {
            overflow = true;
            return ControlFlow::Break(());
        }
        count += 1;
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::size_bound(
            "isomorphism count",
            format!("> {}", limits.max_count),
            limits.max_count,
        ));
    }
    Ok(BigUint::from(count))
}

fn check_size(g: &Graph, limits: &SearchLimits) -> Result<()> {
    if g.vertex_count() > limits.max_vertices {
        return Err(Error::size_bound(
            "automorphism search vertex count",
            g.vertex_count(),
            limits.max_vertices,
        ));
    }
    Ok(())
}

/// Degree plus sorted neighbor degrees; preserved by any isomorphism.
fn vertex_profiles(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| degrees[u]).collect();
            nd.sort_unstable();
            (degrees[v], nd)
        })
        .collect()
}

struct Matcher<'a> {
    a: &'a Graph,
    b: &'a Graph,
    order: Vec<usize>,
    /// `compatible[v]` lists the vertices of `b` sharing `v`'s profile.
    compatible: Vec<Vec<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a Graph, b: &'a Graph) -> Self {
        let n = a.vertex_count();
        let pa = vertex_profiles(a);
        let pb = vertex_profiles(b);
        let compatible = (0..n)
            .map(|v| (0..n).filter(|&w| pa[v] == pb[w]).collect())
            .collect();
        Matcher {
            a,
            b,
            order: placement_order(a),
            compatible,
        }
    }

    fn search(&self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) {
        let n = self.a.vertex_count();
        if self.compatible.iter().any(Vec::is_empty) && n > 0 {
            return;
        }
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let _ = self.extend(0, &mut images, &mut used, visit);
    }

    fn extend(
        &self,
        depth: usize,
        images: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            return visit(images);
        }
        let v = self.order[depth];
        for &w in &self.compatible[v] {
            if used[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.a.has_edge(v, u) == self.b.has_edge(w, images[u]));
            if !consistent {
                continue;
            }
            images[v] = w;
            used[w] = true;
            let flow = self.extend(depth + 1, images, used, visit);
            used[w] = false;
            images[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Greedy order: repeatedly take the unplaced vertex with the most placed
/// neighbors, breaking ties by degree, then index.
fn placement_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{lexicographic_product, make_family};

    fn family(s: &str) -> Graph {
        make_family(&s.parse().unwrap()).unwrap()
    }

    fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
        g.edges().all(|(u, v)| g.has_edge(p.image(u), p.image(v)))
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphism_group(&family("path:4")).unwrap().order(), 2);
        assert_eq!(automorphism_group(&family("cycle:6")).unwrap().order(), 12);
        assert_eq!(
            automorphism_group(&family("kneser:5,2")).unwrap().order(),
            120
        );
        assert_eq!(automorphism_group(&family("path:1")).unwrap().order(), 1);
        assert_eq!(automorphism_group(&Graph::empty(0)).unwrap().order(), 1);
    }

    #[test]
    fn family_orders_up_to_eight() {
        let factorial = |n: usize| (1..=n).product::<usize>();
        for n in 2..=8 {
            let p = automorphism_group(&family(&format!("path:{n}"))).unwrap();
            assert_eq!(p.order(), 2, "P{n}");
            let k = automorphism_group(&family(&format!("complete:{n}"))).unwrap();
            assert_eq!(k.order(), factorial(n), "K{n}");
            if n >= 3 {
                let c = automorphism_group(&family(&format!("cycle:{n}"))).unwrap();
                assert_eq!(c.order(), 2 * n, "C{n}");
            }
        }
    }

    #[test]
    fn elements_are_automorphisms_in_lex_order() {
        let g = family("kneser:5,2");
        let aut = automorphism_group(&g).unwrap();
        assert!(aut.elements().iter().all(|p| is_automorphism(&g, p)));
        assert!(aut.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counting_matches_materialized() {
        let z = lexicographic_product(&family("cycle:6"), &family("complete:2"));
        assert_eq!(count_automorphisms(&z).unwrap(), BigUint::from(768u32));
        assert_eq!(automorphism_group(&z).unwrap().order(), 768);
    }

    #[test]
    fn isomorphism_counts() {
        let c4 = family("cycle:4");
        let k22 = family("biclique:2,2");
        assert_eq!(count_isomorphisms(&c4, &k22).unwrap(), BigUint::from(8u32));
        let p4 = family("path:4");
        assert_eq!(count_isomorphisms(&c4, &p4).unwrap(), BigUint::default());
        assert_eq!(
            count_isomorphisms(&family("complete:1"), &family("complete:2")).unwrap(),
            BigUint::default()
        );
    }

    #[test]
    fn bounds_are_reported() {
        let err = automorphism_group(&Graph::empty(65)).unwrap_err();
        assert!(err.is_resource_bound());
        let limits = SearchLimits {
            max_elements: 100,
            ..SearchLimits::default()
        };
        let err = automorphism_group_with(&family("complete:6"), &limits).unwrap_err();
        assert!(err.to_string().contains("automorphism group order"));
    }
}
