//! Simple undirected graphs on a dense vertex set `0..n`.
//!
//! Graphs are immutable once built. Named families, graph6 text and the
//! join/product constructions live in the submodules.

mod family;
mod graph6;
mod join;

use std::fmt;

pub use family::{make_family, FamilyKind, FamilySpec};
pub use graph6::{parse_graph6, serialize_graph6};
pub use join::{lexicographic_product, x_join};

use crate::error::{Error, Result};

/// A finite simple graph: symmetric, irreflexive adjacency on `0..n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    label: Option<String>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            label: None,
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range endpoints.
    /// Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// The complement graph.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Returns a pair `(u, v)` with `N(u) \ {v} = N(v) \ {u}`, if any.
    ///
    /// Such twins can be swapped by an automorphism, so a graph has one
    /// exactly when some `(n-1)`-coloring fails to be distinguishing.
    pub fn twin_obstruction(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let twins = (0..self.n)
                    .filter(|&w| w != u && w != v)
                    .all(|w| self.has_edge(u, w) == self.has_edge(v, w));
                if twins {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

impl PartialEq for Graph {
    /// Equality of labelled graphs; the descriptive label is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn zero_vertex_graph_is_valid() {
        let g = Graph::empty(0);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn twin_obstruction_on_small_families() {
        let k4 = make_family(&"complete:4".parse().unwrap()).unwrap();
        assert!(k4.twin_obstruction().is_some());

        let p4 = make_family(&"path:4".parse().unwrap()).unwrap();
        assert_eq!(p4.twin_obstruction(), None);

        let c4 = make_family(&"cycle:4".parse().unwrap()).unwrap();
        let (u, v) = c4.twin_obstruction().unwrap();
        assert_eq!((u + 2) % 4, v, "twins in C4 are antipodal");
    }

    #[test]
    fn label_does_not_affect_equality() {
        let a = Graph::from_edges(2, [(0, 1)]).unwrap().with_label("K2");
        let b = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(a, b);
    }
}
