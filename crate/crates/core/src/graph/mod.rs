//! Simple undirected graphs over dense vertex indices `0..n`.
//!
//! Adjacency is one fixed-width bit row per vertex, stored in a single flat
//! buffer. All queries in [`cycles`] work on this representation directly.

use std::fmt;

mod bits;
pub mod cycles;
pub mod graph6;
pub mod named;

pub use bits::{iter_bits, BitSet};
pub use cycles::{
    cycles_of_length, distance, distances_from, girth, has_cycle_of_length, odd_girth,
    shortest_cycle, CycleQuery,
};

/// Largest order a [`Graph`] may have.
pub const MAX_ORDER: usize = 8192;

/// A simple undirected graph (no loops, no parallel edges).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    ///
    /// Panics if `order > MAX_ORDER`.
    pub fn new(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "graph order {order} exceeds {MAX_ORDER}");
        let words = order.div_ceil(64).max(1);
        Graph {
            order,
            words,
            rows: vec![0; words * order],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::TooLarge(order));
        }
        let mut g = Graph::new(order);
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    order,
                });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds `uv`; returns `false` if it was already present.
    ///
    /// Panics on a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "simple graphs have no loops");
        if self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        true
    }

    /// Removes `uv`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        true
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.order).all(|v| self.degree(v) == k)
    }

    /// Neighbor lists, ascending.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|v| self.neighbors(v).collect()).collect()
    }

    /// Relabels vertex `v` as `perm[v]`.
    ///
    /// Panics unless `perm` is a permutation of `0..order`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut seen = vec![false; self.order];
        for &p in perm {
            assert!(p < self.order && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut h = Graph::new(self.order);
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        h
    }

    /// Deletes the given vertices; survivors keep their relative order.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.order];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut h = Graph::new(next);
        for (u, v) in self.edges() {
            if map[u] != usize::MAX && map[v] != usize::MAX {
                h.add_edge(map[u], map[v]);
            }
        }
        h
    }

    /// Whether every vertex can reach every other one. The empty graph counts
    /// as connected.
    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        distances_from(self, 0).iter().all(|d| d.is_some())
    }

    /// Two-colourability check by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.order];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.order {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("order {0} exceeds the supported maximum")]
    TooLarge(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_symmetric_and_deduplicated() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.size(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(0, 1));
        assert_eq!(g.degrees(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut g = Graph::new(200);
        g.add_edge(3, 130);
        g.add_edge(63, 64);
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![130]);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63]);
        assert!(g.remove_edge(130, 3));
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn without_vertices_compacts_labels() {
        let g = named::cycle(5).without_vertices(&[0]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn bipartite_detection() {
        assert!(named::cycle(6).is_bipartite());
        assert!(!named::cycle(5).is_bipartite());
        assert!(named::petersen().is_connected());
    }
}
