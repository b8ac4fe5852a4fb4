//! Small named graphs used as fixtures and test subjects.
//!
//! The figure graphs (`tricorn`, `cage_3_3_b`, `cage_4_3_b`, `campbell`) are
//! transcribed from drawings; their defining properties are re-checked in the
//! test suite rather than trusted.

use super::Graph;

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Disjoint union, second graph relabelled after the first.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.order();
    let mut g = Graph::new(off + b.order());
    for (u, v) in a.edges() {
        g.add_edge(u, v);
    }
    for (u, v) in b.edges() {
        g.add_edge(u + off, v + off);
    }
    g
}

/// GP(n, k): outer cycle `0..n`, spokes `i -- n+i`, inner edges
/// `n+i -- n+(i+k mod n)`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    assert!(n >= 3 && k >= 1 && 2 * k != n);
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(n + i, n + (i + k) % n);
    }
    g
}

/// Petersen graph in the usual labelling (outer 5-cycle, spokes, inner pentagram).
pub fn petersen() -> Graph {
    generalized_petersen(5, 2)
}

/// Heawood graph, LCF notation [5,-5]^7.
pub fn heawood() -> Graph {
    let mut g = cycle(14);
    for i in (0..14).step_by(2) {
        g.add_edge(i, (i + 5) % 14);
    }
    g
}

/// The d-dimensional hypercube.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut g = Graph::new(n);
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    g
}

/// Line graph; vertex `i` is the `i`-th edge of `g` in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<_> = g.edges().collect();
    let mut l = Graph::new(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                l.add_edge(i, j);
            }
        }
    }
    l
}

/// The tricorn: centre 9 joined to three spokes 0..3, each spoke joined to
/// two consecutive vertices of an outer hexagon.
pub fn tricorn() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 3), (0, 8), (0, 9), (1, 4), (1, 5), (1, 9), (2, 6), (2, 7), (2, 9), (3, 4),
            (3, 8), (4, 5), (5, 6), (6, 7), (7, 8),
        ],
    )
    .unwrap()
}

/// The other cubic girth-3 graph on 10 vertices without 4-cycles: centre 9,
/// three spokes, and an outer hexagon split into two triangles.
pub fn cage_3_3_b() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 5), (0, 6), (0, 9), (1, 7), (1, 8), (1, 9), (2, 3), (2, 4), (2, 9), (3, 5),
            (3, 7), (4, 6), (4, 8), (5, 7), (6, 8),
        ],
    )
    .unwrap()
}

/// The 4-regular girth-3 graph on 15 vertices without 4-cycles that is not
/// the line graph of the Petersen graph (three vertex orbits).
pub fn cage_4_3_b() -> Graph {
    Graph::from_edges(
        15,
        &[
            (0, 2), (0, 4), (0, 6), (0, 13), (1, 3), (1, 5), (1, 7), (1, 14), (2, 4), (2, 8),
            (2, 12), (3, 5), (3, 9), (3, 13), (4, 10), (4, 14), (5, 11), (5, 12), (6, 7),
            (6, 11), (6, 13), (7, 8), (7, 14), (8, 9), (8, 12), (9, 10), (9, 13), (10, 11),
            (10, 14), (11, 12),
        ],
    )
    .unwrap()
}

/// Campbell's 28-vertex cubic graph: girth 6, no 7-cycles, odd girth 11.
pub fn campbell() -> Graph {
    Graph::from_edges(
        28,
        &[
            (0, 1), (0, 2), (0, 25), (1, 3), (1, 24), (2, 5), (2, 9), (3, 4), (3, 8), (4, 5),
            (4, 11), (5, 6), (6, 7), (6, 27), (7, 8), (7, 26), (8, 9), (9, 10), (10, 11),
            (10, 27), (11, 26), (12, 13), (12, 14), (12, 26), (13, 15), (13, 27), (14, 17),
            (14, 21), (15, 16), (15, 20), (16, 17), (16, 23), (17, 18), (18, 19), (18, 25),
            (19, 20), (19, 24), (20, 21), (21, 22), (22, 23), (22, 25), (23, 24),
        ],
    )
    .unwrap()
}

/// The 36-vertex cubic graph of the drawing with a central 3x3 block
/// `a_0..a_8` and three 9-cycles whose vertices are attached to the `a`s by
/// colour. Cycle positions are listed as the `a` index they attach to.
pub fn cage_3_7_drawn() -> Graph {
    const CYCLES: [[usize; 9]; 3] = [
        [6, 0, 4, 8, 2, 3, 7, 1, 5],
        [7, 2, 4, 6, 1, 3, 8, 0, 5],
        [6, 3, 0, 7, 4, 1, 8, 5, 2],
    ];
    let mut g = Graph::new(36);
    for (c, cyc) in CYCLES.iter().enumerate() {
        let base = 9 + 9 * c;
        for (p, &hub) in cyc.iter().enumerate() {
            g.add_edge(base + p, base + (p + 1) % 9);
            g.add_edge(base + p, hub);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, has_cycle_of_length, odd_girth};

    #[test]
    fn sizes() {
        assert_eq!(petersen().size(), 15);
        assert_eq!(heawood().size(), 21);
        assert!(heawood().is_regular(3));
        assert_eq!(hypercube(3).size(), 12);
        let lp = line_graph(&petersen());
        assert_eq!((lp.order(), lp.size()), (15, 30));
        assert!(lp.is_regular(4));
    }

    #[test]
    fn figure_graphs_have_their_stated_properties() {
        for (g, k, gi) in [
            (tricorn(), 3, 3),
            (cage_3_3_b(), 3, 3),
            (cage_4_3_b(), 4, 3),
            (line_graph(&petersen()), 4, 3),
            (cage_3_7_drawn(), 3, 7),
            (campbell(), 3, 6),
        ] {
            assert!(g.is_regular(k));
            assert_eq!(girth(&g), Some(gi));
            assert!(!has_cycle_of_length(&g, gi + 1));
        }
        assert_eq!(odd_girth(&campbell()), Some(11));
        assert_eq!(campbell().order(), 28);
    }
}
