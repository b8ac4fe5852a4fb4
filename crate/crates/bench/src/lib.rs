//! Shared inputs for the benchmarks.

use kgcage::covers::{Group, VoltageAssignment};
use kgcage::graph::named;
use kgcage::Graph;

/// Table rows that finish in well under a second: `(n, k, g)`.
pub const FAST_ROWS: [(usize, usize, usize); 4] = [(10, 3, 3), (15, 4, 3), (18, 3, 5), (36, 3, 7)];

/// Graphs of growing size with large automorphism groups.
pub fn symmetric_graphs() -> Vec<(&'static str, Graph)> {
    let z19 = VoltageAssignment::k13_loop(Group::cyclic(19).unwrap(), [1, 7, 8])
        .unwrap()
        .lift()
        .unwrap();
    vec![
        ("petersen", named::petersen()),
        ("heawood", named::heawood()),
        ("line_petersen", named::line_graph(&named::petersen())),
        ("campbell", named::campbell()),
        ("cage_3_7", named::cage_3_7_drawn()),
        ("hypercube_6", named::hypercube(6)),
        ("z19_lift", z19),
    ]
}

/// `g` under a fixed pseudo-random relabelling.
pub fn shuffled(g: &Graph, seed: u64) -> Graph {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    // Small LCG; the benches only need a fixed scramble.
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    g.permuted(&perm)
}
