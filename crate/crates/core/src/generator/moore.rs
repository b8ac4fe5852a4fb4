use crate::bounds::{moore_bound, BoundsError};
use crate::graph::Graph;

/// Where a Moore tree is rooted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Root {
    Vertex(usize),
    Edge(usize, usize),
}

/// The radius-`floor((g-1)/2)` ball every girth-`g` graph contains, labelled
/// in breadth-first order from the root.
#[derive(Debug, Clone)]
pub struct MooreTree {
    pub graph: Graph,
    pub root: Root,
    /// Distance of each vertex from the root vertex or root edge.
    pub depth: Vec<usize>,
}

impl MooreTree {
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Deepest level; every vertex at this depth is a leaf.
    pub fn radius(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

/// Vertex-rooted for odd `g`, edge-rooted for even `g`.
pub fn build_moore_tree(k: usize, g: usize) -> Result<MooreTree, BoundsError> {
    let m = moore_bound(k as u64, g as u64)? as usize;
    let mut edges = Vec::with_capacity(m);
    let mut depth = Vec::with_capacity(m);
    // (vertex, children still to attach)
    let mut frontier: Vec<(usize, usize)>;
    let (root, radius) = if g % 2 == 1 {
        depth.push(0);
        frontier = vec![(0, k)];
        (Root::Vertex(0), (g - 1) / 2)
    } else {
        depth.extend([0, 0]);
        edges.push((0, 1));
        frontier = vec![(0, k - 1), (1, k - 1)];
        (Root::Edge(0, 1), g / 2 - 1)
    };
    for d in 1..=radius {
        let mut next = Vec::new();
        for (v, kids) in frontier {
            for _ in 0..kids {
                let c = depth.len();
                depth.push(d);
                edges.push((v, c));
                next.push((c, k - 1));
            }
        }
        frontier = next;
    }
    debug_assert_eq!(depth.len(), m);
    let graph = Graph::from_edges(m, &edges).expect("tree edges are valid");
    Ok(MooreTree { graph, root, depth })
}
