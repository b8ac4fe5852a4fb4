//! Girth, odd girth, distances and fixed-length cycle queries.

use std::collections::VecDeque;

use super::{BitSet, Graph};

/// Result of a shortest-cycle query. `length == None` means no cycle exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleQuery {
    pub length: Option<usize>,
    /// Closed vertex sequence (first vertex not repeated) of a shortest cycle.
    pub witness: Option<Vec<usize>>,
}

/// BFS hop counts from `source`; `None` for unreachable vertices.
pub fn distances_from(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path length between `u` and `v`, or `None` if disconnected.
pub fn distance(g: &Graph, u: usize, v: usize) -> Option<usize> {
    assert!(u < g.order() && v < g.order());
    if u == v {
        return Some(0);
    }
    let mut dist = vec![usize::MAX; g.order()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for w in g.neighbors(x) {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                if w == v {
                    return Some(dist[w]);
                }
                queue.push_back(w);
            }
        }
    }
    None
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    shortest_cycle(g).length
}

/// Girth together with one shortest cycle.
///
/// Runs a BFS from every vertex and stops each search once no shorter cycle
/// can be closed from the current frontier.
pub fn shortest_cycle(g: &Graph) -> CycleQuery {
    let n = g.order();
    let mut best = usize::MAX;
    let mut best_root = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && parent[w] != u {
                    let len = dist[u] + dist[w] + 1;
                    if len < best {
                        best = len;
                        found = Some((u, w));
                        if 2 * dist[u] + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        if let Some((u, w)) = found {
            let climb = |mut x: usize| {
                let mut path = vec![x];
                while parent[x] != usize::MAX {
                    x = parent[x];
                    path.push(x);
                }
                path
            };
            // u -> root, then root -> w without repeating the root.
            let mut cycle = climb(u);
            let mut back = climb(w);
            back.pop();
            back.reverse();
            cycle.extend(back);
            best_root = Some(cycle);
        }
    }
    if best == usize::MAX {
        CycleQuery {
            length: None,
            witness: None,
        }
    } else {
        CycleQuery {
            length: Some(best),
            witness: best_root,
        }
    }
}

/// Length of a shortest odd cycle, `None` iff the graph is bipartite.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    best = best.min(2 * dist[u] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Whether the graph has a cycle on exactly `len` distinct vertices.
///
/// Each candidate cycle is rooted at its smallest vertex `s`; the DFS only
/// visits vertices above `s` and prunes paths that cannot return to `s` in
/// the remaining number of steps.
pub fn has_cycle_of_length(g: &Graph, len: usize) -> bool {
    assert!(len >= 3, "cycle length must be at least 3");
    let mut found = false;
    search_cycles(g, len, &mut |_| {
        found = true;
        false
    });
    found
}

/// Every cycle of length `len`, each listed once as a vertex sequence that
/// starts at its smallest vertex and whose second vertex is smaller than its
/// last. Output is sorted lexicographically.
pub fn cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    assert!(len >= 3, "cycle length must be at least 3");
    let mut out = Vec::new();
    search_cycles(g, len, &mut |path| {
        if path[1] < path[len - 1] {
            out.push(path.to_vec());
        }
        true
    });
    out.sort();
    out
}

/// Calls `visit` for every closed path of `len` distinct vertices rooted at
/// its minimum vertex (both orientations). Stops when `visit` returns false.
fn search_cycles(g: &Graph, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = g.order();
    if len > n {
        return;
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut on_path = BitSet::new(n);
    let mut path = Vec::with_capacity(len);
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        // Distances back to s inside the subgraph induced by vertices >= s.
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if w > s && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        on_path.clear();
        on_path.insert(s);
        path.clear();
        path.push(s);
        if !extend(g, len, s, &dist, &mut on_path, &mut path, visit) {
            return;
        }
    }
}

fn extend(
    g: &Graph,
    len: usize,
    s: usize,
    dist: &[usize],
    on_path: &mut BitSet,
    path: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let x = *path.last().unwrap();
    if path.len() == len {
        if g.has_edge(x, s) {
            return visit(path);
        }
        return true;
    }
    let remaining = len - path.len();
    for y in g.neighbors(x) {
        if y <= s || on_path.contains(y) {
            continue;
        }
        // From y, `remaining` edges must lead back to s.
        if dist[y] > remaining {
            continue;
        }
        on_path.insert(y);
        path.push(y);
        let go_on = extend(g, len, s, dist, on_path, path, visit);
        path.pop();
        on_path.remove(y);
        if !go_on {
            return false;
        }
    }
    true
}
