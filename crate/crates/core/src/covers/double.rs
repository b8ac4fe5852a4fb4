//! Canonical double covers and the cover-based target check.

use std::collections::VecDeque;

use crate::generator::is_valid_target;
use crate::graph::{girth, Graph};

/// Bipartite double: `(u, b)` has index `u + b*n`, and every edge `uv`
/// becomes `(u,0)(v,1)` and `(u,1)(v,0)`.
pub fn canonical_double_cover(g: &Graph) -> Graph {
    let n = g.order();
    let mut c = Graph::new(2 * n);
    for (u, v) in g.edges() {
        c.add_edge(u, v + n);
        c.add_edge(u + n, v);
    }
    c
}

/// Odd girth read off the cover: the shortest odd closed walk through `v`
/// is the distance from `(v,0)` to `(v,1)`. `None` for bipartite graphs.
pub fn odd_girth_via_cover(g: &Graph) -> Option<usize> {
    let n = g.order();
    let c = canonical_double_cover(g);
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; 2 * n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[v] = 0;
        queue.clear();
        queue.push_back(v);
        'bfs: while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| dist[x] + 1 >= b) {
                break;
            }
            for w in c.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    if w == v + n {
                        best = Some(best.map_or(dist[w], |b| b.min(dist[w])));
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    best
}

/// Second, independent check of the target property, using only BFS on the
/// canonical double cover. The cover's girth is the minimum of the shortest
/// even cycle and twice the odd girth.
pub fn is_valid_target_via_cover(g: &Graph, k: usize, girth_g: usize) -> bool {
    if girth_g < 3 || !g.is_regular(k) {
        return false;
    }
    let odd = odd_girth_via_cover(g);
    let cover_girth = girth(&canonical_double_cover(g));
    if girth_g % 2 == 1 {
        // Odd girth is g, and every even cycle is longer than g + 1.
        odd == Some(girth_g) && cover_girth.is_none_or(|c| c >= girth_g + 3)
    } else {
        odd.is_none_or(|o| o >= girth_g + 3) && cover_girth == Some(girth_g)
    }
}

/// Disagreement between the two target verifiers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("verifiers disagree (backtracking {direct}, double cover {cover})")]
pub struct VerifierMismatch {
    pub direct: bool,
    pub cover: bool,
}

/// Runs both verifiers and insists that they agree.
pub fn verify_target(g: &Graph, k: usize, girth_g: usize) -> Result<bool, VerifierMismatch> {
    let direct = is_valid_target(g, k, girth_g);
    let cover = is_valid_target_via_cover(g, k, girth_g);
    if direct == cover {
        Ok(direct)
    } else {
        Err(VerifierMismatch { direct, cover })
    }
}
