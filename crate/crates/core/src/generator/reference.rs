//! A deliberately simple enumerator used to cross-check [`generate_all`].
//!
//! It builds every k-regular graph on `n` vertices by completing the lowest
//! vertex of degree below `k` first, with no cycle constraints at all, and
//! filters the results through [`is_valid_target`] at the end. Partial
//! graphs are merged by isomorphism: the k-regular supergraphs of a partial
//! graph depend only on its isomorphism class, so this loses nothing.
//!
//! [`generate_all`]: super::generate_all

use std::collections::{BTreeMap, HashSet};

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;

use super::is_valid_target;

/// One representative per isomorphism class of k-regular graphs on `n`
/// vertices, keyed by canonical form.
pub fn all_regular(n: usize, k: usize) -> BTreeMap<CanonicalForm, Graph> {
    let mut out = BTreeMap::new();
    if n * k % 2 == 1 || k >= n {
        return out;
    }
    let mut seen = HashSet::new();
    extend(Graph::new(n), k, &mut seen, &mut out);
    out
}

/// The k-regular graphs on `n` vertices that pass [`is_valid_target`].
pub fn all_targets(n: usize, k: usize, g: usize) -> Vec<Graph> {
    all_regular(n, k)
        .into_iter()
        .filter(|(_, h)| is_valid_target(h, k, g))
        .map(|(f, _)| f.to_graph())
        .collect()
}

fn extend(g: Graph, k: usize, seen: &mut HashSet<CanonicalForm>, out: &mut BTreeMap<CanonicalForm, Graph>) {
    let n = g.order();
    let Some(u) = (0..n).find(|&v| g.degree(v) < k) else {
        let f = canonical_form(&g);
        out.entry(f).or_insert(g);
        return;
    };
    let mut tried_isolated = false;
    for w in u + 1..n {
        if g.has_edge(u, w) || g.degree(w) >= k {
            continue;
        }
        // Degree-zero vertices are interchangeable; try one of them.
        if g.degree(w) == 0 {
            if tried_isolated {
                continue;
            }
            tried_isolated = true;
        }
        let mut h = g.clone();
        h.add_edge(u, w);
        if seen.insert(canonical_form(&h)) {
            extend(h, k, seen, out);
        }
    }
}
