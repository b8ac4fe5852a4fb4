//! Smallest regular lifts of K_{1,3} with a loop at each leaf.
//!
//! Star darts carry the identity (any voltage assignment is equivalent to
//! one that is trivial on a spanning tree). The three loops are symmetric
//! under permuting the leaves, so only sorted triples are tried.

use rayon::prelude::*;

use crate::generator::is_valid_target;

use super::group::Group;
use super::voltage::{DartGraph, VoltageAssignment};

/// A successful loop-voltage triple over a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitness {
    pub group: String,
    pub loops: [u32; 3],
}

#[derive(Debug, Clone, Default)]
pub struct LiftSearchResult {
    /// Smallest lift order found; `None` if no group succeeded.
    pub order: Option<usize>,
    /// Every witness of that order, by group position then triple.
    pub witnesses: Vec<LiftWitness>,
    pub groups_tried: usize,
    pub triples_tried: u64,
}

/// Base graph with the star and the first `loops` loops.
fn partial_base(loops: usize) -> DartGraph {
    let full = DartGraph::k13_loop();
    let forward: Vec<usize> = (0..3 + loops).map(|e| 2 * e).collect();
    full.sub_edges(&forward)
}

/// No cycle shorter than `g` and none of length `g + 1` in the lift of the
/// partial assignment. Cycles of a partial lift survive in the full lift,
/// so failing here rules out every completion.
fn partial_ok(bases: &[DartGraph], group: &Group, loops: &[u32], g: usize) -> bool {
    let mut per_edge = vec![0; 3];
    per_edge.extend_from_slice(loops);
    let a = VoltageAssignment::from_edges(bases[loops.len() - 1].clone(), group.clone(), &per_edge)
        .expect("voltages are group elements");
    let c = a.lift_cycle_check(g + 1);
    !c[3..g].iter().any(|&x| x) && !c[g + 1]
}

/// Triples over one group whose lift is a (3,g,g+1̄)-graph.
pub fn search_group(group: &Group, g: usize) -> (Vec<[u32; 3]>, u64) {
    let bases: Vec<DartGraph> = (1..=3).map(partial_base).collect();
    let m = group.order() as u32;
    // An involution on a loop leaves its leaf copies with degree 2.
    let usable: Vec<u32> = (1..m).filter(|&a| group.element_order(a) > 2).collect();
    let first: Vec<u32> = usable
        .iter()
        .copied()
        .filter(|&a| partial_ok(&bases, group, &[a], g))
        .collect();
    let results: Vec<(Vec<[u32; 3]>, u64)> = first
        .par_iter()
        .map(|&a| {
            let mut found = Vec::new();
            let mut tried = 0;
            for &b in usable.iter().filter(|&&b| b >= a) {
                if !partial_ok(&bases, group, &[a, b], g) {
                    continue;
                }
                for &c in usable.iter().filter(|&&c| c >= b) {
                    tried += 1;
                    let full = VoltageAssignment::k13_loop(group.clone(), [a, b, c])
                        .expect("voltages are group elements");
                    let cyc = full.lift_cycle_check(g + 1);
                    if !cyc[g] || cyc[3..g].iter().any(|&x| x) || cyc[g + 1] {
                        continue;
                    }
                    let lift = full.lift().expect("non-identity loops on a tree base");
                    assert!(
                        is_valid_target(&lift, 3, g),
                        "walk check accepted an invalid lift for {a},{b},{c}"
                    );
                    found.push([a, b, c]);
                }
            }
            (found, tried)
        })
        .collect();
    let mut found = Vec::new();
    let mut tried = 0;
    for (f, t) in results {
        found.extend(f);
        tried += t;
    }
    (found, tried)
}

/// Searches `groups` in the given order (expected nondecreasing) and stops
/// after the first order at which some group succeeds. Groups larger than
/// `max_group_order` are skipped.
pub fn search_k13loop_lifts(g: usize, groups: &[Group], max_group_order: usize) -> LiftSearchResult {
    assert!(g >= 3, "girth must be at least 3");
    let mut out = LiftSearchResult::default();
    for group in groups {
        if group.order() > max_group_order {
            continue;
        }
        if let Some(o) = out.order {
            if 4 * group.order() > o {
                break;
            }
        }
        out.groups_tried += 1;
        let (found, tried) = search_group(group, g);
        out.triples_tried += tried;
        if !found.is_empty() {
            out.order = Some(4 * group.order());
            out.witnesses.extend(found.into_iter().map(|loops| LiftWitness {
                group: group.name().to_string(),
                loops,
            }));
        }
    }
    out
}

/// Whether two loop triples over `Z_m` give the same lift by an obvious
/// symmetry: a unit multiple, inverting individual loops, permuting leaves.
pub fn cyclic_triples_equivalent(m: u32, x: [u32; 3], y: [u32; 3]) -> bool {
    let norm = |t: [u32; 3], u: u32| {
        let mut v: Vec<u32> = t
            .iter()
            .map(|&a| {
                let b = a * u % m;
                b.min((m - b) % m)
            })
            .collect();
        v.sort_unstable();
        v
    };
    let target = norm(y, 1);
    (1..m).filter(|&u| gcd(u, m) == 1).any(|u| norm(x, u) == target)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
