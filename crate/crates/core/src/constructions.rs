//! Excision: a girth-`h` graph with no `(h+1)`-cycle loses two adjacent
//! vertices of a shortest cycle and gains a matching between their other
//! neighbours, giving a girth-`(h-2)` graph with no `(h-1)`-cycle.

use rayon::prelude::*;

use crate::generator::is_valid_target;
use crate::graph::{cycles_of_length, girth, has_cycle_of_length, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("girth {0} is below 5; u and v could share a neighbour")]
    Domain(usize),
    #[error("input is not {0}-regular")]
    NotRegular(usize),
    #[error("input girth is {found:?}, expected {expected}")]
    Girth { expected: usize, found: Option<usize> },
    #[error("input has a cycle of length {0}")]
    LongerCycle(usize),
    #[error("invalid plan: {0}")]
    Plan(String),
    #[error("edge {0}-{1} is already present")]
    EdgeExists(usize, usize),
    #[error("result fails the target check for girth {0}")]
    Violation(usize),
}

/// Which cycle, which edge on it, and how the neighbours are matched:
/// `x[i]` is joined to `y[i]`. `x[0]` and `y[0]` are the cycle neighbours
/// of `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionPlan {
    pub cycle: Vec<usize>,
    pub u: usize,
    pub v: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

fn check_input(g: &Graph, k: usize, h: usize) -> Result<(), ConstructionError> {
    if h < 5 {
        return Err(ConstructionError::Domain(h));
    }
    if !g.is_regular(k) {
        return Err(ConstructionError::NotRegular(k));
    }
    let found = girth(g);
    if found != Some(h) {
        return Err(ConstructionError::Girth { expected: h, found });
    }
    if has_cycle_of_length(g, h + 1) {
        return Err(ConstructionError::LongerCycle(h + 1));
    }
    Ok(())
}

/// Plans for the edge `cycle[i] cycle[i+1]` with every matching of the
/// remaining neighbours (only the ascending one when `all_pairings` is off).
fn plans_on(g: &Graph, cycle: &[usize], i: usize, all_pairings: bool) -> Vec<ExcisionPlan> {
    let h = cycle.len();
    let (u, v) = (cycle[i], cycle[(i + 1) % h]);
    let (x1, y1) = (cycle[(i + h - 1) % h], cycle[(i + 2) % h]);
    let xs: Vec<usize> = g.neighbors(u).filter(|&w| w != v && w != x1).collect();
    let ys: Vec<usize> = g.neighbors(v).filter(|&w| w != u && w != y1).collect();
    let orders = if all_pairings {
        permutations(ys.len())
    } else {
        vec![(0..ys.len()).collect()]
    };
    orders
        .into_iter()
        .map(|p| {
            let mut x = vec![x1];
            x.extend(&xs);
            let mut y = vec![y1];
            y.extend(p.iter().map(|&j| ys[j]));
            ExcisionPlan {
                cycle: cycle.to_vec(),
                u,
                v,
                x,
                y,
            }
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Applies a plan and checks the result. Vertices above `u` and `v` shift
/// down to close the gap.
pub fn apply_plan(g: &Graph, k: usize, h: usize, plan: &ExcisionPlan) -> Result<Graph, ConstructionError> {
    let (u, v) = (plan.u, plan.v);
    if !g.has_edge(u, v) || plan.x.len() != plan.y.len() || plan.x.len() + 1 != k {
        return Err(ConstructionError::Plan(format!("{plan:?}")));
    }
    let shift = |w: usize| w - usize::from(w > u) - usize::from(w > v);
    let mut s = g.without_vertices(&[u, v]);
    for (&a, &b) in plan.x.iter().zip(&plan.y) {
        if !g.has_edge(u, a) || !g.has_edge(v, b) || a == v || b == u {
            return Err(ConstructionError::Plan(format!("{plan:?}")));
        }
        let (a, b) = (shift(a), shift(b));
        if a == b || !s.add_edge(a, b) {
            return Err(ConstructionError::EdgeExists(a, b));
        }
    }
    if !is_valid_target(&s, k, h - 2) {
        return Err(ConstructionError::Violation(h - 2));
    }
    Ok(s)
}

/// Default plan: least shortest cycle, its first edge, ascending matching.
pub fn default_plan(g: &Graph, k: usize, h: usize) -> Result<ExcisionPlan, ConstructionError> {
    check_input(g, k, h)?;
    let cycle = cycles_of_length(g, h).into_iter().next().expect("girth cycle exists");
    Ok(plans_on(g, &cycle, 0, false).remove(0))
}

/// A `(k, h-2)` graph with no `(h-1)`-cycle on two fewer vertices.
pub fn reduce_by_cycle(g: &Graph, k: usize, h: usize) -> Result<Graph, ConstructionError> {
    let plan = default_plan(g, k, h)?;
    apply_plan(g, k, h, &plan)
}

/// One plan and what it produced.
pub type PlanOutcome = (ExcisionPlan, Result<Graph, ConstructionError>);

/// Every plan over every shortest cycle and every edge on it, optionally
/// with every matching, together with its outcome.
pub fn reduce_all(
    g: &Graph,
    k: usize,
    h: usize,
    all_pairings: bool,
) -> Result<Vec<PlanOutcome>, ConstructionError> {
    check_input(g, k, h)?;
    let cycles = cycles_of_length(g, h);
    let jobs: Vec<(usize, usize)> = (0..cycles.len()).flat_map(|c| (0..h).map(move |i| (c, i))).collect();
    Ok(jobs
        .par_iter()
        .flat_map_iter(|&(c, i)| {
            plans_on(g, &cycles[c], i, all_pairings).into_iter().map(|p| {
                let r = apply_plan(g, k, h, &p);
                (p, r)
            })
        })
        .collect())
}
