//! Exhaustive generation of k-regular graphs of girth exactly g with no
//! (g+1)-cycle.
//!
//! Every such graph contains the Moore tree, so the search starts from the
//! tree plus isolated vertices and adds one edge at a time. At each node the
//! vertex with the fewest eligible partners is chosen and its smallest
//! eligible pair is either added or ruled out. Isomorphic partial graphs are
//! explored once.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::bounds::{moore_bound, refined_lower_bound};
use crate::canon::{canonical_form, CanonicalForm, Claim, DedupError, DedupStore, DEFAULT_CAPACITY};
use crate::graph::{girth, has_cycle_of_length, Graph};

mod moore;
pub mod reference;
mod state;

pub use moore::{build_moore_tree, MooreTree, Root};
pub use state::{compute_eligible, SearchState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("degree must be at least 3 and girth at least 3, got k={k}, g={g}")]
    Domain { k: usize, g: usize },
    #[error("order {0} is too large")]
    TooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct GenerateOptions {
    /// Worker threads; 1 runs the plain sequential search.
    pub workers: usize,
    pub dedup: bool,
    pub dedup_capacity: usize,
    /// Depth at which the search tree is cut into parallel tasks.
    pub split_depth: usize,
    /// Return at once when `n` is below the known lower bound.
    pub check_lower_bound: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            workers: 1,
            dedup: true,
            dedup_capacity: DEFAULT_CAPACITY,
            split_depth: 12,
            check_lower_bound: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerateStats {
    pub nodes: u64,
    pub dedup_hits: u64,
    pub emitted: usize,
    /// The dedup store filled up and the rest of the run went without it.
    pub dedup_overflowed: bool,
    /// Why the search did not run, if it did not.
    pub skipped: Option<String>,
}

/// k-regular, girth exactly `g`, and no cycle of length `g+1`.
pub fn is_valid_target(g: &Graph, k: usize, girth_g: usize) -> bool {
    g.is_regular(k) && girth(g) == Some(girth_g) && !has_cycle_of_length(g, girth_g + 1)
}

/// All graphs on `n` vertices, one per isomorphism class, sorted by
/// canonical form. Each is passed to `emit` in that order; the count is
/// returned.
pub fn generate_all<F: FnMut(&Graph)>(
    n: usize,
    k: usize,
    g: usize,
    opts: &GenerateOptions,
    mut emit: F,
) -> Result<(usize, GenerateStats), GenerateError> {
    let (found, stats) = generate_forms(n, k, g, opts)?;
    for form in found.keys() {
        emit(&form.to_graph());
    }
    Ok((found.len(), stats))
}

/// Like [`generate_all`] but returns the graphs.
pub fn generate_vec(n: usize, k: usize, g: usize, opts: &GenerateOptions) -> Result<(Vec<Graph>, GenerateStats), GenerateError> {
    let mut out = Vec::new();
    let (_, stats) = generate_all(n, k, g, opts, |h| out.push(h.clone()))?;
    Ok((out, stats))
}

fn generate_forms(
    n: usize,
    k: usize,
    g: usize,
    opts: &GenerateOptions,
) -> Result<(BTreeMap<CanonicalForm, ()>, GenerateStats), GenerateError> {
    if k < 3 || g < 3 {
        return Err(GenerateError::Domain { k, g });
    }
    if n > crate::graph::MAX_ORDER {
        return Err(GenerateError::TooLarge(n));
    }
    let mut stats = GenerateStats::default();
    let skip = |why: String, mut stats: GenerateStats| {
        log::warn!("{why}");
        stats.skipped = Some(why);
        Ok((BTreeMap::new(), stats))
    };
    if n * k % 2 == 1 {
        return skip(format!("n*k = {} is odd: no {k}-regular graph on {n} vertices", n * k), stats);
    }
    let moore = moore_bound(k as u64, g as u64).map_err(|_| GenerateError::Domain { k, g })? as usize;
    if n < moore {
        return skip(format!("n = {n} is below the Moore bound {moore}"), stats);
    }
    if opts.check_lower_bound {
        let lb = refined_lower_bound(k as u64, g as u64).map_err(|_| GenerateError::Domain { k, g })?;
        if (n as u128) < lb.parity_adjusted_final {
            return skip(
                format!("n = {n} is below the lower bound {}", lb.parity_adjusted_final),
                stats,
            );
        }
    }
    let tree = build_moore_tree(k, g).map_err(|_| GenerateError::Domain { k, g })?;
    let root = SearchState::initial(&tree, n, k, g);
    let shared = Shared {
        store: DedupStore::with_capacity(opts.dedup_capacity),
        dedup: AtomicBool::new(opts.dedup),
        overflowed: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        hits: AtomicU64::new(0),
        found: Mutex::new(BTreeMap::new()),
    };
    if opts.workers <= 1 {
        let mut w = Worker::new(&shared, 0);
        w.run(root);
        w.flush();
    } else {
        let mut tasks = Vec::new();
        let mut w = Worker::new(&shared, 0);
        w.split(root, 0, opts.split_depth, &mut tasks);
        w.flush();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            tasks.into_par_iter().enumerate().for_each(|(i, t)| {
                let mut w = Worker::new(&shared, 2 * i as u64 + 1);
                w.run(t);
                w.flush();
            })
        });
    }
    stats.nodes = shared.nodes.load(Ordering::Relaxed);
    stats.dedup_hits = shared.hits.load(Ordering::Relaxed);
    stats.dedup_overflowed = shared.overflowed.load(Ordering::Relaxed);
    let found = shared.found.into_inner().unwrap();
    stats.emitted = found.len();
    Ok((found, stats))
}

struct Shared {
    store: DedupStore,
    dedup: AtomicBool,
    overflowed: AtomicBool,
    nodes: AtomicU64,
    hits: AtomicU64,
    found: Mutex<BTreeMap<CanonicalForm, ()>>,
}

/// Search over one subtree. Dedup claims carry `rank`: a state is pruned
/// only by an isomorphic state that comes no later in the sequential
/// search order, which keeps parallel runs exhaustive.
struct Worker<'a> {
    shared: &'a Shared,
    rank: u64,
    nodes: u64,
    hits: u64,
    found: Vec<CanonicalForm>,
}

impl<'a> Worker<'a> {
    fn new(shared: &'a Shared, rank: u64) -> Self {
        Worker {
            shared,
            rank,
            nodes: 0,
            hits: 0,
            found: Vec::new(),
        }
    }

    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.nodes, Ordering::Relaxed);
        self.shared.hits.fetch_add(self.hits, Ordering::Relaxed);
        let mut f = self.shared.found.lock().unwrap();
        for form in self.found.drain(..) {
            f.insert(form, ());
        }
        self.nodes = 0;
        self.hits = 0;
    }

    /// False if an isomorphic state already owns this one.
    fn claim(&mut self, s: &SearchState) -> bool {
        if !self.shared.dedup.load(Ordering::Relaxed) {
            return true;
        }
        let form = canonical_form(&s.graph);
        match self.shared.store.claim(&form, self.rank) {
            Ok(Claim::Fresh) => true,
            Ok(Claim::Seen) => {
                self.hits += 1;
                false
            }
            Err(DedupError::Full(cap)) => {
                if !self.shared.overflowed.swap(true, Ordering::Relaxed) {
                    log::warn!("dedup store reached {cap} forms; continuing without isomorphism pruning");
                }
                self.shared.dedup.store(false, Ordering::Relaxed);
                true
            }
        }
    }

    fn accept(&mut self, s: &SearchState) {
        if is_valid_target(&s.graph, s.k, s.g) {
            self.found.push(canonical_form(&s.graph));
        }
    }

    fn run(&mut self, mut s: SearchState) {
        loop {
            self.nodes += 1;
            if s.is_complete() {
                self.accept(&s);
                return;
            }
            if s.is_dead() {
                return;
            }
            let Some((u, w)) = s.branch_pair() else {
                return;
            };
            let fresh = s.isolated.contains(u) || s.isolated.contains(w);
            let mut child = s.clone();
            child.add_edge(u, w);
            if fresh || self.claim(&child) {
                self.run(child);
            }
            s.skip_edge(u, w);
        }
    }

    /// Sequential search down to `depth` levels of add/skip branching; the
    /// states reached there become tasks, numbered in search order. Claims
    /// made here rank just before the next task.
    fn split(&mut self, mut s: SearchState, level: usize, depth: usize, tasks: &mut Vec<SearchState>) {
        if level == depth {
            tasks.push(s);
            return;
        }
        self.nodes += 1;
        if s.is_complete() {
            self.accept(&s);
            return;
        }
        if s.is_dead() {
            return;
        }
        let Some((u, w)) = s.branch_pair() else {
            return;
        };
        let fresh = s.isolated.contains(u) || s.isolated.contains(w);
        let mut child = s.clone();
        child.add_edge(u, w);
        self.rank = 2 * tasks.len() as u64;
        if fresh || self.claim(&child) {
            self.split(child, level + 1, depth, tasks);
        }
        s.skip_edge(u, w);
        self.split(s, level + 1, depth, tasks);
    }
}
