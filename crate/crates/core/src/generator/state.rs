use crate::graph::{iter_bits, BitSet, Graph};

use super::moore::MooreTree;

/// One frame of the search: a partial graph plus, for every vertex, the
/// partners it may still be joined to.
///
/// `eligible` is symmetric. A pair is present only if both ends have degree
/// below `k`, they are not adjacent, their distance is at least `g-1`, no
/// path of length exactly `g` joins them, and the pair has not been ruled
/// out by an earlier "skip" branch. Vertices of degree zero are kept
/// interchangeable: any skip that touches one of them touches all of them.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub graph: Graph,
    pub k: usize,
    pub g: usize,
    pub degree: Vec<usize>,
    pub eligible: Vec<BitSet>,
    pub isolated: BitSet,
    pub edges: usize,
}

impl SearchState {
    /// The Moore tree on the first vertices, the rest isolated.
    pub fn initial(tree: &MooreTree, n: usize, k: usize, g: usize) -> Self {
        assert!(n >= tree.order());
        let mut graph = Graph::new(n);
        for (u, v) in tree.graph.edges() {
            graph.add_edge(u, v);
        }
        Self::from_graph(graph, k, g)
    }

    /// State for an arbitrary partial graph with eligibility computed from
    /// scratch. Panics if some degree exceeds `k`.
    pub fn from_graph(graph: Graph, k: usize, g: usize) -> Self {
        let n = graph.order();
        let degree = graph.degrees();
        assert!(degree.iter().all(|&d| d <= k), "degree above k");
        let mut isolated = BitSet::new(n);
        for v in (0..n).filter(|&v| degree[v] == 0) {
            isolated.insert(v);
        }
        let edges = graph.size();
        let mut s = SearchState {
            graph,
            k,
            g,
            degree,
            eligible: Vec::new(),
            isolated,
            edges,
        };
        s.eligible = full_eligible(&s.graph, k, g);
        s
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_complete(&self) -> bool {
        self.degree.iter().all(|&d| d == self.k)
    }

    /// Some vertex can no longer reach degree `k`.
    pub fn is_dead(&self) -> bool {
        (0..self.order()).any(|v| self.degree[v] < self.k && self.degree[v] + self.eligible[v].len() < self.k)
    }

    /// Eligible partners of `v`, counting all isolated partners as one since
    /// they are interchangeable.
    pub fn effective_count(&self, v: usize) -> usize {
        let row = self.eligible[v].words();
        let iso = self.isolated.words();
        let mut outside = 0;
        let mut any_iso = false;
        for (r, i) in row.iter().zip(iso) {
            outside += (r & !i).count_ones() as usize;
            any_iso |= r & i != 0;
        }
        outside + any_iso as usize
    }

    /// The vertex of degree below `k` with the fewest effective partners
    /// (lowest index on ties), and its smallest eligible partner.
    pub fn branch_pair(&self) -> Option<(usize, usize)> {
        let u = (0..self.order())
            .filter(|&v| self.degree[v] < self.k)
            .min_by_key(|&v| (self.effective_count(v), v))?;
        let w = self.eligible[u].first()?;
        Some((u, w))
    }

    /// Adds `uv` and shrinks eligibility to match.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(self.eligible[u].contains(v));
        self.graph.add_edge(u, v);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edges += 1;
        self.isolated.remove(u);
        self.isolated.remove(v);
        self.unlink(u, v);
        for x in [u, v] {
            if self.degree[x] == self.k {
                self.clear_row(x);
            }
        }
        // Any pair newly at distance < g-1 or newly joined by a g-path has an
        // endpoint within g-1 of u or v.
        let near = ball_of_two(&self.graph, u, v, self.g - 1);
        let mut scratch = Forbidden::new(self.order());
        for x in near.iter() {
            if self.degree[x] >= self.k || self.eligible[x].is_empty() {
                continue;
            }
            scratch.compute(&self.graph, x, self.g);
            let hits: Vec<usize> = iter_bits(scratch.set.words())
                .filter(|&y| self.eligible[x].contains(y))
                .collect();
            for y in hits {
                self.unlink(x, y);
            }
        }
    }

    /// Rules out `uv` for the rest of this subtree. If an end is isolated,
    /// the same is done for every isolated vertex in its place.
    pub fn skip_edge(&mut self, u: usize, v: usize) {
        let side = |x: usize| -> Vec<usize> {
            if self.isolated.contains(x) {
                self.isolated.iter().collect()
            } else {
                vec![x]
            }
        };
        let (a, b) = (side(u), side(v));
        for &x in &a {
            for &y in &b {
                if x != y {
                    self.unlink(x, y);
                }
            }
        }
    }

    fn unlink(&mut self, x: usize, y: usize) {
        self.eligible[x].remove(y);
        self.eligible[y].remove(x);
    }

    fn clear_row(&mut self, x: usize) {
        let partners: Vec<usize> = self.eligible[x].iter().collect();
        for y in partners {
            self.eligible[y].remove(x);
        }
        self.eligible[x].clear();
    }
}

/// Vertices within distance `r` of `a` or `b`.
fn ball_of_two(g: &Graph, a: usize, b: usize, r: usize) -> BitSet {
    let n = g.order();
    let mut seen = BitSet::new(n);
    seen.insert(a);
    seen.insert(b);
    let mut layer = vec![a, b];
    for _ in 0..r {
        let mut next = Vec::new();
        for &x in &layer {
            for y in g.neighbors(x) {
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    seen
}

/// Partners `x` may never be joined to: the ball of radius `g-2` around it
/// and the far ends of its simple paths of length exactly `g`.
pub(crate) struct Forbidden {
    pub set: BitSet,
    on_path: BitSet,
    dist: Vec<usize>,
    queue: Vec<usize>,
}

impl Forbidden {
    pub fn new(n: usize) -> Self {
        Forbidden {
            set: BitSet::new(n),
            on_path: BitSet::new(n),
            dist: vec![usize::MAX; n],
            queue: Vec::with_capacity(n),
        }
    }

    pub fn compute(&mut self, graph: &Graph, x: usize, g: usize) {
        self.set.clear();
        // Ball of radius g-2.
        self.queue.clear();
        self.queue.push(x);
        self.dist[x] = 0;
        self.set.insert(x);
        let mut head = 0;
        while head < self.queue.len() {
            let y = self.queue[head];
            head += 1;
            if self.dist[y] + 3 > g {
                continue;
            }
            for z in graph.neighbors(y) {
                if self.dist[z] == usize::MAX {
                    self.dist[z] = self.dist[y] + 1;
                    self.set.insert(z);
                    self.queue.push(z);
                }
            }
        }
        for &y in &self.queue {
            self.dist[y] = usize::MAX;
        }
        self.on_path.insert(x);
        self.paths(graph, x, g);
        self.on_path.remove(x);
    }

    fn paths(&mut self, graph: &Graph, y: usize, left: usize) {
        if left == 0 {
            self.set.insert(y);
            return;
        }
        let row = graph.row(y);
        for (i, &w) in row.iter().enumerate() {
            let mut w = w & !self.on_path.words()[i];
            while w != 0 {
                let z = i * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                self.on_path.insert(z);
                self.paths(graph, z, left - 1);
                self.on_path.remove(z);
            }
        }
    }
}

/// The full eligibility relation of a partial graph, from scratch.
pub(crate) fn full_eligible(graph: &Graph, k: usize, g: usize) -> Vec<BitSet> {
    let n = graph.order();
    let deg = graph.degrees();
    let mut open = BitSet::new(n);
    for v in (0..n).filter(|&v| deg[v] < k) {
        open.insert(v);
    }
    let mut f = Forbidden::new(n);
    (0..n)
        .map(|x| {
            let mut row = BitSet::new(n);
            if deg[x] < k {
                row.union_with(open.words());
                f.compute(graph, x, g);
                row.subtract(f.set.words());
            }
            row
        })
        .collect()
}

/// The eligible pairs of `state`, reported with the isolated-vertex
/// symmetry applied: a partner of degree zero is listed only if it is the
/// least such partner.
pub fn compute_eligible(state: &SearchState) -> Vec<BitSet> {
    let n = state.order();
    (0..n)
        .map(|u| {
            let mut row = state.eligible[u].clone();
            let mut first_iso = true;
            for w in state.eligible[u].iter() {
                if state.isolated.contains(w) {
                    if !first_iso {
                        row.remove(w);
                    }
                    first_iso = false;
                }
            }
            row
        })
        .collect()
}
