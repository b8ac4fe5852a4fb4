//! Canonical labelling, isomorphism testing and automorphism orbits.
//!
//! The canonizer is a textbook individualization-refinement search: refine
//! to an equitable partition, branch on a non-singleton cell, and keep the
//! leaf whose refinement trace and relabelled adjacency matrix are smallest.
//! Leaves that reproduce the first or the best matrix yield automorphisms,
//! which prune sibling branches lying in a common orbit.
//!
//! Cells whose vertices are pairwise twins (identical open or closed
//! neighbourhoods) are never branched on: every ordering of such a cell gives
//! the same matrix, and the transpositions are recorded as generators.

use std::cmp::Ordering;

use crate::graph::Graph;

mod dedup;
mod partition;

pub use dedup::{Claim, DedupError, DedupStore, DEFAULT_CAPACITY};
use partition::{refine, Partition, Scratch};

/// Deterministic byte encoding of an isomorphism class.
///
/// Layout: the order as 4 little-endian bytes, then the strict upper
/// triangle of the canonically relabelled adjacency matrix, row-major,
/// packed LSB-first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Box<[u8]>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        u32::from_le_bytes(self.0[..4].try_into().unwrap()) as usize
    }

    /// The canonical representative this form encodes.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n);
        let bits = &self.0[4..];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k / 8] >> (k % 8) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm(n={}, ", self.order())?;
        for b in &self.0[4..] {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Everything one canonizer run produces.
#[derive(Debug, Clone)]
pub struct Labelling {
    pub form: CanonicalForm,
    /// `canon[v]` is the canonical position of vertex `v`.
    pub canon: Vec<usize>,
    /// Automorphisms as images `gen[v]`; together they generate the full
    /// automorphism group of the (coloured) graph.
    pub generators: Vec<Vec<usize>>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    Canonizer::new(g, None).run().form
}

/// Canonical labelling with an optional initial vertex colouring; only
/// colour-preserving relabellings are considered.
pub fn canonical_labelling(g: &Graph, colours: Option<&[u32]>) -> Labelling {
    Canonizer::new(g, colours).run()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

/// Orbits of the automorphism group, each sorted, ordered by least element.
pub fn vertex_orbits(g: &Graph) -> Vec<Vec<usize>> {
    let lab = canonical_labelling(g, None);
    orbits_of(g.order(), &lab.generators)
}

/// Orbit partition of the group generated by `gens` on `0..n`.
pub fn orbits_of(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w);
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        by_root[uf.find(v)].push(v);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|o| !o.is_empty()).collect();
    out.sort();
    out
}

/// Order of the automorphism group, via the orbit-stabilizer chain.
///
/// Returns `None` if the order overflows `u128`.
pub fn automorphism_group_order(g: &Graph) -> Option<u128> {
    let mut colours = vec![0u32; g.order()];
    let mut order: u128 = 1;
    loop {
        let c = Canonizer::new(g, Some(&colours));
        let lab = c.run_labelling();
        let (part, twin_cells) = c.root_partition();
        // Base point: first non-singleton cell that is not a twin cell.
        let pick = part
            .cell_starts()
            .into_iter()
            .map(|s| s as usize)
            .find(|&s| part.end[s] as usize - s > 1 && !twin_cells.contains(&s));
        match pick {
            None => {
                for s in twin_cells {
                    let size = part.end[s] as usize - s;
                    for f in 2..=size as u128 {
                        order = order.checked_mul(f)?;
                    }
                }
                return Some(order);
            }
            Some(s) => {
                let v = part.lab[s] as usize;
                let orbits = orbits_of(g.order(), &lab.generators);
                let size = orbits.iter().find(|o| o.contains(&v)).unwrap().len();
                order = order.checked_mul(size as u128)?;
                let fresh = colours.iter().max().copied().unwrap_or(0) + 1;
                // Keep the colour classes ordered; the fresh value only marks v.
                colours[v] = fresh;
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

struct Leaf {
    lab: Vec<u32>,
    matrix: Vec<u64>,
}

struct Canonizer<'a> {
    g: &'a Graph,
    n: usize,
    words: usize,
    adj: Vec<Vec<u32>>,
    colours: Vec<u32>,
    first: Option<Leaf>,
    first_path: Vec<u32>,
    first_traces: Vec<Vec<u32>>,
    best: Option<Leaf>,
    best_traces: Vec<Vec<u32>>,
    path_traces: Vec<Vec<u32>>,
    path: Vec<u32>,
    generators: Vec<Vec<u32>>,
    scratch: Scratch,
}

impl<'a> Canonizer<'a> {
    fn new(g: &'a Graph, colours: Option<&[u32]>) -> Self {
        let n = g.order();
        let adj = (0..n)
            .map(|v| g.neighbors(v).map(|w| w as u32).collect())
            .collect();
        let colours = match colours {
            Some(c) => {
                assert_eq!(c.len(), n);
                c.to_vec()
            }
            None => vec![0; n],
        };
        Canonizer {
            g,
            n,
            words: n.div_ceil(64).max(1),
            adj,
            colours,
            first: None,
            first_path: Vec::new(),
            first_traces: Vec::new(),
            best: None,
            best_traces: Vec::new(),
            path_traces: Vec::new(),
            path: Vec::new(),
            generators: Vec::new(),
            scratch: Scratch::new(n),
        }
    }

    fn root_partition(&self) -> (Partition, Vec<usize>) {
        let mut sc = Scratch::new(self.n);
        let mut p = Partition::from_colours(&self.colours);
        let starts = p.cell_starts();
        let mut trace = Vec::new();
        refine(&self.adj, &mut p, &starts, &mut trace, &mut sc);
        let twins = p
            .cell_starts()
            .into_iter()
            .map(|s| s as usize)
            .filter(|&s| p.end[s] as usize - s > 1 && self.is_twin_cell(p.cell(s)))
            .collect();
        (p, twins)
    }

    fn run_labelling(&self) -> Labelling {
        Canonizer::new(self.g, Some(&self.colours)).run()
    }

    fn run(mut self) -> Labelling {
        let n = self.n;
        if n == 0 {
            return Labelling {
                form: CanonicalForm(vec![0, 0, 0, 0].into_boxed_slice()),
                canon: Vec::new(),
                generators: Vec::new(),
            };
        }
        let mut p = Partition::from_colours(&self.colours);
        let starts = p.cell_starts();
        let mut trace = Vec::new();
        refine(&self.adj, &mut p, &starts, &mut trace, &mut self.scratch);
        self.path_traces.push(trace);
        self.search(p, 0);
        let best = self.best.take().unwrap();
        let mut canon = vec![0; n];
        for (i, &v) in best.lab.iter().enumerate() {
            canon[v as usize] = i;
        }
        let form = self.encode(&best.matrix);
        Labelling {
            form,
            canon,
            generators: self
                .generators
                .into_iter()
                .map(|g| g.into_iter().map(|v| v as usize).collect())
                .collect(),
        }
    }

    fn encode(&self, matrix: &[u64]) -> CanonicalForm {
        let n = self.n;
        let mut bytes = Vec::with_capacity(4 + (n * n / 2).div_ceil(8));
        bytes.extend_from_slice(&(n as u32).to_le_bytes());
        let mut acc = 0u8;
        let mut k = 0;
        for i in 0..n {
            let row = &matrix[i * self.words..(i + 1) * self.words];
            for j in i + 1..n {
                acc |= ((row[j / 64] >> (j % 64) & 1) as u8) << (k % 8);
                k += 1;
                if k % 8 == 0 {
                    bytes.push(acc);
                    acc = 0;
                }
            }
        }
        if k % 8 != 0 {
            bytes.push(acc);
        }
        CanonicalForm(bytes.into_boxed_slice())
    }

    fn is_twin_cell(&self, cell: &[u32]) -> bool {
        let row = |v: u32| self.g.row(v as usize);
        let r0 = row(cell[0]);
        let open = cell[1..].iter().all(|&v| row(v) == r0);
        if open {
            return true;
        }
        // Closed twins: rows agree once each vertex's own bit is added.
        let closed = |v: u32| {
            let mut r = row(v).to_vec();
            r[v as usize / 64] |= 1 << (v % 64);
            r
        };
        let c0 = closed(cell[0]);
        cell[1..].iter().all(|&v| closed(v) == c0)
    }

    /// Target cell: first smallest non-singleton cell that is not a twin cell.
    fn target_cell(&self, p: &Partition) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < p.len() {
            let e = p.end[s] as usize;
            let size = e - s;
            if size > 1 && best.is_none_or(|(bs, _)| size < bs) && !self.is_twin_cell(p.cell(s)) {
                best = Some((size, s));
                if size == 2 {
                    break;
                }
            }
            s = e;
        }
        best.map(|(_, s)| s)
    }

    fn leaf_matrix(&self, p: &Partition) -> Vec<u64> {
        let mut m = vec![0u64; self.n * self.words];
        for (i, &v) in p.lab.iter().enumerate() {
            let row = &mut m[i * self.words..(i + 1) * self.words];
            for &w in &self.adj[v as usize] {
                let j = p.pos[w as usize] as usize;
                row[j / 64] |= 1 << (j % 64);
            }
        }
        m
    }

    /// Compares the current path prefix against the best leaf's traces. A
    /// prefix that extends the whole best sequence compares greater, so every
    /// leaf below it does too.
    fn compare_with_best_traces(&self, depth: usize) -> Ordering {
        for l in 0..=depth {
            match self.best_traces.get(l) {
                None => return Ordering::Greater,
                Some(b) => match self.path_traces[l].cmp(b) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        Ordering::Equal
    }

    fn record_automorphism(&mut self, from: &[u32], to: &[u32]) {
        let mut gamma = vec![0u32; self.n];
        for (a, b) in from.iter().zip(to) {
            gamma[*a as usize] = *b;
        }
        if gamma.iter().enumerate().any(|(i, &v)| i as u32 != v) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }

    fn add_twin_generators(&mut self, p: &Partition) {
        let mut s = 0;
        while s < p.len() {
            let e = p.end[s] as usize;
            for q in s..e.saturating_sub(1) {
                let mut gamma: Vec<u32> = (0..self.n as u32).collect();
                gamma.swap(p.lab[q] as usize, p.lab[q + 1] as usize);
                self.generators.push(gamma);
            }
            s = e;
        }
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn search(&mut self, p: Partition, level: usize) -> Option<usize> {
        let target = self.target_cell(&p);
        let Some(cell_start) = target else {
            return self.leaf(p, level);
        };
        let on_first = self.first.is_none()
            || (self.first_traces.len() > level && self.first_traces[..=level] == self.path_traces[..=level]);
        let mut children: Vec<u32> = p.cell(cell_start).to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        for &v in &children {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, level) {
                continue;
            }
            explored.push(v);
            let mut child = p.clone();
            let s = child.individualize(v);
            let mut trace = Vec::new();
            refine(&self.adj, &mut child, &[s as u32], &mut trace, &mut self.scratch);
            self.path_traces.truncate(level + 1);
            self.path_traces.push(trace);
            self.path.truncate(level);
            self.path.push(v);
            let matches_first = self.first.is_none()
                || (on_first && self.first_traces.get(level + 1) == Some(&self.path_traces[level + 1]));
            let vs_best = if self.best.is_none() {
                Ordering::Less
            } else {
                self.compare_with_best_traces(level + 1)
            };
            if !matches_first && vs_best == Ordering::Greater {
                continue;
            }
            if let Some(back) = self.search(child, level + 1) {
                if back < level {
                    return Some(back);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, v: u32, explored: &[u32], level: usize) -> bool {
        let fixed = &self.path[..level];
        let gens: Vec<Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| fixed.iter().all(|&x| g[x as usize] == x))
            .map(|g| g.iter().map(|&x| x as usize).collect())
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for g in &gens {
            for (a, &b) in g.iter().enumerate() {
                uf.union(a, b);
            }
        }
        let r = uf.find(v as usize);
        explored.iter().any(|&w| uf.find(w as usize) == r)
    }

    fn leaf(&mut self, p: Partition, level: usize) -> Option<usize> {
        let matrix = self.leaf_matrix(&p);
        if self.first.is_none() {
            self.add_twin_generators(&p);
            self.first_traces = self.path_traces.clone();
            self.first_path = self.path[..level].to_vec();
            self.best_traces = self.path_traces.clone();
            self.first = Some(Leaf {
                lab: p.lab.clone(),
                matrix: matrix.clone(),
            });
            self.best = Some(Leaf { lab: p.lab, matrix });
            return None;
        }
        let first = self.first.as_ref().unwrap();
        if self.first_traces[..] == self.path_traces[..=level] && first.matrix == matrix {
            let from = first.lab.clone();
            self.record_automorphism(&from, &p.lab);
            // Jump back to where this path left the first path.
            let first_path_len = self.first_traces.len() - 1;
            let common = (0..level.min(first_path_len))
                .take_while(|&l| self.first_path_vertex(l) == Some(self.path[l]))
                .count();
            return Some(common);
        }
        let cmp = self.path_traces[..=level]
            .cmp(&self.best_traces[..])
            .then_with(|| matrix.cmp(&self.best.as_ref().unwrap().matrix));
        match cmp {
            Ordering::Less => {
                self.best_traces = self.path_traces[..=level].to_vec();
                self.best = Some(Leaf { lab: p.lab, matrix });
            }
            Ordering::Equal => {
                let from = self.best.as_ref().unwrap().lab.clone();
                self.record_automorphism(&from, &p.lab);
            }
            Ordering::Greater => {}
        }
        None
    }

    fn first_path_vertex(&self, level: usize) -> Option<u32> {
        self.first_path.get(level).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        heap(n, &mut p, &mut out);
        out
    }

    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, p, out);
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
        heap(k - 1, p, out);
    }

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        a.order() == b.order()
            && a.size() == b.size()
            && permutations(a.order()).iter().any(|p| a.permuted(p) == *b)
    }

    fn brute_group_order(g: &Graph) -> u128 {
        permutations(g.order()).iter().filter(|p| g.permuted(p) == *g).count() as u128
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
        let mut g = Graph::new(n);
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(density) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    fn shuffled(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
        let mut p: Vec<usize> = (0..g.order()).collect();
        p.shuffle(rng);
        g.permuted(&p)
    }

    #[test]
    fn form_round_trips_to_isomorphic_graph() {
        let g = named::petersen();
        let f = canonical_form(&g);
        let h = f.to_graph();
        assert!(is_isomorphic(&g, &h));
        assert_eq!(canonical_form(&h), f);
        assert_eq!(f.order(), 10);
    }

    #[test]
    fn empty_and_trivial_graphs() {
        assert_eq!(canonical_form(&Graph::new(0)).order(), 0);
        assert_eq!(automorphism_group_order(&Graph::new(0)), Some(1));
        assert_eq!(automorphism_group_order(&Graph::new(1)), Some(1));
        assert_eq!(automorphism_group_order(&Graph::new(5)), Some(120));
        assert_eq!(automorphism_group_order(&named::complete(6)), Some(720));
    }

    #[test]
    fn labelling_realises_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 9, 0.4);
            let lab = canonical_labelling(&g, None);
            assert_eq!(g.permuted(&lab.canon), lab.form.to_graph());
            for gen in &lab.generators {
                assert_eq!(g.permuted(gen), g, "generator is not an automorphism");
            }
        }
    }

    #[test]
    fn cube_is_the_bipartite_double_of_k4() {
        let k4 = named::complete(4);
        let mut cover = Graph::new(8);
        for (u, v) in k4.edges() {
            cover.add_edge(u, v + 4);
            cover.add_edge(v, u + 4);
        }
        let q3 = named::hypercube(3);
        assert!(brute_isomorphic(&cover, &q3));
        assert!(is_isomorphic(&cover, &q3));
    }

    #[test]
    fn small_non_isomorphic_pairs() {
        assert!(!is_isomorphic(&named::cycle(5), &named::path(5)));
        let two_triangles = named::disjoint_union(&named::cycle(3), &named::cycle(3));
        assert!(!is_isomorphic(&named::cycle(6), &two_triangles));
        assert!(!is_isomorphic(&named::tricorn(), &named::cage_3_3_b()));
        // Same degree sequence, different graphs: the prism and K_{3,3}.
        let prism = named::generalized_petersen(3, 1);
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!is_isomorphic(&prism, &k33));
    }

    #[test]
    fn agrees_with_brute_force_on_random_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let d = rng.gen_range(0.1..0.9);
            let a = random_graph(&mut rng, n, d);
            let b = if rng.gen_bool(0.5) {
                shuffled(&mut rng, &a)
            } else {
                random_graph(&mut rng, n, d)
            };
            assert_eq!(is_isomorphic(&a, &b), brute_isomorphic(&a, &b), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn group_orders_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let d = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, d);
            assert_eq!(automorphism_group_order(&g), Some(brute_group_order(&g)), "{g:?}");
        }
    }

    #[test]
    fn known_group_orders() {
        assert_eq!(automorphism_group_order(&named::petersen()), Some(120));
        assert_eq!(automorphism_group_order(&named::heawood()), Some(336));
        assert_eq!(automorphism_group_order(&named::hypercube(4)), Some(384));
        assert_eq!(automorphism_group_order(&named::cycle(12)), Some(24));
        assert_eq!(automorphism_group_order(&named::line_graph(&named::petersen())), Some(120));
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(vertex_orbits(&named::line_graph(&named::petersen())).len(), 1);
        assert_eq!(vertex_orbits(&named::cycle(5)).len(), 1);
        assert_eq!(vertex_orbits(&named::path(5)).len(), 3);
        assert_eq!(vertex_orbits(&named::tricorn()).len(), 3);
    }

    #[test]
    fn relabelled_cages_share_a_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for g in [named::cage_3_7_drawn(), named::campbell(), named::heawood()] {
            let f = canonical_form(&g);
            for _ in 0..100 {
                assert_eq!(canonical_form(&shuffled(&mut rng, &g)), f);
            }
        }
    }

    proptest! {
        #[test]
        fn form_is_relabelling_invariant(n in 1usize..=24, seed in any::<u64>(), density in 0.05f64..0.95) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, density);
            let h = shuffled(&mut rng, &g);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            prop_assert_eq!(automorphism_group_order(&g), automorphism_group_order(&h));
        }

        #[test]
        fn regular_graphs_are_relabelling_invariant(half in 4usize..=14, seed in any::<u64>()) {
            // Random cubic-ish graphs via union of a cycle and a random matching.
            let n = 2 * half;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = named::cycle(n);
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            for c in p.chunks(2) {
                if !g.has_edge(c[0], c[1]) {
                    g.add_edge(c[0], c[1]);
                }
            }
            let h = shuffled(&mut rng, &g);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        }
    }
}
