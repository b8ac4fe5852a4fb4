//! Dart graphs, voltage assignments and their regular lifts.

use std::collections::VecDeque;

use crate::graph::Graph;

use super::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VoltageError {
    #[error("voltage list has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("voltage {value} is not an element of a group of order {order}")]
    NotAnElement { value: u32, order: usize },
    #[error("dart {dart}: voltage of the inverse dart is not the inverse")]
    InverseMismatch { dart: usize },
    #[error("loop dart {dart} carries the identity; its lift would have loops")]
    IdentityLoop { dart: usize },
    #[error("lift has a repeated edge between {0} and {1}")]
    MultiEdge(usize, usize),
    #[error("darts {at} and {next} are not consecutive")]
    NotAWalk { at: usize, next: usize },
    #[error("base graph is not connected")]
    Disconnected,
}

/// A multigraph given by its darts. Dart `2i` and `2i+1` are the two
/// orientations of edge `i`; a loop contributes two darts on one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartGraph {
    vertices: usize,
    ends: Vec<(usize, usize)>,
}

impl DartGraph {
    pub fn new(vertices: usize) -> Self {
        DartGraph {
            vertices,
            ends: Vec::new(),
        }
    }

    /// Adds an edge and returns its forward dart `u -> v`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.vertices && v < self.vertices);
        let d = self.ends.len();
        self.ends.push((u, v));
        self.ends.push((v, u));
        d
    }

    /// K_{1,3} with a loop at each leaf. Centre 0, leaves 1..=3; dart `2i`
    /// runs from the centre to leaf `i+1`, dart `6+2i` is the loop at leaf
    /// `i+1`.
    pub fn k13_loop() -> Self {
        let mut d = DartGraph::new(4);
        for leaf in 1..=3 {
            d.add_edge(0, leaf);
        }
        for leaf in 1..=3 {
            d.add_edge(leaf, leaf);
        }
        d
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn dart_count(&self) -> usize {
        self.ends.len()
    }

    #[inline]
    pub fn inv(&self, d: usize) -> usize {
        d ^ 1
    }

    #[inline]
    pub fn tail(&self, d: usize) -> usize {
        self.ends[d].0
    }

    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.ends[d].1
    }

    pub fn is_loop(&self, d: usize) -> bool {
        self.ends[d].0 == self.ends[d].1
    }

    /// Darts leaving `v`.
    pub fn out_darts(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.ends.len()).filter(move |&d| self.ends[d].0 == v)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for d in self.out_darts(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The subgraph on the same vertices keeping only the listed edges
    /// (by forward dart). Dart numbering is compacted.
    pub fn sub_edges(&self, forward: &[usize]) -> DartGraph {
        let mut d = DartGraph::new(self.vertices);
        for &f in forward {
            d.add_edge(self.tail(f), self.head(f));
        }
        d
    }
}

/// Group elements on darts with `volt(inv d) = volt(d)^-1`.
#[derive(Debug, Clone)]
pub struct VoltageAssignment {
    pub base: DartGraph,
    pub group: Group,
    volt: Vec<u32>,
}

impl VoltageAssignment {
    /// Full per-dart list, checked for the inverse law.
    pub fn new(base: DartGraph, group: Group, volt: Vec<u32>) -> Result<Self, VoltageError> {
        if volt.len() != base.dart_count() {
            return Err(VoltageError::Length {
                expected: base.dart_count(),
                got: volt.len(),
            });
        }
        for (d, &v) in volt.iter().enumerate() {
            if v as usize >= group.order() {
                return Err(VoltageError::NotAnElement {
                    value: v,
                    order: group.order(),
                });
            }
            if group.inv(v) != volt[base.inv(d)] {
                return Err(VoltageError::InverseMismatch { dart: d });
            }
        }
        Ok(VoltageAssignment { base, group, volt })
    }

    /// One voltage per edge, on its forward dart.
    pub fn from_edges(base: DartGraph, group: Group, per_edge: &[u32]) -> Result<Self, VoltageError> {
        if per_edge.len() * 2 != base.dart_count() {
            return Err(VoltageError::Length {
                expected: base.dart_count() / 2,
                got: per_edge.len(),
            });
        }
        let mut volt = Vec::with_capacity(base.dart_count());
        for &v in per_edge {
            if v as usize >= group.order() {
                return Err(VoltageError::NotAnElement {
                    value: v,
                    order: group.order(),
                });
            }
            volt.push(v);
            volt.push(group.inv(v));
        }
        Ok(VoltageAssignment { base, group, volt })
    }

    /// K13Loop with identity on the star and `loops` on the three loops.
    pub fn k13_loop(group: Group, loops: [u32; 3]) -> Result<Self, VoltageError> {
        Self::from_edges(DartGraph::k13_loop(), group, &[0, 0, 0, loops[0], loops[1], loops[2]])
    }

    pub fn voltage(&self, d: usize) -> u32 {
        self.volt[d]
    }

    pub fn voltages(&self) -> &[u32] {
        &self.volt
    }

    /// Index of lift vertex `(v, h)`.
    #[inline]
    pub fn lift_vertex(&self, v: usize, h: u32) -> usize {
        v * self.group.order() + h as usize
    }

    /// The derived graph on `V x G`: `(u, h) ~ (v, h * volt(d))` for every
    /// dart `d: u -> v`.
    pub fn lift(&self) -> Result<Graph, VoltageError> {
        let m = self.group.order();
        let b = &self.base;
        let mut g = Graph::new(b.vertex_count() * m);
        for d in (0..b.dart_count()).step_by(2) {
            let a = self.volt[d];
            if b.is_loop(d) && a == 0 {
                return Err(VoltageError::IdentityLoop { dart: d });
            }
            let involution = b.is_loop(d) && self.group.mul(a, a) == 0;
            for h in 0..m as u32 {
                let t = self.group.mul(h, a);
                if involution && t < h {
                    // Same edge as the one produced from `t`.
                    continue;
                }
                let (x, y) = (self.lift_vertex(b.tail(d), h), self.lift_vertex(b.head(d), t));
                if !g.add_edge(x, y) {
                    return Err(VoltageError::MultiEdge(x, y));
                }
            }
        }
        Ok(g)
    }

    /// Product of the voltages along a walk, left to right.
    pub fn net_voltage(&self, walk: &[usize]) -> Result<u32, VoltageError> {
        let mut acc = self.group.identity();
        for (i, &d) in walk.iter().enumerate() {
            if let Some(&next) = walk.get(i + 1) {
                if self.base.head(d) != self.base.tail(next) {
                    return Err(VoltageError::NotAWalk { at: d, next });
                }
            }
            acc = self.group.mul(acc, self.volt[d]);
        }
        Ok(acc)
    }

    /// `out[l]` is true iff the lift has a cycle of length `l`, for
    /// `l <= max_len`. Works on the base: a lift cycle through `(v, 1)` is a
    /// closed non-reversing walk from `v` with trivial net voltage whose
    /// partial products never revisit a lift vertex. Every cycle passes
    /// through some `(v, 1)` because left multiplication acts on the lift.
    pub fn lift_cycle_check(&self, max_len: usize) -> Vec<bool> {
        let mut out = vec![false; max_len + 1];
        let mut on_path = vec![false; self.base.vertex_count() * self.group.order()];
        let out_darts: Vec<Vec<usize>> = (0..self.base.vertex_count())
            .map(|v| self.base.out_darts(v).collect())
            .collect();
        for v in 0..self.base.vertex_count() {
            let start = self.lift_vertex(v, 0);
            on_path[start] = true;
            self.walks(&out_darts, v, 0, usize::MAX, 0, start, max_len, &mut on_path, &mut out);
            on_path[start] = false;
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walks(
        &self,
        out_darts: &[Vec<usize>],
        v: usize,
        h: u32,
        prev: usize,
        len: usize,
        start: usize,
        max_len: usize,
        on_path: &mut [bool],
        out: &mut [bool],
    ) {
        if len == max_len {
            return;
        }
        for &d in &out_darts[v] {
            if prev != usize::MAX && d == self.base.inv(prev) {
                continue;
            }
            let w = self.base.head(d);
            let t = self.group.mul(h, self.volt[d]);
            let x = self.lift_vertex(w, t);
            if x == start {
                if len + 1 >= 3 {
                    out[len + 1] = true;
                }
                continue;
            }
            if on_path[x] {
                continue;
            }
            on_path[x] = true;
            self.walks(out_darts, w, t, d, len + 1, start, max_len, on_path, out);
            on_path[x] = false;
        }
    }

    /// An equivalent assignment that is the identity on a BFS spanning tree
    /// from vertex 0. Its lift is isomorphic to this one's.
    pub fn normalized(&self) -> Result<Self, VoltageError> {
        let b = &self.base;
        let n = b.vertex_count();
        let mut p: Vec<Option<u32>> = vec![None; n];
        if n == 0 {
            return Ok(self.clone());
        }
        p[0] = Some(0);
        let mut q = VecDeque::from([0]);
        while let Some(u) = q.pop_front() {
            for d in b.out_darts(u) {
                let w = b.head(d);
                if p[w].is_none() {
                    p[w] = Some(self.group.mul(p[u].unwrap(), self.volt[d]));
                    q.push_back(w);
                }
            }
        }
        let p: Vec<u32> = p.into_iter().collect::<Option<_>>().ok_or(VoltageError::Disconnected)?;
        let volt = (0..b.dart_count())
            .map(|d| {
                let (u, v) = (b.tail(d), b.head(d));
                self.group.mul(self.group.mul(p[u], self.volt[d]), self.group.inv(p[v]))
            })
            .collect();
        VoltageAssignment::new(b.clone(), self.group.clone(), volt)
    }
}
