//! Ordered partitions and equitable refinement.

use std::collections::VecDeque;

/// An ordered partition of `0..n`.
///
/// `lab` lists vertices cell by cell; `start[p]` is the first position of
/// the cell holding position `p`, and `end[s]` is the exclusive end of the
/// cell starting at `s`.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub lab: Vec<u32>,
    pub pos: Vec<u32>,
    pub start: Vec<u32>,
    pub end: Vec<u32>,
    pub cells: usize,
}

impl Partition {
    /// Cells ordered by colour value.
    pub fn from_colours(colours: &[u32]) -> Self {
        let n = colours.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colours[v as usize], v));
        let mut pos = vec![0; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v as usize] = p as u32;
        }
        let mut start = vec![0; n];
        let mut end = vec![0; n];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let c = colours[lab[s] as usize];
            let mut e = s;
            while e < n && colours[lab[e] as usize] == c {
                start[e] = s as u32;
                e += 1;
            }
            end[s] = e as u32;
            cells += 1;
            s = e;
        }
        Partition {
            lab,
            pos,
            start,
            end,
            cells,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lab.len()
    }

    #[inline]
    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Starts of all cells in position order.
    pub fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.len() {
            out.push(s as u32);
            s = self.end[s] as usize;
        }
        out
    }

    #[inline]
    pub fn cell(&self, s: usize) -> &[u32] {
        &self.lab[s..self.end[s] as usize]
    }

    /// Splits `v` off the front of its cell. Returns the start of the new
    /// singleton cell.
    pub fn individualize(&mut self, v: u32) -> usize {
        let p = self.pos[v as usize] as usize;
        let s = self.start[p] as usize;
        let e = self.end[s] as usize;
        debug_assert!(e - s > 1);
        let other = self.lab[s];
        self.lab.swap(s, p);
        self.pos[other as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.end[s] = s as u32 + 1;
        self.end[s + 1] = e as u32;
        for q in s + 1..e {
            self.start[q] = s as u32 + 1;
        }
        self.cells += 1;
        s
    }
}

/// Reusable buffers for [`refine`].
#[derive(Default)]
pub(crate) struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
}

impl Scratch {
    pub fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
        }
    }
}

/// Refines `p` to the coarsest equitable partition finer than it, using the
/// cells starting at `splitters` as the initial splitter queue. Appends an
/// isomorphism-invariant record of every split to `trace`.
pub(crate) fn refine(
    adj: &[Vec<u32>],
    p: &mut Partition,
    splitters: &[u32],
    trace: &mut Vec<u32>,
    sc: &mut Scratch,
) {
    sc.queue.clear();
    for &s in splitters {
        if !sc.in_queue[s as usize] {
            sc.in_queue[s as usize] = true;
            sc.queue.push_back(s);
        }
    }
    while let Some(ws) = sc.queue.pop_front() {
        let ws = ws as usize;
        sc.in_queue[ws] = false;
        if p.is_discrete() {
            break;
        }
        let we = p.end[ws] as usize;
        for i in ws..we {
            let x = p.lab[i] as usize;
            for &y in &adj[x] {
                if sc.count[y as usize] == 0 {
                    sc.touched.push(y);
                }
                sc.count[y as usize] += 1;
            }
        }
        sc.touched_cells.clear();
        for &y in &sc.touched {
            sc.touched_cells.push(p.start[p.pos[y as usize] as usize]);
        }
        sc.touched_cells.sort_unstable();
        sc.touched_cells.dedup();
        for ci in 0..sc.touched_cells.len() {
            let s = sc.touched_cells[ci] as usize;
            let e = p.end[s] as usize;
            if e - s == 1 {
                continue;
            }
            let count = &sc.count;
            let cell = &mut p.lab[s..e];
            let first = count[cell[0] as usize];
            if cell.iter().all(|&v| count[v as usize] == first) {
                continue;
            }
            cell.sort_unstable_by_key(|&v| (count[v as usize], v));
            for q in s..e {
                p.pos[p.lab[q] as usize] = q as u32;
            }
            // Cut into fragments of equal count.
            let was_queued = sc.in_queue[s];
            let mut frags = 0u32;
            let mut largest = (0usize, s);
            let mut a = s;
            trace.push(s as u32);
            let mark = trace.len();
            trace.push(0);
            while a < e {
                let c = sc.count[p.lab[a] as usize];
                let mut b = a;
                while b < e && sc.count[p.lab[b] as usize] == c {
                    p.start[b] = a as u32;
                    b += 1;
                }
                p.end[a] = b as u32;
                trace.push(c);
                trace.push((b - a) as u32);
                if b - a > largest.0 {
                    largest = (b - a, a);
                }
                frags += 1;
                a = b;
            }
            trace[mark] = frags;
            p.cells += frags as usize - 1;
            let mut a = s;
            while a < e {
                let b = p.end[a] as usize;
                let enqueue = if was_queued { a != s } else { a != largest.1 };
                if enqueue && !sc.in_queue[a] {
                    sc.in_queue[a] = true;
                    sc.queue.push_back(a as u32);
                }
                a = b;
            }
        }
        for &y in &sc.touched {
            sc.count[y as usize] = 0;
        }
        sc.touched.clear();
    }
    for s in sc.queue.drain(..) {
        sc.in_queue[s as usize] = false;
    }
    trace.push(u32::MAX);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn adj(g: &crate::graph::Graph) -> Vec<Vec<u32>> {
        (0..g.order()).map(|v| g.neighbors(v).map(|w| w as u32).collect()).collect()
    }

    #[test]
    fn path_refines_by_distance_from_ends() {
        let g = named::path(5);
        let a = adj(&g);
        let mut p = Partition::from_colours(&[0; 5]);
        let mut sc = Scratch::new(5);
        let mut trace = Vec::new();
        refine(&a, &mut p, &[0], &mut trace, &mut sc);
        // {0,4} {1,3} {2}
        assert_eq!(p.cells, 3);
        let starts = p.cell_starts();
        let mut cells: Vec<Vec<u32>> = starts
            .iter()
            .map(|&s| {
                let mut c = p.cell(s as usize).to_vec();
                c.sort();
                c
            })
            .collect();
        cells.sort();
        assert_eq!(cells, vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn regular_graph_stays_unit_until_individualized() {
        let g = named::petersen();
        let a = adj(&g);
        let mut p = Partition::from_colours(&[0; 10]);
        let mut sc = Scratch::new(10);
        let mut trace = Vec::new();
        refine(&a, &mut p, &[0], &mut trace, &mut sc);
        assert_eq!(p.cells, 1);
        let s = p.individualize(0);
        refine(&a, &mut p, &[s as u32], &mut trace, &mut sc);
        // {0} {three neighbours} {six at distance two}
        assert_eq!(p.cells, 3);
    }
}
