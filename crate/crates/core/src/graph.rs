//! Simple undirected graphs over the vertex ids `0..n`.
//!
//! Adjacency is stored as one dense bit row per vertex. Every graph this crate
//! touches is small (a P_3-graph of an 8-vertex host has at most 168 vertices),
//! so an O(1) edge test and word-wise row intersection beat anything sparse.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::GraphError;

/// A simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, bits: vec![0; n * words] }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range ids.
    /// Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n + 1;
        let words = n.div_ceil(64);
        if words != self.words {
            let mut bits = vec![0; n * words];
            for v in 0..self.n {
                bits[v * words..v * words + self.words].copy_from_slice(self.row(v));
            }
            self.bits = bits;
            self.words = words;
        } else {
            self.bits.extend(std::iter::repeat_n(0, words));
        }
        self.n = n;
        n - 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// The adjacency row of `v` as packed words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors { row: self.row(v), word: 0, cur: self.row(v).first().copied().unwrap_or(0) }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must match vertex count");
        let mut out = Graph::new(self.n);
        for (u, v) in self.edges() {
            out.set(perm[u], perm[v]);
            out.set(perm[v], perm[u]);
        }
        out
    }

    /// The subgraph induced on `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut out = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    out.set(i, j);
                    out.set(j, i);
                }
            }
        }
        out
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut out = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            out.set(u, v);
            out.set(v, u);
        }
        for (u, v) in other.edges() {
            out.set(u + shift, v + shift);
            out.set(v + shift, u + shift);
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff all vertices lie in one component. The empty graph is not
    /// connected; the single vertex is.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![0u64; self.words];
        seen[0] = 1;
        let mut frontier = seen.clone();
        loop {
            let mut next = vec![0u64; self.words];
            for (wi, &w) in frontier.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let v = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    for (n, r) in next.iter_mut().zip(self.row(v)) {
                        *n |= r;
                    }
                }
            }
            let mut grew = false;
            for (n, s) in next.iter_mut().zip(seen.iter_mut()) {
                *n &= !*s;
                *s |= *n;
                grew |= *n != 0;
            }
            if !grew {
                break;
            }
            frontier = next;
        }
        seen.iter().map(|w| w.count_ones() as usize).sum::<usize>() == self.n
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.row(v).iter().all(|&w| w == 0))
    }

    /// Two-colors the graph by breadth-first search; `None` if an odd cycle
    /// exists. Each component's smallest vertex goes to side A, so for a
    /// connected graph vertex 0 is always in side A.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (v, s) in side.into_iter().enumerate() {
            if s == Some(false) {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        Some(Bipartition { side_a: a, side_b: b })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

/// A split of the vertex set into two independent sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Bipartition {
    /// Checks the partition covers `0..g.n()` exactly once and has no edge
    /// inside either side.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in self.side_a.iter().chain(&self.side_b) {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let inside =
            |side: &[usize]| side.iter().enumerate().any(|(i, &u)| side[i + 1..].iter().any(|&v| g.has_edge(u, v)));
        !inside(&self.side_a) && !inside(&self.side_b)
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.side_a.binary_search(&v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1))));
        assert!(matches!(Graph::from_edges(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })));
    }

    #[test]
    fn connectivity_corners() {
        assert!(!Graph::new(0).is_connected());
        assert!(Graph::new(1).is_connected());
        assert!(cycle(6).is_connected());
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_k2.is_connected());
    }

    #[test]
    fn connectivity_across_word_boundary() {
        let n = 150;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let mut g = Graph::from_edges(n, &edges).unwrap();
        assert!(g.is_connected());
        g.add_vertex();
        assert!(!g.is_connected());
    }

    #[test]
    fn add_vertex_keeps_rows() {
        let mut g = cycle(64);
        assert_eq!(g.add_vertex(), 64);
        g.add_edge(64, 3).unwrap();
        assert!(g.has_edge(0, 63));
        assert!(g.has_edge(3, 64));
        assert_eq!(g.edge_count(), 65);
    }

    #[test]
    fn bipartition_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let b = star.bipartition().unwrap();
        assert_eq!(b.side_a, vec![0]);
        assert_eq!(b.side_b, vec![1, 2, 3]);
        assert!(cycle(3).bipartition().is_none());
        let b = cycle(6).bipartition().unwrap();
        assert_eq!(b.side_a, vec![0, 2, 4]);
        assert_eq!(b.side_b, vec![1, 3, 5]);
        assert!(b.is_valid_for(&cycle(6)));
    }

    #[test]
    fn permute_and_induce() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q = p.permute(&[1, 0, 2]);
        assert_eq!(q.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(cycle(5).induced(&[0, 1, 2]).edges(), vec![(0, 1), (1, 2)]);
    }
}
