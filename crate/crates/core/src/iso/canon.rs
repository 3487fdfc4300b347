//! Canonical labeling by individualization and refinement.
//!
//! The initial partition orders vertices by (color, degree). Refinement
//! splits cells by the sorted multiset of neighbor colors until nothing
//! changes. The search individualizes each vertex of the first non-singleton
//! cell in turn (lowest id first) and keeps the leaf whose relabeled graph has
//! the lexicographically least graph6 bit string.
//!
//! Two leaves with equal relabeled graphs give an automorphism. Automorphisms
//! are used twice: the search backjumps to the level where the new leaf's
//! path left the first or best leaf's path, and at each node children lying
//! in one orbit of the known automorphisms fixing the current prefix are
//! visited only once. Neither prune can change which graph is least.

use crate::error::IsoError;
use crate::graph::Graph;
use crate::graph6::write_graph6;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Automorphisms kept for orbit pruning. Backjumping does not depend on this.
const MAX_GENERATORS: usize = 256;

/// The canonical graph6 token of a graph and the relabeling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub canon_g6: String,
    /// `relabeling[v]` is the canonical position of vertex `v`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    /// The canonically relabeled graph.
    pub fn graph(&self, g: &Graph) -> Graph {
        g.permute(&self.relabeling)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, IsoError> {
    canonical_form_with(g, None, DEFAULT_NODE_BUDGET)
}

/// Canonical form of a vertex-colored graph. Vertices of smaller color get
/// smaller canonical positions, so two colored graphs with the same color
/// multiset are color-isomorphic iff their `canon_g6` strings agree.
pub fn canonical_form_with(g: &Graph, colors: Option<&[u32]>, node_budget: u64) -> Result<CanonicalForm, IsoError> {
    let n = g.n();
    if let Some(c) = colors {
        if c.len() != n {
            return Err(IsoError::ColorLength { expected: n, found: c.len() });
        }
    }
    let degrees = g.degrees();
    let key = |v: usize| (colors.map_or(0, |c| c[v]), degrees[v]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut initial = vec![0u32; n];
    for i in 0..n {
        initial[order[i]] = if i > 0 && key(order[i]) == key(order[i - 1]) { initial[order[i - 1]] } else { i as u32 };
    }
    let mut refiner = Refiner::new(g);
    refiner.refine(&mut initial);

    let mut search =
        Search { g, refiner, budget: node_budget, nodes: 0, first: None, best: None, generators: Vec::new() };
    let mut prefix = Vec::new();
    search.visit(initial, &mut prefix)?;
    let best = search.best.expect("the search reaches at least one leaf");
    let canon_g6 = write_graph6(&g.permute(&best.lab)).expect("orders handled by the census fit graph6");
    Ok(CanonicalForm { canon_g6, relabeling: best.lab })
}

/// Equitable refinement. Colors are cell start positions, so a cell of size
/// s starting at c occupies positions c..c+s and a partition is discrete iff
/// the colors are a permutation.
struct Refiner<'g> {
    g: &'g Graph,
    adj: Vec<Vec<usize>>,
    sig: Vec<u32>,
    offsets: Vec<usize>,
    order: Vec<usize>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).collect()).collect();
        let mut offsets = Vec::with_capacity(g.n() + 1);
        offsets.push(0);
        for a in &adj {
            offsets.push(offsets.last().unwrap() + a.len());
        }
        Refiner { g, sig: vec![0; *offsets.last().unwrap()], adj, offsets, order: (0..g.n()).collect() }
    }

    fn refine(&mut self, colors: &mut [u32]) {
        let n = self.g.n();
        let mut cells = count_cells(colors);
        while cells < n {
            for v in 0..n {
                let s = &mut self.sig[self.offsets[v]..self.offsets[v + 1]];
                for (slot, &u) in s.iter_mut().zip(&self.adj[v]) {
                    *slot = colors[u];
                }
                s.sort_unstable();
            }
            let (sig, offsets) = (&self.sig, &self.offsets);
            let key = |v: usize| (colors[v], &sig[offsets[v]..offsets[v + 1]]);
            self.order.sort_by(|&a, &b| key(a).cmp(&key(b)));
            let mut next = vec![0u32; n];
            for i in 0..n {
                let (v, prev) = (self.order[i], if i > 0 { Some(self.order[i - 1]) } else { None });
                next[v] = match prev {
                    Some(p) if key(p) == key(v) => next[p],
                    _ => i as u32,
                };
            }
            colors.copy_from_slice(&next);
            let now = count_cells(colors);
            if now == cells {
                break;
            }
            cells = now;
        }
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors.iter().filter(|&&c| !std::mem::replace(&mut seen[c as usize], true)).count()
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    /// Abandon every node deeper than this level.
    Backjump(usize),
}

struct Search<'g> {
    g: &'g Graph,
    refiner: Refiner<'g>,
    budget: u64,
    nodes: u64,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) -> Result<Flow, IsoError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(IsoError::BudgetExceeded { budget: self.budget, n: self.g.n() });
        }
        let n = colors.len();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(start) = (0..n).find(|&c| size[c] > 1) else {
            return Ok(self.leaf(&colors, prefix));
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == start).collect();

        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for v in cell {
            if !explored.is_empty() {
                if orbits.as_ref().is_none_or(|(seen, _)| *seen != self.generators.len()) {
                    orbits = Some((self.generators.len(), self.orbits_fixing(prefix)));
                }
                let roots = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            let mut child = colors.clone();
            for (w, c) in child.iter_mut().enumerate() {
                if *c as usize == start && w != v {
                    *c = start as u32 + 1;
                }
            }
            self.refiner.refine(&mut child);
            prefix.push(v);
            let flow = self.visit(child, prefix)?;
            prefix.pop();
            explored.push(v);
            if let Flow::Backjump(level) = flow {
                if level < prefix.len() {
                    return Ok(flow);
                }
            }
        }
        Ok(Flow::Continue)
    }

    fn leaf(&mut self, colors: &[u32], prefix: &[usize]) -> Flow {
        let lab: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let cert = certificate(self.g, &lab);
        let leaf = Leaf { cert, lab, path: prefix.to_vec() };

        let Some(first) = &self.first else {
            self.best = Some(Leaf { cert: leaf.cert.clone(), lab: leaf.lab.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if first.cert == leaf.cert {
            let gamma = automorphism(&first.lab, &leaf.lab);
            let level = common_prefix(&first.path, &leaf.path);
            self.record(gamma);
            return Flow::Backjump(level);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                Flow::Continue
            }
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(&best.lab, &leaf.lab);
                let level = common_prefix(&best.path, &leaf.path);
                self.record(gamma);
                Flow::Backjump(level)
            }
            std::cmp::Ordering::Greater => Flow::Continue,
        }
    }

    fn record(&mut self, gamma: Vec<usize>) {
        if self.generators.len() < MAX_GENERATORS {
            self.generators.push(gamma);
        }
    }

    /// Union-find roots of the orbits of the known automorphisms that fix
    /// every vertex of `prefix`.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.generators {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            for (v, &w) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

/// The upper triangle of `g` relabeled by `lab`, in graph6 bit order, packed
/// most significant bit first so that word-wise comparison is lexicographic.
fn certificate(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = g.n();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; bits.div_ceil(64)];
    for u in 0..n {
        for v in g.neighbors(u) {
            if v > u {
                let (i, j) = (lab[u].min(lab[v]), lab[u].max(lab[v]));
                let idx = j * (j - 1) / 2 + i;
                out[idx / 64] |= 1 << (63 - idx % 64);
            }
        }
    }
    out
}

/// The vertex map sending the leaf labeled `a` onto the leaf labeled `b`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut inv_b = vec![0; b.len()];
    for (v, &p) in b.iter().enumerate() {
        inv_b[p] = v;
    }
    a.iter().map(|&p| inv_b[p]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for j in 1..n {
            for i in 0..j {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    #[test]
    fn complete_graph_is_all_ones() {
        let c = canonical_form(&complete(4)).unwrap();
        assert_eq!(c.canon_g6, "C~");
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(canonical_form(&Graph::new(0)).unwrap().canon_g6, "?");
        assert_eq!(canonical_form(&Graph::new(1)).unwrap().canon_g6, "@");
    }

    #[test]
    fn refinement_splits_by_degree_and_neighbors() {
        // path 0-1-2-3-4: ends, their neighbors, center
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut colors = vec![0; 5];
        Refiner::new(&g).refine(&mut colors);
        assert_eq!(colors[0], colors[4]);
        assert_eq!(colors[1], colors[3]);
        assert_ne!(colors[0], colors[1]);
        assert_ne!(colors[1], colors[2]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = complete(6);
        assert!(matches!(canonical_form_with(&g, None, 3), Err(IsoError::BudgetExceeded { budget: 3, n: 6 })));
    }

    #[test]
    fn colors_respected() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let end = canonical_form_with(&g, Some(&[1, 0, 0]), DEFAULT_NODE_BUDGET).unwrap();
        let other_end = canonical_form_with(&g, Some(&[0, 0, 1]), DEFAULT_NODE_BUDGET).unwrap();
        let center = canonical_form_with(&g, Some(&[0, 1, 0]), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(end.canon_g6, other_end.canon_g6);
        assert_ne!(end.canon_g6, center.canon_g6);
        assert!(matches!(
            canonical_form_with(&g, Some(&[0]), 10),
            Err(IsoError::ColorLength { expected: 3, found: 1 })
        ));
    }
}
