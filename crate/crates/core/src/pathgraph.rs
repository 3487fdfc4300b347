//! k-vertex paths of a host graph and the path graph P_k(G).
//!
//! Two k-paths are adjacent in P_k(G) when their union is a path on k+1
//! vertices or a cycle on k vertices. This module also detects the gadgets
//! that carry non-induced P_3-isomorphisms (thorns and diamonds) and builds
//! the B-, S- and D-swaps.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{PathError, SwapError};
use crate::graph::Graph;

/// A k-vertex path, stored in normalized orientation (first vertex smaller
/// than the last), so every path of the host has exactly one representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PathK(Vec<usize>);

impl PathK {
    /// Normalizes a vertex sequence. Does not check it against any host.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        if vertices.len() > 1 && vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        PathK(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_path_in(&self, g: &Graph) -> bool {
        let v = &self.0;
        let distinct = v.iter().enumerate().all(|(i, x)| !v[i + 1..].contains(x));
        distinct && v.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }
}

impl fmt::Debug for PathK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All k-vertex paths of `g`, normalized and sorted lexicographically.
pub fn enumerate_paths(g: &Graph, k: usize) -> Result<Vec<PathK>, PathError> {
    if k < 2 {
        return Err(PathError::InvalidLength(k));
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        stack.push(s);
        on_path[s] = true;
        extend(g, k, &mut stack, &mut on_path, &mut out);
        on_path[s] = false;
        stack.pop();
    }
    out.sort_unstable();
    Ok(out)
}

fn extend(g: &Graph, k: usize, stack: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<PathK>) {
    if stack.len() == k {
        // each path is reached from both ends; keep the normalized one
        if stack[0] < stack[k - 1] {
            out.push(PathK(stack.clone()));
        }
        return;
    }
    let last = *stack.last().unwrap();
    for v in g.neighbors(last) {
        if !on_path[v] {
            on_path[v] = true;
            stack.push(v);
            extend(g, k, stack, on_path, out);
            stack.pop();
            on_path[v] = false;
        }
    }
}

/// Shape of the union of two paths, as far as the P_k adjacency rule cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnionShape {
    Path(usize),
    Cycle(usize),
    Other,
}

fn classify_union(a: &PathK, b: &PathK) -> UnionShape {
    let mut edges: Vec<(usize, usize)> = a.edges().chain(b.edges()).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in &edges {
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    let nv = degree.len();
    if degree.values().any(|&d| d > 2) {
        return UnionShape::Other;
    }
    // Both paths are connected and must share a vertex for the union to be.
    let shares = a.vertices().iter().any(|v| b.vertices().contains(v));
    if !shares {
        return UnionShape::Other;
    }
    // Connected with max degree 2: a path iff |E| = |V| - 1, a cycle iff |E| = |V|.
    if edges.len() + 1 == nv {
        UnionShape::Path(nv)
    } else if edges.len() == nv {
        UnionShape::Cycle(nv)
    } else {
        UnionShape::Other
    }
}

/// True iff `a` and `b` are adjacent vertices of P_k(G), k = `a.len()`.
pub fn pk_adjacent(a: &PathK, b: &PathK) -> bool {
    let k = a.len();
    if a == b || b.len() != k {
        return false;
    }
    match classify_union(a, b) {
        UnionShape::Path(m) => m == k + 1,
        UnionShape::Cycle(m) => m == k,
        UnionShape::Other => false,
    }
}

/// P_k(G) together with the path behind each of its vertices.
#[derive(Clone, Debug)]
pub struct PathGraphResult {
    pub k: usize,
    pub pgraph: Graph,
    pub labels: Vec<PathK>,
}

impl PathGraphResult {
    pub fn index_of(&self, p: &PathK) -> Option<usize> {
        self.labels.binary_search(p).ok()
    }
}

/// Builds P_k(G). Vertex `i` of the result is `enumerate_paths(g, k)[i]`.
pub fn build_path_graph(g: &Graph, k: usize) -> Result<PathGraphResult, PathError> {
    let labels = enumerate_paths(g, k)?;
    let mut pgraph = Graph::new(labels.len());

    // Adjacent paths share at least k-1 host vertices; bucket by vertex so
    // only such candidates reach the union test.
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, p) in labels.iter().enumerate() {
        for &v in p.vertices() {
            by_vertex[v].push(i);
        }
    }
    let mut shared = vec![0usize; labels.len()];
    let mut touched = Vec::new();
    for (i, p) in labels.iter().enumerate() {
        for &v in p.vertices() {
            for &j in &by_vertex[v] {
                if j > i {
                    if shared[j] == 0 {
                        touched.push(j);
                    }
                    shared[j] += 1;
                }
            }
        }
        for &j in &touched {
            if shared[j] + 1 >= k && pk_adjacent(p, &labels[j]) {
                pgraph.add_edge(i, j).expect("distinct in-range indices");
            }
            shared[j] = 0;
        }
        touched.clear();
    }
    Ok(PathGraphResult { k, pgraph, labels })
}

/// A P_3 with one or two ends of host degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thorn {
    pub path: PathK,
    pub grade: u8,
}

/// The 1-thorns and 2-thorns of `g`, each in path order.
pub fn find_thorns(g: &Graph) -> (Vec<Thorn>, Vec<Thorn>) {
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    for path in enumerate_paths(g, 3).expect("k = 3") {
        let v = path.vertices();
        let grade = (g.degree(v[0]) == 1) as u8 + (g.degree(v[2]) == 1) as u8;
        match grade {
            1 => t1.push(Thorn { path, grade }),
            2 => t2.push(Thorn { path, grade }),
            _ => {}
        }
    }
    (t1, t2)
}

/// D_{a,b}: the degree-2 vertices whose neighborhood is exactly {a, b}.
/// The edge ab, when present, is not part of the diamond; it only makes the
/// diamond braced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub end_a: usize,
    pub end_b: usize,
    pub middles: Vec<usize>,
    pub braced: bool,
}

impl Diamond {
    pub fn width(&self) -> usize {
        self.middles.len()
    }
}

/// Every nonempty diamond of `g`, sorted by `(end_a, end_b)`.
pub fn find_diamonds(g: &Graph) -> Vec<Diamond> {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for c in 0..g.n() {
        if g.degree(c) == 2 {
            let mut nb = g.neighbors(c);
            let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
            groups.entry((a, b)).or_default().push(c);
        }
    }
    groups
        .into_iter()
        .map(|((a, b), middles)| Diamond { end_a: a, end_b: b, middles, braced: g.has_edge(a, b) })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SwapKind {
    B,
    S,
    D,
}

/// Arguments for [`build_swap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwapParams {
    /// Swap the sibling 1-thorns `abc` and `abd`.
    B { a: usize, b: usize, c: usize, d: usize },
    /// Swap the terminal 1-thorns `abc` and `cde` of the P_5 `abcde`.
    S { path: [usize; 5] },
    /// Swap the diamond pair `c_i a c_j` and `c_i b c_j` of D_{a,b}, where
    /// `i < j` index the diamond's sorted middles.
    D { a: usize, b: usize, i: usize, j: usize },
}

/// A transposition of two P_3's, as a permutation of `enumerate_paths(g, 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapPermutation {
    pub kind: SwapKind,
    pub support: (PathK, PathK),
    pub mapping: Vec<usize>,
}

pub fn build_swap(g: &Graph, params: &SwapParams) -> Result<SwapPermutation, SwapError> {
    let distinct_in_range =
        |vs: &[usize]| vs.iter().all(|&v| v < g.n()) && vs.iter().enumerate().all(|(i, x)| !vs[i + 1..].contains(x));
    let need_edge = |u: usize, v: usize| {
        if g.has_edge(u, v) {
            Ok(())
        } else {
            Err(SwapError::NotAdjacent(u, v))
        }
    };
    let need_degree = |v: usize, ok: bool, expected: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(SwapError::Degree { vertex: v, found: g.degree(v), expected })
        }
    };

    let (kind, x, y) = match *params {
        SwapParams::B { a, b, c, d } => {
            if !distinct_in_range(&[a, b, c, d]) {
                return Err(SwapError::BadVertices(vec![a, b, c, d]));
            }
            need_edge(a, b)?;
            need_edge(b, c)?;
            need_edge(b, d)?;
            need_degree(a, g.degree(a) >= 2, ">= 2")?;
            need_degree(c, g.degree(c) == 1, "1")?;
            need_degree(d, g.degree(d) == 1, "1")?;
            (SwapKind::B, vec![a, b, c], vec![a, b, d])
        }
        SwapParams::S { path } => {
            if !distinct_in_range(&path) {
                return Err(SwapError::BadVertices(path.to_vec()));
            }
            for w in path.windows(2) {
                need_edge(w[0], w[1])?;
            }
            let [a, b, c, d, e] = path;
            need_degree(a, g.degree(a) == 1, "1")?;
            need_degree(e, g.degree(e) == 1, "1")?;
            need_degree(c, g.degree(c) == 2, "2")?;
            (SwapKind::S, vec![a, b, c], vec![c, d, e])
        }
        SwapParams::D { a, b, i, j } => {
            let (a, b) = (a.min(b), a.max(b));
            let diamond = find_diamonds(g)
                .into_iter()
                .find(|d| d.end_a == a && d.end_b == b)
                .ok_or(SwapError::NoDiamond(a, b))?;
            if !(i < j && j < diamond.width()) {
                return Err(SwapError::MiddleIndex { i, j, width: diamond.width() });
            }
            let (ci, cj) = (diamond.middles[i], diamond.middles[j]);
            (SwapKind::D, vec![ci, a, cj], vec![ci, b, cj])
        }
    };

    let paths = enumerate_paths(g, 3).expect("k = 3");
    let (x, y) = (PathK::new(x), PathK::new(y));
    let ix = paths.binary_search(&x).expect("validated path is in the host");
    let iy = paths.binary_search(&y).expect("validated path is in the host");
    let mut mapping: Vec<usize> = (0..paths.len()).collect();
    mapping.swap(ix, iy);
    Ok(SwapPermutation { kind, support: (x, y), mapping })
}
