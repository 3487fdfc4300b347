//! Generators for the graph families that share P_3-graphs.
//!
//! Everything here is built from [`diamond_inflate`]: each edge ab of a base
//! graph becomes s_ab parallel length-2 paths between a and b (an unbraced
//! diamond), and t_v pendant edges are hung on each base vertex v. Inflating
//! two edge-isomorphic bases with matching widths, and thorn counts that agree
//! on t_a + t_b across corresponding edges, gives two graphs with isomorphic
//! P_3-graphs. Whitney's exceptional edge-isomorphisms and the identity map
//! on a bipartite base with thorns shifted from one side to the other are the
//! two sources of such pairs with connected P_3-graphs.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{ConstructionError, IsoError};
use crate::graph::{Bipartition, Graph};
use crate::iso::{are_isomorphic_with, canonical_form_with, DEFAULT_NODE_BUDGET};
use crate::pathgraph::build_path_graph;

type Edge = (usize, usize);

/// Named families with fixed vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// K_{1,3} with every edge subdivided: center 0, midpoints 1..=3,
    /// leaves 4..=6 (leaf 3+i hangs off midpoint i).
    Sw,
    /// `0-1-...-(n-1)-0`, n >= 3.
    Cycle(usize),
    /// `0-1-...-(n-1)`, n >= 1.
    Path(usize),
    /// K_{1,n}: center 0, leaves 1..=n, n >= 1.
    Star(usize),
    /// K_n, n >= 1.
    Complete(usize),
    /// K_{m,n}: sides 0..m and m..m+n.
    CompleteBipartite(usize, usize),
    /// `pages` triangles sharing the spine 0-1; apexes 2.. .
    Book(usize),
    /// Center 0 with paths of the given lengths, numbered leg by leg outward.
    Spider(Vec<usize>),
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Sw => write!(f, "SW"),
            NamedGraph::Cycle(n) => write!(f, "cycle({n})"),
            NamedGraph::Path(n) => write!(f, "path({n})"),
            NamedGraph::Star(n) => write!(f, "star({n})"),
            NamedGraph::Complete(n) => write!(f, "complete({n})"),
            NamedGraph::CompleteBipartite(m, n) => write!(f, "complete_bipartite({m},{n})"),
            NamedGraph::Book(p) => write!(f, "book({p})"),
            NamedGraph::Spider(legs) => write!(f, "spider({legs:?})"),
        }
    }
}

pub fn named_graph(name: &NamedGraph) -> Result<Graph, ConstructionError> {
    let range = |what: &str| Err(ConstructionError::Range(format!("{what} for {name}")));
    let mut edges = Vec::new();
    let n = match *name {
        NamedGraph::Sw => {
            edges.extend([(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]);
            7
        }
        NamedGraph::Cycle(n) => {
            if n < 3 {
                return range("a cycle needs at least 3 vertices");
            }
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
            n
        }
        NamedGraph::Path(n) => {
            if n < 1 {
                return range("a path needs at least 1 vertex");
            }
            edges.extend((1..n).map(|i| (i - 1, i)));
            n
        }
        NamedGraph::Star(n) => {
            if n < 1 {
                return range("a star needs at least 1 leaf");
            }
            edges.extend((1..=n).map(|i| (0, i)));
            n + 1
        }
        NamedGraph::Complete(n) => {
            if n < 1 {
                return range("a complete graph needs at least 1 vertex");
            }
            edges.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
            n
        }
        NamedGraph::CompleteBipartite(m, n) => {
            if m < 1 || n < 1 {
                return range("both sides need at least 1 vertex");
            }
            edges.extend((0..m).flat_map(|i| (m..m + n).map(move |j| (i, j))));
            m + n
        }
        NamedGraph::Book(p) => {
            if p < 1 {
                return range("a book needs at least 1 page");
            }
            edges.push((0, 1));
            edges.extend((2..p + 2).flat_map(|a| [(0, a), (1, a)]));
            p + 2
        }
        NamedGraph::Spider(ref legs) => {
            if legs.is_empty() || legs.contains(&0) {
                return range("legs must be nonempty with positive lengths");
            }
            let mut next = 1;
            for &len in legs {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            next
        }
    };
    Ok(Graph::from_edges(n, &edges)?)
}

/// Whitney's exceptional pair W_i, W_i' with the non-induced edge bijection
/// φ_i. Vertices a, b, c, d and u, v, w, x are ids 0..=3; for i = 3 the
/// second graph is the triangle on u, v, w.
#[derive(Clone, Debug, Serialize)]
pub struct WhitneyModel {
    pub i: u8,
    #[serde(skip)]
    pub w: Graph,
    #[serde(skip)]
    pub wp: Graph,
    /// Edge pairs in the order ab, ac, ad, bc, bd, cd, restricted to E(W_i).
    pub phi: Vec<(Edge, Edge)>,
}

/// φ_6 on K_4: ab→uv, ac→uw, ad→vw, bc→ux, bd→vx, cd→wx.
const PHI6: [(Edge, Edge); 6] =
    [((0, 1), (0, 1)), ((0, 2), (0, 2)), ((0, 3), (1, 2)), ((1, 2), (0, 3)), ((1, 3), (1, 3)), ((2, 3), (2, 3))];

pub fn whitney_model(i: u8) -> Result<WhitneyModel, ConstructionError> {
    let edges = match i {
        6 => 6,
        5 => 5,
        4 => 4,
        3 => 3,
        _ => return Err(ConstructionError::Range(format!("Whitney type must be 3, 4, 5 or 6, got {i}"))),
    };
    let phi: Vec<(Edge, Edge)> = PHI6[..edges].to_vec();
    let w = Graph::from_edges(4, &phi.iter().map(|p| p.0).collect::<Vec<_>>())?;
    let wp_order = if i == 3 { 3 } else { 4 };
    let wp = Graph::from_edges(wp_order, &phi.iter().map(|p| p.1).collect::<Vec<_>>())?;
    Ok(WhitneyModel { i, w, wp, phi })
}

/// Thorn counts (t_a, t_b, t_c, t_d), each 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThornAssignment([u8; 4]);

impl ThornAssignment {
    pub fn new(values: [u8; 4]) -> Result<Self, ConstructionError> {
        if let Some(pos) = values.iter().position(|&t| t > 1) {
            return Err(ConstructionError::Range(format!(
                "t_{} = {} (thorn counts must be 0 or 1)",
                ["a", "b", "c", "d"][pos],
                values[pos]
            )));
        }
        Ok(ThornAssignment(values))
    }

    pub fn values(&self) -> [u8; 4] {
        self.0
    }
}

/// The solved counts (t_u, t_v, t_w, t_x) and the case of the table they
/// fall under. `x` is absent for type 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThornSolution {
    pub case: &'static str,
    pub u: u8,
    pub v: u8,
    pub w: u8,
    pub x: Option<u8>,
}

impl ThornSolution {
    pub fn as_vec(&self) -> Vec<usize> {
        let mut out = vec![self.u as usize, self.v as usize, self.w as usize];
        out.extend(self.x.map(|x| x as usize));
        out
    }
}

/// The rows (t_a, t_b, t_c, t_d) with 0/1 solutions, and the Whitney types
/// each row is excluded from.
const CASES: [(&str, [u8; 4], &[u8]); 8] = [
    ("i", [0, 0, 0, 0], &[]),
    ("ii", [1, 1, 1, 1], &[3]),
    ("iii", [1, 1, 0, 0], &[]),
    ("iv", [1, 0, 1, 0], &[]),
    ("v", [1, 0, 0, 1], &[]),
    ("vi", [0, 1, 1, 0], &[3]),
    ("vii", [0, 1, 0, 1], &[3, 4]),
    ("viii", [0, 0, 1, 1], &[3, 4, 5]),
];

/// Solves t_u + t_v = t_a + t_b (and likewise for every edge pair of φ_i):
///
/// ```text
/// t_u = (t_a + t_b + t_c - t_d) / 2
/// t_v = (t_a + t_b - t_c + t_d) / 2
/// t_w = (t_a - t_b + t_c + t_d) / 2
/// t_x = (-t_a + t_b + t_c + t_d) / 2   (not for type 3)
/// ```
///
/// and accepts only 0/1 solutions on rows not excluded for type `i`.
pub fn solve_thorn_equation(i: u8, t: ThornAssignment) -> Result<ThornSolution, ConstructionError> {
    whitney_model(i)?;
    let [a, b, c, d] = t.0.map(i64::from);
    let sums = [("t_u", a + b + c - d), ("t_v", a + b - c + d), ("t_w", a - b + c + d), ("t_x", -a + b + c + d)];
    let used = if i == 3 { 3 } else { 4 };
    let mut solved = [0u8; 4];
    for (slot, &(name, twice)) in solved.iter_mut().zip(&sums[..used]) {
        if twice % 2 != 0 || !(0..=2).contains(&twice) {
            let value = if twice % 2 == 0 { format!("{}", twice / 2) } else { format!("{twice}/2") };
            return Err(ConstructionError::Infeasible { component: name.into(), value });
        }
        *slot = (twice / 2) as u8;
    }
    let (case, _, excluded) = CASES
        .iter()
        .find(|(_, row, _)| *row == t.0)
        .copied()
        .ok_or_else(|| ConstructionError::Infeasible { component: "t".into(), value: format!("{:?}", t.0) })?;
    if excluded.contains(&i) {
        return Err(ConstructionError::Excluded { case, kind: i });
    }
    Ok(ThornSolution { case, u: solved[0], v: solved[1], w: solved[2], x: (i != 3).then_some(solved[3]) })
}

/// Parameters of a diamond inflation: a width s_e >= 1 for every edge of
/// the base and a thorn count t_v >= 0 for every vertex.
#[derive(Clone, Debug)]
pub struct InflationSpec {
    pub base: Graph,
    pub widths: BTreeMap<Edge, usize>,
    pub thorns: Vec<usize>,
}

impl InflationSpec {
    pub fn uniform(base: Graph, width: usize, thorns: usize) -> Self {
        let widths = base.edges().into_iter().map(|e| (e, width)).collect();
        let thorns = vec![thorns; base.n()];
        InflationSpec { base, widths, thorns }
    }

    /// Widths listed in `base.edges()` order.
    pub fn from_lists(base: Graph, widths: &[usize], thorns: Vec<usize>) -> Result<Self, ConstructionError> {
        let edges = base.edges();
        if widths.len() != edges.len() {
            return Err(ConstructionError::Range(format!("{} widths given for {} edges", widths.len(), edges.len())));
        }
        let widths = edges.into_iter().zip(widths.iter().copied()).collect();
        let spec = InflationSpec { base, widths, thorns };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let edges = self.base.edges();
        if self.widths.len() != edges.len() || edges.iter().any(|e| !self.widths.contains_key(e)) {
            return Err(ConstructionError::Range("widths must be given for exactly the base edges".into()));
        }
        if let Some((e, _)) = self.widths.iter().find(|(_, &s)| s == 0) {
            return Err(ConstructionError::Range(format!("width of edge {}-{} must be at least 1", e.0, e.1)));
        }
        if self.thorns.len() != self.base.n() {
            return Err(ConstructionError::Range(format!(
                "{} thorn counts given for {} vertices",
                self.thorns.len(),
                self.base.n()
            )));
        }
        Ok(())
    }
}

/// Where a vertex of an inflated graph came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum VertexRole {
    Base { vertex: usize },
    Middle { edge: Edge, index: usize },
    Leaf { vertex: usize, index: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Inflation {
    #[serde(skip)]
    pub graph: Graph,
    pub provenance: Vec<VertexRole>,
}

/// Inflates `spec.base`. Vertex order: base vertices, then diamond middles by
/// (edge, index) with edges in lexicographic order, then leaves by
/// (vertex, index).
pub fn diamond_inflate(spec: &InflationSpec) -> Result<Inflation, ConstructionError> {
    spec.validate()?;
    let mut provenance: Vec<VertexRole> = (0..spec.base.n()).map(|v| VertexRole::Base { vertex: v }).collect();
    let mut edges = Vec::new();
    for (&(a, b), &s) in &spec.widths {
        for index in 0..s {
            let m = provenance.len();
            provenance.push(VertexRole::Middle { edge: (a, b), index });
            edges.extend([(a, m), (b, m)]);
        }
    }
    for (v, &t) in spec.thorns.iter().enumerate() {
        for index in 0..t {
            let leaf = provenance.len();
            provenance.push(VertexRole::Leaf { vertex: v, index });
            edges.push((v, leaf));
        }
    }
    let graph = Graph::from_edges(provenance.len(), &edges)?;
    Ok(Inflation { graph, provenance })
}

#[derive(Clone, Debug, Serialize)]
pub struct WhitneyPair {
    pub model: WhitneyModel,
    pub thorns: ThornAssignment,
    pub solution: ThornSolution,
    pub g: Inflation,
    pub h: Inflation,
}

/// Inflates W_i with `widths` (in the order ab, ac, ad, bc, bd, cd restricted
/// to E(W_i)) and thorns `t`, and W_i' with the widths carried across φ_i and
/// the solved thorns. Whether the two results are nonisomorphic depends on
/// the widths; check with [`check_pair`].
pub fn whitney_pair(i: u8, t: ThornAssignment, widths: &[usize]) -> Result<WhitneyPair, ConstructionError> {
    let model = whitney_model(i)?;
    let solution = solve_thorn_equation(i, t)?;
    if widths.len() != model.phi.len() {
        return Err(ConstructionError::Range(format!(
            "type {i} needs {} widths, got {}",
            model.phi.len(),
            widths.len()
        )));
    }
    let g_widths = model.phi.iter().zip(widths).map(|(&(e, _), &s)| (e, s)).collect();
    let h_widths = model.phi.iter().zip(widths).map(|(&(_, e), &s)| (e, s)).collect();
    let g_spec = InflationSpec {
        base: model.w.clone(),
        widths: g_widths,
        thorns: t.values().iter().map(|&x| x as usize).collect(),
    };
    let h_spec = InflationSpec { base: model.wp.clone(), widths: h_widths, thorns: solution.as_vec() };
    let g = diamond_inflate(&g_spec)?;
    let h = diamond_inflate(&h_spec)?;
    Ok(WhitneyPair { model, thorns: t, solution, g, h })
}

/// Two inflations of one bipartite base: thorns t on the first, and
/// t' = t - k on side A, t + k on side B on the second.
#[derive(Clone, Debug)]
pub struct BipartitePairSpec {
    pub base: Graph,
    pub bipartition: Bipartition,
    pub widths: BTreeMap<Edge, usize>,
    pub k: usize,
    pub thorns: Vec<usize>,
    /// Require every t and t' to be 0 or 1, which for k = 1 leaves only
    /// t = 1 on A, 0 on B.
    pub special: bool,
}

impl BipartitePairSpec {
    /// The special configuration: k = 1, one thorn on every A vertex and none
    /// on B, with the bipartition that puts vertex 0 in A.
    pub fn special(base: Graph, widths: BTreeMap<Edge, usize>) -> Result<Self, ConstructionError> {
        let bipartition = base.bipartition().ok_or(ConstructionError::NotBipartite)?;
        let thorns = (0..base.n()).map(|v| bipartition.in_a(v) as usize).collect();
        Ok(BipartitePairSpec { base, bipartition, widths, k: 1, thorns, special: true })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BipartitePair {
    pub thorns: Vec<usize>,
    pub thorns_prime: Vec<usize>,
    pub i: Inflation,
    pub ip: Inflation,
}

pub fn bipartite_pair(spec: &BipartitePairSpec) -> Result<BipartitePair, ConstructionError> {
    if spec.base.edge_count() == 0 {
        return Err(ConstructionError::Range("the base graph needs at least one edge".into()));
    }
    if !spec.bipartition.is_valid_for(&spec.base) {
        return Err(ConstructionError::NotBipartite);
    }
    if spec.thorns.len() != spec.base.n() {
        return Err(ConstructionError::Range(format!(
            "{} thorn counts given for {} vertices",
            spec.thorns.len(),
            spec.base.n()
        )));
    }
    if spec.special && spec.k != 1 {
        return Err(ConstructionError::Range(format!("the special configuration has k = 1, got {}", spec.k)));
    }
    let k = spec.k as i64;
    let mut thorns_prime = Vec::with_capacity(spec.thorns.len());
    for (v, &t) in spec.thorns.iter().enumerate() {
        let tp = if spec.bipartition.in_a(v) { t as i64 - k } else { t as i64 + k };
        let bad = |component: String, value: i64| ConstructionError::Infeasible { component, value: value.to_string() };
        if tp < 0 || (spec.special && tp > 1) {
            return Err(bad(format!("t'_{v}"), tp));
        }
        if spec.special && t > 1 {
            return Err(bad(format!("t_{v}"), t as i64));
        }
        thorns_prime.push(tp as usize);
    }
    let first = InflationSpec { base: spec.base.clone(), widths: spec.widths.clone(), thorns: spec.thorns.clone() };
    let second = InflationSpec { thorns: thorns_prime.clone(), ..first.clone() };
    Ok(BipartitePair {
        thorns: spec.thorns.clone(),
        thorns_prime,
        i: diamond_inflate(&first)?,
        ip: diamond_inflate(&second)?,
    })
}

/// The constructible generalized K_{3,3} cases.
///
/// Case `i`: G is the double star with edges ab, ac, ad, be, bf (a..f = 0..5)
/// and H is C_4 + P_3 + P_3. Case `vii`: both are K_{3,3}.
pub fn k33_case(id: &str) -> Result<(Graph, Graph), ConstructionError> {
    match id {
        "i" => {
            let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])?;
            let c4 = named_graph(&NamedGraph::Cycle(4))?;
            let p3 = named_graph(&NamedGraph::Path(3))?;
            Ok((g, c4.disjoint_union(&p3).disjoint_union(&p3)))
        }
        "vii" => {
            let k33 = named_graph(&NamedGraph::CompleteBipartite(3, 3))?;
            Ok((k33.clone(), k33))
        }
        other => Err(ConstructionError::UnsupportedCase(other.to_string())),
    }
}

/// How two graphs relate through their P_3-graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub isomorphic: bool,
    pub p3_isomorphic: bool,
    pub p3_connected: (bool, bool),
}

impl PairCheck {
    /// Nonisomorphic graphs with isomorphic connected P_3-graphs.
    pub fn is_witness(&self) -> bool {
        !self.isomorphic && self.p3_isomorphic && self.p3_connected.0 && self.p3_connected.1
    }
}

pub fn check_pair(g: &Graph, h: &Graph) -> Result<PairCheck, IsoError> {
    check_pair_with(g, h, DEFAULT_NODE_BUDGET)
}

/// [`check_pair`] with an explicit canonical labeling budget.
pub fn check_pair_with(g: &Graph, h: &Graph, node_budget: u64) -> Result<PairCheck, IsoError> {
    let pg = build_path_graph(g, 3)?;
    let ph = build_path_graph(h, 3)?;
    let canon = |x: &Graph| canonical_form_with(x, None, node_budget).map(|c| c.canon_g6);
    Ok(PairCheck {
        isomorphic: are_isomorphic_with(g, h, node_budget)?.is_some(),
        p3_isomorphic: canon(&pg.pgraph)? == canon(&ph.pgraph)?,
        p3_connected: (pg.pgraph.is_connected(), ph.pgraph.is_connected()),
    })
}

/// Every width vector with entries in `1..=max_width` for which the Whitney
/// pair of type `i` with thorns `t` is a witness (see [`PairCheck::is_witness`]).
pub fn search_whitney_widths(
    i: u8,
    t: ThornAssignment,
    max_width: usize,
) -> Result<Vec<Vec<usize>>, ConstructionError> {
    let edges = whitney_model(i)?.phi.len();
    let mut widths = vec![1; edges];
    let mut found = Vec::new();
    if max_width == 0 {
        return Ok(found);
    }
    loop {
        let pair = whitney_pair(i, t, &widths)?;
        let check = check_pair(&pair.g.graph, &pair.h.graph)
            .map_err(|e| ConstructionError::Range(format!("checking widths {widths:?}: {e}")))?;
        if check.is_witness() {
            found.push(widths.clone());
        }
        let Some(pos) = widths.iter().rposition(|&s| s < max_width) else { break };
        widths[pos] += 1;
        widths[pos + 1..].iter_mut().for_each(|s| *s = 1);
    }
    Ok(found)
}
