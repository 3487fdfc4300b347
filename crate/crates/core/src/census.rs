//! Isomorph-free enumeration of connected graphs and the census that groups
//! them by canonical P_k-graph.
//!
//! For k = 3 with connected P_3-graphs, no class may hold three pairwise
//! nonisomorphic originals; [`audit_report`] checks exactly that.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CensusError;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::iso::{canonical_form_with, DEFAULT_NODE_BUDGET};
use crate::pathgraph::build_path_graph;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 9;

/// Connected graphs on `n` vertices, one per isomorphism class, canonically
/// labeled and sorted by canonical graph6.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, CensusError> {
    Ok(enumerate_connected_levels(n, DEFAULT_ENUMERATION_LIMIT, DEFAULT_NODE_BUDGET)?.pop().unwrap())
}

/// All levels `1..=max_n` of the enumeration; `levels[i]` holds order `i + 1`.
///
/// Each level extends the previous one by a vertex joined to every nonempty
/// subset of the parent's vertices. A child is kept when the new vertex lies
/// in the automorphism orbit of the child's canonical deletion vertex: the
/// non-cut vertex with the largest canonical position. Every class then has
/// exactly one parent, so deduplicating among one parent's children is enough.
pub fn enumerate_connected_levels(
    max_n: usize,
    limit: usize,
    node_budget: u64,
) -> Result<Vec<Vec<Graph>>, CensusError> {
    if max_n == 0 {
        return Err(CensusError::ZeroOrder);
    }
    if max_n > limit {
        return Err(CensusError::LimitExceeded { n: max_n, limit });
    }
    let mut levels = vec![vec![Graph::new(1)]];
    while levels.len() < max_n {
        let parents = levels.last().unwrap();
        let children: Vec<Vec<(String, Graph)>> =
            parents.par_iter().map(|p| accepted_children(p, node_budget)).collect::<Result<_, _>>()?;
        let mut next: Vec<(String, Graph)> = children.into_iter().flatten().collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(next.into_iter().map(|(_, g)| g).collect());
    }
    Ok(levels)
}

fn accepted_children(parent: &Graph, node_budget: u64) -> Result<Vec<(String, Graph)>, CensusError> {
    let m = parent.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let mut child = parent.clone();
        let new = child.add_vertex();
        for u in (0..m).filter(|u| mask >> u & 1 == 1) {
            child.add_edge(u, new).expect("in range");
        }
        let canon = canonical_form_with(&child, None, node_budget)?;
        let deletion = (0..=m)
            .filter(|&x| is_non_cut(&child, x))
            .max_by_key(|&x| canon.relabeling[x])
            .expect("a connected graph has a non-cut vertex");
        if deletion != new && !same_orbit(&child, new, deletion, node_budget)? {
            continue;
        }
        if seen.insert(canon.canon_g6.clone()) {
            out.push((canon.canon_g6.clone(), canon.graph(&child)));
        }
    }
    Ok(out)
}

fn is_non_cut(g: &Graph, x: usize) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| v != x).collect();
    keep.is_empty() || g.induced(&keep).is_connected()
}

fn same_orbit(g: &Graph, a: usize, b: usize, node_budget: u64) -> Result<bool, CensusError> {
    let mark = |x: usize| -> Vec<u32> { (0..g.n()).map(|v| (v == x) as u32).collect() };
    let ca = canonical_form_with(g, Some(&mark(a)), node_budget)?;
    let cb = canonical_form_with(g, Some(&mark(b)), node_budget)?;
    Ok(ca.canon_g6 == cb.canon_g6)
}

/// Connected graphs with `min_n <= n <= max_n`, smallest order first.
pub fn connected_population(min_n: usize, max_n: usize, node_budget: u64) -> Result<Vec<Graph>, CensusError> {
    let levels = enumerate_connected_levels(max_n, DEFAULT_ENUMERATION_LIMIT, node_budget)?;
    Ok(levels.into_iter().skip(min_n.max(1) - 1).flatten().collect())
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub k: usize,
    pub require_connected_pk: bool,
    pub node_budget: u64,
    /// Worker threads; `None` uses rayon's global pool.
    pub threads: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { k: 3, require_connected_pk: true, node_budget: DEFAULT_NODE_BUDGET, threads: None }
    }
}

/// Describes the population by content, so an enumerated population and the
/// same graphs read from a file (in any order) describe identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Population {
    pub size: usize,
    pub min_n: usize,
    pub max_n: usize,
    /// SHA-256 of the sorted canonical graph6 strings, one per line.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusClass {
    pub pk_canon: String,
    pub members: Vec<String>,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Dropped {
    pub empty_pk: usize,
    pub disconnected_pk: usize,
    pub disconnected_original: usize,
    pub duplicate: usize,
}

impl Dropped {
    pub fn total(&self) -> usize {
        self.empty_pk + self.disconnected_pk + self.disconnected_original + self.duplicate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub k: usize,
    pub require_connected_pk: bool,
    pub population: Population,
    pub classes: Vec<CensusClass>,
    pub dropped: Dropped,
    /// Graphs with nonempty P_k and no isolated vertex in it, counted before
    /// the connectivity filter.
    pub pk_without_isolated_vertices: usize,
    /// Graphs whose canonical labeling ran out of budget, as graph6.
    pub skipped: Vec<String>,
}

impl CensusReport {
    pub fn class(&self, pk_canon: &str) -> Option<&CensusClass> {
        self.classes.binary_search_by(|c| c.pk_canon.as_str().cmp(pk_canon)).ok().map(|i| &self.classes[i])
    }
}

enum Outcome {
    DisconnectedOriginal,
    EmptyPk,
    Pk { key: Option<String>, isolated_free: bool },
}

struct Item {
    original: String,
    outcome: Result<Outcome, ()>,
}

fn process(g: &Graph, opts: &CensusOptions) -> Item {
    let original = match canonical_form_with(g, None, opts.node_budget) {
        Ok(c) => c.canon_g6,
        Err(_) => return Item { original: write_graph6(g).unwrap_or_default(), outcome: Err(()) },
    };
    let outcome = (|| {
        if !g.is_connected() {
            return Ok(Outcome::DisconnectedOriginal);
        }
        let pk = build_path_graph(g, opts.k).map_err(|_| ())?;
        if pk.labels.is_empty() {
            return Ok(Outcome::EmptyPk);
        }
        let isolated_free = !pk.pgraph.has_isolated_vertex();
        if opts.require_connected_pk && !pk.pgraph.is_connected() {
            return Ok(Outcome::Pk { key: None, isolated_free });
        }
        let key = canonical_form_with(&pk.pgraph, None, opts.node_budget).map_err(|_| ())?.canon_g6;
        Ok(Outcome::Pk { key: Some(key), isolated_free })
    })();
    Item { original, outcome }
}

/// Groups `graphs` by the canonical form of their P_k-graphs.
///
/// Output does not depend on input order or thread count: per-graph work
/// runs in parallel, and the fold is keyed by canonical strings.
pub fn p3_census<I>(graphs: I, opts: &CensusOptions) -> Result<CensusReport, CensusError>
where
    I: IntoIterator<Item = Graph>,
{
    if opts.k < 2 {
        return Err(crate::error::PathError::InvalidLength(opts.k).into());
    }
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let run = || graphs.par_iter().map(|g| process(g, opts)).collect::<Vec<Item>>();
    let items = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CensusError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut classes: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut dropped = Dropped::default();
    let mut skipped = Vec::new();
    let mut isolated_free = 0;
    let mut originals = Vec::with_capacity(items.len());
    for item in items {
        originals.push(item.original.clone());
        match item.outcome {
            Err(()) => skipped.push(item.original),
            Ok(Outcome::DisconnectedOriginal) => dropped.disconnected_original += 1,
            Ok(Outcome::EmptyPk) => dropped.empty_pk += 1,
            Ok(Outcome::Pk { key, isolated_free: free }) => {
                isolated_free += free as usize;
                match key {
                    None => dropped.disconnected_pk += 1,
                    Some(key) => {
                        if !classes.entry(key).or_default().insert(item.original) {
                            dropped.duplicate += 1;
                        }
                    }
                }
            }
        }
    }
    skipped.sort();
    originals.sort();
    let mut hasher = Sha256::new();
    for o in &originals {
        hasher.update(o.as_bytes());
        hasher.update(b"\n");
    }
    let population = Population {
        size: graphs.len(),
        min_n: graphs.iter().map(Graph::n).min().unwrap_or(0),
        max_n: graphs.iter().map(Graph::n).max().unwrap_or(0),
        digest: hex::encode(hasher.finalize()),
    };
    let classes = classes
        .into_iter()
        .map(|(pk_canon, members)| CensusClass {
            size: members.len(),
            members: members.into_iter().collect(),
            pk_canon,
        })
        .collect();
    Ok(CensusReport {
        k: opts.k,
        require_connected_pk: opts.require_connected_pk,
        population,
        classes,
        dropped,
        pk_without_isolated_vertices: isolated_free,
        skipped,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// k != 3: nothing is claimed, the classes are reported as found.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<String>,
    /// Every class with two or more members.
    pub shared_classes: Vec<CensusClass>,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Info => 0,
            Status::Fail => 2,
        }
    }
}

/// PASS iff k = 3, no class has three or more members and nothing was skipped.
pub fn audit_report(r: &CensusReport) -> Verdict {
    let shared_classes: Vec<CensusClass> = r.classes.iter().filter(|c| c.size >= 2).cloned().collect();
    if r.k != 3 {
        return Verdict { status: Status::Info, reasons: vec![format!("k = {} is not audited", r.k)], shared_classes };
    }
    let mut reasons: Vec<String> = shared_classes
        .iter()
        .filter(|c| c.size >= 3)
        .map(|c| format!("class {} has {} nonisomorphic members", c.pk_canon, c.size))
        .collect();
    if !r.skipped.is_empty() {
        reasons.push(format!("{} graphs skipped on canonicalization budget", r.skipped.len()));
    }
    let status = if reasons.is_empty() { Status::Pass } else { Status::Fail };
    Verdict { status, reasons, shared_classes }
}

#[derive(Serialize)]
struct Document<'a> {
    #[serde(flatten)]
    report: &'a CensusReport,
    verdict: &'a Verdict,
}

/// The JSON report: the census fields followed by the verdict, pretty printed
/// with a trailing newline.
pub fn report_json(report: &CensusReport, verdict: &Verdict) -> String {
    let mut s = serde_json::to_string_pretty(&Document { report, verdict }).expect("report serializes");
    s.push('\n');
    s
}
