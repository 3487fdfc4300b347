//! Graph isomorphism and P_k-isomorphisms.

mod canon;

pub use canon::{canonical_form, canonical_form_with, CanonicalForm, DEFAULT_NODE_BUDGET};

use serde::Serialize;

use crate::error::IsoError;
use crate::graph::Graph;
use crate::pathgraph::{build_path_graph, enumerate_paths, PathK, SwapPermutation};

/// A vertex bijection G -> H that preserves adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub map: Vec<usize>,
}

impl IsoCertificate {
    pub fn identity(n: usize) -> Self {
        IsoCertificate { map: (0..n).collect() }
    }

    pub fn check(&self, g: &Graph, h: &Graph) -> Result<(), IsoError> {
        let n = g.n();
        if h.n() != n || self.map.len() != n {
            return Err(IsoError::InvalidCertificate(format!(
                "orders {} and {} with a map of length {}",
                n,
                h.n(),
                self.map.len()
            )));
        }
        let mut hit = vec![false; n];
        for &w in &self.map {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return Err(IsoError::InvalidCertificate(format!("{w} is out of range or hit twice")));
            }
        }
        if g.edge_count() != h.edge_count() {
            return Err(IsoError::InvalidCertificate("edge counts differ".into()));
        }
        for (u, v) in g.edges() {
            if !h.has_edge(self.map[u], self.map[v]) {
                return Err(IsoError::InvalidCertificate(format!(
                    "edge {u}-{v} maps to non-edge {}-{}",
                    self.map[u], self.map[v]
                )));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> IsoCertificate {
        let mut map = vec![0; self.map.len()];
        for (v, &w) in self.map.iter().enumerate() {
            map[w] = v;
        }
        IsoCertificate { map }
    }
}

/// Decides isomorphism through canonical forms and returns a checked
/// certificate when the graphs are isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<IsoCertificate>, IsoError> {
    are_isomorphic_with(g, h, DEFAULT_NODE_BUDGET)
}

/// [`are_isomorphic`] with an explicit canonical labeling budget.
pub fn are_isomorphic_with(g: &Graph, h: &Graph, node_budget: u64) -> Result<Option<IsoCertificate>, IsoError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let cg = canonical_form_with(g, None, node_budget)?;
    let ch = canonical_form_with(h, None, node_budget)?;
    if cg.canon_g6 != ch.canon_g6 {
        return Ok(None);
    }
    let mut from_canon_h = vec![0; h.n()];
    for (v, &p) in ch.relabeling.iter().enumerate() {
        from_canon_h[p] = v;
    }
    let cert = IsoCertificate { map: cg.relabeling.iter().map(|&p| from_canon_h[p]).collect() };
    cert.check(g, h)?;
    Ok(Some(cert))
}

/// A bijection between the k-paths of two graphs, by index into their
/// `enumerate_paths` lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PkIsomorphism {
    pub k: usize,
    pub map: Vec<usize>,
}

impl From<&SwapPermutation> for PkIsomorphism {
    fn from(s: &SwapPermutation) -> Self {
        PkIsomorphism { k: 3, map: s.mapping.clone() }
    }
}

/// The P_k-isomorphism σ* induced by a graph isomorphism σ:
/// σ*(a_1…a_k) = σ(a_1)…σ(a_k).
pub fn induce_pk_isomorphism(
    sigma: &IsoCertificate,
    g: &Graph,
    h: &Graph,
    k: usize,
) -> Result<PkIsomorphism, IsoError> {
    sigma.check(g, h)?;
    let from = enumerate_paths(g, k)?;
    let to = enumerate_paths(h, k)?;
    let map = from
        .iter()
        .map(|p| {
            let image = PathK::new(p.vertices().iter().map(|&v| sigma.map[v]).collect());
            to.binary_search(&image).expect("an isomorphism maps paths to paths")
        })
        .collect();
    Ok(PkIsomorphism { k, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PkVerdict {
    Valid,
    /// `alpha ~ beta` in P_k(G) disagrees with `tau(alpha) ~ tau(beta)` in P_k(H).
    Violation {
        alpha: PathK,
        beta: PathK,
        adjacent_in_source: bool,
    },
}

impl PkVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PkVerdict::Valid)
    }
}

/// Checks that `tau` is an isomorphism P_k(G) -> P_k(H).
///
/// Edges of P_k(G) are scanned first, then non-edges, each in lexicographic
/// index order; the first pair whose image disagrees is reported.
pub fn verify_pk_isomorphism(tau: &PkIsomorphism, g: &Graph, h: &Graph) -> Result<PkVerdict, IsoError> {
    let pg = build_path_graph(g, tau.k)?;
    let ph = build_path_graph(h, tau.k)?;
    let n = pg.labels.len();
    if tau.map.len() != n || ph.labels.len() != n {
        return Err(IsoError::NotBijective(format!(
            "map of length {} between path sets of sizes {} and {}",
            tau.map.len(),
            n,
            ph.labels.len()
        )));
    }
    let mut hit = vec![false; n];
    for &j in &tau.map {
        if j >= n || std::mem::replace(&mut hit[j], true) {
            return Err(IsoError::NotBijective(format!("target index {j} is out of range or hit twice")));
        }
    }
    for want in [true, false] {
        for i in 0..n {
            for j in i + 1..n {
                if pg.pgraph.has_edge(i, j) == want && ph.pgraph.has_edge(tau.map[i], tau.map[j]) != want {
                    return Ok(PkVerdict::Violation {
                        alpha: pg.labels[i].clone(),
                        beta: pg.labels[j].clone(),
                        adjacent_in_source: want,
                    });
                }
            }
        }
    }
    Ok(PkVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathgraph::{build_swap, SwapParams};

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn sw() -> Graph {
        Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn sw_is_not_c6() {
        assert_ne!(canonical_form(&sw()).unwrap(), canonical_form(&cycle(6)).unwrap());
        assert_eq!(are_isomorphic(&sw(), &cycle(6)).unwrap(), None);
    }

    #[test]
    fn certificate_for_relabeled_cycle() {
        let c = cycle(6);
        let perm = [3, 5, 0, 1, 4, 2];
        let d = c.permute(&perm);
        let cert = are_isomorphic(&c, &d).unwrap().unwrap();
        cert.check(&c, &d).unwrap();
        cert.inverse().check(&d, &c).unwrap();
    }

    #[test]
    fn bad_certificates() {
        let c = cycle(4);
        let bad = IsoCertificate { map: vec![0, 2, 1, 3] };
        assert!(matches!(bad.check(&c, &c), Err(IsoError::InvalidCertificate(_))));
        let dup = IsoCertificate { map: vec![0, 0, 1, 2] };
        assert!(dup.check(&c, &c).is_err());
        assert!(induce_pk_isomorphism(&bad, &c, &c, 3).is_err());
    }

    #[test]
    fn induced_identity_and_rotation() {
        let c = cycle(6);
        let id = induce_pk_isomorphism(&IsoCertificate::identity(6), &c, &c, 3).unwrap();
        assert_eq!(id.map, (0..6).collect::<Vec<_>>());
        let rot = IsoCertificate { map: (0..6).map(|i| (i + 1) % 6).collect() };
        let tau = induce_pk_isomorphism(&rot, &c, &c, 3).unwrap();
        // a single 6-cycle on the path indices
        let mut i = 0;
        let mut seen = 0;
        loop {
            i = tau.map[i];
            seen += 1;
            if i == 0 {
                break;
            }
        }
        assert_eq!(seen, 6);
        assert!(verify_pk_isomorphism(&tau, &c, &c).unwrap().is_valid());
    }

    #[test]
    fn non_automorphism_of_p5_reports_first_violation() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        // swap abc and bcd, fix cde
        let tau = PkIsomorphism { k: 3, map: vec![1, 0, 2] };
        match verify_pk_isomorphism(&tau, &p5, &p5).unwrap() {
            PkVerdict::Violation { alpha, beta, adjacent_in_source } => {
                assert_eq!(alpha.vertices(), &[1, 2, 3]);
                assert_eq!(beta.vertices(), &[2, 3, 4]);
                assert!(adjacent_in_source);
            }
            PkVerdict::Valid => panic!("transposing adjacent paths of P_5 is not a P_3-automorphism"),
        }
    }

    #[test]
    fn non_bijective_maps_are_errors() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let tau = PkIsomorphism { k: 3, map: vec![0, 0, 2] };
        assert!(matches!(verify_pk_isomorphism(&tau, &p5, &p5), Err(IsoError::NotBijective(_))));
        let short = PkIsomorphism { k: 3, map: vec![0] };
        assert!(matches!(verify_pk_isomorphism(&short, &p5, &p5), Err(IsoError::NotBijective(_))));
    }

    #[test]
    fn d_swap_on_c4_verifies() {
        let c4 = cycle(4);
        let s = build_swap(&c4, &SwapParams::D { a: 0, b: 2, i: 0, j: 1 }).unwrap();
        assert!(verify_pk_isomorphism(&PkIsomorphism::from(&s), &c4, &c4).unwrap().is_valid());
    }
}
