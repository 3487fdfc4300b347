//! Path graphs P_k(G) and the graphs that share them.
//!
//! The vertices of P_k(G) are the k-vertex paths of G; two are adjacent when
//! their union is a path on k+1 vertices or a cycle on k vertices. This crate
//! builds path graphs, checks P_k-isomorphisms, generates the diamond
//! inflation families whose members share a P_3-graph, and runs an exhaustive
//! census over small connected graphs grouping them by canonical P_3-graph.
//!
//! ```
//! use pkgraph::{constructions::{named_graph, NamedGraph}, iso::are_isomorphic, pathgraph::build_path_graph};
//!
//! let sw = named_graph(&NamedGraph::Sw).unwrap();
//! let p3 = build_path_graph(&sw, 3).unwrap();
//! let c6 = named_graph(&NamedGraph::Cycle(6)).unwrap();
//! assert!(are_isomorphic(&p3.pgraph, &c6).unwrap().is_some());
//! ```

pub mod census;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod pathgraph;

pub use error::{CensusError, ConstructionError, Graph6Error, GraphError, IsoError, PathError, SwapError};
pub use graph::{Bipartition, Graph};
pub use graph6::{parse_graph6, write_graph6};

// The guide's code blocks run as doctests so the book cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/path-graphs.md")]
    mod path_graphs {}
    #[doc = include_str!("../../../book/src/swaps.md")]
    mod swaps {}
    #[doc = include_str!("../../../book/src/canonical-forms.md")]
    mod canonical_forms {}
    #[doc = include_str!("../../../book/src/inflation.md")]
    mod inflation {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
