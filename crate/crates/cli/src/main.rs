//! `pk`: path graphs, P_3-isomorphisms, generators and the census.
//!
//! Exit codes: 0 on success or a passing audit, 1 on usage or input errors,
//! 2 when an audit or a verification fails.

use std::error::Error;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pkgraph::census::{audit_report, connected_population, p3_census, report_json, CensusOptions};
use pkgraph::constructions::{
    bipartite_pair, check_pair_with, diamond_inflate, k33_case, named_graph, search_whitney_widths, whitney_model,
    whitney_pair, BipartitePairSpec, InflationSpec, NamedGraph, PairCheck, ThornAssignment,
};
use pkgraph::graph6::parse_graph6_lines;
use pkgraph::iso::{are_isomorphic_with, verify_pk_isomorphism, PkIsomorphism, PkVerdict, DEFAULT_NODE_BUDGET};
use pkgraph::pathgraph::{build_path_graph, build_swap, PathK, SwapParams, SwapPermutation};
use pkgraph::{parse_graph6, write_graph6, Graph};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

const BUDGET_VAR: &str = "PK_NODE_BUDGET";

#[derive(Parser)]
#[command(name = "pk", version, about = "Path graphs P_k(G) and graphs that share them")]
#[command(after_help = "Graph arguments are graph6 files, `-` for stdin, or graph6 tokens.\n\
    PK_NODE_BUDGET overrides the canonical labeling search budget.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_k(G) as graph6 for every input graph.
    Compute {
        #[arg(short)]
        k: usize,
        /// graph6 file, one graph per line; `-` reads stdin.
        #[arg(default_value = "-")]
        input: String,
        /// Print one JSON object per graph with the path labels.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two graphs are isomorphic and print a certificate.
    Iso { a: String, b: String },
    /// Print a generated graph as graph6.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Build a pair of graphs and compare them and their P_3-graphs.
    Pair {
        #[command(subcommand)]
        kind: PairKind,
    },
    /// Group connected graphs by canonical P_k-graph and audit the classes.
    Census {
        #[arg(long, required_unless_present = "g6")]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1, conflicts_with = "g6")]
        min_n: usize,
        #[arg(short, default_value_t = 3)]
        k: usize,
        /// Read the population from a graph6 file instead of enumerating it.
        #[arg(long, conflicts_with = "max_n")]
        g6: Option<String>,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Keep graphs whose P_k-graph is disconnected.
        #[arg(long)]
        allow_disconnected: bool,
    },
    /// Build a B-, S- or D-swap on the P_3's of a graph.
    Swap {
        kind: SwapArg,
        graph: String,
        /// b: A B C D (thorns abc, abd); s: A B C D E (the P_5 abcde);
        /// d: A B I J (middles i < j of the diamond with ends a, b).
        #[arg(required = true)]
        params: Vec<usize>,
        /// Check that the swap is a P_3-automorphism.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// K_{1,3} with every edge subdivided.
    Sw,
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    Book {
        pages: usize,
    },
    Spider {
        #[arg(value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
    /// W_i then W_i', the Whitney graphs of type I.
    WhitneyModel {
        #[arg(long = "type")]
        kind: u8,
    },
    /// Replace each base edge by an unbraced diamond and hang thorns.
    Inflate {
        #[arg(long)]
        base: String,
        /// One width for all edges, or one per edge in lexicographic order.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        widths: Vec<usize>,
        /// One count for all vertices, or one per vertex.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        thorns: Vec<usize>,
        /// Write the vertex provenance as JSON to this file.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PairKind {
    /// Inflations of W_i and W_i' related by the thorn equation.
    Whitney {
        #[arg(long = "type")]
        kind: u8,
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "0,0,0,0")]
        thorns: Vec<u8>,
        /// Widths on ab, ac, ad, bc, bd, cd restricted to E(W_i).
        #[arg(long, value_delimiter = ',', required_unless_present = "search")]
        widths: Vec<usize>,
        /// List every width vector up to this bound that gives a witness.
        #[arg(long, conflicts_with = "widths")]
        search: Option<usize>,
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Two inflations of a bipartite base with thorns moved across sides.
    Bipartite {
        #[arg(long)]
        base: String,
        /// One width for all edges, or one per edge in lexicographic order.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        widths: Vec<usize>,
        /// Thorns on the first graph; defaults to 1 on side A, 0 on side B.
        #[arg(long, value_delimiter = ',')]
        thorns: Option<Vec<usize>>,
        #[arg(short, default_value_t = 1)]
        k: usize,
        /// Allow thorn counts outside 0 and 1.
        #[arg(long)]
        general: bool,
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// The generalized K_{3,3} cases (i) and (vii).
    K33 {
        #[arg(long)]
        case: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SwapArg {
    B,
    S,
    D,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pk: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    let budget = node_budget()?;
    match command {
        Command::Compute { k, input, json } => {
            for g in read_graphs(&input)? {
                let pk = build_path_graph(&g, k)?;
                let token = write_graph6(&pk.pgraph)?;
                if json {
                    #[derive(Serialize)]
                    struct Line<'a> {
                        pk: &'a str,
                        labels: &'a [PathK],
                    }
                    println!("{}", serde_json::to_string(&Line { pk: &token, labels: &pk.labels })?);
                } else {
                    println!("{token}");
                }
            }
            Ok(0)
        }
        Command::Iso { a, b } => {
            let (g, h) = (graph_arg(&a)?, graph_arg(&b)?);
            match are_isomorphic_with(&g, &h, budget)? {
                Some(cert) => {
                    println!("isomorphic: yes");
                    println!("map: {}", join(&cert.map));
                }
                None => println!("isomorphic: no"),
            }
            Ok(0)
        }
        Command::Gen { family } => generate(family),
        Command::Pair { kind } => pair(kind, budget),
        Command::Census { max_n, min_n, k, g6, json, threads, allow_disconnected } => {
            let graphs = match g6 {
                Some(path) => read_graphs(&path)?,
                None => connected_population(min_n, max_n.expect("clap requires --max-n"), budget)?,
            };
            let opts = CensusOptions { k, require_connected_pk: !allow_disconnected, node_budget: budget, threads };
            let report = p3_census(graphs, &opts)?;
            let verdict = audit_report(&report);
            let text = report_json(&report, &verdict);
            if let Some(out) = json {
                fs::write(&out, &text).map_err(|e| format!("{}: {e}", out.display()))?;
            }
            print!("{text}");
            Ok(verdict.exit_code() as u8)
        }
        Command::Swap { kind, graph, params, verify } => {
            let g = graph_arg(&graph)?;
            let want = match kind {
                SwapArg::B | SwapArg::D => 4,
                SwapArg::S => 5,
            };
            if params.len() != want {
                return Err(format!("this swap takes {want} parameters, got {}", params.len()).into());
            }
            let p = &params;
            let swap_params = match kind {
                SwapArg::B => SwapParams::B { a: p[0], b: p[1], c: p[2], d: p[3] },
                SwapArg::S => SwapParams::S { path: [p[0], p[1], p[2], p[3], p[4]] },
                SwapArg::D => SwapParams::D { a: p[0], b: p[1], i: p[2], j: p[3] },
            };
            let swap = build_swap(&g, &swap_params)?;
            let verdict = if verify { Some(verify_pk_isomorphism(&PkIsomorphism::from(&swap), &g, &g)?) } else { None };
            #[derive(Serialize)]
            struct Out<'a> {
                swap: &'a SwapPermutation,
                #[serde(skip_serializing_if = "Option::is_none")]
                verify: Option<&'a PkVerdict>,
            }
            println!("{}", serde_json::to_string_pretty(&Out { swap: &swap, verify: verdict.as_ref() })?);
            Ok(if verdict.is_some_and(|v| !v.is_valid()) { 2 } else { 0 })
        }
    }
}

fn generate(family: Family) -> Result<u8> {
    let named = match family {
        Family::Sw => NamedGraph::Sw,
        Family::Cycle { n } => NamedGraph::Cycle(n),
        Family::Path { n } => NamedGraph::Path(n),
        Family::Star { leaves } => NamedGraph::Star(leaves),
        Family::Complete { n } => NamedGraph::Complete(n),
        Family::CompleteBipartite { m, n } => NamedGraph::CompleteBipartite(m, n),
        Family::Book { pages } => NamedGraph::Book(pages),
        Family::Spider { legs } => NamedGraph::Spider(legs),
        Family::WhitneyModel { kind } => {
            let model = whitney_model(kind)?;
            println!("{}", write_graph6(&model.w)?);
            println!("{}", write_graph6(&model.wp)?);
            return Ok(0);
        }
        Family::Inflate { base, widths, thorns, provenance } => {
            let base = graph_arg(&base)?;
            let widths = spread(widths, base.edge_count(), "widths", "edges")?;
            let thorns = spread(thorns, base.n(), "thorns", "vertices")?;
            let inflation = diamond_inflate(&InflationSpec::from_lists(base, &widths, thorns)?)?;
            write_sidecar(provenance.as_deref(), &inflation)?;
            println!("{}", write_graph6(&inflation.graph)?);
            return Ok(0);
        }
    };
    println!("{}", write_graph6(&named_graph(&named)?)?);
    Ok(0)
}

fn pair(kind: PairKind, budget: u64) -> Result<u8> {
    let (g, h) = match kind {
        PairKind::Whitney { kind, thorns, widths, search, provenance } => {
            let values: [u8; 4] =
                thorns.try_into().map_err(|t: Vec<u8>| format!("--thorns needs 4 values, got {}", t.len()))?;
            let t = ThornAssignment::new(values)?;
            if let Some(max) = search {
                for w in search_whitney_widths(kind, t, max)? {
                    println!("{}", join(&w));
                }
                return Ok(0);
            }
            let p = whitney_pair(kind, t, &widths)?;
            write_sidecar(provenance.as_deref(), &p)?;
            (p.g.graph, p.h.graph)
        }
        PairKind::Bipartite { base, widths, thorns, k, general, provenance } => {
            let base = graph_arg(&base)?;
            let widths = spread(widths, base.edge_count(), "widths", "edges")?;
            let widths = base.edges().into_iter().zip(widths).collect();
            let mut spec = BipartitePairSpec::special(base, widths)?;
            if let Some(t) = thorns {
                spec.thorns = spread(t, spec.base.n(), "thorns", "vertices")?;
            }
            spec.k = k;
            spec.special = !general;
            let p = bipartite_pair(&spec)?;
            write_sidecar(provenance.as_deref(), &p)?;
            (p.i.graph, p.ip.graph)
        }
        PairKind::K33 { case } => k33_case(&case)?,
    };
    let PairCheck { isomorphic, p3_isomorphic, .. } = check_pair_with(&g, &h, budget)?;
    println!("{}", write_graph6(&g)?);
    println!("{}", write_graph6(&h)?);
    println!("isomorphic: {}", yes_no(isomorphic));
    println!("p3_isomorphic: {}", yes_no(p3_isomorphic));
    Ok(0)
}

fn node_budget() -> Result<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|e| format!("{BUDGET_VAR}={v:?}: {e}").into()),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_NODE_BUDGET),
        Err(e) => Err(format!("{BUDGET_VAR}: {e}").into()),
    }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| format!("{src}: {e}").into())
    }
}

fn read_graphs(src: &str) -> Result<Vec<Graph>> {
    parse_graph6_lines(&read_source(src)?).map_err(|(line, e)| format!("{src}:{line}: {e}").into())
}

/// A graph argument: `-`, an existing file (its first graph), or a token.
fn graph_arg(arg: &str) -> Result<Graph> {
    if arg == "-" || Path::new(arg).is_file() {
        read_graphs(arg)?.into_iter().next().ok_or_else(|| format!("{arg}: no graph").into())
    } else {
        Ok(parse_graph6(arg)?)
    }
}

/// A single value repeated `len` times, or exactly `len` values.
fn spread(values: Vec<usize>, len: usize, what: &str, per: &str) -> Result<Vec<usize>> {
    match values.len() {
        1 => Ok(vec![values[0]; len]),
        n if n == len => Ok(values),
        n => Err(format!("{n} {what} given for {len} {per}").into()),
    }
}

fn write_sidecar<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
