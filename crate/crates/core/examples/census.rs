//! Runs the P_3 census up to a given order and prints timings and the shared classes.
//!
//! cargo run --release --example census -- 8

use std::time::Instant;

use pkgraph::census::{audit_report, connected_population, p3_census, CensusOptions};
use pkgraph::iso::DEFAULT_NODE_BUDGET;

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let t = Instant::now();
    let population = connected_population(1, max_n, DEFAULT_NODE_BUDGET).expect("enumeration");
    println!("enumerated {} connected graphs in {:.2?}", population.len(), t.elapsed());
    let t = Instant::now();
    let report = p3_census(population, &CensusOptions::default()).expect("census");
    println!("census over {} classes in {:.2?}", report.classes.len(), t.elapsed());
    let verdict = audit_report(&report);
    for c in &verdict.shared_classes {
        println!("{} <- {:?}", c.pk_canon, c.members);
    }
    println!("{:?}: {:?}", verdict.status, verdict.reasons);
}
