mod common;

use common::arb_graph;
use pkgraph::{parse_graph6, write_graph6, Graph};
use proptest::prelude::*;

fn union_find_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn connectivity_matches_union_find(g in arb_graph(12)) {
        prop_assert_eq!(g.is_connected(), union_find_connected(&g));
    }

    #[test]
    fn bipartition_is_valid_when_present(g in arb_graph(10)) {
        if let Some(b) = g.bipartition() {
            prop_assert!(b.is_valid_for(&g));
            prop_assert!(b.side_a.contains(&0));
        }
    }
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        let s = write_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

#[test]
fn graph6_round_trip_all_graphs_up_to_5() {
    for n in 0usize..=5 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = common::graph_from_mask(n, mask);
            assert_eq!(parse_graph6(&write_graph6(&g).unwrap()).unwrap(), g);
        }
    }
}

#[test]
fn bipartition_none_on_odd_cycles() {
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert!(c5.bipartition().is_none());
}
