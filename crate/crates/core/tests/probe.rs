use std::time::Instant;

use strongcover::exact::{exact_cover_number, CoverNumber, SearchConfig};
use strongcover::hypergraph::complete_hypergraph;

#[test]
#[ignore]
fn probe_k7() {
    let g = complete_hypergraph(7, 3).unwrap();
    let config = SearchConfig {
        vertex_symmetry: true,
        node_budget: 500_000_000,
        ..SearchConfig::default()
    };
    let t = Instant::now();
    let res = exact_cover_number(&g, 3, 3, &config).unwrap();
    println!(
        "K_7^3 (3,3): {:?} nodes={} exhausted={:?} in {:?}",
        res.value,
        res.nodes,
        res.exhausted_through(),
        t.elapsed()
    );
    assert_eq!(res.value, CoverNumber::Exact(4));
}

#[test]
#[ignore]
fn probe_table_cells() {
    for (n, k, r, p) in [
        (7usize, 3usize, 3usize, 3usize),
        (7, 3, 4, 3),
        (6, 4, 4, 4),
        (7, 4, 3, 3),
        (7, 4, 4, 4),
        (7, 5, 4, 4),
        (7, 5, 5, 5),
        (7, 6, 6, 6),
        (7, 4, 6, 4),
        (6, 4, 5, 4),
    ] {
        let g = complete_hypergraph(n, k).unwrap();
        let config = SearchConfig {
            vertex_symmetry: true,
            node_budget: 100_000_000,
            ..SearchConfig::default()
        };
        let t = Instant::now();
        let res = exact_cover_number(&g, r, p, &config).unwrap();
        println!(
            "K_{n}^{k} ({r},{p}): {} nodes={} in {:?}",
            res.value,
            res.nodes,
            t.elapsed()
        );
    }
}

#[test]
#[ignore]
fn probe_k9() {
    let g = complete_hypergraph(9, 3).unwrap();
    let config = SearchConfig {
        vertex_symmetry: true,
        node_budget: 100_000_000,
        ..SearchConfig::default()
    };
    let t = Instant::now();
    let res = exact_cover_number(&g, 3, 3, &config).unwrap();
    println!(
        "K_9^3 (3,3): {} nodes={} in {:?}",
        res.value,
        res.nodes,
        t.elapsed()
    );
}
