//! The grid of cover numbers χᶜ(K_n^k, k, r, p) for small parameters.

use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{exact_cover_number, CoverNumber, SearchConfig};
use crate::hypergraph::complete_hypergraph;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub p: usize,
    /// p after clamping to k.
    pub p_effective: usize,
    pub value: CoverNumber,
    pub nodes: u64,
}

/// Computes every cell with `4 <= n <= n_max`, `3 <= k <= min(n, k_max)`,
/// `3 <= r <= min(n, r_max)`, `3 <= p <= r`. Cells that exhaust the node
/// budget hold an interval instead of an exact value.
pub fn cover_table(
    n_max: usize,
    k_max: usize,
    r_max: usize,
    node_budget: u64,
    parallel: bool,
) -> Result<Vec<TableCell>> {
    let mut specs = Vec::new();
    for n in 4..=n_max {
        for k in 3..=n.min(k_max) {
            for r in 3..=n.min(r_max) {
                for p in 3..=r {
                    specs.push((n, k, r, p));
                }
            }
        }
    }
    let solve = |&(n, k, r, p): &(usize, usize, usize, usize)| -> Result<TableCell> {
        let g = complete_hypergraph(n, k)?;
        let config = SearchConfig {
            node_budget,
            vertex_symmetry: true,
            ..SearchConfig::default()
        };
        let res = exact_cover_number(&g, r, p, &config)?;
        Ok(TableCell {
            n,
            k,
            r,
            p,
            p_effective: p.min(k),
            value: res.value,
            nodes: res.nodes,
        })
    };
    if parallel {
        specs.par_iter().map(solve).collect()
    } else {
        specs.iter().map(solve).collect()
    }
}

/// Looks up a cell in `cover_table` output.
pub fn find_cell<'a>(
    cells: &'a [TableCell],
    n: usize,
    k: usize,
    r: usize,
    p: usize,
) -> Option<&'a TableCell> {
    cells
        .iter()
        .find(|c| c.n == n && c.k == k && c.r == r && c.p == p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_table() {
        let cells = cover_table(5, 5, 5, 1_000_000, false).unwrap();
        assert_eq!(
            find_cell(&cells, 4, 3, 3, 3).unwrap().value,
            CoverNumber::Exact(2)
        );
        assert_eq!(
            find_cell(&cells, 4, 4, 3, 3).unwrap().value,
            CoverNumber::Exact(1)
        );
        assert_eq!(
            find_cell(&cells, 5, 3, 3, 3).unwrap().value,
            CoverNumber::Exact(3)
        );
        // r > n cells are not emitted.
        assert!(find_cell(&cells, 4, 3, 5, 3).is_none());
    }
}
