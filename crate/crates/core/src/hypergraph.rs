//! Hypergraph data model, generators, and structural transformations.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::partitions::{binomial, binomial_checked, k_subsets};
use crate::{Error, Result};

/// An n-vertex k-uniform hypergraph. Vertices are the indices `0..n`;
/// every edge is a strictly sorted k-subset and the edge list is sorted
/// lexicographically and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, normalizing the edge list: vertices within an
    /// edge are sorted, the edge list is sorted, and exact duplicates are
    /// dropped. Rejects edges of the wrong size, out-of-range or repeated
    /// vertices, `k < 2`, and `n < k`.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("k = {k}, need k >= 2")));
        }
        if n < k {
            return Err(Error::InvalidHypergraph(format!("n = {n} < k = {k}")));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} repeats a vertex"
                )));
            }
            if *e.last().unwrap() >= n {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} out of range for n = {n}"
                )));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self {
            n,
            k,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// True when the edge list is all `C(n,k)` k-subsets.
    pub fn is_complete(&self) -> bool {
        match binomial_checked(self.n as u64, self.k as u64) {
            Some(total) => total == self.edges.len() as u128,
            None => false,
        }
    }
}

/// The complete k-uniform hypergraph on n vertices, edges in lexicographic
/// order.
pub fn complete_hypergraph(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!(
            "complete hypergraph needs n >= k >= 2, got n = {n}, k = {k}"
        )));
    }
    Ok(Hypergraph {
        n,
        k,
        edges: k_subsets(n, k),
    })
}

/// Maximum number of edges sharing at least one vertex with any single
/// edge; 0 when the hypergraph has at most one edge.
pub fn dependency(g: &Hypergraph) -> usize {
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); g.n];
    for (i, e) in g.edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i as u32);
        }
    }
    let mut best = 0;
    let mut seen = vec![u32::MAX; g.edges.len()];
    for (i, e) in g.edges.iter().enumerate() {
        let mut d = 0;
        for &v in e {
            for &j in &incident[v] {
                if j as usize != i && seen[j as usize] != i as u32 {
                    seen[j as usize] = i as u32;
                    d += 1;
                }
            }
        }
        best = best.max(d);
    }
    best
}

/// Deletes the highest-indexed vertex, producing a (k-1)-uniform hypergraph
/// on n-1 vertices: edges containing the vertex lose it, every other edge
/// contributes all k of its (k-1)-subsets, duplicates removed.
pub fn shrink(g: &Hypergraph) -> Result<Hypergraph> {
    shrink_at(g, g.n - 1)
}

/// Same construction deleting an arbitrary vertex `v`; vertices above `v`
/// are shifted down by one.
pub fn shrink_at(g: &Hypergraph, v: usize) -> Result<Hypergraph> {
    if g.k == 2 {
        return Err(Error::InvalidParams(
            "cannot shrink a 2-uniform hypergraph".into(),
        ));
    }
    if g.n < g.k + 1 {
        return Err(Error::InvalidParams(format!(
            "shrink needs n >= k + 1, got n = {}, k = {}",
            g.n, g.k
        )));
    }
    if v >= g.n {
        return Err(Error::InvalidParams(format!(
            "vertex {v} out of range for n = {}",
            g.n
        )));
    }
    let relabel = |w: usize| if w > v { w - 1 } else { w };
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for e in &g.edges {
        if e.contains(&v) {
            out.insert(e.iter().filter(|&&w| w != v).map(|&w| relabel(w)).collect());
        } else {
            for drop in 0..e.len() {
                out.insert(
                    e.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &w)| relabel(w))
                        .collect(),
                );
            }
        }
    }
    Hypergraph::new(g.n - 1, g.k - 1, out.into_iter().collect())
}

/// The 2-section: a 2-uniform hypergraph (simple graph) on the same
/// vertices joining every pair that co-occurs in some edge.
pub fn two_section(g: &Hypergraph) -> Hypergraph {
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in &g.edges {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                pairs.insert((e[i], e[j]));
            }
        }
    }
    Hypergraph {
        n: g.n,
        k: 2,
        edges: pairs.into_iter().map(|(a, b)| vec![a, b]).collect(),
    }
}

/// `m` distinct k-subsets sampled uniformly from all `C(n,k)`, deterministic
/// for a fixed seed. Rejects `m > C(n,k)`.
pub fn random_hypergraph(n: usize, k: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!(
            "random hypergraph needs n >= k >= 2, got n = {n}, k = {k}"
        )));
    }
    let total = binomial_checked(n as u64, k as u64)
        .ok_or_else(|| Error::TooLarge(format!("C({n},{k}) overflows")))?;
    if (m as u128) > total {
        return Err(Error::InvalidParams(format!(
            "m = {m} exceeds C({n},{k}) = {total}"
        )));
    }
    // Floyd's algorithm over combination ranks keeps the draw uniform over
    // distinct k-subsets.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks: BTreeSet<u128> = BTreeSet::new();
    for j in (total - m as u128)..total {
        let t = uniform_u128(&mut rng, j + 1);
        if !ranks.insert(t) {
            ranks.insert(j);
        }
    }
    let edges = ranks.into_iter().map(|r| unrank_combination(n, k, r)).collect();
    Hypergraph::new(n, k, edges)
}

fn uniform_u128(rng: &mut ChaCha8Rng, bound: u128) -> u128 {
    debug_assert!(bound > 0);
    if bound <= u64::MAX as u128 {
        rng.gen_range(0..bound as u64) as u128
    } else {
        // Rejection sampling on the full 128-bit range.
        let zone = u128::MAX - (u128::MAX - bound + 1) % bound;
        loop {
            let x = ((rng.gen::<u64>() as u128) << 64) | rng.gen::<u64>() as u128;
            if x <= zone {
                return x % bound;
            }
        }
    }
}

/// Combination at `rank` in lexicographic order among all k-subsets of 0..n.
fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut combo = Vec::with_capacity(k);
    let mut next = 0usize;
    for i in 0..k {
        let mut c = next;
        loop {
            let count = binomial((n - c - 1) as u64, (k - i - 1) as u64);
            if count <= rank {
                rank -= count;
                c += 1;
            } else {
                combo.push(c);
                next = c + 1;
                break;
            }
        }
    }
    combo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_edge_counts() {
        assert_eq!(complete_hypergraph(4, 3).unwrap().m(), 4);
        assert_eq!(complete_hypergraph(7, 3).unwrap().m(), 35);
        assert_eq!(complete_hypergraph(9, 3).unwrap().m(), 84);
        assert!(complete_hypergraph(2, 3).is_err());
    }

    #[test]
    fn complete_is_lexicographic() {
        let g = complete_hypergraph(5, 3).unwrap();
        let mut sorted = g.edges().to_vec();
        sorted.sort();
        assert_eq!(g.edges(), &sorted[..]);
        assert!(g.is_complete());
    }

    #[test]
    fn constructor_normalizes_and_validates() {
        let g = Hypergraph::new(5, 3, vec![vec![2, 0, 1], vec![0, 1, 2], vec![3, 4, 0]]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges()[0], vec![0, 1, 2]);
        assert!(Hypergraph::new(5, 3, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(5, 3, vec![vec![0, 1, 5]]).is_err());
        assert!(Hypergraph::new(5, 3, vec![vec![0, 1, 1]]).is_err());
    }

    #[test]
    fn dependency_examples() {
        // Every pair of triples on 4 vertices intersects.
        assert_eq!(dependency(&complete_hypergraph(4, 3).unwrap()), 3);
        // Disjoint edges are independent.
        let matching = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(dependency(&matching), 0);
        let single = Hypergraph::new(4, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(dependency(&single), 0);
    }

    #[test]
    fn dependency_k53_matches_brute_force() {
        let g = complete_hypergraph(5, 3).unwrap();
        // Independent count: triples meeting a fixed triple in 5 vertices.
        let mut expect = 0;
        for (i, e) in g.edges().iter().enumerate() {
            let mut d = 0;
            for (j, f) in g.edges().iter().enumerate() {
                if i != j && e.iter().any(|v| f.contains(v)) {
                    d += 1;
                }
            }
            expect = std::cmp::max(expect, d);
        }
        assert_eq!(expect, 9);
        assert_eq!(dependency(&g), 9);
    }

    #[test]
    fn shrink_branches() {
        // Vertex 3 unused: one edge explodes into its three pairs.
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2]]).unwrap();
        let s = shrink(&g).unwrap();
        assert_eq!(s.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        // Edge containing the deleted vertex just loses it.
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 3]]).unwrap();
        let s = shrink(&g).unwrap();
        assert_eq!(s.edges(), &[vec![0, 1]]);
        // K_4^3 shrinks to K_3^2.
        let s = shrink(&complete_hypergraph(4, 3).unwrap()).unwrap();
        assert_eq!(s, complete_hypergraph(3, 2).unwrap());
    }

    #[test]
    fn shrink_rejects_small_cases() {
        let g = complete_hypergraph(4, 2).unwrap();
        assert!(shrink(&g).is_err());
        let g = complete_hypergraph(3, 3).unwrap();
        assert!(shrink(&g).is_err());
    }

    #[test]
    fn shrink_at_any_vertex() {
        let g = Hypergraph::new(5, 3, vec![vec![0, 2, 4], vec![1, 2, 3]]).unwrap();
        let s = shrink_at(&g, 2).unwrap();
        // {0,2,4} contains 2 -> {0,3} after relabeling; {1,2,3} -> {1,2}.
        assert!(s.edges().contains(&vec![0, 3]));
        assert!(s.edges().contains(&vec![1, 2]));
        assert_eq!(s.n(), 4);
    }

    #[test]
    fn two_section_cases() {
        let g = complete_hypergraph(5, 3).unwrap();
        assert_eq!(two_section(&g), complete_hypergraph(5, 2).unwrap());
        let matching = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let ts = two_section(&matching);
        assert_eq!(ts.m(), 6);
        let empty = Hypergraph::new(5, 3, vec![]).unwrap();
        assert_eq!(two_section(&empty).m(), 0);
    }

    #[test]
    fn random_full_draw_is_complete() {
        for seed in [0, 1, 17] {
            let g = random_hypergraph(5, 3, 10, seed).unwrap();
            assert_eq!(g, complete_hypergraph(5, 3).unwrap());
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_hypergraph(12, 4, 30, 42).unwrap();
        let b = random_hypergraph(12, 4, 30, 42).unwrap();
        assert_eq!(a, b);
        let c = random_hypergraph(12, 4, 30, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_bounds() {
        assert_eq!(random_hypergraph(6, 3, 0, 5).unwrap().m(), 0);
        assert!(random_hypergraph(5, 3, 11, 0).is_err());
    }
}
