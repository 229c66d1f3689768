//! Constructive covers for complete hypergraphs: a balanced coloring splits
//! the vertex set, the edges it misses live inside unions of p-1 color
//! classes, and those unions are covered recursively. A Baranyai-style
//! round schedule groups pairwise-disjoint class subsets so their recursive
//! covers share rounds.

use std::collections::HashMap;

use crate::coloring::{Coloring, Cover, CoverParams};
use crate::hypergraph::Hypergraph;
use crate::partitions::{binomial_checked, k_subsets};
use crate::{Error, Result};

/// Class sizes of the balanced r-coloring of n vertices: each size is
/// floor(n/r) or ceil(n/r), larger classes first.
pub fn balanced_class_sizes(n: usize, r: usize) -> Vec<usize> {
    let q = n / r;
    let rem = n % r;
    (0..r).map(|i| if i < rem { q + 1 } else { q }).collect()
}

/// The balanced r-coloring of vertices 0..n, assigned in order with the
/// larger classes first.
pub fn balanced_coloring(n: usize, r: usize) -> Result<Coloring> {
    if n == 0 || r == 0 || r > 256 {
        return Err(Error::InvalidParams(format!(
            "balanced coloring needs n >= 1 and 1 <= r <= 256, got n = {n}, r = {r}"
        )));
    }
    Coloring::new(assign_balanced(n, r), r)
}

fn assign_balanced(n: usize, r: usize) -> Vec<u8> {
    let sizes = balanced_class_sizes(n, r);
    let mut colors = vec![0u8; n];
    let mut at = 0;
    for (c, &s) in sizes.iter().enumerate() {
        colors[at..at + s].fill(c as u8);
        at += s;
    }
    colors
}

/// Partition of all (p-1)-subsets of the r color classes into groups of
/// pairwise-disjoint subsets. Exactly `ceil(C(r,q) / floor(r/q))` groups
/// exist by Baranyai's theorem (q = p-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundSchedule {
    pub r: usize,
    pub q: usize,
    pub groups: Vec<Vec<Vec<usize>>>,
}

impl RoundSchedule {
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }
}

/// Number of schedule groups D = ceil(C(r,q) / floor(r/q)).
pub fn schedule_group_count(r: usize, q: usize) -> usize {
    let subsets = binomial_checked(r as u64, q as u64).expect("r is small") as usize;
    let cap = r / q;
    subsets.div_ceil(cap)
}

/// Builds the schedule by backtracking over the (p-1)-subsets in
/// lexicographic order, first-fit into at most D groups.
pub fn round_schedule(r: usize, p: usize) -> Result<RoundSchedule> {
    if p < 2 || p > r {
        return Err(Error::InvalidParams(format!(
            "schedule needs 2 <= p <= r, got r = {r}, p = {p}"
        )));
    }
    let q = p - 1;
    let subsets = k_subsets(r, q);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let cap = r / q;
    let d = subsets.len().div_ceil(cap);

    // group_mask[g] is the union of vertices used in group g.
    let mut group_mask = vec![0u64; d];
    let mut group_len = vec![0usize; d];
    let mut assignment = vec![usize::MAX; subsets.len()];

    fn place(
        i: usize,
        masks: &[u64],
        cap: usize,
        group_mask: &mut [u64],
        group_len: &mut [usize],
        assignment: &mut [usize],
        used: usize,
    ) -> bool {
        if i == masks.len() {
            return true;
        }
        // Only the first unused group needs to be tried; the rest are
        // symmetric.
        let limit = (used + 1).min(group_mask.len());
        for g in 0..limit {
            if group_len[g] < cap && group_mask[g] & masks[i] == 0 {
                group_mask[g] |= masks[i];
                group_len[g] += 1;
                assignment[i] = g;
                let used_next = used.max(g + 1);
                if place(i + 1, masks, cap, group_mask, group_len, assignment, used_next) {
                    return true;
                }
                group_mask[g] &= !masks[i];
                group_len[g] -= 1;
                assignment[i] = usize::MAX;
            }
        }
        false
    }

    if !place(
        0,
        &masks,
        cap,
        &mut group_mask,
        &mut group_len,
        &mut assignment,
        0,
    ) {
        // Baranyai's theorem guarantees a schedule, so this is unreachable
        // for valid parameters.
        return Err(Error::InvalidParams(format!(
            "no round schedule found for r = {r}, p = {p}"
        )));
    }
    let mut groups = vec![Vec::new(); d];
    for (i, s) in subsets.into_iter().enumerate() {
        groups[assignment[i]].push(s);
    }
    Ok(RoundSchedule { r, q, groups })
}

/// Which closed-form bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeFormula {
    ThreeThree,
    FourThree,
    General,
}

/// Closed-form upper bound on the constructed cover size,
/// `(n(p-1)/((k-1-l)r))^(log_{r/(p-1)} D) + log_{r/(p-1)}(n/(k-1-l)) - 1`,
/// evaluated with full-precision exponents and floored at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeBound {
    pub value: f64,
    pub l: usize,
    pub formula: SizeFormula,
}

/// Smallest offset l in [0, p-2] with (p-1) dividing (k-1-l).
pub fn smallest_offset(k: usize, p: usize) -> usize {
    (0..=p - 2)
        .find(|l| (k - 1 - l) % (p - 1) == 0)
        .expect("p-1 consecutive values cover every residue")
}

pub fn size_bound(n: usize, k: usize, r: usize, p: usize) -> Result<SizeBound> {
    let params = CoverParams::effective(r, p, k)?;
    let p = params.p;
    if n == 0 {
        return Err(Error::InvalidParams("n = 0".into()));
    }
    let l = smallest_offset(k, p);
    let q = p - 1;
    let d = schedule_group_count(r, q) as f64;
    let s = r as f64 / q as f64;
    let denom = (k - 1 - l) as f64;
    let ratio = (n * q) as f64 / (denom * r as f64);
    let value = ratio.powf(d.ln() / s.ln()) + (n as f64 / denom).ln() / s.ln() - 1.0;
    let formula = match (r, p) {
        (3, 3) => SizeFormula::ThreeThree,
        (4, 3) => SizeFormula::FourThree,
        _ => SizeFormula::General,
    };
    Ok(SizeBound {
        value: value.max(1.0),
        l,
        formula,
    })
}

/// Largest subproblem size covered by a single balanced coloring. For
/// (3,3) with even k the paper's sharper threshold applies; merging any
/// p-1 balanced classes then still leaves fewer than k vertices.
fn base_threshold(k: usize, r: usize, p: usize) -> usize {
    if r == 3 && p == 3 {
        if k % 2 == 1 {
            3 * (k - 1) / 2
        } else {
            (3 * (k - 1) - 1) / 2
        }
    } else {
        let l = smallest_offset(k, p);
        r * (k - 1 - l) / (p - 1)
    }
}

const MINIMIZE_EDGE_CUTOFF: u128 = 6000;

struct Builder {
    k: usize,
    r: usize,
    p: usize,
    threshold: usize,
    schedule: RoundSchedule,
    minimize_nodes: bool,
    size_memo: HashMap<usize, u64>,
}

impl Builder {
    fn new(k: usize, r: usize, p: usize, minimize_nodes: bool) -> Result<Self> {
        Ok(Self {
            k,
            r,
            p,
            threshold: base_threshold(k, r, p),
            schedule: round_schedule(r, p)?,
            minimize_nodes,
            size_memo: HashMap::new(),
        })
    }

    /// Size of the raw recursion output without building it.
    fn raw_size(&mut self, n: usize) -> u64 {
        if n <= self.threshold || n < self.k {
            return 1;
        }
        if let Some(&v) = self.size_memo.get(&n) {
            return v;
        }
        let sizes = balanced_class_sizes(n, self.r);
        let mut total: u64 = 1;
        for group in &self.schedule.groups.clone() {
            let mut rounds = 0u64;
            for subset in group {
                let union: usize = subset.iter().map(|&c| sizes[c]).sum();
                if union >= self.k {
                    rounds = rounds.max(self.raw_size(union));
                }
            }
            total += rounds;
        }
        self.size_memo.insert(n, total);
        total
    }

    /// Covers the complete k-uniform hypergraph on `n` local vertices.
    /// Every returned coloring has length n; vertices outside a round's
    /// active unions keep this node's balanced coloring, so deeper rounds
    /// inherit the coarser structure.
    fn build(&mut self, n: usize) -> Vec<Vec<u8>> {
        if n <= self.threshold || n < self.k {
            return vec![assign_balanced(n, self.r)];
        }
        let sizes = balanced_class_sizes(n, self.r);
        let mut starts = vec![0usize; self.r + 1];
        for i in 0..self.r {
            starts[i + 1] = starts[i] + sizes[i];
        }
        let base = assign_balanced(n, self.r);
        let mut out = vec![base.clone()];
        let groups = self.schedule.groups.clone();
        for group in &groups {
            let mut members: Vec<(Vec<usize>, Vec<Vec<u8>>)> = Vec::new();
            let mut rounds = 0usize;
            for subset in group {
                let mut union: Vec<usize> = Vec::new();
                for &c in subset {
                    union.extend(starts[c]..starts[c + 1]);
                }
                if union.len() < self.k {
                    continue;
                }
                let sub = self.build(union.len());
                rounds = rounds.max(sub.len());
                members.push((union, sub));
            }
            for j in 0..rounds {
                let mut merged = base.clone();
                for (union, sub) in &members {
                    let c = &sub[j.min(sub.len() - 1)];
                    for (t, &pos) in union.iter().enumerate() {
                        merged[pos] = c[t];
                    }
                }
                out.push(merged);
            }
        }
        if self.minimize_nodes {
            if let Some(total) = binomial_checked(n as u64, self.k as u64) {
                if total <= MINIMIZE_EDGE_CUTOFF {
                    let edges = k_subsets(n, self.k);
                    let kept = greedy_select(&out, &edges, self.p)
                        .expect("recursive pool covers its own subhypergraph");
                    out = kept.into_iter().map(|i| out[i].clone()).collect();
                }
            }
        }
        out
    }
}

/// Greedy selection: repeatedly keep the coloring covering the most
/// still-uncovered edges (ties to the earliest). Returns indices into
/// `colorings` in selection order, or None when the pool cannot cover.
fn greedy_select(colorings: &[Vec<u8>], edges: &[Vec<usize>], p: usize) -> Option<Vec<usize>> {
    let m = edges.len();
    if m == 0 {
        return Some(vec![]);
    }
    let words = m.div_ceil(64);
    let mut coverage = vec![0u64; colorings.len() * words];
    for (ci, colors) in colorings.iter().enumerate() {
        let row = &mut coverage[ci * words..(ci + 1) * words];
        for (ei, e) in edges.iter().enumerate() {
            let mut mask: u64 = 0;
            for &v in e {
                mask |= 1 << (colors[v] & 63);
            }
            if mask.count_ones() as usize >= p.min(e.len()) {
                row[ei / 64] |= 1 << (ei % 64);
            }
        }
    }
    let mut uncovered = vec![u64::MAX; words];
    let tail = m % 64;
    if tail != 0 {
        uncovered[words - 1] = (1u64 << tail) - 1;
    }
    let mut remaining = m as u64;
    let mut selected = Vec::new();
    while remaining > 0 {
        let mut best = 0u64;
        let mut best_i = usize::MAX;
        for ci in 0..colorings.len() {
            let row = &coverage[ci * words..(ci + 1) * words];
            let mut newc = 0u64;
            for w in 0..words {
                newc += (row[w] & uncovered[w]).count_ones() as u64;
            }
            if newc > best {
                best = newc;
                best_i = ci;
            }
        }
        if best == 0 {
            return None;
        }
        let row = &coverage[best_i * words..(best_i + 1) * words];
        for w in 0..words {
            uncovered[w] &= !row[w];
        }
        remaining -= best;
        selected.push(best_i);
    }
    Some(selected)
}

/// A strong (r,p) cover of the complete k-uniform hypergraph on the given
/// vertices, embedded in colorings of length `n_total` (vertices outside
/// the set get color 0).
///
/// The divide-and-conquer recursion is used as-is when its size already
/// meets the closed-form bound; otherwise redundant colorings are greedily
/// stripped (at subproblems small enough to check, and once globally) so
/// the advertised bound holds.
pub fn cover_general(
    vertices: &[usize],
    n_total: usize,
    k: usize,
    r: usize,
    p: usize,
) -> Result<Cover> {
    let params = CoverParams::effective(r, p, k)?;
    let p = params.p;
    if vertices.is_empty() {
        return Err(Error::InvalidParams("empty vertex set".into()));
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vertices.len() {
        return Err(Error::InvalidParams("repeated vertices".into()));
    }
    if *sorted.last().unwrap() >= n_total {
        return Err(Error::InvalidParams(format!(
            "vertex {} out of range for n = {n_total}",
            sorted.last().unwrap()
        )));
    }
    let ln = sorted.len();

    let bound = size_bound(ln, k, r, p)?.value.ceil() as u64;
    let mut builder = Builder::new(k, r, p, false)?;
    let locals = if builder.raw_size(ln) <= bound {
        builder.build(ln)
    } else {
        let mut builder = Builder::new(k, r, p, true)?;
        let pool = builder.build(ln);
        if (binomial_checked(ln as u64, k as u64).unwrap_or(u128::MAX)) <= MINIMIZE_EDGE_CUTOFF {
            // The top node was already minimized in the recursion.
            pool
        } else {
            let edges = k_subsets(ln, k);
            let kept = greedy_select(&pool, &edges, p)
                .expect("recursive pool covers the complete hypergraph");
            kept.into_iter().map(|i| pool[i].clone()).collect()
        }
    };

    let colorings = locals
        .into_iter()
        .map(|local| {
            let mut global = vec![0u8; n_total];
            for (i, &v) in sorted.iter().enumerate() {
                global[v] = local[i];
            }
            Coloring::new(global, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Cover::new(colorings)
}

/// `cover_general` over all of 0..n.
pub fn cover_complete(n: usize, k: usize, r: usize, p: usize) -> Result<Cover> {
    let vertices: Vec<usize> = (0..n).collect();
    cover_general(&vertices, n, k, r, p)
}

/// Greedily drops colorings a cover does not need for `g`: keeps colorings
/// in order of most newly covered edges until everything is covered.
pub fn minimize_cover(g: &Hypergraph, cover: &Cover, p: usize) -> Result<Cover> {
    if cover.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "hypergraph has n = {}, cover has n = {}",
            g.n(),
            cover.n()
        )));
    }
    let pool: Vec<Vec<u8>> = cover.colorings().iter().map(|c| c.colors().to_vec()).collect();
    let kept = greedy_select(&pool, g.edges(), p.min(g.k())).ok_or_else(|| {
        Error::InvalidColoring("the cover does not cover the hypergraph".into())
    })?;
    if kept.is_empty() {
        // Edgeless hypergraph: keep the first coloring so the cover stays
        // nonempty.
        return Cover::new(vec![cover.colorings()[0].clone()]);
    }
    Cover::new(kept.into_iter().map(|i| cover.colorings()[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_cover;
    use crate::hypergraph::complete_hypergraph;
    use crate::partitions::class_sizes;

    #[test]
    fn balanced_sizes() {
        assert_eq!(balanced_class_sizes(9, 3), vec![3, 3, 3]);
        assert_eq!(balanced_class_sizes(7, 3), vec![3, 2, 2]);
        assert_eq!(balanced_class_sizes(2, 3), vec![1, 1, 0]);
        let c = balanced_coloring(7, 3).unwrap();
        assert_eq!(c.colors(), &[0, 0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn schedule_4_3_is_the_pairing_structure() {
        let s = round_schedule(4, 3).unwrap();
        assert_eq!(s.group_count(), 3);
        let mut groups: Vec<Vec<Vec<usize>>> = s.groups.clone();
        for g in &mut groups {
            g.sort();
        }
        groups.sort();
        assert_eq!(
            groups,
            vec![
                vec![vec![0, 1], vec![2, 3]],
                vec![vec![0, 2], vec![1, 3]],
                vec![vec![0, 3], vec![1, 2]],
            ]
        );
    }

    #[test]
    fn schedule_3_3_and_5_3() {
        let s = round_schedule(3, 3).unwrap();
        assert_eq!(s.group_count(), 3);
        assert!(s.groups.iter().all(|g| g.len() == 1));

        let s = round_schedule(5, 3).unwrap();
        assert_eq!(s.group_count(), 5);
        assert!(s.groups.iter().all(|g| g.len() == 2));
    }

    fn check_schedule_invariants(r: usize, p: usize) {
        let s = round_schedule(r, p).unwrap();
        assert_eq!(s.group_count(), schedule_group_count(r, p - 1), "r={r} p={p}");
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for g in &s.groups {
            let mut used = 0u64;
            for subset in g {
                let mask = subset.iter().fold(0u64, |m, &v| m | 1 << v);
                assert_eq!(used & mask, 0, "overlap within a group, r={r} p={p}");
                used |= mask;
                seen.push(subset.clone());
            }
        }
        seen.sort();
        assert_eq!(seen, k_subsets(r, p - 1), "partition property, r={r} p={p}");
    }

    #[test]
    fn schedule_invariants_up_to_r8() {
        for r in 2..=8 {
            for p in 2..=r {
                check_schedule_invariants(r, p);
            }
        }
    }

    #[test]
    fn size_bound_frozen_values() {
        // Direct evaluation of the closed forms.
        let b = size_bound(9, 3, 3, 3).unwrap();
        let e = (3f64).ln() / (1.5f64).ln();
        let expect = (4.5f64).powf(e) / 3.0 + (4.5f64).ln() / (1.5f64).ln() - 1.0;
        assert!((b.value - expect).abs() < 1e-9);
        assert!((b.value - 22.34).abs() < 0.01, "got {}", b.value);
        assert_eq!(b.formula, SizeFormula::ThreeThree);

        // 8^(log2 3) is exactly 27, so the value is exactly 11.
        let b = size_bound(16, 3, 4, 3).unwrap();
        let expect = 8f64.powf((3f64).ln() / (2f64).ln()) / 3.0 + 3.0 - 1.0;
        assert!((b.value - expect).abs() < 1e-9);
        assert!((b.value - 11.0).abs() < 1e-9, "got {}", b.value);
        assert_eq!(b.formula, SizeFormula::FourThree);

        // Degenerate instances floor at one coloring.
        let b = size_bound(3, 3, 3, 3).unwrap();
        assert!(b.value >= 1.0);
    }

    #[test]
    fn specialized_formulas_match_general_expression() {
        // The (3,3) and (4,3) closed forms are the general formula at those
        // parameters; check the literal shapes agree.
        for &(r, p, base) in &[(3usize, 3usize, 1.5f64), (4, 3, 2.0)] {
            for k in [3usize, 5, 7] {
                for n in [k + 1, 2 * k, 4 * k] {
                    let b = size_bound(n, k, r, p).unwrap();
                    let e = (3f64).ln() / base.ln();
                    let denom = (k - 1) as f64;
                    let expect =
                        ((n as f64 / denom).powf(e) / 3.0 + (n as f64 / denom).ln() / base.ln()
                            - 1.0)
                            .max(1.0);
                    assert!(
                        (b.value - expect).abs() < 1e-9,
                        "n={n} k={k} r={r} p={p}: {} vs {expect}",
                        b.value
                    );
                }
            }
        }
    }

    #[test]
    fn base_case_class_sizes_block_small_merges() {
        // Merging any p-1 classes of a base-case coloring stays below k.
        for k in 3..=7usize {
            for r in 3..=5usize {
                for p in 3..=r.min(k) {
                    let t = base_threshold(k, r, p);
                    for n in k.max(2)..=t {
                        let sizes = balanced_class_sizes(n, r);
                        let merged: usize = sizes.iter().take(p - 1).sum();
                        assert!(merged < k, "k={k} r={r} p={p} n={n} merged={merged}");
                    }
                }
            }
        }
    }

    #[test]
    fn cover_trace_small_cases() {
        // Base case: a single rainbow coloring.
        let c = cover_complete(3, 3, 3, 3).unwrap();
        assert_eq!(c.len(), 1);

        // Odd-k base case with classes (2,2,2).
        let c = cover_complete(6, 5, 3, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(class_sizes(c.colorings()[0].colors(), 3), vec![2, 2, 2]);

        // One level of recursion; the size-2 pair union holds no triple.
        let c = cover_complete(4, 3, 3, 3).unwrap();
        assert_eq!(c.len(), 3);
        let g = complete_hypergraph(4, 3).unwrap();
        assert!(verify_cover(&g, &c, 3).unwrap());
    }

    #[test]
    fn covers_verify_on_a_small_grid() {
        for k in [3usize, 4] {
            for n in k..=14 {
                for &(r, p) in &[(3usize, 3usize), (4, 3), (4, 4)] {
                    if p.min(k) > r {
                        continue;
                    }
                    let g = complete_hypergraph(n, k).unwrap();
                    let c = cover_complete(n, k, r, p).unwrap();
                    assert!(
                        verify_cover(&g, &c, p).unwrap(),
                        "invalid cover n={n} k={k} r={r} p={p}"
                    );
                    let bound = size_bound(n, k, r, p).unwrap().value.ceil() as usize;
                    assert!(
                        c.len() <= bound,
                        "size {} > bound {bound} at n={n} k={k} r={r} p={p}",
                        c.len()
                    );
                }
            }
        }
    }

    #[test]
    fn cover_on_a_vertex_subset() {
        let verts = [1usize, 3, 4, 8];
        let c = cover_general(&verts, 9, 3, 3, 3).unwrap();
        assert_eq!(c.n(), 9);
        let edges = vec![vec![1, 3, 4], vec![1, 3, 8], vec![1, 4, 8], vec![3, 4, 8]];
        let g = Hypergraph::new(9, 3, edges).unwrap();
        assert!(verify_cover(&g, &c, 3).unwrap());
    }

    #[test]
    fn minimize_cover_strips_redundancy() {
        let g = complete_hypergraph(6, 3).unwrap();
        let c = cover_complete(6, 3, 3, 3).unwrap();
        let doubled = Cover::new(
            c.colorings()
                .iter()
                .chain(c.colorings())
                .cloned()
                .collect(),
        )
        .unwrap();
        let min = minimize_cover(&g, &doubled, 3).unwrap();
        assert!(min.len() <= c.len());
        assert!(verify_cover(&g, &min, 3).unwrap());
        // A cover that misses edges is reported.
        let partial = Cover::new(vec![c.colorings()[0].clone()]).unwrap();
        if !verify_cover(&g, &partial, 3).unwrap() {
            assert!(minimize_cover(&g, &partial, 3).is_err());
        }
    }
}
