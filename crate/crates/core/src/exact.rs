//! Exact strong (r,p) cover numbers by iterative deepening over the cover
//! size, searching set covers whose sets are canonical colorings.
//!
//! Colorings are quotiented by color-name permutation throughout
//! (restricted growth strings), which is sound because properness only
//! depends on the induced partition. For vertex-transitive inputs the
//! first coloring is additionally quotiented by vertex permutation: only
//! one representative per class-size multiset is branched on, and once a
//! multiset's branch is exhausted every coloring with that multiset is
//! excluded below later branches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{Coloring, Cover, CoverParams};
use crate::counting::edge_lower_bound;
use crate::hypergraph::{two_section, Hypergraph};
use crate::partitions::{class_sizes, rgs_count, RgsIter};
use crate::{Error, Result};

/// Tuning knobs for the exact search.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Deepest cover size tried before reporting an interval.
    pub x_max: usize,
    /// Total search-node cap across all depths.
    pub node_budget: u64,
    /// Quotient the first coloring by vertex permutations. Only valid for
    /// vertex-transitive inputs such as complete hypergraphs.
    pub vertex_symmetry: bool,
    /// Worker hint; above 1 the root branches run in parallel.
    pub parallel_width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            x_max: 9,
            node_budget: 20_000_000,
            vertex_symmetry: false,
            parallel_width: 1,
        }
    }
}

/// Pool-size cap: beyond this many canonical colorings the search reports
/// an interval instead of materializing the pool.
const POOL_GUARD: u128 = 2_000_000;

/// An exact value or an honest interval when search was cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverNumber {
    Exact(usize),
    Range { lo: usize, hi: Option<usize> },
}

impl CoverNumber {
    pub fn lower(&self) -> usize {
        match *self {
            CoverNumber::Exact(v) => v,
            CoverNumber::Range { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match *self {
            CoverNumber::Exact(v) => Some(v),
            CoverNumber::Range { hi, .. } => hi,
        }
    }

    pub fn as_exact(&self) -> Option<usize> {
        match *self {
            CoverNumber::Exact(v) => Some(v),
            CoverNumber::Range { .. } => None,
        }
    }
}

impl std::fmt::Display for CoverNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CoverNumber::Exact(v) => write!(f, "{v}"),
            CoverNumber::Range { lo, hi: Some(hi) } => write!(f, "({lo},{hi})"),
            CoverNumber::Range { lo, hi: None } => write!(f, "({lo},-)"),
        }
    }
}

/// Where a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundSource {
    Trivial,
    EdgeCount,
    LogChromatic,
    ExhaustedSearch,
    ConstructiveCover,
    SizeFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub source: BoundSource,
}

/// Lower bounds with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub bounds: Vec<Bound>,
}

impl BoundsReport {
    pub fn best(&self) -> usize {
        self.bounds.iter().map(|b| b.value).max().unwrap_or(1)
    }
}

/// Result of an exact-search run.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub value: CoverNumber,
    pub witness: Option<Cover>,
    pub nodes: u64,
    /// Lower bounds used or established, including exhausted depths.
    pub bounds: Vec<Bound>,
}

impl ExactResult {
    /// Highest x for which the search itself proved no x-cover exists.
    pub fn exhausted_through(&self) -> Option<usize> {
        self.bounds
            .iter()
            .filter(|b| b.source == BoundSource::ExhaustedSearch)
            .map(|b| b.value - 1)
            .max()
    }
}

/// One canonical coloring per orbit: restricted growth strings with at most
/// r blocks; with `vertex_symmetry` additionally one coloring per class-size
/// multiset (the canonical block assignment).
pub fn enumerate_canonical_colorings(
    n: usize,
    r: usize,
    vertex_symmetry: bool,
) -> Vec<Coloring> {
    let blocks = r.min(n);
    if vertex_symmetry {
        crate::partitions::integer_partitions(n, blocks)
            .into_iter()
            .map(|sizes| {
                Coloring::new(crate::partitions::coloring_from_sizes(&sizes), r)
                    .expect("canonical coloring is valid")
            })
            .collect()
    } else {
        RgsIter::new(n, blocks)
            .map(|colors| Coloring::new(colors, r).expect("canonical coloring is valid"))
            .collect()
    }
}

/// Smallest t >= 0 with r^t >= value.
fn ceil_log(r: usize, value: usize) -> usize {
    let mut t = 0;
    let mut acc: u128 = 1;
    while acc < value as u128 {
        acc *= r as u128;
        t += 1;
    }
    t
}

/// Lower bounds on the cover number: the trivial 1, the edge-count bound,
/// and (on small instances) the log-chromatic bound.
pub fn lower_bound_report(g: &Hypergraph, r: usize, p: usize) -> Result<BoundsReport> {
    let params = CoverParams::effective(r, p, g.k())?;
    let p = params.p;
    let mut bounds = vec![Bound {
        value: 1,
        source: BoundSource::Trivial,
    }];
    if g.m() > 0 {
        bounds.push(Bound {
            value: edge_lower_bound(g, r, p)?,
            source: BoundSource::EdgeCount,
        });
        if g.n() <= 12 && g.m() <= 4096 {
            if let Ok(chi) = strong_chromatic_number(g, p) {
                bounds.push(Bound {
                    value: ceil_log(r, chi).max(1),
                    source: BoundSource::LogChromatic,
                });
            }
        }
    }
    Ok(BoundsReport { bounds })
}

/// The p-strong chromatic number: minimum colors such that one coloring
/// gives every edge min(p,k) distinct colors. For p = k this is the
/// chromatic number of the 2-section.
pub fn strong_chromatic_number(g: &Hypergraph, p: usize) -> Result<usize> {
    let p = p.min(g.k());
    if p < 2 {
        return Err(Error::InvalidParams(format!("p = {p}, need p >= 2")));
    }
    if g.m() == 0 {
        return Ok(1);
    }
    if p == g.k() && g.k() > 2 {
        let ts = two_section(g);
        return strong_chromatic_number(&ts, 2);
    }
    for c in p..=g.n() {
        if strong_colorable(g, p, c)? {
            return Ok(c);
        }
    }
    unreachable!("a rainbow coloring always works")
}

fn strong_colorable(g: &Hypergraph, p: usize, c: usize) -> Result<bool> {
    let n = g.n();
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i as u32);
        }
    }
    const UNSET: u8 = u8::MAX;
    let mut colors = vec![UNSET; n];
    let mut nodes: u64 = 0;

    fn edge_ok(edge: &[usize], colors: &[u8], p: usize) -> bool {
        let mut mask = [0u64; 4];
        let mut distinct = 0;
        let mut unassigned = 0;
        for &v in edge {
            let col = colors[v];
            if col == u8::MAX {
                unassigned += 1;
            } else {
                let (w, b) = (col as usize / 64, col as usize % 64);
                if mask[w] >> b & 1 == 0 {
                    mask[w] |= 1 << b;
                    distinct += 1;
                }
            }
        }
        distinct + unassigned >= p
    }

    fn dfs(
        v: usize,
        max_used: usize,
        g: &Hypergraph,
        incident: &[Vec<u32>],
        colors: &mut [u8],
        p: usize,
        c: usize,
        nodes: &mut u64,
    ) -> Result<bool> {
        if v == colors.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > 200_000_000 {
            return Err(Error::BudgetExhausted(
                "strong chromatic number search".into(),
            ));
        }
        let limit = (max_used + 1).min(c - 1);
        for col in 0..=limit {
            colors[v] = col as u8;
            let feasible = incident[v]
                .iter()
                .all(|&ei| edge_ok(&g.edges()[ei as usize], colors, p));
            if feasible
                && dfs(
                    v + 1,
                    max_used.max(col),
                    g,
                    incident,
                    colors,
                    p,
                    c,
                    nodes,
                )?
            {
                return Ok(true);
            }
        }
        colors[v] = UNSET;
        Ok(false)
    }

    dfs(0, 0, g, &incident, &mut colors, p, c, &mut nodes)
}

// ---------------------------------------------------------------------------
// The cover-number search.

struct Pool {
    colorings: Vec<Vec<u8>>,
    coverage: Vec<u64>,
    cov_words: usize,
    edge_count: usize,
    /// Root branches in order: (candidate index, orbit to exclude after the
    /// branch is exhausted).
    root: Vec<(u32, Vec<u32>)>,
    max_single: u64,
}

impl Pool {
    fn cov(&self, c: usize) -> &[u64] {
        &self.coverage[c * self.cov_words..(c + 1) * self.cov_words]
    }

    fn build(g: &Hypergraph, r: usize, p: usize, vertex_symmetry: bool) -> Self {
        let m = g.m();
        let cov_words = m.div_ceil(64).max(1);
        let blocks = r.min(g.n());
        let mut colorings = Vec::new();
        let mut coverage = Vec::new();
        let mut totals = Vec::new();
        for colors in RgsIter::new(g.n(), blocks) {
            let mut row = vec![0u64; cov_words];
            let mut total = 0u64;
            for (ei, e) in g.edges().iter().enumerate() {
                let mut mask: u64 = 0;
                for &v in e {
                    mask |= 1 << colors[v];
                }
                if mask.count_ones() as usize >= p {
                    row[ei / 64] |= 1 << (ei % 64);
                    total += 1;
                }
            }
            if total > 0 {
                colorings.push(colors);
                coverage.extend_from_slice(&row);
                totals.push(total);
            }
        }
        let max_single = totals.iter().copied().max().unwrap_or(0);

        // Root branch order: by coverage descending, index ascending. With
        // vertex symmetry, one representative per class-size multiset and
        // the whole multiset class as the orbit.
        let root = if vertex_symmetry {
            let mut groups: std::collections::HashMap<Vec<usize>, Vec<u32>> =
                std::collections::HashMap::new();
            let mut order: Vec<Vec<usize>> = Vec::new();
            for (i, colors) in colorings.iter().enumerate() {
                let key = class_sizes(colors, r);
                groups
                    .entry(key.clone())
                    .or_insert_with(|| {
                        order.push(key);
                        Vec::new()
                    })
                    .push(i as u32);
            }
            let mut branches: Vec<(u32, Vec<u32>)> = order
                .into_iter()
                .map(|key| {
                    let members = groups.remove(&key).unwrap();
                    (members[0], members)
                })
                .collect();
            branches.sort_by(|a, b| {
                totals[b.0 as usize]
                    .cmp(&totals[a.0 as usize])
                    .then(a.0.cmp(&b.0))
            });
            branches
        } else {
            let mut idx: Vec<u32> = (0..colorings.len() as u32).collect();
            idx.sort_by(|&a, &b| {
                totals[b as usize]
                    .cmp(&totals[a as usize])
                    .then(a.cmp(&b))
            });
            idx.into_iter().map(|i| (i, vec![i])).collect()
        };

        Pool {
            colorings,
            coverage,
            cov_words,
            edge_count: m,
            root,
            max_single,
        }
    }
}

enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

struct Searcher<'a> {
    pool: &'a Pool,
    nodes_local: u64,
    nodes_shared: &'a AtomicU64,
    budget: u64,
    path: Vec<u32>,
    unc: Vec<Vec<u64>>,
    excl: Vec<Vec<u64>>,
    order: Vec<Vec<u32>>,
    newc: Vec<u32>,
    buckets: Vec<u32>,
}

impl<'a> Searcher<'a> {
    fn new(pool: &'a Pool, depth_cap: usize, nodes_shared: &'a AtomicU64, budget: u64) -> Self {
        let excl_words = pool.colorings.len().div_ceil(64).max(1);
        Searcher {
            pool,
            nodes_local: 0,
            nodes_shared,
            budget,
            path: Vec::new(),
            unc: vec![vec![0u64; pool.cov_words]; depth_cap + 2],
            excl: vec![vec![0u64; excl_words]; depth_cap + 2],
            order: vec![Vec::new(); depth_cap + 2],
            newc: vec![0u32; pool.colorings.len()],
            buckets: Vec::new(),
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes_local += 1;
        if self.nodes_local % 4096 == 0 {
            self.nodes_shared.fetch_add(4096, Ordering::Relaxed);
        }
        self.nodes_shared.load(Ordering::Relaxed) + self.nodes_local % 4096 <= self.budget
    }

    fn flush_nodes(&self) {
        self.nodes_shared
            .fetch_add(self.nodes_local % 4096, Ordering::Relaxed);
    }

    /// Explores covers of size `slots` extending the current path.
    /// `self.unc[depth]` and `self.excl[depth]` must be prepared.
    fn rec(&mut self, depth: usize, slots: usize) -> Outcome {
        let unc_count: u32 = self.unc[depth].iter().map(|w| w.count_ones()).sum();
        if unc_count == 0 {
            return Outcome::Found(self.path.clone());
        }
        if !self.tick() {
            return Outcome::Aborted;
        }
        if slots == 0 {
            return Outcome::Exhausted;
        }

        // Coverage of every non-excluded candidate against the current
        // uncovered set.
        let pool_len = self.pool.colorings.len();
        let mut max_new: u32 = 0;
        self.order[depth].clear();
        for c in 0..pool_len {
            if self.excl[depth][c / 64] >> (c % 64) & 1 == 1 {
                continue;
            }
            let cov = self.pool.cov(c);
            let mut newc: u32 = 0;
            for (w, &u) in cov.iter().zip(self.unc[depth].iter()) {
                newc += (w & u).count_ones();
            }
            if newc > 0 {
                self.newc[c] = newc;
                max_new = max_new.max(newc);
                self.order[depth].push(c as u32);
            }
        }
        if max_new == 0 || (slots as u64) * (max_new as u64) < unc_count as u64 {
            return Outcome::Exhausted;
        }

        if slots == 1 {
            // Only a candidate covering everything left can finish.
            let list = std::mem::take(&mut self.order[depth]);
            let hit = list.iter().find(|&&c| self.newc[c as usize] == unc_count).copied();
            self.order[depth] = list;
            return match hit {
                Some(c) => {
                    self.path.push(c);
                    let found = self.path.clone();
                    self.path.pop();
                    Outcome::Found(found)
                }
                None => Outcome::Exhausted,
            };
        }

        // Bucket sort: most newly covered first, index order within a
        // bucket.
        self.buckets.clear();
        self.buckets.resize(max_new as usize + 1, 0);
        let list = std::mem::take(&mut self.order[depth]);
        for &c in &list {
            self.buckets[self.newc[c as usize] as usize] += 1;
        }
        let mut starts = vec![0u32; max_new as usize + 2];
        let mut acc = 0u32;
        for v in (1..=max_new as usize).rev() {
            starts[v] = acc;
            acc += self.buckets[v];
        }
        let mut ordered = vec![0u32; list.len()];
        let mut cursor = starts.clone();
        for &c in &list {
            let b = self.newc[c as usize] as usize;
            ordered[cursor[b] as usize] = c;
            cursor[b] += 1;
        }
        self.order[depth] = list;

        for &c in &ordered {
            let cov = self.pool.cov(c as usize);
            for w in 0..self.pool.cov_words {
                self.unc[depth + 1][w] = self.unc[depth][w] & !cov[w];
            }
            let (head, tail) = self.excl.split_at_mut(depth + 1);
            tail[0].copy_from_slice(&head[depth]);
            self.path.push(c);
            let out = self.rec(depth + 1, slots - 1);
            self.path.pop();
            match out {
                Outcome::Found(v) => return Outcome::Found(v),
                Outcome::Aborted => return Outcome::Aborted,
                Outcome::Exhausted => {
                    // Every cover through c was explored; exclude it from the
                    // remaining branches of this node.
                    self.excl[depth][c as usize / 64] |= 1 << (c % 64);
                }
            }
        }
        Outcome::Exhausted
    }
}

fn full_uncovered(pool: &Pool) -> Vec<u64> {
    let mut unc = vec![u64::MAX; pool.cov_words];
    let tail = pool.edge_count % 64;
    if tail != 0 {
        unc[pool.cov_words - 1] = (1u64 << tail) - 1;
    }
    if pool.edge_count == 0 {
        unc[0] = 0;
    }
    unc
}

/// One iterative-deepening step: is there a cover of size exactly-at-most
/// `x`? Root branches follow the precomputed orbit order.
fn solve_depth(pool: &Pool, x: usize, budget: u64, shared: &AtomicU64, parallel: bool) -> (Outcome, u64) {
    if (x as u64) * pool.max_single < pool.edge_count as u64 {
        return (Outcome::Exhausted, 0);
    }
    let excl_words = pool.colorings.len().div_ceil(64).max(1);
    let run_branch = |branch: usize, searcher: &mut Searcher| -> Outcome {
        let (rep, _) = &pool.root[branch];
        searcher.unc[0] = full_uncovered(pool);
        // Exclusions from every earlier root orbit.
        searcher.excl[0] = vec![0u64; excl_words];
        for (_, orbit) in &pool.root[..branch] {
            for &c in orbit {
                searcher.excl[0][c as usize / 64] |= 1 << (c % 64);
            }
        }
        let cov = pool.cov(*rep as usize);
        for w in 0..pool.cov_words {
            searcher.unc[1][w] = searcher.unc[0][w] & !cov[w];
        }
        let (head, tail) = searcher.excl.split_at_mut(1);
        tail[0].copy_from_slice(&head[0]);
        searcher.path.clear();
        searcher.path.push(*rep);
        searcher.rec(1, x - 1)
    };

    if parallel && pool.root.len() > 1 {
        let aborted = AtomicBool::new(false);
        let found = (0..pool.root.len())
            .into_par_iter()
            .find_map_first(|b| {
                if aborted.load(Ordering::Relaxed) {
                    return None;
                }
                let mut s = Searcher::new(pool, x, shared, budget);
                let out = run_branch(b, &mut s);
                s.flush_nodes();
                match out {
                    Outcome::Found(v) => Some(v),
                    Outcome::Aborted => {
                        aborted.store(true, Ordering::Relaxed);
                        None
                    }
                    Outcome::Exhausted => None,
                }
            });
        let nodes = shared.load(Ordering::Relaxed);
        match found {
            Some(v) => (Outcome::Found(v), nodes),
            None if aborted.load(Ordering::Relaxed) => (Outcome::Aborted, nodes),
            None => (Outcome::Exhausted, nodes),
        }
    } else {
        let mut s = Searcher::new(pool, x, shared, budget);
        for b in 0..pool.root.len() {
            let out = run_branch(b, &mut s);
            match out {
                Outcome::Found(_) | Outcome::Aborted => {
                    s.flush_nodes();
                    return (out, shared.load(Ordering::Relaxed));
                }
                Outcome::Exhausted => {}
            }
        }
        s.flush_nodes();
        (Outcome::Exhausted, shared.load(Ordering::Relaxed))
    }
}

/// Pure greedy descent for an upper bound when the search is cut off.
fn greedy_probe(pool: &Pool, cap: usize) -> Option<Vec<u32>> {
    let mut unc = full_uncovered(pool);
    let mut chosen = Vec::new();
    while unc.iter().any(|&w| w != 0) {
        if chosen.len() >= cap {
            return None;
        }
        let mut best = 0u32;
        let mut best_c = usize::MAX;
        for c in 0..pool.colorings.len() {
            let cov = pool.cov(c);
            let mut newc = 0u32;
            for (w, &u) in cov.iter().zip(unc.iter()) {
                newc += (w & u).count_ones();
            }
            if newc > best {
                best = newc;
                best_c = c;
            }
        }
        if best == 0 {
            return None;
        }
        let cov = pool.cov(best_c);
        for (w, u) in unc.iter_mut().enumerate() {
            *u &= !cov[w];
        }
        chosen.push(best_c as u32);
    }
    Some(chosen)
}

fn witness_from(pool: &Pool, indices: &[u32], r: usize) -> Cover {
    let colorings = indices
        .iter()
        .map(|&i| Coloring::new(pool.colorings[i as usize].clone(), r).expect("pool coloring"))
        .collect();
    Cover::new(colorings).expect("nonempty witness")
}

/// Minimum size of a strong (r,p) cover, by iterative deepening starting
/// from the best known lower bound. Exact results carry a witness; budget
/// or pool-size cutoffs produce an honest interval, never a wrong value.
pub fn exact_cover_number(
    g: &Hypergraph,
    r: usize,
    p: usize,
    config: &SearchConfig,
) -> Result<ExactResult> {
    if config.x_max < 1 {
        return Err(Error::InvalidParams("x_max must be at least 1".into()));
    }
    let params = CoverParams::effective(r, p, g.k())?;
    let p = params.p;
    if r > 256 {
        return Err(Error::InvalidParams("r > 256 is unsupported".into()));
    }

    // An edgeless hypergraph is covered by any single coloring.
    if g.m() == 0 {
        let witness = Cover::new(vec![Coloring::new(vec![0; g.n()], r)?])?;
        return Ok(ExactResult {
            value: CoverNumber::Exact(1),
            witness: Some(witness),
            nodes: 0,
            bounds: vec![Bound {
                value: 1,
                source: BoundSource::Trivial,
            }],
        });
    }

    let report = lower_bound_report(g, r, p)?;
    let mut bounds = report.bounds.clone();
    let lb = report.best().max(1);

    // Enough colors for a rainbow coloring: one coloring always suffices.
    if r >= g.n() {
        let witness = Cover::new(vec![Coloring::new(
            (0..g.n() as u16).map(|v| v as u8).collect(),
            r,
        )?])?;
        return Ok(ExactResult {
            value: CoverNumber::Exact(1),
            witness: Some(witness),
            nodes: 0,
            bounds,
        });
    }

    if rgs_count(g.n(), r.min(g.n())) > POOL_GUARD {
        return Ok(ExactResult {
            value: CoverNumber::Range { lo: lb, hi: None },
            witness: None,
            nodes: 0,
            bounds,
        });
    }
    let pool = Pool::build(g, r, p, config.vertex_symmetry);
    if pool.max_single == 0 {
        // No coloring covers any edge; cannot happen for valid params.
        return Err(Error::InvalidParams(
            "no coloring covers any edge under these parameters".into(),
        ));
    }

    let shared = AtomicU64::new(0);
    let parallel = config.parallel_width > 1;
    let mut x = lb;
    while x <= config.x_max {
        let (out, _) = solve_depth(&pool, x, config.node_budget, &shared, parallel);
        match out {
            Outcome::Found(indices) => {
                let witness = witness_from(&pool, &indices, r);
                return Ok(ExactResult {
                    value: CoverNumber::Exact(x),
                    witness: Some(witness),
                    nodes: shared.load(Ordering::Relaxed),
                    bounds,
                });
            }
            Outcome::Exhausted => {
                bounds.push(Bound {
                    value: x + 1,
                    source: BoundSource::ExhaustedSearch,
                });
                x += 1;
            }
            Outcome::Aborted => {
                let probe = greedy_probe(&pool, config.x_max.max(64));
                let witness = probe.as_ref().map(|idx| witness_from(&pool, idx, r));
                return Ok(ExactResult {
                    value: CoverNumber::Range {
                        lo: x,
                        hi: probe.map(|idx| idx.len()),
                    },
                    witness,
                    nodes: shared.load(Ordering::Relaxed),
                    bounds,
                });
            }
        }
    }
    Ok(ExactResult {
        value: CoverNumber::Range {
            lo: config.x_max + 1,
            hi: None,
        },
        witness: None,
        nodes: shared.load(Ordering::Relaxed),
        bounds,
    })
}
