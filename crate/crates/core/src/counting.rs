//! Counting: how many edges a single r-coloring can properly (r,p) color.
//!
//! `M(n,k,r,p)` is the maximum over all r-colorings of the number of
//! k-subsets of an n-set seeing at least `min(p,k)` colors. The formula
//! bracket evaluates the balanced-coloring count on the nearest multiples
//! of r; `exact_m` finds the true maximum by exhausting canonical
//! colorings. The cover number of any hypergraph on n vertices is at least
//! `|E| / M(n,k,r,p)`.

use crate::coloring::{Coloring, CoverParams};
use crate::hypergraph::Hypergraph;
use crate::partitions::{binomial, k_subsets, rgs_count, RgsIter};
use crate::{Error, Result};

/// Edges on `n_prime` vertices (divisible by r) whose vertex set touches
/// exactly `i` classes of the balanced r-coloring with classes of size
/// `n_prime / r`. Inclusion-exclusion with the convention C(a,b) = 0 for
/// a < b.
pub fn exactly_i_color_count(n_prime: usize, k: usize, r: usize, i: usize) -> Result<u64> {
    if r == 0 || n_prime % r != 0 {
        return Err(Error::InvalidParams(format!(
            "n' = {n_prime} must be divisible by r = {r}"
        )));
    }
    if i < 1 || i > r {
        return Err(Error::InvalidParams(format!("i = {i} outside 1..={r}")));
    }
    let s = (n_prime / r) as u64;
    let mut sum: i128 = 0;
    for j in 0..=i {
        let term = (binomial(i as u64, j as u64) * binomial(s * (i - j) as u64, k as u64)) as i128;
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let total = binomial(r as u64, i as u64) as i128 * sum;
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// The formula bracket on M(n,k,r,p) with `n1 = floor(n/r)*r` and
/// `n2 = ceil(n/r)*r`. The raw lower value can be negative; it is clamped
/// at zero and kept in `raw_lower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MBracket {
    pub lower: u64,
    pub upper: u64,
    pub raw_lower: i128,
    pub n1: usize,
    pub n2: usize,
}

pub fn m_bounds(n: usize, k: usize, r: usize, p: usize) -> Result<MBracket> {
    let params = CoverParams::effective(r, p, k)?;
    let p = params.p;
    if n < k {
        return Err(Error::InvalidParams(format!("n = {n} < k = {k}")));
    }
    let n1 = (n / r) * r;
    let n2 = n.div_ceil(r) * r;
    let total = binomial(n as u64, k as u64) as i128;
    let mut upper = total;
    for i in 1..p {
        upper -= exactly_i_color_count(n1, k, r, i)? as i128;
    }
    let mut raw_lower = total;
    for i in 1..p {
        raw_lower -= exactly_i_color_count(n2, k, r, i)? as i128;
    }
    let lower = raw_lower.max(0) as u64;
    debug_assert!(upper >= lower as i128);
    Ok(MBracket {
        lower,
        upper: upper as u64,
        raw_lower,
        n1,
        n2,
    })
}

/// Guard for exhaustive searches over canonical colorings.
pub const DEFAULT_COLORING_GUARD: u128 = 10_000_000;

/// True maximum M(n,k,r,p) with a witness coloring, by exhausting set
/// partitions of the vertex set into at most r blocks. Refuses instances
/// with more than `guard` canonical colorings (pass a larger guard to
/// override).
pub fn exact_m(n: usize, k: usize, r: usize, p: usize, guard: u128) -> Result<(u64, Coloring)> {
    let params = CoverParams::effective(r, p, k)?;
    let p = params.p;
    if n < k {
        return Err(Error::InvalidParams(format!("n = {n} < k = {k}")));
    }
    let count = rgs_count(n, r);
    if count > guard {
        return Err(Error::TooLarge(format!(
            "{count} canonical colorings exceed the guard of {guard}"
        )));
    }
    let edges = k_subsets(n, k);
    let mut best: u64 = 0;
    let mut witness: Option<Vec<u8>> = None;
    for colors in RgsIter::new(n, r) {
        let mut covered: u64 = 0;
        for e in &edges {
            let mut mask: u64 = 0;
            for &v in e {
                mask |= 1 << colors[v];
            }
            if mask.count_ones() as usize >= p {
                covered += 1;
            }
        }
        // Strict improvement keeps the lexicographically smallest witness.
        if covered > best || witness.is_none() {
            best = covered;
            witness = Some(colors);
        }
    }
    let witness = Coloring::new(witness.expect("n >= 1"), r)?;
    Ok((best, witness))
}

/// The edge-count lower bound `ceil(|E| / M)` on the strong (r,p) cover
/// number, using the exact M when the exhaustive search is affordable and
/// the formula's upper bound otherwise (still a valid lower bound).
pub fn edge_lower_bound(g: &Hypergraph, r: usize, p: usize) -> Result<usize> {
    if g.m() == 0 {
        return Ok(0);
    }
    let m_value = match exact_m(g.n(), g.k(), r, p, DEFAULT_COLORING_GUARD) {
        Ok((v, _)) => v,
        Err(Error::TooLarge(_)) => m_bounds(g.n(), g.k(), r, p)?.upper,
        Err(e) => return Err(e),
    };
    if m_value == 0 {
        // No single coloring covers any edge, so no cover exists at all;
        // callers reject this via CoverParams before getting here.
        return Err(Error::InvalidParams(
            "no coloring covers any edge under these parameters".into(),
        ));
    }
    Ok((g.m() as u64).div_ceil(m_value) as usize)
}
