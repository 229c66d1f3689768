//! Probabilistic constructions. The quantity
//! `base = r^k / ((p-1)^k C(r,p-1))` governs both thresholds: a hypergraph
//! has a strong (r,p) cover of size x when `|E| <= base^x / 2` (x random
//! colorings succeed in expectation within two global draws), and
//! Moser–Tardos resampling terminates when the dependency satisfies
//! `d <= base^x / e - 1`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{properly_colored, Coloring, Cover, CoverParams};
use crate::hypergraph::{dependency, Hypergraph};
use crate::partitions::binomial;
use crate::{Error, Result};

/// Parameters of one probabilistic run. `base > 1` is the operative
/// feasibility condition; the classical sufficient condition is
/// `k >= 2p-1` and `r >= e(p-1)`.
#[derive(Debug, Clone, Copy)]
pub struct LllParams {
    pub base: f64,
    pub x: usize,
    pub seed: u64,
    pub max_resamples: u64,
}

impl LllParams {
    pub fn new(k: usize, r: usize, p: usize, x: usize, seed: u64, max_resamples: u64) -> Result<Self> {
        Ok(Self {
            base: lll_base(k, r, p)?,
            x,
            seed,
            max_resamples,
        })
    }
}

/// `r^k / ((p-1)^k C(r,p-1))`.
pub fn lll_base(k: usize, r: usize, p: usize) -> Result<f64> {
    let params = CoverParams::effective(r, p, k)?;
    let p = params.p;
    let choose = binomial(r as u64, (p - 1) as u64) as f64;
    Ok((r as f64 / (p - 1) as f64).powi(k as i32) / choose)
}

/// Dependency threshold `base^x / e - 1` below which x colorings are
/// guaranteed by the local lemma.
pub fn dependency_threshold(k: usize, r: usize, p: usize, x: usize) -> Result<f64> {
    Ok(lll_base(k, r, p)?.powi(x as i32) / std::f64::consts::E - 1.0)
}

const MIN_X_CAP: usize = 100_000;

/// Smallest x >= 1 with `m <= base^x / 2`; None when base <= 1 makes the
/// bound unsatisfiable.
pub fn min_x_edge_bound(m: u64, k: usize, r: usize, p: usize) -> Result<Option<usize>> {
    let base = lll_base(k, r, p)?;
    if m == 0 {
        return Ok(Some(1));
    }
    if base <= 1.0 {
        return Ok(None);
    }
    let mut acc = 0.5;
    for x in 1..=MIN_X_CAP {
        acc *= base;
        if acc >= m as f64 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Smallest x >= 1 with `d <= base^x / e - 1`; None when base <= 1.
pub fn min_x_dependency_bound(d: u64, k: usize, r: usize, p: usize) -> Result<Option<usize>> {
    let base = lll_base(k, r, p)?;
    if base <= 1.0 {
        return Ok(None);
    }
    let mut acc = 1.0;
    for x in 1..=MIN_X_CAP {
        acc *= base;
        if acc / std::f64::consts::E - 1.0 >= d as f64 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Termination mode for the resampling loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtcMode {
    /// Requires the dependency threshold; runs until done.
    Guaranteed,
    /// Runs regardless of the threshold, capped at this many resamples.
    Forced { max_resamples: u64 },
}

/// Moser–Tardos resampling: draw x random colorings, then repeatedly pick
/// the lowest-indexed edge seeing fewer than min(p,k) colors in every
/// coloring and redraw the colors of its vertices in all x colorings.
/// Returns the cover and the number of resampling events; deterministic
/// given the seed.
pub fn mtc_cover(
    g: &Hypergraph,
    r: usize,
    p: usize,
    x: usize,
    seed: u64,
    mode: MtcMode,
) -> Result<(Cover, u64)> {
    let params = CoverParams::effective(r, p, g.k())?;
    let p = params.p;
    if x < 1 {
        return Err(Error::InvalidParams("x must be at least 1".into()));
    }
    if r > 256 {
        return Err(Error::InvalidParams("r > 256 is unsupported".into()));
    }
    if mode == MtcMode::Guaranteed {
        let threshold = dependency_threshold(g.k(), r, p, x)?;
        let d = dependency(g);
        if (d as f64) > threshold {
            return Err(Error::DependencyTooHigh {
                dependency: d,
                threshold,
                x,
            });
        }
    }

    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors = vec![vec![0u8; n]; x];
    for v in 0..n {
        for coloring in colors.iter_mut() {
            coloring[v] = rng.gen_range(0..r) as u8;
        }
    }

    // An event is violated when every coloring gives the edge fewer than
    // p distinct colors.
    let violated = |colors: &[Vec<u8>]| -> Option<usize> {
        g.edges().iter().position(|e| {
            !colors.iter().any(|c| {
                let mut mask = [0u64; 4];
                let mut distinct = 0;
                for &v in e {
                    let col = c[v] as usize;
                    if mask[col / 64] >> (col % 64) & 1 == 0 {
                        mask[col / 64] |= 1 << (col % 64);
                        distinct += 1;
                    }
                }
                distinct >= p
            })
        })
    };

    let mut resamples: u64 = 0;
    while let Some(ei) = violated(&colors) {
        if let MtcMode::Forced { max_resamples } = mode {
            if resamples >= max_resamples {
                return Err(Error::ResampleLimit(resamples));
            }
        }
        for &v in &g.edges()[ei] {
            for coloring in colors.iter_mut() {
                coloring[v] = rng.gen_range(0..r) as u8;
            }
        }
        resamples += 1;
    }

    let cover = Cover::new(
        colors
            .into_iter()
            .map(|c| Coloring::new(c, r))
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok((cover, resamples))
}

/// Repeatedly draws x independent uniform colorings until they form a
/// cover; returns the cover and the number of global draws. With
/// `m <= base^x / 2` two draws suffice in expectation.
pub fn union_bound_cover(
    g: &Hypergraph,
    r: usize,
    p: usize,
    x: usize,
    seed: u64,
    max_iterations: u64,
) -> Result<(Cover, u64)> {
    let params = CoverParams::effective(r, p, g.k())?;
    let p = params.p;
    if x < 1 {
        return Err(Error::InvalidParams("x must be at least 1".into()));
    }
    if r > 256 {
        return Err(Error::InvalidParams("r > 256 is unsupported".into()));
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations: u64 = 0;
    loop {
        iterations += 1;
        let mut colorings = Vec::with_capacity(x);
        for _ in 0..x {
            let colors: Vec<u8> = (0..n).map(|_| rng.gen_range(0..r) as u8).collect();
            colorings.push(Coloring::new(colors, r)?);
        }
        let all_covered = g
            .edges()
            .iter()
            .all(|e| colorings.iter().any(|c| properly_colored(e, c, p)));
        if all_covered {
            return Ok((Cover::new(colorings)?, iterations));
        }
        if iterations >= max_iterations {
            return Err(Error::IterationLimit(iterations));
        }
    }
}
