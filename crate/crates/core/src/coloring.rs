//! Colorings, covers, and the properness predicate.

use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// An assignment of one of `r` colors to each of `n` vertices. Empty color
/// classes are allowed; properness only depends on the induced partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
    r: usize,
}

impl Coloring {
    pub fn new(colors: Vec<u8>, r: usize) -> Result<Self> {
        if r < 1 || r > 256 {
            return Err(Error::InvalidColoring(format!(
                "r = {r} out of supported range 1..=256"
            )));
        }
        if colors.is_empty() {
            return Err(Error::InvalidColoring("empty vertex set".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c as usize >= r) {
            return Err(Error::InvalidColoring(format!("color {c} >= r = {r}")));
        }
        Ok(Self { colors, r })
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }
}

/// An ordered, nonempty list of colorings sharing the same n and r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    colorings: Vec<Coloring>,
}

impl Cover {
    pub fn new(colorings: Vec<Coloring>) -> Result<Self> {
        let first = colorings
            .first()
            .ok_or_else(|| Error::InvalidColoring("a cover needs at least one coloring".into()))?;
        let (n, r) = (first.n(), first.r());
        for c in &colorings {
            if c.n() != n || c.r() != r {
                return Err(Error::DimensionMismatch(format!(
                    "cover mixes (n={}, r={}) with (n={n}, r={r})",
                    c.n(),
                    c.r()
                )));
            }
        }
        Ok(Self { colorings })
    }

    pub fn colorings(&self) -> &[Coloring] {
        &self.colorings
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n(&self) -> usize {
        self.colorings[0].n()
    }

    pub fn r(&self) -> usize {
        self.colorings[0].r()
    }
}

/// The pair (r, p). `p` is clamped to `min(p, k)` of the hypergraph at hand;
/// a clamped `p` above `r` is rejected since such an edge could never be
/// properly colored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverParams {
    pub r: usize,
    pub p: usize,
}

impl CoverParams {
    /// Validates and clamps against edge size `k`.
    pub fn effective(r: usize, p: usize, k: usize) -> Result<Self> {
        let p = p.min(k);
        if p < 2 {
            return Err(Error::InvalidParams(format!(
                "p = {p} after clamping to k = {k}, need p >= 2"
            )));
        }
        if p > r {
            return Err(Error::InvalidParams(format!(
                "p = {p} exceeds r = {r}: an edge of size >= {p} can never see {p} colors"
            )));
        }
        Ok(Self { r, p })
    }
}

/// Number of distinct colors on the edge's vertices.
pub fn distinct_colors(edge: &[usize], coloring: &Coloring) -> usize {
    let mut mask = [0u64; 4];
    let mut count = 0;
    for &v in edge {
        let c = coloring.colors[v] as usize;
        let (w, b) = (c / 64, c % 64);
        if mask[w] >> b & 1 == 0 {
            mask[w] |= 1 << b;
            count += 1;
        }
    }
    count
}

/// True when the edge sees at least `min(p, |edge|)` distinct colors.
pub fn properly_colored(edge: &[usize], coloring: &Coloring, p: usize) -> bool {
    distinct_colors(edge, coloring) >= p.min(edge.len())
}

/// The edges properly colored by no coloring of the cover. An empty result
/// means the cover is valid.
pub fn uncovered_edges(g: &Hypergraph, cover: &Cover, p: usize) -> Result<Vec<Vec<usize>>> {
    if cover.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "hypergraph has n = {}, cover has n = {}",
            g.n(),
            cover.n()
        )));
    }
    Ok(g.edges()
        .iter()
        .filter(|e| !cover.colorings().iter().any(|c| properly_colored(e, c, p)))
        .cloned()
        .collect())
}

/// Convenience wrapper: `uncovered_edges` is empty.
pub fn verify_cover(g: &Hypergraph, cover: &Cover, p: usize) -> Result<bool> {
    Ok(uncovered_edges(g, cover, p)?.is_empty())
}
