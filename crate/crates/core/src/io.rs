//! File formats.
//!
//! Hypergraph text: a header line `n k m` followed by m lines of k
//! space-separated 0-based vertex indices. Cover text: a header `n r x`
//! followed by x lines of n space-separated colors in `0..r`. The JSON
//! mirrors are `{"n":..,"k":..,"edges":[[..],..]}` and
//! `{"n":..,"r":..,"colorings":[[..],..]}`. `read_*`/`write_*` pick the
//! format from a `.json` extension.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, Cover};
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

fn parse_numbers<T: std::str::FromStr>(line: &str, expected: usize, what: &str) -> Result<Vec<T>> {
    let items: Vec<T> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in {what}")))
        })
        .collect::<Result<_>>()?;
    if items.len() != expected {
        return Err(Error::Parse(format!(
            "{what}: expected {expected} numbers, found {}",
            items.len()
        )));
    }
    Ok(items)
}

pub fn hypergraph_to_text(g: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", g.n(), g.k(), g.m());
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn hypergraph_from_text(text: &str) -> Result<Hypergraph> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
    let h: Vec<usize> = parse_numbers(header, 3, "hypergraph header")?;
    let (n, k, m) = (h[0], h[1], h[2]);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
        edges.push(parse_numbers(line, k, "edge")?);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after edge list".into()));
    }
    Hypergraph::new(n, k, edges)
}

pub fn cover_to_text(cover: &Cover) -> String {
    let mut out = format!("{} {} {}\n", cover.n(), cover.r(), cover.len());
    for c in cover.colorings() {
        let line: Vec<String> = c.colors().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn cover_from_text(text: &str) -> Result<Cover> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty cover file".into()))?;
    let h: Vec<usize> = parse_numbers(header, 3, "cover header")?;
    let (n, r, x) = (h[0], h[1], h[2]);
    let mut colorings = Vec::with_capacity(x);
    for _ in 0..x {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {x} coloring lines")))?;
        let raw: Vec<u16> = parse_numbers(line, n, "coloring")?;
        let colors = raw
            .into_iter()
            .map(|c| {
                u8::try_from(c).map_err(|_| Error::Parse(format!("color {c} out of range")))
            })
            .collect::<Result<Vec<u8>>>()?;
        colorings.push(Coloring::new(colors, r)?);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after colorings".into()));
    }
    Cover::new(colorings)
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    n: usize,
    r: usize,
    colorings: Vec<Vec<u16>>,
}

pub fn hypergraph_to_json(g: &Hypergraph) -> String {
    serde_json::to_string_pretty(&HypergraphJson {
        n: g.n(),
        k: g.k(),
        edges: g.edges().to_vec(),
    })
    .expect("serializable")
}

pub fn hypergraph_from_json(text: &str) -> Result<Hypergraph> {
    let raw: HypergraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Hypergraph::new(raw.n, raw.k, raw.edges)
}

pub fn cover_to_json(cover: &Cover) -> String {
    serde_json::to_string_pretty(&CoverJson {
        n: cover.n(),
        r: cover.r(),
        colorings: cover
            .colorings()
            .iter()
            .map(|c| c.colors().iter().map(|&x| x as u16).collect())
            .collect(),
    })
    .expect("serializable")
}

pub fn cover_from_json(text: &str) -> Result<Cover> {
    let raw: CoverJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.colorings.iter().any(|c| c.len() != raw.n) {
        return Err(Error::Parse(format!("colorings must have length {}", raw.n)));
    }
    let colorings = raw
        .colorings
        .into_iter()
        .map(|c| {
            let colors = c
                .into_iter()
                .map(|x| {
                    u8::try_from(x).map_err(|_| Error::Parse(format!("color {x} out of range")))
                })
                .collect::<Result<Vec<u8>>>()?;
            Coloring::new(colors, raw.r)
        })
        .collect::<Result<Vec<_>>>()?;
    Cover::new(colorings)
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        hypergraph_from_json(&text)
    } else {
        hypergraph_from_text(&text)
    }
}

pub fn write_hypergraph(path: &Path, g: &Hypergraph) -> Result<()> {
    let text = if is_json(path) {
        hypergraph_to_json(g)
    } else {
        hypergraph_to_text(g)
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_cover(path: &Path) -> Result<Cover> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        cover_from_json(&text)
    } else {
        cover_from_text(&text)
    }
}

pub fn write_cover(path: &Path, cover: &Cover) -> Result<()> {
    let text = if is_json(path) {
        cover_to_json(cover)
    } else {
        cover_to_text(cover)
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_hypergraph, random_hypergraph};

    #[test]
    fn hypergraph_text_roundtrip() {
        let g = random_hypergraph(9, 3, 20, 4).unwrap();
        let text = hypergraph_to_text(&g);
        assert_eq!(hypergraph_from_text(&text).unwrap(), g);
    }

    #[test]
    fn hypergraph_json_roundtrip() {
        let g = complete_hypergraph(6, 4).unwrap();
        let json = hypergraph_to_json(&g);
        assert_eq!(hypergraph_from_json(&json).unwrap(), g);
    }

    #[test]
    fn cover_roundtrips() {
        let c1 = Coloring::new(vec![0, 1, 2, 0, 1], 3).unwrap();
        let c2 = Coloring::new(vec![2, 2, 0, 1, 0], 3).unwrap();
        let cover = Cover::new(vec![c1, c2]).unwrap();
        assert_eq!(cover_from_text(&cover_to_text(&cover)).unwrap(), cover);
        assert_eq!(cover_from_json(&cover_to_json(&cover)).unwrap(), cover);
    }

    #[test]
    fn parse_errors() {
        assert!(hypergraph_from_text("").is_err());
        assert!(hypergraph_from_text("3 3 1\n0 1\n").is_err());
        assert!(hypergraph_from_text("3 3 2\n0 1 2\n").is_err());
        assert!(cover_from_text("3 2 1\n0 1 5\n").is_err());
        assert!(hypergraph_from_json("{\"n\": 3}").is_err());
    }
}
