//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! 4 3 weighted
//! 0 1 5
//! 1 2 1
//! 2 3 7
//! ```
//!
//! The header gives `n`, the number of edge lines and an optional `weighted`
//! flag. Augmentation sets use the same layout preceded by a `# augment` line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{DiGraph, WDiGraph};
use crate::augment::AugmentSet;
use crate::error::{Error, Result};

pub const AUGMENT_MARKER: &str = "# augment";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub weighted: bool,
    pub augment: bool,
    /// `(u, v, w)`; `w = 1` for unweighted lists.
    pub edges: Vec<(usize, usize, i64)>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut header: Option<(usize, usize, bool)> = None;
    let mut augment = false;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let trimmed = raw.trim();
        if trimmed.starts_with('#') {
            if header.is_none() && trimmed == AUGMENT_MARKER {
                augment = true;
            }
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((n, _, weighted)) = header else {
            let (n, m, weighted) = match toks.as_slice() {
                [n, m] => (n, m, false),
                [n, m, "weighted"] => (n, m, true),
                _ => return Err(perr(line_no, format!("expected header `n m [weighted]`, got {content:?}"))),
            };
            let n = n.parse().map_err(|_| perr(line_no, format!("bad vertex count {n:?}")))?;
            let m = m.parse().map_err(|_| perr(line_no, format!("bad edge count {m:?}")))?;
            header = Some((n, m, weighted));
            continue;
        };
        let want = if weighted { 3 } else { 2 };
        if toks.len() != want {
            return Err(perr(line_no, format!("expected {want} fields, got {}", toks.len())));
        }
        let vertex = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| perr(line_no, format!("bad vertex {s:?}")))?;
            if v >= n {
                return Err(perr(line_no, format!("vertex {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let u = vertex(toks[0])?;
        let v = vertex(toks[1])?;
        let w = if weighted {
            let w: i64 = toks[2].parse().map_err(|_| perr(line_no, format!("bad weight {:?}", toks[2])))?;
            if w < 0 {
                return Err(perr(line_no, format!("negative weight {w}")));
            }
            w
        } else {
            1
        };
        edges.push((u, v, w));
    }
    let Some((n, m, weighted)) = header else {
        return Err(perr(last_line.max(1), "missing header line"));
    };
    if edges.len() != m {
        return Err(perr(last_line.max(1), format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok(EdgeList { n, weighted, augment, edges })
}

impl EdgeList {
    pub fn to_digraph(&self) -> Result<DiGraph> {
        DiGraph::from_edges(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)))
    }

    /// Unweighted lists become unit-weight graphs.
    pub fn to_wdigraph(&self) -> Result<WDiGraph> {
        WDiGraph::from_edges(self.n, self.edges.iter().copied())
    }

    pub fn to_augment(&self) -> Result<AugmentSet> {
        if self.weighted {
            AugmentSet::from_weighted(self.n, self.edges.iter().map(|&(u, v, w)| (u, v, w as u64)))
        } else {
            AugmentSet::from_pairs(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)))
        }
    }
}

pub fn read_edge_list(path: &Path) -> Result<EdgeList> {
    parse_edge_list(&fs::read_to_string(path)?)
}

fn render(n: usize, m: usize, weighted: bool, augment: bool, rows: impl Iterator<Item = (u32, u32, u64)>) -> String {
    let mut s = String::new();
    if augment {
        s.push_str(AUGMENT_MARKER);
        s.push('\n');
    }
    let _ = writeln!(s, "{n} {m}{}", if weighted { " weighted" } else { "" });
    for (u, v, w) in rows {
        if weighted {
            let _ = writeln!(s, "{u} {v} {w}");
        } else {
            let _ = writeln!(s, "{u} {v}");
        }
    }
    s
}

pub fn digraph_to_string(g: &DiGraph) -> String {
    render(g.n(), g.m(), false, false, g.edges().map(|(u, v)| (u, v, 1)))
}

pub fn wdigraph_to_string(g: &WDiGraph) -> String {
    render(g.n(), g.m(), true, false, g.edges())
}

pub fn augment_to_string(h: &AugmentSet) -> String {
    render(h.n(), h.len(), h.is_weighted(), true, h.weighted())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_weighted() {
        let g = WDiGraph::from_edges(4, [(0, 1, 5), (1, 2, 1), (2, 3, 7)]).unwrap();
        let text = wdigraph_to_string(&g);
        let back = parse_edge_list(&text).unwrap().to_wdigraph().unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn round_trip_augment() {
        let h = AugmentSet::from_pairs(5, [(0, 4), (1, 3)]).unwrap();
        let el = parse_edge_list(&augment_to_string(&h)).unwrap();
        assert!(el.augment);
        assert_eq!(el.to_augment().unwrap(), h);
    }

    #[test]
    fn comments_and_blank_lines() {
        let el = parse_edge_list("# hi\n\n3 2\n0 1 # trailing\n1 2\n").unwrap();
        assert_eq!(el.edges, vec![(0, 1, 1), (1, 2, 1)]);
        assert!(!el.augment);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_edge_list("3 2\n0 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("3 1 weighted\n0 1 -2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_edge_list("3 1\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
