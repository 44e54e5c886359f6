//! Planar code and the line-oriented rotation text format.
//!
//! Planar code: the 15-byte header `>>planar_code<<`, then per graph a byte
//! `n` followed, for each vertex `1..=n`, by its neighbours (1-based, in
//! rotation order) and a terminating `0`. Only the one-byte variant is read.
//!
//! Text format:
//!
//! ```text
//! # comment
//! n 3
//! 0: 1 2
//! 1: 2 0
//! 2: 0 1
//! outer 0 1
//! ```

use thiserror::Error;

use crate::embedding::{Dart, EmbeddingError, PlaneGraph};

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing >>planar_code<< header")]
    BadHeader,
    #[error("record {index} is truncated")]
    TruncatedRecord { index: usize },
    #[error("record {index}: vertex {vertex} has neighbour {neighbor} out of range")]
    NeighborOutOfRange {
        index: usize,
        vertex: usize,
        neighbor: usize,
    },
    #[error("record {index} uses the wide format, which is not supported")]
    WideFormatUnsupported { index: usize },
    #[error("record {index} has {vertices} vertices; at most 255 fit the format")]
    TooLarge { index: usize, vertices: usize },
    #[error("record {index} is not a valid plane graph: {source}")]
    EmbeddingInvalid {
        index: usize,
        source: EmbeddingError,
    },
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
}

/// Default outer dart: from vertex 0 to its first neighbour, or from the
/// first vertex that has neighbours.
fn default_outer(rot: &[Vec<usize>]) -> Option<Dart> {
    rot.iter()
        .enumerate()
        .find(|(_, r)| !r.is_empty())
        .map(|(v, r)| Dart::new(v, r[0]))
}

pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, FormatError> {
    let body = bytes
        .strip_prefix(PLANAR_CODE_HEADER)
        .ok_or(FormatError::BadHeader)?;
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < body.len() {
        let index = out.len();
        let n = body[pos] as usize;
        pos += 1;
        if n == 0 {
            return Err(FormatError::WideFormatUnsupported { index });
        }
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rot.iter_mut().enumerate() {
            loop {
                let b = *body
                    .get(pos)
                    .ok_or(FormatError::TruncatedRecord { index })?
                    as usize;
                pos += 1;
                if b == 0 {
                    break;
                }
                if b > n {
                    return Err(FormatError::NeighborOutOfRange {
                        index,
                        vertex: v,
                        neighbor: b - 1,
                    });
                }
                r.push(b - 1);
            }
        }
        let outer = default_outer(&rot);
        let g = PlaneGraph::new(rot, outer)
            .map_err(|source| FormatError::EmbeddingInvalid { index, source })?;
        out.push(g);
    }
    Ok(out)
}

pub fn write_planar_code(graphs: &[PlaneGraph]) -> Result<Vec<u8>, FormatError> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for (index, g) in graphs.iter().enumerate() {
        let n = g.vertex_count();
        if n == 0 {
            return Err(FormatError::WideFormatUnsupported { index });
        }
        if n > 255 {
            return Err(FormatError::TooLarge { index, vertices: n });
        }
        out.push(n as u8);
        for v in 0..n {
            out.extend(g.rotation(v).iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    Ok(out)
}

fn text_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Text {
        line,
        message: message.into(),
    }
}

pub fn parse_text(s: &str) -> Result<PlaneGraph, FormatError> {
    let mut n: Option<usize> = None;
    let mut rot: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer: Vec<Dart> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| text_err(line, format!("bad number {t:?}")))
        };
        if let Some(rest) = content
            .strip_prefix("n ")
            .or_else(|| (content == "n").then_some(""))
        {
            if n.is_some() {
                return Err(text_err(line, "vertex count given twice"));
            }
            let count = num(rest.trim())?;
            n = Some(count);
            rot = vec![None; count];
            continue;
        }
        if let Some(rest) = content.strip_prefix("outer") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(text_err(line, "outer needs two vertices"));
            }
            outer.push(Dart::new(num(parts[0])?, num(parts[1])?));
            continue;
        }
        let count = n.ok_or_else(|| text_err(line, "vertex line before `n <count>`"))?;
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| text_err(line, "expected `v: neighbours`"))?;
        let v = num(head.trim())?;
        if v >= count {
            return Err(text_err(line, format!("vertex {v} out of range")));
        }
        if rot[v].is_some() {
            return Err(text_err(line, format!("vertex {v} listed twice")));
        }
        let nbrs = tail
            .split_whitespace()
            .map(num)
            .collect::<Result<Vec<_>, _>>()?;
        rot[v] = Some(nbrs);
    }
    let count = n.ok_or_else(|| text_err(last_line.max(1), "missing `n <count>`"))?;
    let rot: Vec<Vec<usize>> = rot.into_iter().map(|r| r.unwrap_or_default()).collect();
    debug_assert_eq!(rot.len(), count);
    let res = if outer.is_empty() {
        let d = default_outer(&rot);
        PlaneGraph::new(rot, d)
    } else {
        PlaneGraph::with_outer_darts(rot, &outer)
    };
    res.map_err(|source| FormatError::EmbeddingInvalid { index: 0, source })
}

/// Normalised text: every vertex listed in order, one `outer` line per
/// component with edges (the first dart of each outer walk).
pub fn write_text(g: &PlaneGraph) -> String {
    let mut s = format!("n {}\n", g.vertex_count());
    for v in 0..g.vertex_count() {
        s.push_str(&v.to_string());
        s.push(':');
        for w in g.rotation(v) {
            s.push(' ');
            s.push_str(&w.to_string());
        }
        s.push('\n');
    }
    if g.edge_count() > 0 {
        for d in g.outer_darts() {
            s.push_str(&format!("outer {} {}\n", d.tail, d.head));
        }
    }
    s
}

/// Reads either format, recognising planar code by its header.
pub fn parse_any(bytes: &[u8]) -> Result<Vec<PlaneGraph>, FormatError> {
    if bytes.starts_with(PLANAR_CODE_HEADER) {
        parse_planar_code(bytes)
    } else {
        let s = std::str::from_utf8(bytes)
            .map_err(|_| text_err(1, "input is neither planar code nor UTF-8 text"))?;
        Ok(vec![parse_text(s)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_record() {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend([3, 2, 3, 0, 3, 1, 0, 1, 2, 0]);
        let gs = parse_planar_code(&bytes).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(
            (gs[0].vertex_count(), gs[0].edge_count(), gs[0].face_count()),
            (3, 3, 2)
        );
        assert_eq!(write_planar_code(&gs).unwrap(), bytes);
    }

    #[test]
    fn header_only_and_errors() {
        assert!(parse_planar_code(PLANAR_CODE_HEADER).unwrap().is_empty());
        assert_eq!(parse_planar_code(b"garbage"), Err(FormatError::BadHeader));
        let mut t = PLANAR_CODE_HEADER.to_vec();
        t.extend([3, 2, 3]);
        assert_eq!(
            parse_planar_code(&t),
            Err(FormatError::TruncatedRecord { index: 0 })
        );
        let mut w = PLANAR_CODE_HEADER.to_vec();
        w.push(0);
        assert_eq!(
            parse_planar_code(&w),
            Err(FormatError::WideFormatUnsupported { index: 0 })
        );
        let mut r = PLANAR_CODE_HEADER.to_vec();
        r.extend([2, 3, 0, 1, 0]);
        assert!(matches!(
            parse_planar_code(&r),
            Err(FormatError::NeighborOutOfRange { .. })
        ));
    }

    #[test]
    fn euler_failure_reports_index() {
        // second record: K4 with a non-planar rotation
        let mut b = PLANAR_CODE_HEADER.to_vec();
        b.extend([3, 2, 3, 0, 3, 1, 0, 1, 2, 0]);
        b.extend([4, 2, 3, 4, 0, 1, 3, 4, 0, 1, 2, 4, 0, 1, 2, 3, 0]);
        match parse_planar_code(&b) {
            Err(FormatError::EmbeddingInvalid { index: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let doc = "n 4\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\nouter 0 1\n";
        let g = parse_text(doc).unwrap();
        assert_eq!(write_text(&g), doc);
        let commented = "# square\nn 4\n0: 1 3   # first\n\n1: 2 0\n2: 3 1\n3: 0 2\nouter 0 1\n";
        assert_eq!(parse_text(commented).unwrap(), g);
        let bare = parse_text("n 4\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\n").unwrap();
        assert_eq!(bare.outer_dart(), Some(Dart::new(0, 1)));
    }

    #[test]
    fn text_errors() {
        assert!(matches!(
            parse_text("0: 1\n"),
            Err(FormatError::Text { line: 1, .. })
        ));
        assert!(matches!(
            parse_text("n 2\n0: 1\n1: 0\n1: 0\n"),
            Err(FormatError::Text { line: 4, .. })
        ));
        assert!(matches!(
            parse_text("n 2\n0: 1\n"),
            Err(FormatError::EmbeddingInvalid { .. })
        ));
        assert!(matches!(
            parse_text("n 1\n0: x\n"),
            Err(FormatError::Text { .. })
        ));
    }
}
