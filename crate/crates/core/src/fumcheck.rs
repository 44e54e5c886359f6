//! Colouring contracts and their verifiers.
//!
//! Unique-maximum conditions are evaluated on the regions of
//! [`PlaneGraph::regions`]: a vertex (edge) that occurs several times on one
//! walk is counted once.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Edge, PlaneGraph};

/// Unordered pair of distinct edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePair(Edge, Edge);

impl EdgePair {
    pub fn new(a: Edge, b: Edge) -> Self {
        debug_assert_ne!(a, b);
        if a <= b {
            EdgePair(a, b)
        } else {
            EdgePair(b, a)
        }
    }

    pub fn first(self) -> Edge {
        self.0
    }

    pub fn second(self) -> Edge {
        self.1
    }

    pub fn contains(self, e: Edge) -> bool {
        self.0 == e || self.1 == e
    }

    pub fn common_vertex(self) -> Option<usize> {
        self.0.common_vertex(self.1)
    }
}

/// Edge pairs exempt from the distinct-colour constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePairSet {
    pairs: BTreeSet<EdgePair>,
}

impl FreePairSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: EdgePair) -> bool {
        self.pairs.insert(p)
    }

    pub fn contains(&self, p: EdgePair) -> bool {
        self.pairs.contains(&p)
    }

    pub fn is_free(&self, a: Edge, b: Edge) -> bool {
        a != b && self.pairs.contains(&EdgePair::new(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgePair> {
        self.pairs.iter()
    }

    /// Copy without the pairs that mention `e`.
    pub fn without_edge(&self, e: Edge) -> FreePairSet {
        FreePairSet {
            pairs: self
                .pairs
                .iter()
                .filter(|p| !p.contains(e))
                .copied()
                .collect(),
        }
    }

    /// True when `v` is the common vertex of some pair with both edges in `g`.
    pub fn has_pair_at(&self, g: &PlaneGraph, v: usize) -> bool {
        self.pairs.iter().any(|p| {
            p.common_vertex() == Some(v)
                && g.has_edge(p.0.u(), p.0.v())
                && g.has_edge(p.1.u(), p.1.v())
        })
    }

    /// Checks that every pair consists of two distinct edges of `g`.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), CheckError> {
        for p in &self.pairs {
            for e in [p.0, p.1] {
                if !g.has_edge(e.u(), e.v()) {
                    return Err(CheckError::UnknownEdge { edge: e });
                }
            }
        }
        Ok(())
    }
}

impl FromIterator<EdgePair> for FreePairSet {
    fn from_iter<I: IntoIterator<Item = EdgePair>>(iter: I) -> Self {
        FreePairSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// Vertex colours indexed by vertex id; `0` marks an uncoloured vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    pub colors: Vec<u32>,
}

impl VertexColoring {
    pub fn uncolored(n: usize) -> Self {
        VertexColoring { colors: vec![0; n] }
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        self.colors.get(v).copied().filter(|&c| c > 0)
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn is_total(&self, n: usize) -> bool {
        self.colors.len() == n && self.colors.iter().all(|&c| c > 0)
    }

    /// Number of distinct colours in use.
    pub fn color_count(&self) -> usize {
        self.colors
            .iter()
            .filter(|&&c| c > 0)
            .collect::<BTreeSet<_>>()
            .len()
    }
}

impl From<Vec<u32>> for VertexColoring {
    fn from(colors: Vec<u32>) -> Self {
        VertexColoring { colors }
    }
}

/// Edge colours keyed by normalised edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: BTreeMap<Edge, u32>,
}

impl EdgeColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Colouring from a list aligned with `g.edges()`.
    pub fn from_indexed(g: &PlaneGraph, colors: &[u32]) -> Self {
        EdgeColoring {
            colors: g
                .edges()
                .iter()
                .copied()
                .zip(colors.iter().copied())
                .collect(),
        }
    }

    /// Colours aligned with `g.edges()`; `0` where missing.
    pub fn to_indexed(&self, g: &PlaneGraph) -> Vec<u32> {
        g.edges()
            .iter()
            .map(|e| self.get(*e).unwrap_or(0))
            .collect()
    }

    pub fn get(&self, e: Edge) -> Option<u32> {
        self.colors.get(&e).copied().filter(|&c| c > 0)
    }

    pub fn set(&mut self, e: Edge, c: u32) {
        self.colors.insert(e, c);
    }

    pub fn max_color(&self) -> u32 {
        self.colors.values().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// A path of at most two outer vertices carrying prescribed colours in `{1,2,3}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecoloredPath {
    pub vertices: Vec<usize>,
    pub colors: Vec<u32>,
}

impl PrecoloredPath {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(v: usize, c: u32) -> Self {
        PrecoloredPath {
            vertices: vec![v],
            colors: vec![c],
        }
    }

    pub fn pair(u: usize, cu: u32, v: usize, cv: u32) -> Self {
        PrecoloredPath {
            vertices: vec![u, v],
            colors: vec![cu, cv],
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.vertices
            .iter()
            .copied()
            .zip(self.colors.iter().copied())
    }

    pub fn color_of(&self, v: usize) -> Option<u32> {
        self.iter().find(|&(x, _)| x == v).map(|(_, c)| c)
    }

    pub fn validate(&self, g: &PlaneGraph) -> Result<(), CheckError> {
        if self.vertices.len() != self.colors.len() || self.vertices.len() > 2 {
            return Err(CheckError::InvalidPath {
                reason: "at most two vertices, one colour each".into(),
            });
        }
        if !g.has_outer() {
            return Err(CheckError::MissingOuterFace);
        }
        for (v, c) in self.iter() {
            if v >= g.vertex_count() {
                return Err(CheckError::InvalidPath {
                    reason: format!("vertex {v} out of range"),
                });
            }
            if !(1..=3).contains(&c) {
                return Err(CheckError::InvalidPath {
                    reason: format!("colour {c} not in 1..=3"),
                });
            }
            if !g.is_outer_vertex(v) {
                return Err(CheckError::PathNotOnOuterFace { vertex: v });
            }
        }
        if let [a, b] = self.vertices[..] {
            if self.colors[0] == self.colors[1] {
                return Err(CheckError::InvalidPath {
                    reason: "path colouring is not proper".into(),
                });
            }
            if !g.has_edge(a, b) || !g.is_outer_edge(Edge::new(a, b)) {
                return Err(CheckError::PathNotOnOuterFace { vertex: b });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("colouring does not assign a positive colour to every element")]
    PartialColoring,
    #[error("precoloured vertex {vertex} is not on the outer face")]
    PathNotOnOuterFace { vertex: usize },
    #[error("invalid precoloured path: {reason}")]
    InvalidPath { reason: String },
    #[error("graph has no designated outer face")]
    MissingOuterFace,
    #[error("edge {edge} is not in the graph")]
    UnknownEdge { edge: Edge },
}

/// One reason a colouring fails its contract.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ImproperEdge {
        edge: Edge,
        color: u32,
    },
    NonUniqueMaxVertex {
        face: usize,
        max: u32,
        vertices: Vec<usize>,
    },
    NonUniqueMaxEdge {
        face: usize,
        max: u32,
        edges: Vec<Edge>,
    },
    FacialConflict {
        first: Edge,
        second: Edge,
        color: u32,
    },
    OuterCap {
        edge: Edge,
        color: u32,
        cap: u32,
    },
    OuterVertexColor {
        vertex: usize,
        color: u32,
    },
    ColorTooLarge {
        vertex: usize,
        color: u32,
        limit: u32,
    },
    PrecolorMismatch {
        vertex: usize,
        expected: u32,
        found: u32,
    },
}

/// Result of a verification: OK iff no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All unordered pairs of distinct edges that are consecutive on some face walk.
pub fn facial_adjacent_edge_pairs(g: &PlaneGraph) -> BTreeSet<EdgePair> {
    let mut pairs = BTreeSet::new();
    for f in g.faces() {
        let ds = f.darts();
        for i in 0..ds.len() {
            let a = ds[i].edge();
            let b = ds[(i + 1) % ds.len()].edge();
            if a != b {
                pairs.insert(EdgePair::new(a, b));
            }
        }
    }
    pairs
}

fn unique_max<T: Copy + Ord>(items: impl Iterator<Item = (T, u32)>) -> Option<(u32, Vec<T>)> {
    let mut max = 0;
    let mut holders = Vec::new();
    for (x, c) in items {
        if c > max {
            max = c;
            holders.clear();
            holders.push(x);
        } else if c == max {
            holders.push(x);
        }
    }
    if holders.len() > 1 {
        holders.sort();
        Some((max, holders))
    } else {
        None
    }
}

fn vertex_violations(g: &PlaneGraph, c: &VertexColoring, skip_outer: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for &e in g.edges() {
        if c.colors[e.u()] == c.colors[e.v()] {
            out.push(Violation::ImproperEdge {
                edge: e,
                color: c.colors[e.u()],
            });
        }
    }
    for r in g.regions() {
        if skip_outer && r.is_outer {
            continue;
        }
        if let Some((max, vertices)) = unique_max(r.vertices.iter().map(|&v| (v, c.colors[v]))) {
            out.push(Violation::NonUniqueMaxVertex {
                face: r.faces[0],
                max,
                vertices,
            });
        }
    }
    out
}

/// Proper colouring with a unique maximum on every face.
pub fn check_fum_vertex(g: &PlaneGraph, c: &VertexColoring) -> Result<Verdict, CheckError> {
    if !c.is_total(g.vertex_count()) {
        return Err(CheckError::PartialColoring);
    }
    Ok(Verdict {
        violations: vertex_violations(g, c, false),
    })
}

fn check_total_edges(g: &PlaneGraph, c: &EdgeColoring) -> Result<(), CheckError> {
    if g.edges().iter().all(|e| c.get(*e).is_some()) {
        Ok(())
    } else {
        Err(CheckError::PartialColoring)
    }
}

fn facial_conflicts(g: &PlaneGraph, c: &EdgeColoring, free: &FreePairSet) -> Vec<Violation> {
    facial_adjacent_edge_pairs(g)
        .into_iter()
        .filter(|p| !free.contains(*p))
        .filter_map(|p| {
            let (a, b) = (c.colors[&p.first()], c.colors[&p.second()]);
            (a == b).then_some(Violation::FacialConflict {
                first: p.first(),
                second: p.second(),
                color: a,
            })
        })
        .collect()
}

/// Facially adjacent edges outside `free` receive distinct colours.
pub fn check_f_facial_edge_coloring(
    g: &PlaneGraph,
    c: &EdgeColoring,
    free: &FreePairSet,
) -> Result<Verdict, CheckError> {
    check_total_edges(g, c)?;
    Ok(Verdict {
        violations: facial_conflicts(g, c, free),
    })
}

/// Options for [`check_fum_edge`]. The default is the plain FUM-edge-colouring test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeCheckMode {
    pub exclude_outer: bool,
    pub outer_cap: Option<u32>,
}

impl EdgeCheckMode {
    /// Inner faces only, outer edges coloured from `{1,2,3}`.
    pub fn boundary_capped() -> Self {
        EdgeCheckMode {
            exclude_outer: true,
            outer_cap: Some(3),
        }
    }
}

pub fn check_fum_edge(
    g: &PlaneGraph,
    c: &EdgeColoring,
    free: &FreePairSet,
    mode: EdgeCheckMode,
) -> Result<Verdict, CheckError> {
    check_total_edges(g, c)?;
    let mut out = facial_conflicts(g, c, free);
    for r in g.regions() {
        if let (true, Some(cap)) = (r.is_outer, mode.outer_cap) {
            for &e in &r.edges {
                if c.colors[&e] > cap {
                    out.push(Violation::OuterCap {
                        edge: e,
                        color: c.colors[&e],
                        cap,
                    });
                }
            }
        }
        if mode.exclude_outer && r.is_outer {
            continue;
        }
        if let Some((max, edges)) = unique_max(r.edges.iter().map(|&e| (e, c.colors[&e]))) {
            out.push(Violation::NonUniqueMaxEdge {
                face: r.faces[0],
                max,
                edges,
            });
        }
    }
    Ok(Verdict { violations: out })
}

/// Conditions of the precoloured-path extension: proper, agrees with `p`,
/// outer vertices in `{1,2,3}`, all colours at most 4, and a unique maximum on
/// every inner face.
pub fn check_extension_conditions(
    g: &PlaneGraph,
    p: &PrecoloredPath,
    c: &VertexColoring,
) -> Result<Verdict, CheckError> {
    p.validate(g)?;
    if !c.is_total(g.vertex_count()) {
        return Err(CheckError::PartialColoring);
    }
    let mut out = Vec::new();
    for (v, want) in p.iter() {
        if c.colors[v] != want {
            out.push(Violation::PrecolorMismatch {
                vertex: v,
                expected: want,
                found: c.colors[v],
            });
        }
    }
    for v in 0..g.vertex_count() {
        let col = c.colors[v];
        if col > 4 {
            out.push(Violation::ColorTooLarge {
                vertex: v,
                color: col,
                limit: 4,
            });
        }
        if g.is_outer_vertex(v) && col > 3 {
            out.push(Violation::OuterVertexColor {
                vertex: v,
                color: col,
            });
        }
    }
    out.extend(vertex_violations(g, c, true));
    Ok(Verdict { violations: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{Dart, PlaneGraph};

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneGraph::new(rot, Some(Dart::new(0, 1))).unwrap()
    }

    fn star3() -> PlaneGraph {
        PlaneGraph::new(
            vec![vec![1, 2, 3], vec![0], vec![0], vec![0]],
            Some(Dart::new(0, 1)),
        )
        .unwrap()
    }

    fn edge_colors(g: &PlaneGraph, cs: &[u32]) -> EdgeColoring {
        EdgeColoring::from_indexed(g, cs)
    }

    #[test]
    fn c4_pairs() {
        let pairs = facial_adjacent_edge_pairs(&cycle(4));
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn star_pairs() {
        assert_eq!(facial_adjacent_edge_pairs(&star3()).len(), 3);
    }

    #[test]
    fn vertex_examples() {
        let c3 = cycle(3);
        assert!(check_fum_vertex(&c3, &vec![1, 2, 3].into())
            .unwrap()
            .is_ok());
        let c4 = cycle(4);
        let v = check_fum_vertex(&c4, &vec![1, 2, 1, 2].into()).unwrap();
        assert_eq!(v.violations.len(), 2);
        assert!(check_fum_vertex(&c4, &vec![1, 2, 1, 3].into())
            .unwrap()
            .is_ok());
        assert_eq!(
            check_fum_vertex(&c4, &vec![1, 2, 0, 3].into()).unwrap_err(),
            CheckError::PartialColoring
        );
        let bad = check_fum_vertex(&c4, &vec![1, 1, 2, 3].into()).unwrap();
        assert!(matches!(bad.violations[0], Violation::ImproperEdge { .. }));
    }

    #[test]
    fn f_facial_examples() {
        let c3 = cycle(3);
        // edges sorted: 0-1, 0-2, 1-2
        let ok = edge_colors(&c3, &[1, 2, 3]);
        assert!(check_f_facial_edge_coloring(&c3, &ok, &FreePairSet::new())
            .unwrap()
            .is_ok());
        let bad = edge_colors(&c3, &[1, 1, 2]);
        let v = check_f_facial_edge_coloring(&c3, &bad, &FreePairSet::new()).unwrap();
        assert_eq!(v.violations.len(), 1);
        let free: FreePairSet = [EdgePair::new(Edge::new(0, 1), Edge::new(0, 2))]
            .into_iter()
            .collect();
        assert!(check_f_facial_edge_coloring(&c3, &bad, &free)
            .unwrap()
            .is_ok());
    }

    #[test]
    fn fum_edge_examples() {
        let c4 = cycle(4);
        // edges sorted: 0-1, 0-3, 1-2, 2-3; walk order 0-1, 1-2, 2-3, 3-0
        let ok = edge_colors(&c4, &[1, 3, 2, 1]);
        assert!(
            check_fum_edge(&c4, &ok, &FreePairSet::new(), EdgeCheckMode::default())
                .unwrap()
                .is_ok()
        );
        let bad = edge_colors(&c4, &[1, 2, 2, 1]);
        let v = check_fum_edge(&c4, &bad, &FreePairSet::new(), EdgeCheckMode::default()).unwrap();
        assert!(v
            .violations
            .iter()
            .any(|x| matches!(x, Violation::NonUniqueMaxEdge { .. })));
        let capped = edge_colors(&c4, &[1, 4, 2, 1]);
        let v = check_fum_edge(
            &c4,
            &capped,
            &FreePairSet::new(),
            EdgeCheckMode::boundary_capped(),
        )
        .unwrap();
        assert!(v
            .violations
            .iter()
            .any(|x| matches!(x, Violation::OuterCap { .. })));
    }

    #[test]
    fn extension_examples() {
        let c5 = cycle(5);
        let p = PrecoloredPath::pair(0, 1, 1, 2);
        let c: VertexColoring = vec![1, 2, 1, 2, 3].into();
        assert!(check_extension_conditions(&c5, &p, &c).unwrap().is_ok());
        let four: VertexColoring = vec![1, 2, 1, 2, 4].into();
        assert!(!check_extension_conditions(&c5, &p, &four).unwrap().is_ok());
        let improper: VertexColoring = vec![1, 2, 2, 1, 3].into();
        assert!(!check_extension_conditions(&c5, &p, &improper)
            .unwrap()
            .is_ok());
        let off = PrecoloredPath::pair(0, 1, 2, 2);
        assert!(matches!(
            check_extension_conditions(&c5, &off, &c),
            Err(CheckError::PathNotOnOuterFace { .. })
        ));
    }
}
