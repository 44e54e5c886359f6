//! Exact backtracking solvers used as ground truth.
//!
//! Items (vertices or edges) are assigned in descending order of conflict
//! degree, ties broken by index, trying colours in ascending order. No colour
//! symmetry is broken: colours are ordered, so permuting them does not
//! preserve the unique-maximum property.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::embedding::PlaneGraph;
use crate::fumcheck::{facial_adjacent_edge_pairs, EdgeColoring, VertexColoring};

/// Default colour bounds for the vertex and edge searches.
pub const DEFAULT_MAX_K_VERTEX: u32 = 6;
pub const DEFAULT_MAX_K_EDGE: u32 = 6;

/// Outcome of a chromatic-number search. Serialises as the number itself or
/// as `"exceeded"` / `"timed_out"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ChiRepr", try_from = "ChiRepr")]
pub enum ChiResult {
    Value(u32),
    Exceeded,
    TimedOut,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ChiRepr {
    Number(u32),
    Word(String),
}

impl From<ChiResult> for ChiRepr {
    fn from(r: ChiResult) -> Self {
        match r {
            ChiResult::Value(k) => ChiRepr::Number(k),
            ChiResult::Exceeded => ChiRepr::Word("exceeded".into()),
            ChiResult::TimedOut => ChiRepr::Word("timed_out".into()),
        }
    }
}

impl TryFrom<ChiRepr> for ChiResult {
    type Error = String;

    fn try_from(r: ChiRepr) -> Result<Self, String> {
        match r {
            ChiRepr::Number(k) => Ok(ChiResult::Value(k)),
            ChiRepr::Word(w) if w == "exceeded" => Ok(ChiResult::Exceeded),
            ChiRepr::Word(w) if w == "timed_out" => Ok(ChiResult::TimedOut),
            ChiRepr::Word(w) => Err(format!("unknown chromatic result {w:?}")),
        }
    }
}

impl ChiResult {
    pub fn value(self) -> Option<u32> {
        match self {
            ChiResult::Value(k) => Some(k),
            _ => None,
        }
    }
}

/// Outcome of a single fixed-`k` search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(Vec<u32>),
    Infeasible,
    TimedOut,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveLimits {
    pub deadline: Option<Instant>,
}

impl SolveLimits {
    pub fn none() -> Self {
        SolveLimits { deadline: None }
    }

    pub fn timeout(d: Duration) -> Self {
        SolveLimits {
            deadline: Some(Instant::now() + d),
        }
    }
}

/// Colouring problem: items joined by "must differ" conflicts, grouped into
/// regions that each need a unique maximum.
#[derive(Clone, Debug)]
pub struct UniqueMaxProblem {
    conflicts: Vec<Vec<usize>>,
    regions: Vec<Vec<usize>>,
    item_regions: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl UniqueMaxProblem {
    pub fn new(n: usize, conflicts: &[(usize, usize)], regions: Vec<Vec<usize>>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in conflicts {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        let regions: Vec<Vec<usize>> = regions.into_iter().filter(|r| !r.is_empty()).collect();
        let mut item_regions = vec![Vec::new(); n];
        for (i, r) in regions.iter().enumerate() {
            for &x in r {
                item_regions[x].push(i);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(adj[i].len()), i));
        UniqueMaxProblem {
            conflicts: adj,
            regions,
            item_regions,
            order,
        }
    }

    /// Vertex problem of `g`: adjacent vertices differ, every face region has a unique maximum.
    pub fn vertex(g: &PlaneGraph) -> Self {
        let conflicts: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u(), e.v())).collect();
        let regions = g.regions().into_iter().map(|r| r.vertices).collect();
        Self::new(g.vertex_count(), &conflicts, regions)
    }

    /// Edge problem of `g`, items indexed as in `g.edges()`.
    pub fn edge(g: &PlaneGraph) -> Self {
        let idx = |e| g.edge_index(e).expect("edge of g");
        let conflicts: Vec<(usize, usize)> = facial_adjacent_edge_pairs(g)
            .into_iter()
            .map(|p| (idx(p.first()), idx(p.second())))
            .collect();
        let regions = g
            .regions()
            .into_iter()
            .map(|r| r.edges.into_iter().map(idx).collect())
            .collect();
        Self::new(g.edge_count(), &conflicts, regions)
    }

    /// Plain proper colouring of `g` (no face conditions).
    pub fn proper_only(g: &PlaneGraph) -> Self {
        let conflicts: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u(), e.v())).collect();
        Self::new(g.vertex_count(), &conflicts, Vec::new())
    }

    pub fn item_count(&self) -> usize {
        self.conflicts.len()
    }

    /// Searches for an assignment with colours in `1..=k`.
    pub fn solve(&self, k: u32, limits: SolveLimits) -> SolveOutcome {
        let n = self.item_count();
        let mut colors = vec![0u32; n];
        let mut search = Search {
            p: self,
            k,
            colors: &mut colors,
            nodes: 0,
            limits,
            timed_out: false,
        };
        if search.go(0) {
            SolveOutcome::Found(colors)
        } else if search.timed_out {
            SolveOutcome::TimedOut
        } else {
            SolveOutcome::Infeasible
        }
    }

    /// Smallest `k <= max_k` admitting a solution, with its witness.
    pub fn minimum(&self, max_k: u32, limits: SolveLimits) -> (ChiResult, Option<Vec<u32>>) {
        if self.item_count() == 0 {
            return (ChiResult::Value(0), Some(Vec::new()));
        }
        for k in 1..=max_k {
            match self.solve(k, limits) {
                SolveOutcome::Found(w) => return (ChiResult::Value(k), Some(w)),
                SolveOutcome::Infeasible => {}
                SolveOutcome::TimedOut => return (ChiResult::TimedOut, None),
            }
        }
        (ChiResult::Exceeded, None)
    }
}

struct Search<'a> {
    p: &'a UniqueMaxProblem,
    k: u32,
    colors: &'a mut Vec<u32>,
    nodes: u64,
    limits: SolveLimits,
    timed_out: bool,
}

impl Search<'_> {
    fn region_dead(&self, r: usize) -> bool {
        let mut max = 0;
        let mut count = 0;
        let mut open = 0;
        for &x in &self.p.regions[r] {
            let c = self.colors[x];
            if c == 0 {
                open += 1;
            } else if c > max {
                max = c;
                count = 1;
            } else if c == max {
                count += 1;
            }
        }
        count >= 2 && (open == 0 || max == self.k)
    }

    fn go(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return false;
        }
        if depth == self.p.order.len() {
            return true;
        }
        let item = self.p.order[depth];
        'colors: for c in 1..=self.k {
            for &o in &self.p.conflicts[item] {
                if self.colors[o] == c {
                    continue 'colors;
                }
            }
            self.colors[item] = c;
            let dead = self.p.item_regions[item]
                .iter()
                .any(|&r| self.region_dead(r));
            if !dead && self.go(depth + 1) {
                return true;
            }
            self.colors[item] = 0;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Least number of colours of a FUM vertex colouring, searched up to `max_k`.
pub fn chi_fum(g: &PlaneGraph, max_k: u32) -> ChiResult {
    chi_fum_with(g, max_k, SolveLimits::none()).0
}

pub fn chi_fum_with(
    g: &PlaneGraph,
    max_k: u32,
    limits: SolveLimits,
) -> (ChiResult, Option<VertexColoring>) {
    let (r, w) = UniqueMaxProblem::vertex(g).minimum(max_k, limits);
    (r, w.map(VertexColoring::from))
}

/// A FUM vertex colouring with colours in `1..=k`, if one exists.
pub fn fum_vertex_witness(g: &PlaneGraph, k: u32) -> Option<VertexColoring> {
    match UniqueMaxProblem::vertex(g).solve(k, SolveLimits::none()) {
        SolveOutcome::Found(w) => Some(w.into()),
        _ => None,
    }
}

/// Least number of colours of a FUM edge colouring, searched up to `max_k`.
pub fn chi_fum_edge(g: &PlaneGraph, max_k: u32) -> ChiResult {
    chi_fum_edge_with(g, max_k, SolveLimits::none()).0
}

pub fn chi_fum_edge_with(
    g: &PlaneGraph,
    max_k: u32,
    limits: SolveLimits,
) -> (ChiResult, Option<EdgeColoring>) {
    let (r, w) = UniqueMaxProblem::edge(g).minimum(max_k, limits);
    (r, w.map(|w| EdgeColoring::from_indexed(g, &w)))
}

/// Ordinary chromatic number, searched up to `max_k`.
pub fn chromatic_number(g: &PlaneGraph, max_k: u32) -> ChiResult {
    UniqueMaxProblem::proper_only(g)
        .minimum(max_k, SolveLimits::none())
        .0
}

/// True iff some FUM colouring uses at most five colours.
pub fn verify_five_color_bound(g: &PlaneGraph) -> bool {
    matches!(chi_fum(g, 5), ChiResult::Value(_))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rbb {
    Black,
    Blue,
    Red,
}

/// Black/blue/red labelling: every face has at most one red vertex, and every
/// face without a red vertex has exactly one blue vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RbbLabeling {
    pub labels: Vec<Rbb>,
}

/// Re-checks the labelling conditions; `extra_independence` additionally forbids
/// adjacent blue vertices and adjacent red vertices.
pub fn check_rbb(g: &PlaneGraph, l: &RbbLabeling, extra_independence: bool) -> bool {
    if l.labels.len() != g.vertex_count() {
        return false;
    }
    for r in g.regions() {
        let red = r
            .vertices
            .iter()
            .filter(|&&v| l.labels[v] == Rbb::Red)
            .count();
        let blue = r
            .vertices
            .iter()
            .filter(|&&v| l.labels[v] == Rbb::Blue)
            .count();
        if red > 1 || (red == 0 && blue != 1) {
            return false;
        }
    }
    if extra_independence {
        for e in g.edges() {
            let (a, b) = (l.labels[e.u()], l.labels[e.v()]);
            if a == b && a != Rbb::Black {
                return false;
            }
        }
    }
    true
}

struct RbbSearch<'a> {
    g: &'a PlaneGraph,
    regions: Vec<Vec<usize>>,
    vertex_regions: Vec<Vec<usize>>,
    order: Vec<usize>,
    labels: Vec<Option<Rbb>>,
    extra: bool,
    nodes: u64,
    limits: SolveLimits,
    timed_out: bool,
}

impl RbbSearch<'_> {
    fn region_dead(&self, r: usize) -> bool {
        let (mut red, mut blue, mut open) = (0, 0, 0);
        for &v in &self.regions[r] {
            match self.labels[v] {
                None => open += 1,
                Some(Rbb::Red) => red += 1,
                Some(Rbb::Blue) => blue += 1,
                Some(Rbb::Black) => {}
            }
        }
        red > 1 || (red == 0 && open == 0 && blue != 1)
    }

    fn go(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return false;
        }
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for lab in [Rbb::Black, Rbb::Blue, Rbb::Red] {
            if self.extra
                && lab != Rbb::Black
                && self
                    .g
                    .rotation(v)
                    .iter()
                    .any(|&w| self.labels[w] == Some(lab))
            {
                continue;
            }
            self.labels[v] = Some(lab);
            let dead = self.vertex_regions[v].iter().any(|&r| self.region_dead(r));
            if !dead && self.go(depth + 1) {
                return true;
            }
            self.labels[v] = None;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Finds a black/blue/red labelling by exhaustive search.
pub fn find_rbb(g: &PlaneGraph, extra_independence: bool) -> Option<RbbLabeling> {
    find_rbb_with(g, extra_independence, SolveLimits::none())
}

pub fn find_rbb_with(
    g: &PlaneGraph,
    extra_independence: bool,
    limits: SolveLimits,
) -> Option<RbbLabeling> {
    let n = g.vertex_count();
    let regions: Vec<Vec<usize>> = g.regions().into_iter().map(|r| r.vertices).collect();
    let mut vertex_regions = vec![Vec::new(); n];
    for (i, r) in regions.iter().enumerate() {
        for &v in r {
            vertex_regions[v].push(i);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = RbbSearch {
        g,
        regions,
        vertex_regions,
        order,
        labels: vec![None; n],
        extra: extra_independence,
        nodes: 0,
        limits,
        timed_out: false,
    };
    if s.go(0) {
        Some(RbbLabeling {
            labels: s.labels.into_iter().map(|l| l.expect("complete")).collect(),
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Dart;
    use crate::fumcheck::{check_fum_edge, check_fum_vertex, EdgeCheckMode, FreePairSet};

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneGraph::new(rot, Some(Dart::new(0, 1))).unwrap()
    }

    fn k4() -> PlaneGraph {
        let rot = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        PlaneGraph::new(rot, Some(Dart::new(0, 1))).unwrap()
    }

    /// Exhaustive oracle over all colourings in {1..k}^n.
    fn brute_vertex(g: &PlaneGraph, k: u32) -> bool {
        let n = g.vertex_count();
        let total = (k as u64).pow(n as u32);
        (0..total).any(|mut code| {
            let colors: Vec<u32> = (0..n)
                .map(|_| {
                    let c = (code % k as u64) as u32 + 1;
                    code /= k as u64;
                    c
                })
                .collect();
            check_fum_vertex(g, &colors.into()).unwrap().is_ok()
        })
    }

    fn brute_edge(g: &PlaneGraph, k: u32) -> bool {
        let m = g.edge_count();
        let total = (k as u64).pow(m as u32);
        (0..total).any(|mut code| {
            let colors: Vec<u32> = (0..m)
                .map(|_| {
                    let c = (code % k as u64) as u32 + 1;
                    code /= k as u64;
                    c
                })
                .collect();
            let c = EdgeColoring::from_indexed(g, &colors);
            check_fum_edge(g, &c, &FreePairSet::new(), EdgeCheckMode::default())
                .unwrap()
                .is_ok()
        })
    }

    #[test]
    fn single_vertex_and_edge() {
        let g = PlaneGraph::new(vec![vec![]], None).unwrap();
        assert_eq!(chi_fum(&g, 6), ChiResult::Value(1));
        let e = PlaneGraph::new(vec![vec![1], vec![0]], Some(Dart::new(0, 1))).unwrap();
        assert_eq!(chi_fum_edge(&e, 6), ChiResult::Value(1));
    }

    #[test]
    fn c5_matches_brute_force() {
        let g = cycle(5);
        assert!(!brute_vertex(&g, 2));
        assert!(brute_vertex(&g, 3));
        assert_eq!(chi_fum(&g, 6), ChiResult::Value(3));
    }

    #[test]
    fn k4_needs_four() {
        let g = k4();
        assert!(!brute_vertex(&g, 3));
        assert_eq!(chi_fum(&g, 6), ChiResult::Value(4));
        assert!(verify_five_color_bound(&g));
    }

    #[test]
    fn c3_edges_need_three() {
        let g = cycle(3);
        assert!(!brute_edge(&g, 2));
        assert_eq!(chi_fum_edge(&g, 6), ChiResult::Value(3));
    }

    #[test]
    fn domino_edges_need_four() {
        let g = crate::families::gen_girth_edge_family(4).unwrap();
        assert!(!brute_edge(&g, 3));
        assert!(brute_edge(&g, 4));
        assert_eq!(chi_fum_edge(&g, 6), ChiResult::Value(4));
    }

    #[test]
    fn exceeded_when_cap_too_small() {
        assert_eq!(chi_fum(&k4(), 3), ChiResult::Exceeded);
    }

    #[test]
    fn star_is_not_misled_by_its_centre() {
        // the centre must not be forced to colour 1
        let g = PlaneGraph::new(
            vec![vec![1, 2, 3], vec![0], vec![0], vec![0]],
            Some(Dart::new(0, 1)),
        )
        .unwrap();
        assert!(brute_vertex(&g, 2));
        assert_eq!(chi_fum(&g, 6), ChiResult::Value(2));
    }

    #[test]
    fn rbb_examples() {
        let one = PlaneGraph::new(vec![vec![]], None).unwrap();
        let l = find_rbb(&one, false).unwrap();
        assert_eq!(l.labels, vec![Rbb::Blue]);
        let c3 = cycle(3);
        let l = find_rbb(&c3, false).unwrap();
        assert!(check_rbb(&c3, &l, false));
        assert_eq!(l.labels.iter().filter(|&&x| x != Rbb::Black).count(), 1);
    }

    #[test]
    fn proper_lower_bound() {
        assert_eq!(chromatic_number(&k4(), 6), ChiResult::Value(4));
        assert_eq!(chromatic_number(&cycle(5), 6), ChiResult::Value(3));
    }

    #[test]
    fn timeout_is_reported() {
        let g = crate::families::gen_girth_vertex_family(6).unwrap();
        let limits = SolveLimits {
            deadline: Some(Instant::now()),
        };
        let (r, _) = chi_fum_with(&g, 6, limits);
        // tiny instances may finish before the first deadline probe
        assert!(matches!(r, ChiResult::TimedOut | ChiResult::Value(4)));
    }
}
