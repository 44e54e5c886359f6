//! Batch evaluation of graph streams.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::constructive::{
    color_quadrangulation, fum_color, fum_edge_color_2connected, ConstructError,
};
use crate::embedding::{classify, Classification, PlaneGraph};
use crate::exact::{
    chi_fum_edge_with, chi_fum_with, ChiResult, SolveLimits, SolveOutcome, UniqueMaxProblem,
};
use crate::fumcheck::{check_fum_edge, check_fum_vertex, EdgeCheckMode, FreePairSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanChecks {
    pub chi: bool,
    pub chi_edge: bool,
    pub construct: bool,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub checks: ScanChecks,
    pub max_k: u32,
    pub timeout: Duration,
    /// Worker threads; 0 uses the rayon default.
    pub parallel: usize,
    /// Also solve with every face as the outer face.
    pub all_outer: bool,
    /// Include wall-clock timings (makes the report non-reproducible).
    pub timings: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            checks: ScanChecks {
                chi: true,
                chi_edge: false,
                construct: false,
            },
            max_k: 6,
            timeout: Duration::from_secs(10),
            parallel: 1,
            all_outer: false,
            timings: false,
        }
    }
}

/// Outcome of one constructive algorithm on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructStatus {
    Verified,
    /// The algorithm returned a colouring the checker rejected.
    Rejected,
    /// The algorithm itself failed on an instance inside its class.
    Failed {
        message: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructResults {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<ConstructStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrangulation: Option<ConstructStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<ConstructStatus>,
}

impl ConstructResults {
    fn all(&self) -> impl Iterator<Item = &ConstructStatus> {
        [&self.vertex, &self.quadrangulation, &self.edge]
            .into_iter()
            .flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OuterRange {
    pub min: ChiResult,
    pub max: ChiResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub class: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_fum: Option<ChiResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_fum_all_outer: Option<OuterRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_fum_edge: Option<ChiResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructResults>,
    /// Solver inconsistencies found by the double-check.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tripwires: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Breach {
    Vertex,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub index: usize,
    pub kind: Breach,
    pub chi: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub graphs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_chi_fum: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_chi_fum_edge: Option<u32>,
    pub timeouts: usize,
    pub exceeded: usize,
    pub construct_failures: usize,
    pub tripwires: usize,
    pub counterexample_candidates: Vec<Candidate>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub aggregate: Aggregate,
}

impl ScanReport {
    /// True if any constructive result failed or any solver disagreed with itself.
    pub fn has_failures(&self) -> bool {
        self.aggregate.construct_failures > 0 || self.aggregate.tripwires > 0
    }
}

fn limits(opts: &ScanOptions) -> SolveLimits {
    SolveLimits::timeout(opts.timeout)
}

fn vertex_status(
    g: &PlaneGraph,
    r: Result<crate::fumcheck::VertexColoring, ConstructError>,
) -> ConstructStatus {
    match r {
        Ok(c) => match check_fum_vertex(g, &c) {
            Ok(v) if v.is_ok() && c.max_color() <= 4 => ConstructStatus::Verified,
            _ => ConstructStatus::Rejected,
        },
        Err(e) => ConstructStatus::Failed {
            message: e.to_string(),
        },
    }
}

fn construct(g: &PlaneGraph, class: &Classification) -> ConstructResults {
    let mut out = ConstructResults::default();
    if class.is_subcubic || class.is_outerplane {
        out.vertex = Some(vertex_status(g, fum_color(g)));
    }
    if class.is_quadrangulation && class.is_bipartite {
        out.quadrangulation = Some(vertex_status(g, color_quadrangulation(g)));
    }
    if class.is_2connected {
        out.edge = Some(match fum_edge_color_2connected(g) {
            Ok(c) => match check_fum_edge(g, &c, &FreePairSet::new(), EdgeCheckMode::default()) {
                Ok(v) if v.is_ok() && c.max_color() <= 4 => ConstructStatus::Verified,
                _ => ConstructStatus::Rejected,
            },
            Err(e) => ConstructStatus::Failed {
                message: e.to_string(),
            },
        });
    }
    out
}

fn min_max(vals: &[ChiResult]) -> OuterRange {
    // Numeric values order below Exceeded; any timeout poisons the bound it touches.
    let key = |r: &ChiResult| match r {
        ChiResult::Value(k) => (0, *k),
        ChiResult::Exceeded => (1, 0),
        ChiResult::TimedOut => (2, 0),
    };
    let min = *vals
        .iter()
        .min_by_key(|r| key(r))
        .expect("at least one face");
    let max = *vals
        .iter()
        .max_by_key(|r| key(r))
        .expect("at least one face");
    OuterRange { min, max }
}

/// Re-solves at `k = 4` with a fresh solver; a breach stands only if that is infeasible.
fn double_check(problem: UniqueMaxProblem, opts: &ScanOptions) -> Result<bool, String> {
    match problem.solve(4, limits(opts)) {
        SolveOutcome::Infeasible => Ok(true),
        SolveOutcome::TimedOut => Ok(false),
        SolveOutcome::Found(_) => {
            Err("double-check found a 4-colouring the first solve missed".into())
        }
    }
}

pub fn scan_one(index: usize, g: &PlaneGraph, opts: &ScanOptions) -> ScanRecord {
    let start = Instant::now();
    let class = classify(g).expect("stream graphs carry an outer face");
    let mut rec = ScanRecord {
        index,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        class,
        chi_fum: None,
        chi_fum_all_outer: None,
        chi_fum_edge: None,
        construct: None,
        tripwires: Vec::new(),
        millis: None,
    };
    if opts.checks.chi {
        rec.chi_fum = Some(chi_fum_with(g, opts.max_k, limits(opts)).0);
        if opts.all_outer && g.is_connected() && g.edge_count() > 0 {
            let vals: Vec<ChiResult> = g
                .faces()
                .iter()
                .map(|f| {
                    let h = g.with_outer(f.darts()[0]).expect("face dart");
                    chi_fum_with(&h, opts.max_k, limits(opts)).0
                })
                .collect();
            rec.chi_fum_all_outer = Some(min_max(&vals));
        }
    }
    if opts.checks.chi_edge {
        rec.chi_fum_edge = Some(chi_fum_edge_with(g, opts.max_k, limits(opts)).0);
    }
    if opts.checks.construct {
        rec.construct = Some(construct(g, &rec.class));
    }
    if let Some(ms) = opts.timings.then(|| start.elapsed().as_millis() as u64) {
        rec.millis = Some(ms);
    }
    rec
}

fn candidates(g: &PlaneGraph, rec: &mut ScanRecord, opts: &ScanOptions) -> Vec<Candidate> {
    let mut out = Vec::new();
    let breach = |r: Option<ChiResult>| match r {
        Some(ChiResult::Value(k)) if k > 4 => Some(k),
        // Exceeded means more than max_k colours, hence also more than 4.
        Some(ChiResult::Exceeded) if opts.max_k >= 4 => Some(opts.max_k + 1),
        _ => None,
    };
    if let Some(chi) = breach(rec.chi_fum) {
        match double_check(UniqueMaxProblem::vertex(g), opts) {
            Ok(true) => out.push(Candidate {
                index: rec.index,
                kind: Breach::Vertex,
                chi,
            }),
            Ok(false) => {}
            Err(m) => rec.tripwires.push(m),
        }
    }
    if rec.class.is_2edge_connected {
        if let Some(chi) = breach(rec.chi_fum_edge) {
            match double_check(UniqueMaxProblem::edge(g), opts) {
                Ok(true) => out.push(Candidate {
                    index: rec.index,
                    kind: Breach::Edge,
                    chi,
                }),
                Ok(false) => {}
                Err(m) => rec.tripwires.push(m),
            }
        }
    }
    out
}

fn evaluate(index: usize, g: &PlaneGraph, opts: &ScanOptions) -> (ScanRecord, Vec<Candidate>) {
    let mut rec = scan_one(index, g, opts);
    let cands = candidates(g, &mut rec, opts);
    (rec, cands)
}

/// Scans every graph. Records come back in input order whatever the thread count.
pub fn scan(graphs: &[PlaneGraph], opts: &ScanOptions) -> ScanReport {
    let results: Vec<(ScanRecord, Vec<Candidate>)> = if opts.parallel == 1 {
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| evaluate(i, g, opts))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .expect("thread pool");
        pool.install(|| {
            graphs
                .par_iter()
                .enumerate()
                .map(|(i, g)| evaluate(i, g, opts))
                .collect()
        })
    };
    let mut agg = Aggregate {
        graphs: graphs.len(),
        ..Aggregate::default()
    };
    let mut records = Vec::with_capacity(results.len());
    for (rec, cands) in results {
        for r in [rec.chi_fum, rec.chi_fum_edge].into_iter().flatten() {
            match r {
                ChiResult::TimedOut => agg.timeouts += 1,
                ChiResult::Exceeded => agg.exceeded += 1,
                ChiResult::Value(_) => {}
            }
        }
        if let Some(ChiResult::Value(k)) = rec.chi_fum {
            agg.max_chi_fum = Some(agg.max_chi_fum.map_or(k, |m| m.max(k)));
        }
        if let Some(ChiResult::Value(k)) = rec.chi_fum_edge {
            agg.max_chi_fum_edge = Some(agg.max_chi_fum_edge.map_or(k, |m| m.max(k)));
        }
        if let Some(c) = &rec.construct {
            agg.construct_failures += c.all().filter(|s| **s != ConstructStatus::Verified).count();
        }
        agg.tripwires += rec.tripwires.len();
        agg.counterexample_candidates.extend(cands);
        records.push(rec);
    }
    ScanReport {
        records,
        aggregate: agg,
    }
}
