//! Recursive 4-colourings.
//!
//! Vertex side: a precoloured-path extension for subcubic or outerplane plane
//! graphs, and the full colouring built on top of it. Edge side: an
//! `F`-facial edge colouring driven by free pairs, and the full colouring of
//! 2-connected plane graphs built on top of it. A quadrangulation colouring
//! via black/blue/red labelling completes the set.
//!
//! Each recursion records the reductions it applies. Whenever no reduction
//! applies where the underlying argument says one must, the call fails with
//! [`ConstructError::InternalExhaustion`] carrying a dump of the stuck graph
//! instead of guessing.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{bipartition, blocks, classify, Edge, EmbeddingError, PlaneGraph};
use crate::exact::{find_rbb_with, Rbb, SolveLimits, SolveOutcome, UniqueMaxProblem};
use crate::fumcheck::{CheckError, EdgeColoring, FreePairSet, PrecoloredPath, VertexColoring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("graph is outside the supported class: {reason}")]
    NotApplicable { reason: String },
    #[error("no reduction applies during {step}; stuck graph:\n{dump}")]
    InternalExhaustion { step: String, dump: String },
    #[error("precondition violated: {reason}")]
    PreconditionViolated { reason: String },
    #[error("exact fallback found no colouring with at most 4 colours")]
    FallbackExhausted,
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// One recursion step. Vertex ids refer to the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reduction {
    SplitComponents { components: usize },
    ExtendPath { vertex: usize, color: u32 },
    CutVertex { vertex: usize },
    Chord { u: usize, v: usize },
    CycleBase { three: Option<usize> },
    InteriorRemoval { v: usize, u: usize },
    ConfigA { vertex: usize, edge: Edge },
    ConfigB { e: Edge, f: Edge },
    LeafCycle { attachment: usize, edges: Vec<Edge> },
}

impl Reduction {
    pub fn name(&self) -> &'static str {
        match self {
            Reduction::SplitComponents { .. } => "split_components",
            Reduction::ExtendPath { .. } => "extend_path",
            Reduction::CutVertex { .. } => "cut_vertex",
            Reduction::Chord { .. } => "chord",
            Reduction::CycleBase { .. } => "cycle_base",
            Reduction::InteriorRemoval { .. } => "interior_removal",
            Reduction::ConfigA { .. } => "config_a",
            Reduction::ConfigB { .. } => "config_b",
            Reduction::LeafCycle { .. } => "leaf_cycle",
        }
    }
}

fn stuck(step: &str, g: &PlaneGraph, extra: String) -> ConstructError {
    ConstructError::InternalExhaustion {
        step: step.to_string(),
        dump: format!("{}{}", g.describe(), extra),
    }
}

fn ensure_subcubic_or_outerplane(g: &PlaneGraph) -> Result<(), ConstructError> {
    let c = classify(g).map_err(|_| ConstructError::NotApplicable {
        reason: "no outer face".into(),
    })?;
    if c.is_subcubic || c.is_outerplane {
        Ok(())
    } else {
        Err(ConstructError::NotApplicable {
            reason: "neither subcubic nor outerplane".into(),
        })
    }
}

/// Colours `g` with at most 4 colours so that the result agrees with `p`, outer
/// vertices get colours in `{1,2,3}`, and every inner face has a unique maximum.
pub fn color_with_precolored_path(
    g: &PlaneGraph,
    p: &PrecoloredPath,
) -> Result<VertexColoring, ConstructError> {
    color_with_precolored_path_traced(g, p).map(|(c, _)| c)
}

pub fn color_with_precolored_path_traced(
    g: &PlaneGraph,
    p: &PrecoloredPath,
) -> Result<(VertexColoring, Vec<Reduction>), ConstructError> {
    ensure_subcubic_or_outerplane(g)?;
    p.validate(g)?;
    let ids: Vec<usize> = (0..g.vertex_count()).collect();
    let mut trace = Vec::new();
    let colors = extend(g, p, &ids, &mut trace)?;
    Ok((colors.into(), trace))
}

fn restrict_path(p: &PrecoloredPath, map: &[Option<usize>]) -> PrecoloredPath {
    let mut out = PrecoloredPath::empty();
    for (v, c) in p.iter() {
        if let Some(w) = map[v] {
            out.vertices.push(w);
            out.colors.push(c);
        }
    }
    out
}

fn sub_ids(ids: &[usize], new_to_old: &[usize]) -> Vec<usize> {
    new_to_old.iter().map(|&v| ids[v]).collect()
}

/// The precoloured-path recursion on a graph whose vertices carry original ids `ids`.
fn extend(
    g: &PlaneGraph,
    p: &PrecoloredPath,
    ids: &[usize],
    trace: &mut Vec<Reduction>,
) -> Result<Vec<u32>, ConstructError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![p.color_of(0).unwrap_or(1)]);
    }

    if g.component_count() > 1 {
        trace.push(Reduction::SplitComponents {
            components: g.component_count(),
        });
        let mut colors = vec![0; n];
        for comp in g.components() {
            let (h, map) = g.induced(&comp)?;
            let hp = restrict_path(p, &map.old_to_new);
            let hc = extend(&h, &hp, &sub_ids(ids, &map.new_to_old), trace)?;
            for (new, &old) in map.new_to_old.iter().enumerate() {
                colors[old] = hc[new];
            }
        }
        return Ok(colors);
    }

    let outer = g
        .outer_face_of_component(0)
        .expect("outer face designated")
        .clone();
    let mut p = p.clone();
    if p.is_empty() {
        let v = *g.outer_vertices().first().expect("outer vertex");
        trace.push(Reduction::ExtendPath {
            vertex: ids[v],
            color: 1,
        });
        p = PrecoloredPath::single(v, 1);
    }
    if p.len() == 1 {
        let (v, c) = (p.vertices[0], p.colors[0]);
        let q = outer
            .darts()
            .iter()
            .filter_map(|d| match (d.tail == v, d.head == v) {
                (true, _) => Some(d.head),
                (_, true) => Some(d.tail),
                _ => None,
            })
            .min()
            .expect("connected graph with two vertices has an outer edge at every outer vertex");
        let cq = (1..=3).find(|&x| x != c).expect("colour");
        trace.push(Reduction::ExtendPath {
            vertex: ids[q],
            color: cq,
        });
        p = PrecoloredPath::pair(v, c, q, cq);
    }
    if n == 2 {
        let mut colors = vec![0; 2];
        for (v, c) in p.iter() {
            colors[v] = c;
        }
        return Ok(colors);
    }

    // cut vertex on the outer walk
    let walk: Vec<usize> = outer.darts().iter().map(|d| d.tail).collect();
    let mut occurrences = vec![0usize; n];
    for &v in &walk {
        occurrences[v] += 1;
    }
    if let Some(v) = (0..n).find(|&v| occurrences[v] >= 2) {
        trace.push(Reduction::CutVertex { vertex: ids[v] });
        return split(g, &p, ids, &[v], trace);
    }

    // the outer walk is now a cycle C
    let on_c: Vec<bool> = (0..n).map(|v| occurrences[v] == 1).collect();
    let c_edges: BTreeSet<Edge> = outer.darts().iter().map(|d| d.edge()).collect();
    if let Some(ch) = g
        .edges()
        .iter()
        .copied()
        .find(|e| on_c[e.u()] && on_c[e.v()] && !c_edges.contains(e))
    {
        trace.push(Reduction::Chord {
            u: ids[ch.u()],
            v: ids[ch.v()],
        });
        return split(g, &p, ids, &[ch.u(), ch.v()], trace);
    }

    if g.edge_count() == n && walk.len() == n {
        return Ok(color_cycle(&walk, &p, ids, trace));
    }

    remove_interior_vertex(g, &p, ids, &walk, &on_c, trace)
}

/// Splits at the separator `sep` (a cut vertex or the ends of a chord): the
/// part holding the path, together with anything nested inside its inner
/// faces, is coloured first; the rest follows with the separator pinned.
fn split(
    g: &PlaneGraph,
    p: &PrecoloredPath,
    ids: &[usize],
    sep: &[usize],
    trace: &mut Vec<Reduction>,
) -> Result<Vec<u32>, ConstructError> {
    let n = g.vertex_count();
    let in_sep = |v: usize| sep.contains(&v);
    let (h, map) = g.delete_vertices(sep)?;
    let comps: Vec<Vec<usize>> = h
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|x| map.new_to_old[x]).collect())
        .collect();
    let anchor = p
        .vertices
        .iter()
        .copied()
        .find(|&v| !in_sep(v))
        .expect("path leaves the separator");
    let k0 = comps
        .iter()
        .position(|c| c.contains(&anchor))
        .expect("anchor component");
    let mut w: Vec<usize> = sep.to_vec();
    w.extend(comps[k0].iter().copied());
    let w0 = w.clone();
    for (i, comp) in comps.iter().enumerate() {
        if i == k0 {
            continue;
        }
        let mut test = w0.clone();
        test.extend(comp.iter().copied());
        let (t, tmap) = g.induced(&test)?;
        let outside = comp
            .iter()
            .any(|&x| t.is_outer_vertex(tmap.old_to_new[x].expect("kept")));
        if !outside {
            w.extend(comp.iter().copied());
        }
    }
    w.sort_unstable();
    let mut in_w = vec![false; n];
    for &v in &w {
        in_w[v] = true;
    }
    let x: Vec<usize> = (0..n).filter(|&v| !in_w[v] || in_sep(v)).collect();
    if x.len() == sep.len() {
        return Err(stuck(
            "separator split",
            g,
            format!("separator {sep:?} leaves nothing outside\n"),
        ));
    }

    let (gw, wmap) = g.induced(&w)?;
    let pw = restrict_path(p, &wmap.old_to_new);
    let cw = extend(&gw, &pw, &sub_ids(ids, &wmap.new_to_old), trace)?;

    let (gx, xmap) = g.induced(&x)?;
    let mut px = PrecoloredPath::empty();
    for &s in sep {
        px.vertices
            .push(xmap.old_to_new[s].expect("separator kept"));
        px.colors
            .push(cw[wmap.old_to_new[s].expect("separator kept")]);
    }
    px.validate(&gx)?;
    let cx = extend(&gx, &px, &sub_ids(ids, &xmap.new_to_old), trace)?;

    let mut colors = vec![0; n];
    for (new, &old) in wmap.new_to_old.iter().enumerate() {
        colors[old] = cw[new];
    }
    for (new, &old) in xmap.new_to_old.iter().enumerate() {
        if in_sep(old) {
            assert_eq!(colors[old], cx[new], "separator colours must agree");
        }
        colors[old] = cx[new];
    }
    Ok(colors)
}

/// `{1,2}`-colouring of a path of `len` vertices between neighbours coloured
/// `left` and `right` (3 or 0 means unconstrained).
fn fill_12(len: usize, left: u32, right: u32) -> Option<Vec<u32>> {
    if len == 0 {
        return (left != right || left == 0 || left == 3).then(Vec::new);
    }
    for first in [1u32, 2] {
        let seq: Vec<u32> = (0..len)
            .map(|i| if i % 2 == 0 { first } else { 3 - first })
            .collect();
        if seq[0] != left && seq[len - 1] != right {
            return Some(seq);
        }
    }
    None
}

/// Colours a chordless outer cycle: one vertex 3, the rest alternating 1 and 2.
fn color_cycle(
    walk: &[usize],
    p: &PrecoloredPath,
    ids: &[usize],
    trace: &mut Vec<Reduction>,
) -> Vec<u32> {
    let n = walk.len();
    let (p0, p1) = (p.vertices[0], p.vertices[1]);
    let i0 = walk.iter().position(|&v| v == p0).expect("on cycle");
    // orient so that p1 follows p0
    let seq: Vec<usize> = if walk[(i0 + 1) % n] == p1 {
        (0..n).map(|k| walk[(i0 + k) % n]).collect()
    } else {
        (0..n).map(|k| walk[(i0 + n - k) % n]).collect()
    };
    debug_assert_eq!(seq[1], p1);
    let (c0, c1) = (p.colors[0], p.colors[1]);
    let mut colors = vec![0u32; n];
    colors[p0] = c0;
    colors[p1] = c1;
    if c0 == 3 || c1 == 3 {
        let fill = fill_12(n - 2, c1, c0).expect("one side is unconstrained");
        for (k, c) in fill.into_iter().enumerate() {
            colors[seq[k + 2]] = c;
        }
        trace.push(Reduction::CycleBase { three: None });
        return colors;
    }
    for k in 2..n {
        let before = fill_12(k - 2, c1, 3);
        let after = fill_12(n - 1 - k, 3, c0);
        if let (Some(b), Some(a)) = (before, after) {
            colors[seq[k]] = 3;
            for (i, c) in b.into_iter().enumerate() {
                colors[seq[2 + i]] = c;
            }
            for (i, c) in a.into_iter().enumerate() {
                colors[seq[k + 1 + i]] = c;
            }
            trace.push(Reduction::CycleBase {
                three: Some(ids[seq[k]]),
            });
            return colors;
        }
    }
    unreachable!("the vertex before p0 always takes 3")
}

/// Removes an outer vertex `v` outside the path together with an interior
/// vertex `u` sharing a face with it, colours the rest, then sets `u = 4`.
fn remove_interior_vertex(
    g: &PlaneGraph,
    p: &PrecoloredPath,
    ids: &[usize],
    walk: &[usize],
    on_c: &[bool],
    trace: &mut Vec<Reduction>,
) -> Result<Vec<u32>, ConstructError> {
    let n = g.vertex_count();
    let in_p = |v: usize| p.vertices.contains(&v);
    let mut pick = None;
    for &v in walk {
        if in_p(v) || g.degree(v) != 3 {
            continue;
        }
        if let Some(&u) = g.rotation(v).iter().filter(|&&u| !on_c[u]).min() {
            pick = Some((v, u));
            break;
        }
    }
    if pick.is_none() {
        'outer: for &v in walk {
            if in_p(v) || g.degree(v) != 2 {
                continue;
            }
            for f in g.faces() {
                if f.is_outer() || !f.vertices().contains(&v) {
                    continue;
                }
                if let Some(&u) = f.vertices().iter().filter(|&&u| !on_c[u]).min() {
                    pick = Some((v, u));
                    break 'outer;
                }
            }
        }
    }
    let Some((v, u)) = pick else {
        return Err(stuck(
            "interior removal",
            g,
            format!("path {:?}\n", p.vertices),
        ));
    };
    trace.push(Reduction::InteriorRemoval {
        v: ids[v],
        u: ids[u],
    });

    let (h, map) = g.delete_vertices(&[v, u])?;
    // every vertex sharing a face with u except v must end up on the outer face
    for f in g.faces() {
        if !f.vertices().contains(&u) {
            continue;
        }
        for &x in f.vertices() {
            if x == u || x == v {
                continue;
            }
            let nx = map.old_to_new[x].expect("survivor");
            if !h.is_outer_vertex(nx) {
                return Err(stuck(
                    "interior removal",
                    g,
                    format!("vertex {x} stays inside after removing {v}, {u}\n"),
                ));
            }
        }
    }
    let hp = restrict_path(p, &map.old_to_new);
    let hc = extend(&h, &hp, &sub_ids(ids, &map.new_to_old), trace)?;
    let mut colors = vec![0u32; n];
    for (new, &old) in map.new_to_old.iter().enumerate() {
        colors[old] = hc[new];
    }
    colors[u] = 4;
    let used: Vec<u32> = g.rotation(v).iter().map(|&w| colors[w]).collect();
    colors[v] = (1..=3)
        .find(|c| !used.contains(c))
        .ok_or_else(|| stuck("interior removal", g, format!("no colour left for {v}\n")))?;
    Ok(colors)
}

/// FUM colouring with colours in `{1,2,3,4}` of a subcubic or outerplane graph:
/// an outer vertex gets 4 and the rest comes from the path extension.
pub fn fum_color(g: &PlaneGraph) -> Result<VertexColoring, ConstructError> {
    fum_color_traced(g).map(|(c, _)| c)
}

pub fn fum_color_traced(
    g: &PlaneGraph,
) -> Result<(VertexColoring, Vec<Reduction>), ConstructError> {
    ensure_subcubic_or_outerplane(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((VertexColoring::from(Vec::new()), Vec::new()));
    }
    let v = *g.outer_vertices().first().expect("outer vertex");
    let (h, map) = g.delete_vertices(&[v])?;
    let p = match g.rotation(v).iter().min() {
        Some(&w) => PrecoloredPath::single(map.old_to_new[w].expect("survivor"), 1),
        None => PrecoloredPath::empty(),
    };
    let mut trace = Vec::new();
    let hc = extend(&h, &p, &map.new_to_old, &mut trace)?;
    let mut colors = vec![0u32; n];
    for (new, &old) in map.new_to_old.iter().enumerate() {
        colors[old] = hc[new];
    }
    colors[v] = 4;
    Ok((colors.into(), trace))
}

/// Which route [`color_quadrangulation_with`] takes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadMode {
    /// Labelling first, exact search only if no suitable labelling exists.
    #[default]
    Labelling,
    /// Skip the labelling and use the exact search directly.
    ForceFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRoute {
    Labelling,
    Fallback,
}

/// Colours a quadrangulation with at most 4 colours: red 4, blue 3, black by
/// bipartition side 1 or 2.
pub fn color_quadrangulation(g: &PlaneGraph) -> Result<VertexColoring, ConstructError> {
    color_quadrangulation_with(g, QuadMode::Labelling, SolveLimits::none()).map(|(c, _)| c)
}

pub fn color_quadrangulation_with(
    g: &PlaneGraph,
    mode: QuadMode,
    limits: SolveLimits,
) -> Result<(VertexColoring, QuadRoute), ConstructError> {
    let c = classify(g).map_err(|_| ConstructError::NotApplicable {
        reason: "no outer face".into(),
    })?;
    if !c.is_quadrangulation || !c.is_bipartite {
        return Err(ConstructError::NotApplicable {
            reason: "not a bipartite quadrangulation".into(),
        });
    }
    if mode == QuadMode::Labelling {
        if let Some(l) = find_rbb_with(g, true, limits) {
            let side = bipartition(g).expect("bipartite");
            let colors: Vec<u32> = (0..g.vertex_count())
                .map(|v| match l.labels[v] {
                    Rbb::Red => 4,
                    Rbb::Blue => 3,
                    Rbb::Black => side[v] as u32 + 1,
                })
                .collect();
            return Ok((colors.into(), QuadRoute::Labelling));
        }
    }
    match UniqueMaxProblem::vertex(g).solve(4, SolveLimits::none()) {
        SolveOutcome::Found(w) => Ok((w.into(), QuadRoute::Fallback)),
        _ => Err(ConstructError::FallbackExhausted),
    }
}

/// Edges facially adjacent to `e` (rotation neighbours at either end).
fn facial_neighbours(g: &PlaneGraph, e: Edge) -> Vec<Edge> {
    let mut out = Vec::new();
    for x in [e.u(), e.v()] {
        if g.degree(x) < 2 {
            continue;
        }
        let (p, s) = g.rotation_neighbors(x, e.other(x)).expect("edge present");
        for w in [p, s] {
            let f = Edge::new(x, w);
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out
}

/// Colours in `{1,2,3}` not used on a constraining neighbour of `e`.
fn available(g: &PlaneGraph, free: &FreePairSet, col: &EdgeColoring, e: Edge) -> Vec<u32> {
    let blocked: Vec<u32> = facial_neighbours(g, e)
        .into_iter()
        .filter(|&f| !free.is_free(e, f))
        .filter_map(|f| col.get(f))
        .collect();
    (1..=3).filter(|c| !blocked.contains(c)).collect()
}

fn good_vertex(g: &PlaneGraph, free: &FreePairSet, x: usize) -> bool {
    matches!(g.degree(x), 1 | 2) || free.has_pair_at(g, x)
}

/// Every leaf block must contain an outer vertex of degree at most 2 or one
/// where a free pair meets.
pub fn edge_extension_precondition(
    g: &PlaneGraph,
    free: &FreePairSet,
) -> Result<(), ConstructError> {
    if !g.has_outer() {
        return Err(ConstructError::PreconditionViolated {
            reason: "no outer face".into(),
        });
    }
    free.validate(g)?;
    let t = blocks(g);
    for b in t.leaf_blocks() {
        if !b
            .vertices
            .iter()
            .any(|&x| g.is_outer_vertex(x) && good_vertex(g, free, x))
        {
            return Err(ConstructError::PreconditionViolated {
                reason: format!("leaf block on {:?} has no good outer vertex", b.vertices),
            });
        }
    }
    Ok(())
}

/// `F`-facial edge colouring with colours in `{1,2,3,4}`: outer edges get
/// colours in `{1,2,3}` and every inner face has a unique maximum.
pub fn f_facial_edge_color(
    g: &PlaneGraph,
    free: &FreePairSet,
) -> Result<EdgeColoring, ConstructError> {
    f_facial_edge_color_traced(g, free).map(|(c, _)| c)
}

pub fn f_facial_edge_color_traced(
    g: &PlaneGraph,
    free: &FreePairSet,
) -> Result<(EdgeColoring, Vec<Reduction>), ConstructError> {
    edge_extension_precondition(g, free)?;
    let mut trace = Vec::new();
    let c = edge_rec(g, free, &mut trace)?;
    Ok((c, trace))
}

fn edge_rec(
    g: &PlaneGraph,
    free: &FreePairSet,
    trace: &mut Vec<Reduction>,
) -> Result<EdgeColoring, ConstructError> {
    if g.edge_count() == 0 {
        return Ok(EdgeColoring::new());
    }

    // (A) pendant outer vertex
    if let Some(u) = (0..g.vertex_count()).find(|&u| g.degree(u) == 1 && g.is_outer_vertex(u)) {
        let e = Edge::new(u, g.rotation(u)[0]);
        trace.push(Reduction::ConfigA { vertex: u, edge: e });
        let (h, hf) = g.remove_edges_tracking_free_pairs(&[e], free)?;
        let mut c = edge_rec(&h, &hf, trace)?;
        let a = available(g, free, &c, e);
        let col = *a
            .first()
            .ok_or_else(|| stuck("pendant edge", g, format!("no colour for {e}\n")))?;
        c.set(e, col);
        return Ok(c);
    }

    // (B) outer edge e = uv, good at u, next to an inner edge f at v
    if let Some((e, f)) = config_b(g, free) {
        trace.push(Reduction::ConfigB { e, f });
        let faces_of_f: Vec<usize> = [f.u(), f.v()]
            .iter()
            .map(|&x| {
                g.face_of(crate::embedding::Dart::new(x, f.other(x)))
                    .expect("dart")
            })
            .collect();
        let (h, hf) = g.remove_edges_tracking_free_pairs(&[e, f], free)?;
        for &fi in &faces_of_f {
            for x in g.faces()[fi].edges() {
                if x != e && x != f && !h.is_outer_edge(x) {
                    return Err(stuck(
                        "inner edge removal",
                        g,
                        format!("edge {x} stays inside after removing {e}, {f}\n"),
                    ));
                }
            }
        }
        let mut c = edge_rec(&h, &hf, trace)?;
        c.set(f, 4);
        let a = available(g, free, &c, e);
        let col = *a
            .first()
            .ok_or_else(|| stuck("inner edge removal", g, format!("no colour for {e}\n")))?;
        c.set(e, col);
        return Ok(c);
    }

    // leaf block that is a cycle bounding a face of its own
    if let Some((v, cyc)) = leaf_cycle(g) {
        trace.push(Reduction::LeafCycle {
            attachment: v,
            edges: cyc.clone(),
        });
        let (h, hf) = g.remove_edges_tracking_free_pairs(&cyc, free)?;
        let mut c = edge_rec(&h, &hf, trace)?;
        color_leaf_cycle(g, free, &mut c, &cyc)
            .ok_or_else(|| stuck("leaf cycle", g, "no colouring of the cycle\n".into()))?;
        return Ok(c);
    }

    Err(stuck(
        "edge recursion",
        g,
        format!("free pairs {:?}\n", free.iter().collect::<Vec<_>>()),
    ))
}

fn config_b(g: &PlaneGraph, free: &FreePairSet) -> Option<(Edge, Edge)> {
    for &e in g.edges() {
        if !g.is_outer_edge(e) {
            continue;
        }
        for (u, v) in [(e.u(), e.v()), (e.v(), e.u())] {
            let good = g.degree(u) == 2 || {
                g.degree(u) >= 2 && {
                    let (p, s) = g.rotation_neighbors(u, v).expect("edge");
                    free.is_free(e, Edge::new(u, p)) || free.is_free(e, Edge::new(u, s))
                }
            };
            if !good || g.degree(v) < 2 {
                continue;
            }
            let (p, s) = g.rotation_neighbors(v, u).expect("edge");
            for w in [p, s] {
                let f = Edge::new(v, w);
                if f != e && !g.is_outer_edge(f) {
                    return Some((e, f));
                }
            }
        }
    }
    None
}

/// A leaf block that is a cycle, lies on the outer face, and bounds an inner
/// face consisting of exactly its own edges. Returns the attachment vertex and
/// the cycle edges in order starting at it.
fn leaf_cycle(g: &PlaneGraph) -> Option<(usize, Vec<Edge>)> {
    let t = blocks(g);
    for bi in t.leaf_block_indices() {
        let b = &t.blocks[bi];
        if !b.is_cycle() || !b.edges.iter().all(|&e| g.is_outer_edge(e)) {
            continue;
        }
        let own: BTreeSet<Edge> = b.edges.iter().copied().collect();
        let bounded = g
            .faces()
            .iter()
            .any(|f| !f.is_outer() && f.edges().into_iter().collect::<BTreeSet<_>>() == own);
        if !bounded {
            continue;
        }
        let v = t
            .cut_vertices_of(bi)
            .first()
            .copied()
            .unwrap_or(b.vertices[0]);
        // walk the cycle from v
        let mut order = vec![v];
        let mut prev = usize::MAX;
        let mut cur = v;
        loop {
            let next = g
                .rotation(cur)
                .iter()
                .copied()
                .filter(|&w| w != prev && own.contains(&Edge::new(cur, w)))
                .min()
                .expect("cycle continues");
            if next == v {
                break;
            }
            order.push(next);
            prev = cur;
            cur = next;
        }
        let k = order.len();
        let edges = (0..k)
            .map(|i| Edge::new(order[i], order[(i + 1) % k]))
            .collect();
        return Some((v, edges));
    }
    None
}

/// Colours the cycle edges `cyc` (in order from the attachment vertex) with a
/// single 3 and the rest in `{1,2}`.
fn color_leaf_cycle(
    g: &PlaneGraph,
    free: &FreePairSet,
    c: &mut EdgeColoring,
    cyc: &[Edge],
) -> Option<()> {
    let k = cyc.len();
    let (e1, e2) = (cyc[0], cyc[k - 1]);
    let a1 = available(g, free, c, e1);
    let a2 = available(g, free, c, e2);
    let mut col = vec![0u32; k];
    if a1.contains(&3) || a2.contains(&3) {
        // 3 on one end, greedy 1/2 from the other end towards it
        let (start, avail_start, dir): (usize, &Vec<u32>, isize) = if a1.contains(&3) {
            (k - 1, &a2, -1)
        } else {
            (0, &a1, 1)
        };
        let three = if a1.contains(&3) { 0 } else { k - 1 };
        col[three] = 3;
        col[start] = *avail_start.iter().find(|&&x| x != 3)?;
        let mut i = start as isize;
        for _ in 0..k.saturating_sub(2) {
            let j = (i + dir) as usize;
            col[j] = 3 - col[i as usize];
            i = j as isize;
        }
    } else {
        if !(a1.contains(&1) && a2.contains(&2)) {
            return None;
        }
        let m = (k - 1) / 2;
        col[m] = 3;
        for (i, x) in col.iter_mut().enumerate().take(m) {
            *x = if i % 2 == 0 { 1 } else { 2 };
        }
        for (d, i) in (m + 1..k).rev().enumerate() {
            col[i] = if d % 2 == 0 { 2 } else { 1 };
        }
    }
    for (e, x) in cyc.iter().zip(col) {
        c.set(*e, x);
    }
    Some(())
}

/// FUM edge colouring of a 2-connected plane graph with colours in `{1,2,3,4}`.
pub fn fum_edge_color_2connected(g: &PlaneGraph) -> Result<EdgeColoring, ConstructError> {
    fum_edge_color_2connected_traced(g).map(|(c, _)| c)
}

pub fn fum_edge_color_2connected_traced(
    g: &PlaneGraph,
) -> Result<(EdgeColoring, Vec<Reduction>), ConstructError> {
    let c = classify(g).map_err(|_| ConstructError::NotApplicable {
        reason: "no outer face".into(),
    })?;
    if !c.is_2connected {
        return Err(ConstructError::NotApplicable {
            reason: "not 2-connected".into(),
        });
    }
    let e = *g
        .edges()
        .iter()
        .find(|&&e| g.is_outer_edge(e))
        .expect("outer edge");
    let (h, hf) = g.remove_edge_tracking_free_pairs(e, &FreePairSet::new())?;
    let (mut col, trace) = f_facial_edge_color_traced(&h, &hf)?;
    col.set(e, 4);
    Ok((col, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Dart;
    use crate::exact::{chi_fum, chi_fum_edge, ChiResult};
    use crate::families::{cube, cycle, gen_girth_edge_family, gen_girth_vertex_family, k4, star};
    use crate::fumcheck::{
        check_extension_conditions, check_fum_edge, check_fum_vertex, EdgeCheckMode,
    };

    fn extension_ok(g: &PlaneGraph, p: &PrecoloredPath) -> bool {
        let c = color_with_precolored_path(g, p).unwrap();
        check_extension_conditions(g, p, &c).unwrap().is_ok()
    }

    #[test]
    fn c6_with_pair() {
        let g = cycle(6);
        let p = PrecoloredPath::pair(0, 1, 1, 2);
        let c = color_with_precolored_path(&g, &p).unwrap();
        assert!(check_extension_conditions(&g, &p, &c).unwrap().is_ok());
        assert_eq!(c.colors.iter().filter(|&&x| x == 3).count(), 1);
        assert_eq!((c.colors[0], c.colors[1]), (1, 2));
    }

    #[test]
    fn single_vertex_gets_one() {
        let g = PlaneGraph::empty(1);
        let c = color_with_precolored_path(&g, &PrecoloredPath::empty()).unwrap();
        assert_eq!(c.colors, vec![1]);
    }

    #[test]
    fn path_with_a_three_keeps_it_unique() {
        let g = cycle(5);
        for (a, b) in [(3, 1), (1, 3), (3, 2), (2, 3)] {
            assert!(extension_ok(&g, &PrecoloredPath::pair(0, a, 1, b)));
        }
    }

    #[test]
    fn vertex_family_member() {
        let g = gen_girth_vertex_family(4).unwrap();
        assert!(extension_ok(&g, &PrecoloredPath::empty()));
        let c = fum_color(&g).unwrap();
        assert!(check_fum_vertex(&g, &c).unwrap().is_ok());
        assert_eq!(c.max_color(), 4);
        assert_eq!(chi_fum(&g, 6), ChiResult::Value(4));
    }

    #[test]
    fn star_and_k4() {
        for g in [star(3), k4(), cycle(3), cube()] {
            let c = fum_color(&g).unwrap();
            assert!(
                check_fum_vertex(&g, &c).unwrap().is_ok(),
                "{}",
                g.describe()
            );
            assert!(c.max_color() <= 4);
        }
    }

    #[test]
    fn rejects_other_classes() {
        // octahedron: 4-regular, interior vertices
        let rot = vec![
            vec![1, 2, 3, 4],
            vec![0, 4, 5, 2],
            vec![0, 1, 5, 3],
            vec![0, 2, 5, 4],
            vec![0, 3, 5, 1],
            vec![1, 4, 3, 2],
        ];
        let g = PlaneGraph::new(rot, Some(Dart::new(0, 1))).unwrap();
        assert!(matches!(
            fum_color(&g),
            Err(ConstructError::NotApplicable { .. })
        ));
    }

    #[test]
    fn quadrangulation_routes() {
        for g in [cycle(4), cube()] {
            for mode in [QuadMode::Labelling, QuadMode::ForceFallback] {
                let (c, route) = color_quadrangulation_with(&g, mode, SolveLimits::none()).unwrap();
                assert!(check_fum_vertex(&g, &c).unwrap().is_ok());
                assert!(c.max_color() <= 4);
                if mode == QuadMode::ForceFallback {
                    assert_eq!(route, QuadRoute::Fallback);
                }
            }
        }
        assert!(matches!(
            color_quadrangulation(&cycle(5)),
            Err(ConstructError::NotApplicable { .. })
        ));
    }

    #[test]
    fn edge_examples() {
        let c4 = cycle(4);
        let c = f_facial_edge_color(&c4, &FreePairSet::new()).unwrap();
        assert!(check_fum_edge(
            &c4,
            &c,
            &FreePairSet::new(),
            EdgeCheckMode::boundary_capped()
        )
        .unwrap()
        .is_ok());
        let empty = PlaneGraph::empty(0);
        assert!(f_facial_edge_color(&empty, &FreePairSet::new())
            .unwrap()
            .is_empty());
        // two triangles sharing vertex 0
        let rot = vec![
            vec![1, 2, 3, 4],
            vec![2, 0],
            vec![0, 1],
            vec![4, 0],
            vec![0, 3],
        ];
        let bow = PlaneGraph::new(rot, Some(Dart::new(0, 1))).unwrap();
        let (c, trace) = f_facial_edge_color_traced(&bow, &FreePairSet::new()).unwrap();
        assert!(check_fum_edge(
            &bow,
            &c,
            &FreePairSet::new(),
            EdgeCheckMode::boundary_capped()
        )
        .unwrap()
        .is_ok());
        assert!(trace
            .iter()
            .any(|r| r.name() == "leaf_cycle" || r.name() == "config_b"));
    }

    #[test]
    fn two_connected_examples() {
        for g in [cycle(3), cube(), gen_girth_edge_family(4).unwrap(), k4()] {
            let c = fum_edge_color_2connected(&g).unwrap();
            assert!(
                check_fum_edge(&g, &c, &FreePairSet::new(), EdgeCheckMode::default())
                    .unwrap()
                    .is_ok()
            );
            assert!(c.max_color() <= 4);
        }
        assert_eq!(
            chi_fum_edge(&gen_girth_edge_family(4).unwrap(), 6),
            ChiResult::Value(4)
        );
        assert!(matches!(
            fum_edge_color_2connected(&star(3)),
            Err(ConstructError::NotApplicable { .. })
        ));
    }

    #[test]
    fn precondition_is_checked() {
        // K4 has a single leaf block without degree-2 vertices and no free pairs
        assert!(matches!(
            f_facial_edge_color(&k4(), &FreePairSet::new()),
            Err(ConstructError::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn fill_helper() {
        assert_eq!(fill_12(0, 1, 2), Some(vec![]));
        assert_eq!(fill_12(0, 1, 1), None);
        assert_eq!(fill_12(1, 1, 1), Some(vec![2]));
        assert_eq!(fill_12(2, 1, 1), None);
        assert_eq!(fill_12(2, 3, 1), Some(vec![1, 2]));
    }
}
