//! Tight examples, hard-quadrangulation search, nesting, and small enumerators.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{classify, Dart, EmbeddingError, PlaneGraph};
use crate::exact::{chi_fum, ChiResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("girth parameter {g} is below 3")]
    GirthTooSmall { g: usize },
    #[error("girth parameter {g} must be even and at least 4")]
    OddGirth { g: usize },
    #[error("face {face} is not a 4-cycle")]
    FaceNotQuadrilateral { face: usize },
    #[error("outer boundary is not a 4-cycle")]
    OuterBoundaryNotC4,
    #[error("no face with index {face}")]
    NoSuchFace { face: usize },
    #[error("the outer face cannot receive a copy")]
    OuterFaceSelected,
    #[error("nesting depth must be at least 1")]
    InvalidDepth,
    #[error("no boundary alignment yields a simple plane graph")]
    NoValidAlignment,
    #[error("input is not a quadrangulation")]
    NotAQuadrangulation,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    GirthVertex,
    GirthEdge,
    NestedQuad,
}

/// Parameters of a generated family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub girth_parameter: usize,
    pub depth: usize,
}

impl FamilySpec {
    /// Builds the member. `NestedQuad` nests the first hard quadrangulation of
    /// the built-in enumerator (up to 10 vertices) into the first inner face
    /// for which one copy keeps the FUM chromatic number at 4.
    pub fn generate(&self) -> Result<PlaneGraph, FamilyError> {
        match self.kind {
            FamilyKind::GirthVertex => gen_girth_vertex_family(self.girth_parameter),
            FamilyKind::GirthEdge => gen_girth_edge_family(self.girth_parameter),
            FamilyKind::NestedQuad => {
                let q = find_hard_quadrangulation(quadrangulations(10), usize::MAX)
                    .ok_or(FamilyError::NotAQuadrangulation)?;
                let face = hard_nesting_face(&q).ok_or(FamilyError::NoValidAlignment)?;
                nest_quadrangulation(&q, face, self.depth)
            }
        }
    }
}

/// Cycle `0 1 ... n-1` with outer dart `(0, 1)`.
pub fn cycle(n: usize) -> PlaneGraph {
    assert!(n >= 3, "cycles have at least three vertices");
    let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    PlaneGraph::new(rot, Some(Dart::new(0, 1))).expect("cycle is plane")
}

/// Path `0 1 ... n-1`.
pub fn path(n: usize) -> PlaneGraph {
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i + 1 < n {
                r.push(i + 1);
            }
            if i > 0 {
                r.push(i - 1);
            }
            r
        })
        .collect();
    let outer = (n >= 2).then(|| Dart::new(0, 1));
    PlaneGraph::new(rot, outer).expect("path is plane")
}

/// Star with centre 0 and `k` leaves.
pub fn star(k: usize) -> PlaneGraph {
    let mut rot = vec![(1..=k).collect::<Vec<_>>()];
    rot.extend((0..k).map(|_| vec![0]));
    let outer = (k >= 1).then(|| Dart::new(0, 1));
    PlaneGraph::new(rot, outer).expect("star is plane")
}

/// `K_4` drawn with the triangle `0 1 2` outside and 3 in the middle.
pub fn k4() -> PlaneGraph {
    let rot = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
    PlaneGraph::new(rot, Some(Dart::new(0, 1))).expect("K4 is plane")
}

/// Wheel with hub 0 and rim `1..=k`, rim cycle outside.
pub fn wheel(k: usize) -> PlaneGraph {
    assert!(k >= 3);
    let mut rot = vec![(1..=k).collect::<Vec<_>>()];
    for i in 1..=k {
        let prev = if i == 1 { k } else { i - 1 };
        let next = if i == k { 1 } else { i + 1 };
        rot.push(vec![next, 0, prev]);
    }
    let g = PlaneGraph::new(rot, None).expect("wheel is plane");
    let d = g
        .faces()
        .iter()
        .find(|f| f.len() == k && !f.vertices().contains(&0))
        .expect("rim face")
        .darts()[0];
    g.with_outer(d).expect("rim dart")
}

/// Rotation system of a straight-line drawing: neighbours in clockwise order
/// of angle. No outer face is designated.
pub fn from_coordinates(
    points: &[(f64, f64)],
    edges: &[(usize, usize)],
) -> Result<PlaneGraph, EmbeddingError> {
    let n = points.len();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        rot[a].push(b);
        rot[b].push(a);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        let (x, y) = points[v];
        r.sort_by(|&p, &q| {
            let ap = (points[p].1 - y).atan2(points[p].0 - x);
            let aq = (points[q].1 - y).atan2(points[q].0 - x);
            aq.total_cmp(&ap)
        });
    }
    PlaneGraph::new(rot, None)
}

/// The cube `Q_3`: outer square `0 1 2 3`, inner square `4 5 6 7`, spokes `i (i+4)`.
pub fn cube() -> PlaneGraph {
    let pts = [
        (-2.0, -2.0),
        (2.0, -2.0),
        (2.0, 2.0),
        (-2.0, 2.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (1.0, 1.0),
        (-1.0, 1.0),
    ];
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
        edges.push((4 + i, 4 + (i + 1) % 4));
        edges.push((i, i + 4));
    }
    let g = from_coordinates(&pts, &edges).expect("cube drawing is plane");
    let outer = g
        .faces()
        .iter()
        .find(|f| {
            let mut vs = f.vertices().to_vec();
            vs.sort_unstable();
            vs == [0, 1, 2, 3]
        })
        .expect("outer square")
        .darts()[0];
    g.with_outer(outer).expect("dart of the cube")
}

/// Hamiltonian outerplane graph: the cycle `order` forms the outer face and
/// `chords` are drawn inside it. The chords must not cross.
pub fn polygon_with_chords(
    order: &[usize],
    chords: &[(usize, usize)],
) -> Result<PlaneGraph, EmbeddingError> {
    let n = order.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for &(a, b) in chords {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for (v, r) in nbrs.iter_mut().enumerate() {
        r.sort_by_key(|&w| (pos[w] + n - pos[v]) % n);
    }
    PlaneGraph::new(nbrs, Some(Dart::new(order[0], order[1])))
}

/// Cycles of the given lengths glued in a chain: cycle `k+1` shares its first
/// vertex with the vertex halfway along cycle `k`. Outer face is the walk
/// around the whole chain.
pub fn cycle_chain(lengths: &[usize]) -> Result<PlaneGraph, EmbeddingError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut n = 0;
    for (k, &len) in lengths.iter().enumerate() {
        let mut c = Vec::with_capacity(len);
        if k == 0 {
            c.push(n);
            n += 1;
        } else {
            let prev: &Vec<usize> = &cycles[k - 1];
            c.push(prev[prev.len() / 2]);
        }
        for _ in 1..len {
            c.push(n);
            n += 1;
        }
        cycles.push(c);
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in &cycles {
        let len = c.len();
        for i in 0..len {
            rot[c[i]].push(c[(i + 1) % len]);
            rot[c[i]].push(c[(i + len - 1) % len]);
        }
    }
    let g = PlaneGraph::new(rot, None)?;
    let longest = g
        .faces()
        .iter()
        .max_by_key(|f| f.len())
        .expect("a face")
        .darts()[0];
    g.with_outer(longest)
}

/// Three `g`-cycles in a chain sharing cut vertices: outerplane, girth `g`,
/// four faces, colour number 4.
pub fn gen_girth_vertex_family(g: usize) -> Result<PlaneGraph, FamilyError> {
    if g < 3 {
        return Err(FamilyError::GirthTooSmall { g });
    }
    Ok(cycle_chain(&[g, g, g])?)
}

/// Two `g`-cycles sharing the edge `0 1`; subcubic, outerplane and bipartite.
pub fn gen_girth_edge_family(g: usize) -> Result<PlaneGraph, FamilyError> {
    if g < 4 || g % 2 == 1 {
        return Err(FamilyError::OddGirth { g });
    }
    // outer cycle 1 2 .. g-1 0 (2g-3) .. g
    let mut order: Vec<usize> = (1..g).collect();
    order.push(0);
    order.extend((g..=2 * g - 3).rev());
    Ok(polygon_with_chords(&order, &[(0, 1)])?)
}

/// Structural certificate that no FUM colouring with 3 colours exists: every
/// vertex is on the outer face, and every vertex misses some face that is a
/// cycle. A 3-colouring would put its only 3 on one outer vertex; a face
/// avoiding that vertex then has maximum 2 exactly once and 1 everywhere
/// else, which puts two 1s next to each other.
pub fn vertex_family_lower_bound(g: &PlaneGraph) -> bool {
    if !g.has_outer() || !(0..g.vertex_count()).all(|v| g.is_outer_vertex(v)) {
        return false;
    }
    (0..g.vertex_count()).all(|v| {
        g.faces()
            .iter()
            .any(|f| f.is_cycle() && !f.vertices().contains(&v))
    })
}

/// Structural certificate that no FUM edge colouring with 3 colours exists:
/// three faces, two inner cycles sharing one edge `s`, every other edge on the
/// outer face. If `s` gets 3 the outer walk has maximum 2 once and 1 elsewhere;
/// otherwise the inner face without the outer 3 has maximum 2 once and 1
/// elsewhere. Either way two facially adjacent edges are both 1.
pub fn edge_family_lower_bound(g: &PlaneGraph) -> bool {
    if !g.has_outer() || g.face_count() != 3 {
        return false;
    }
    let inner: Vec<_> = g.faces().iter().filter(|f| !f.is_outer()).collect();
    if inner.len() != 2 || !inner.iter().all(|f| f.is_cycle()) {
        return false;
    }
    let a: BTreeSet<_> = inner[0].edges().into_iter().collect();
    let b: BTreeSet<_> = inner[1].edges().into_iter().collect();
    let shared: Vec<_> = a.intersection(&b).copied().collect();
    if shared.len() != 1 {
        return false;
    }
    let outer_len = g.outer_face_of_component(0).map_or(0, |f| f.len());
    outer_len >= 3
        && g.edges()
            .iter()
            .all(|&e| e == shared[0] || g.is_outer_edge(e))
}

/// First quadrangulation in `source` (within `budget` instances) needing 4 colours.
pub fn find_hard_quadrangulation<I>(source: I, budget: usize) -> Option<PlaneGraph>
where
    I: IntoIterator<Item = PlaneGraph>,
{
    source
        .into_iter()
        .take(budget)
        .find(is_hard_quadrangulation)
}

/// Parallel variant over a materialised stream; the earliest hit wins.
pub fn find_hard_quadrangulation_par(source: &[PlaneGraph], budget: usize) -> Option<PlaneGraph> {
    let end = budget.min(source.len());
    source[..end]
        .par_iter()
        .find_first(|g| is_hard_quadrangulation(g))
        .cloned()
}

fn is_hard_quadrangulation(g: &PlaneGraph) -> bool {
    let is_quad = classify(g).map(|c| c.is_quadrangulation).unwrap_or(false);
    is_quad && chi_fum(g, 4) == ChiResult::Value(4)
}

/// Index of the first inner face of `q` that is a 4-cycle.
pub fn first_inner_quad_face(q: &PlaneGraph) -> Option<usize> {
    q.faces()
        .iter()
        .position(|f| !f.is_outer() && f.len() == 4 && f.is_cycle())
}

/// First inner 4-face of `q` whose depth-1 nesting still needs 4 colours.
/// Which faces work depends on `q`: the copy must land where the forcing
/// argument of the outer copy ends in a conflict.
pub fn hard_nesting_face(q: &PlaneGraph) -> Option<usize> {
    (0..q.face_count())
        .filter(|&f| !q.faces()[f].is_outer())
        .find(|&f| {
            nest_quadrangulation(q, f, 1).is_ok_and(|h| chi_fum(&h, 4) == ChiResult::Value(4))
        })
}

/// Glues `depth` successive copies of `q`: the first into face `inner_face` of
/// `q`, each further one into the face of the latest copy that corresponds to
/// `inner_face`. Outer 4-cycle of the copy is identified with the face boundary.
pub fn nest_quadrangulation(
    q: &PlaneGraph,
    inner_face: usize,
    depth: usize,
) -> Result<PlaneGraph, FamilyError> {
    if depth == 0 {
        return Err(FamilyError::InvalidDepth);
    }
    let outer = q
        .outer_face_of_component(0)
        .ok_or(FamilyError::OuterBoundaryNotC4)?;
    if q.component_count() != 1 || !(outer.len() == 4 && outer.is_cycle()) {
        return Err(FamilyError::OuterBoundaryNotC4);
    }
    let f = q
        .faces()
        .get(inner_face)
        .ok_or(FamilyError::NoSuchFace { face: inner_face })?;
    if f.is_outer() {
        return Err(FamilyError::OuterFaceSelected);
    }
    if !(f.len() == 4 && f.is_cycle()) {
        return Err(FamilyError::FaceNotQuadrilateral { face: inner_face });
    }
    let mut g = q.clone();
    let mut target = inner_face;
    for _ in 0..depth {
        let (ng, next) = glue_into_face(&g, target, q, inner_face)?;
        g = ng;
        target = next;
    }
    Ok(g)
}

/// Glues a copy of `h` into face `face` of `g`; returns the new graph and the
/// index of the face corresponding to `h`'s face `track`.
fn glue_into_face(
    g: &PlaneGraph,
    face: usize,
    h: &PlaneGraph,
    track: usize,
) -> Result<(PlaneGraph, usize), FamilyError> {
    let fwalk: Vec<usize> = g.faces()[face].darts().iter().map(|d| d.tail).collect();
    let hwalk: Vec<usize> = h
        .outer_face_of_component(0)
        .expect("checked")
        .darts()
        .iter()
        .map(|d| d.tail)
        .collect();
    for mirror in [false, true] {
        let hrot: Vec<Vec<usize>> = if mirror {
            h.rotations()
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect()
        } else {
            h.rotations().to_vec()
        };
        // the mirrored copy's outer walk runs the other way
        let hw: Vec<usize> = if mirror {
            hwalk.iter().rev().copied().collect()
        } else {
            hwalk.clone()
        };
        for s in 0..4 {
            if let Some(res) = try_glue(g, &fwalk, h, &hrot, &hw, s, track, mirror) {
                return Ok(res);
            }
        }
    }
    Err(FamilyError::NoValidAlignment)
}

#[allow(clippy::too_many_arguments)]
fn try_glue(
    g: &PlaneGraph,
    fwalk: &[usize],
    h: &PlaneGraph,
    hrot: &[Vec<usize>],
    hw: &[usize],
    s: usize,
    track: usize,
    mirror: bool,
) -> Option<(PlaneGraph, usize)> {
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; h.vertex_count()];
    for j in 0..4 {
        map[hw[j]] = fwalk[(s + 4 - j) % 4];
    }
    let mut next = n;
    for (x, m) in map.iter_mut().enumerate() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
        let _ = x;
    }
    let mut rot: Vec<Vec<usize>> = g.rotations().to_vec();
    rot.resize(next, Vec::new());
    let boundary: Vec<bool> = (0..h.vertex_count()).map(|x| hw.contains(&x)).collect();
    for x in 0..h.vertex_count() {
        if !boundary[x] {
            rot[map[x]] = hrot[x].iter().map(|&y| map[y]).collect();
        }
    }
    for j in 0..4 {
        let w = hw[j];
        let (wprev, wnext) = (hw[(j + 3) % 4], hw[(j + 1) % 4]);
        let r = &hrot[w];
        let deg = r.len();
        let start = r.iter().position(|&y| y == wnext)?;
        let mut arc = Vec::new();
        let mut k = (start + 1) % deg;
        while r[k] != wprev {
            arc.push(map[r[k]]);
            k = (k + 1) % deg;
        }
        let v = map[w];
        let (vprev, vnext) = (map[wnext], map[wprev]);
        let rv = &mut rot[v];
        let p = rv.iter().position(|&y| y == vprev)?;
        let q = (p + 1) % rv.len();
        if rv[q] != vnext {
            return None;
        }
        for (i, a) in arc.into_iter().enumerate() {
            rv.insert(p + 1 + i, a);
        }
        // chords of the copy between boundary vertices are interior edges
    }
    // boundary-to-boundary edges of the copy that are not boundary cycle edges
    for j in 0..4 {
        for &y in &hrot[hw[j]] {
            let cyc = y == hw[(j + 1) % 4] || y == hw[(j + 3) % 4];
            if boundary[y] && !cyc {
                return None;
            }
        }
    }
    let outer = g.outer_darts();
    let ng = PlaneGraph::with_outer_darts(rot, &outer).ok()?;
    let d = h.faces()[track].darts()[0];
    let d = if mirror { Dart::new(d.head, d.tail) } else { d };
    let nd = Dart::new(map[d.tail], map[d.head]);
    let nf = ng.face_of(nd)?;
    if ng.faces().iter().all(|f| f.len() == 4) {
        Some((ng, nf))
    } else {
        None
    }
}

/// Code of the map seen from dart `start`, optionally mirrored. Equal codes
/// from some darts of two connected maps mean they are isomorphic.
fn rooted_code(rot: &[Vec<usize>], start: Dart, mirror: bool) -> Vec<u32> {
    let n = rot.len();
    let mut num = vec![u32::MAX; n];
    let mut entry = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    num[start.tail] = 0;
    entry[start.tail] = start.head;
    order.push(start.tail);
    let mut code = Vec::with_capacity(n + 2 * rot.iter().map(Vec::len).sum::<usize>());
    code.push(n as u32);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        let r = &rot[v];
        let deg = r.len();
        code.push(deg as u32);
        if deg == 0 {
            continue;
        }
        let p = r
            .iter()
            .position(|&w| w == entry[v])
            .expect("entry neighbour");
        for k in 0..deg {
            let w = if mirror {
                r[(p + deg - k) % deg]
            } else {
                r[(p + k) % deg]
            };
            if num[w] == u32::MAX {
                num[w] = order.len() as u32;
                entry[w] = v;
                order.push(w);
            }
            code.push(num[w]);
        }
    }
    code
}

/// Isomorphism code of a connected map on the sphere, mirror images identified.
pub fn sphere_code(g: &PlaneGraph) -> Vec<u32> {
    let rot = g.rotations();
    if g.edge_count() == 0 {
        return vec![g.vertex_count() as u32];
    }
    let mut best: Option<Vec<u32>> = None;
    for v in 0..rot.len() {
        for &w in &rot[v] {
            for mirror in [false, true] {
                let c = rooted_code(rot, Dart::new(v, w), mirror);
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
    }
    best.expect("graph has darts")
}

/// Isomorphism code of a connected plane graph including its outer face.
pub fn plane_code(g: &PlaneGraph) -> Vec<u32> {
    let rot = g.rotations();
    let Some(outer) = g.outer_face_of_component(0) else {
        return sphere_code(g);
    };
    if outer.darts().is_empty() {
        return vec![g.vertex_count() as u32];
    }
    let mut best: Option<Vec<u32>> = None;
    for &d in outer.darts() {
        for (start, mirror) in [(d, false), (d.reversed(), true)] {
            let c = rooted_code(rot, start, mirror);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.expect("outer face has darts")
}

/// Simple quadrangulations of the sphere with 4..=`max_n` vertices, one per
/// isomorphism class (mirror images identified), grown from `C_4` by
/// splitting vertices. Ordered by vertex count, then by code.
pub fn quadrangulations(max_n: usize) -> Vec<PlaneGraph> {
    if max_n < 4 {
        return Vec::new();
    }
    let mut levels: Vec<Vec<(Vec<u32>, PlaneGraph)>> =
        vec![vec![(sphere_code(&cycle(4)), cycle(4))]];
    for _ in 5..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (_, g) in levels.last().expect("level") {
            for h in vertex_splits(g) {
                let c = sphere_code(&h);
                if seen.insert(c.clone()) {
                    next.push((c, h));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(next);
    }
    levels.into_iter().flatten().map(|(_, g)| g).collect()
}

/// All splits of a vertex `v` along two neighbours `b`, `d` into `v` and a new
/// vertex, joined through the new 4-face `v b new d`.
fn vertex_splits(g: &PlaneGraph) -> Vec<PlaneGraph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        let r = g.rotation(v).to_vec();
        let deg = r.len();
        for i in 0..deg {
            for j in 0..deg {
                if i == j {
                    continue;
                }
                // v keeps r[i..=j] cyclically, the new vertex takes r[j..=i]
                let mut keep = Vec::new();
                let mut k = i;
                loop {
                    keep.push(r[k]);
                    if k == j {
                        break;
                    }
                    k = (k + 1) % deg;
                }
                let mut give = Vec::new();
                let mut k = j;
                loop {
                    give.push(r[k]);
                    if k == i {
                        break;
                    }
                    k = (k + 1) % deg;
                }
                let (b, d) = (r[i], r[j]);
                let c = n;
                let mut rot = g.rotations().to_vec();
                rot[v] = keep;
                rot.push(give.clone());
                for &y in &give[1..give.len() - 1] {
                    for x in rot[y].iter_mut() {
                        if *x == v {
                            *x = c;
                        }
                    }
                }
                for order_b in [false, true] {
                    for order_d in [false, true] {
                        let mut rr = rot.clone();
                        insert_beside(&mut rr[b], v, c, order_b);
                        insert_beside(&mut rr[d], v, c, order_d);
                        if let Ok(h) = PlaneGraph::new(rr, None) {
                            if h.faces().iter().all(|f| f.len() == 4) {
                                let d0 = h.faces()[0].darts()[0];
                                out.push(h.with_outer(d0).expect("dart"));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn insert_beside(r: &mut Vec<usize>, v: usize, c: usize, after: bool) {
    let p = r.iter().position(|&x| x == v).expect("neighbour");
    if after {
        r.insert(p + 1, c);
    } else {
        r.insert(p, c);
    }
}

/// Class restriction for [`connected_plane_graphs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    All,
    Subcubic,
    Outerplane,
}

impl MapClass {
    fn admits_sphere(self, g: &PlaneGraph) -> bool {
        match self {
            MapClass::All => true,
            MapClass::Subcubic => g.max_degree() <= 3,
            MapClass::Outerplane => g
                .faces()
                .iter()
                .any(|f| f.vertices().len() == g.vertex_count()),
        }
    }

    fn admits_plane(self, g: &PlaneGraph) -> bool {
        match self {
            MapClass::Outerplane => (0..g.vertex_count()).all(|v| g.is_outer_vertex(v)),
            _ => self.admits_sphere(g),
        }
    }
}

/// Connected simple plane graphs with 1..=`max_n` vertices in `class`, one per
/// isomorphism class of the plane graph with its outer face (mirror images
/// identified). Grown from `K_1` by adding pendant vertices and edges across
/// faces; both classes are closed under the inverse steps.
pub fn connected_plane_graphs(max_n: usize, class: MapClass) -> Vec<PlaneGraph> {
    if max_n == 0 {
        return Vec::new();
    }
    let spheres = connected_sphere_maps(max_n, class);
    let mut out: Vec<(usize, usize, Vec<u32>, PlaneGraph)> = Vec::new();
    for g in spheres {
        let mut seen = BTreeSet::new();
        if g.edge_count() == 0 {
            let c = plane_code(&g);
            out.push((g.vertex_count(), 0, c, g));
            continue;
        }
        for f in g.faces() {
            let h = g.with_outer(f.darts()[0]).expect("dart");
            if !class.admits_plane(&h) {
                continue;
            }
            let c = plane_code(&h);
            if seen.insert(c.clone()) {
                out.push((h.vertex_count(), h.edge_count(), c, h));
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    out.into_iter().map(|t| t.3).collect()
}

/// Connected maps on the sphere, one per isomorphism class.
pub fn connected_sphere_maps(max_n: usize, class: MapClass) -> Vec<PlaneGraph> {
    let start = PlaneGraph::empty(1);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(sphere_code(&start));
    let mut all = vec![start.clone()];
    let mut work = vec![start];
    while let Some(g) = work.pop() {
        let mut children = Vec::new();
        if g.vertex_count() < max_n {
            children.extend(pendant_additions(&g));
        }
        children.extend(edge_additions(&g));
        for h in children {
            if !class.admits_sphere(&h) {
                continue;
            }
            let c = sphere_code(&h);
            if seen.insert(c) {
                all.push(h.clone());
                work.push(h);
            }
        }
    }
    all.sort_by_cached_key(|g| (g.vertex_count(), g.edge_count(), sphere_code(g)));
    all
}

fn pendant_additions(g: &PlaneGraph) -> Vec<PlaneGraph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        for i in 0..g.degree(v).max(1) {
            let mut rot = g.rotations().to_vec();
            rot[v].insert(i, n);
            rot.push(vec![v]);
            out.push(PlaneGraph::new(rot, None).expect("pendant keeps planarity"));
        }
    }
    out
}

fn edge_additions(g: &PlaneGraph) -> Vec<PlaneGraph> {
    let mut out = Vec::new();
    for f in g.faces() {
        let ds = f.darts();
        let k = ds.len();
        for i in 0..k {
            for j in i + 1..k {
                // corners at the heads of darts i and j
                let (a, ua) = (ds[i].head, ds[i].tail);
                let (b, ub) = (ds[j].head, ds[j].tail);
                if a == b || g.has_edge(a, b) {
                    continue;
                }
                let mut rot = g.rotations().to_vec();
                let pa = rot[a].iter().position(|&x| x == ua).expect("corner");
                rot[a].insert(pa + 1, b);
                let pb = rot[b].iter().position(|&x| x == ub).expect("corner");
                rot[b].insert(pb + 1, a);
                out.push(PlaneGraph::new(rot, None).expect("edge inside a face keeps planarity"));
            }
        }
    }
    out
}

/// Simple triangulations of the sphere with 4..=`max_n` vertices, one per
/// isomorphism class, from `K_4` by vertex insertion and edge flips.
pub fn triangulations(max_n: usize) -> Vec<PlaneGraph> {
    let mut out = Vec::new();
    if max_n < 4 {
        return out;
    }
    let mut level = flip_closure(vec![k4()]);
    out.extend(level.iter().cloned());
    for _ in 5..=max_n {
        let mut seeds = Vec::new();
        for g in &level {
            let n = g.vertex_count();
            // every triangulation of the next size is reachable by flips from one seed
            if let Some(f) = g.faces().first() {
                let vs: Vec<usize> = f.darts().iter().map(|d| d.tail).collect();
                let mut rot = g.rotations().to_vec();
                for (idx, &v) in vs.iter().enumerate() {
                    // corner of the face at v lies after its predecessor on the walk
                    let prev = vs[(idx + 2) % 3];
                    let p = rot[v]
                        .iter()
                        .position(|&x| x == prev)
                        .expect("walk neighbour");
                    rot[v].insert(p + 1, n);
                }
                for hub in [vec![vs[0], vs[2], vs[1]], vec![vs[0], vs[1], vs[2]]] {
                    let mut rr = rot.clone();
                    rr.push(hub);
                    if let Ok(h) = PlaneGraph::new(rr, None) {
                        seeds.push(h);
                        break;
                    }
                }
            }
        }
        level = flip_closure(seeds);
        out.extend(level.iter().cloned());
    }
    out.into_iter()
        .map(|g| {
            let d = g.faces()[0].darts()[0];
            g.with_outer(d).expect("dart")
        })
        .collect()
}

fn flip_closure(seeds: Vec<PlaneGraph>) -> Vec<PlaneGraph> {
    let mut seen = BTreeSet::new();
    let mut all = Vec::new();
    let mut work = Vec::new();
    for g in seeds {
        if seen.insert(sphere_code(&g)) {
            all.push(g.clone());
            work.push(g);
        }
    }
    while let Some(g) = work.pop() {
        for e in g.edges().to_vec() {
            // faces a b c and b a d around the edge a b; flip to c d
            let (a, b) = (e.u(), e.v());
            let Some(fab) = g.face_of(Dart::new(a, b)) else {
                continue;
            };
            let Some(fba) = g.face_of(Dart::new(b, a)) else {
                continue;
            };
            let c = g.faces()[fab]
                .vertices()
                .iter()
                .copied()
                .find(|&x| x != a && x != b);
            let d = g.faces()[fba]
                .vertices()
                .iter()
                .copied()
                .find(|&x| x != a && x != b);
            let (Some(c), Some(d)) = (c, d) else { continue };
            if c == d || g.has_edge(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3 {
                continue;
            }
            let mut rot = g.rotations().to_vec();
            rot[a].retain(|&x| x != b);
            rot[b].retain(|&x| x != a);
            // c sits between b and a on face a b c, so d goes right after... try both sides
            let mut done = None;
            for (sc, sd) in [(false, false), (false, true), (true, false), (true, true)] {
                let mut rr = rot.clone();
                insert_next_to(&mut rr[c], if sc { a } else { b }, d);
                insert_next_to(&mut rr[d], if sd { a } else { b }, c);
                if let Ok(h) = PlaneGraph::new(rr, None) {
                    if h.faces().iter().all(|f| f.len() == 3) {
                        done = Some(h);
                        break;
                    }
                }
            }
            if let Some(h) = done {
                if seen.insert(sphere_code(&h)) {
                    all.push(h.clone());
                    work.push(h);
                }
            }
        }
    }
    all.sort_by_cached_key(sphere_code);
    all
}

fn insert_next_to(r: &mut Vec<usize>, anchor: usize, x: usize) {
    let p = r.iter().position(|&y| y == anchor).expect("anchor");
    r.insert(p + 1, x);
}
