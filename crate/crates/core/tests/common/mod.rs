//! Shared corpus loading, seeded generators and independent oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;

use fum_core::cli::parse_planar_code;
use fum_core::embedding::{classify, Dart, Edge, PlaneGraph};
use fum_core::families::{connected_plane_graphs, MapClass};
use fum_core::fumcheck::PrecoloredPath;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> Vec<PlaneGraph> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_planar_code(&bytes).unwrap()
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(name),
    )
    .unwrap()
}

pub const FIXTURES: [&str; 5] = [
    "subcubic_8_10.pc",
    "outerplane_8_10.pc",
    "two_connected_8_9.pc",
    "quadrangulations_4_12.pc",
    "triangulations_4_8.pc",
];

fn is_2connected(g: &PlaneGraph) -> bool {
    classify(g).map(|c| c.is_2connected).unwrap_or(false)
}

/// Connected subcubic plane graphs: the full enumeration up to `max_n`
/// vertices plus the fixture sample with 8 to 10 vertices.
pub fn subcubic_corpus(max_n: usize) -> Vec<PlaneGraph> {
    let mut v = connected_plane_graphs(max_n, MapClass::Subcubic);
    v.extend(fixture("subcubic_8_10.pc"));
    v
}

pub fn outerplane_corpus(max_n: usize) -> Vec<PlaneGraph> {
    let mut v = connected_plane_graphs(max_n, MapClass::Outerplane);
    v.extend(fixture("outerplane_8_10.pc"));
    v
}

/// 2-connected plane graphs: every one up to `max_all` vertices, the
/// 2-connected subcubic and outerplane ones up to `max_class`, and fixtures.
pub fn two_connected_corpus(max_all: usize, max_class: usize) -> Vec<PlaneGraph> {
    let mut v: Vec<PlaneGraph> = connected_plane_graphs(max_all, MapClass::All)
        .into_iter()
        .filter(is_2connected)
        .collect();
    for class in [MapClass::Subcubic, MapClass::Outerplane] {
        v.extend(
            connected_plane_graphs(max_class, class)
                .into_iter()
                .filter(|g| g.vertex_count() > max_all && is_2connected(g)),
        );
    }
    v.extend(fixture("two_connected_8_9.pc"));
    v.extend(
        fixture("triangulations_4_8.pc")
            .into_iter()
            .filter(|g| g.vertex_count() <= 9),
    );
    v
}

/// Every precoloured path the extension accepts: empty, one outer vertex
/// coloured from `{1,2,3}`, or both ends of an outer edge with distinct colours.
pub fn all_paths(g: &PlaneGraph) -> Vec<PrecoloredPath> {
    let mut out = vec![PrecoloredPath::empty()];
    for v in g.outer_vertices() {
        for c in 1..=3 {
            out.push(PrecoloredPath::single(v, c));
        }
    }
    for &e in g.edges() {
        if !g.is_outer_edge(e) {
            continue;
        }
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    out.push(PrecoloredPath::pair(e.u(), a, e.v(), b));
                }
            }
        }
    }
    out
}

// ---- independent oracles ----

/// Face walks by direct tracing: from dart (u, v) go to (v, w) where `w`
/// follows `u` in the clockwise rotation of `v`.
pub fn trace_faces(rot: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for (u, r) in rot.iter().enumerate() {
        for &v in r {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = (u, v);
            while seen.insert(d) {
                walk.push(d);
                let rv = &rot[d.1];
                let i = rv.iter().position(|&x| x == d.0).unwrap();
                d = (d.1, rv[(i + 1) % rv.len()]);
            }
            faces.push(walk);
        }
    }
    faces
}

/// Pairs of distinct edges that occur one right after the other on some walk.
pub fn brute_facial_pairs(g: &PlaneGraph) -> BTreeSet<(Edge, Edge)> {
    let mut out = BTreeSet::new();
    let edges = g.edges();
    let walks = trace_faces(g.rotations());
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.common_vertex(f).is_none() {
                continue;
            }
            let consecutive = walks.iter().any(|w| {
                (0..w.len()).any(|k| {
                    let a = Edge::new(w[k].0, w[k].1);
                    let b = Edge::new(w[(k + 1) % w.len()].0, w[(k + 1) % w.len()].1);
                    (a == e && b == f) || (a == f && b == e)
                })
            });
            if consecutive {
                out.insert((e, f));
            }
        }
    }
    out
}

/// Plain proper-colouring backtracker.
pub fn proper_colorable(g: &PlaneGraph, k: u32) -> bool {
    fn go(g: &PlaneGraph, v: usize, k: u32, c: &mut Vec<u32>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for x in 1..=k {
            if g.rotation(v).iter().all(|&w| w > v || c[w] != x) {
                c[v] = x;
                if go(g, v + 1, k, c) {
                    return true;
                }
            }
        }
        c[v] = 0;
        false
    }
    go(g, 0, k, &mut vec![0; g.vertex_count()])
}

// ---- seeded generators ----

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree on `n` vertices with degrees at most `max_deg`, embedded by
/// inserting each new neighbour at a random rotation position.
fn random_tree(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> Vec<Vec<usize>> {
    let mut rot = vec![Vec::new(); n];
    for v in 1..n {
        let cands: Vec<usize> = (0..v).filter(|&u| rot[u].len() < max_deg).collect();
        let u = *cands.choose(rng).expect("room in the tree");
        let pos = rng.gen_range(0..=rot[u].len());
        rot[u].insert(pos, v);
        rot[v].push(u);
    }
    rot
}

/// Adds an edge between two walk positions of one face, splitting it.
fn insert_chord(rot: &mut [Vec<usize>], walk: &[(usize, usize)], i: usize, j: usize) {
    // Entering dart (x, a) is followed by (a, succ_a(x)); putting b right after x
    // in a's rotation routes the face through the new edge.
    let (a, b) = (walk[i].0, walk[j].0);
    let xa = walk[(i + walk.len() - 1) % walk.len()].0;
    let xb = walk[(j + walk.len() - 1) % walk.len()].0;
    let pa = rot[a].iter().position(|&w| w == xa).unwrap();
    rot[a].insert(pa + 1, b);
    let pb = rot[b].iter().position(|&w| w == xb).unwrap();
    rot[b].insert(pb + 1, a);
}

/// Random connected plane graph: a random tree plus up to `extra` chords
/// across faces; `max_deg` bounds every degree.
pub fn random_plane(seed: u64, n: usize, extra: usize, max_deg: usize) -> PlaneGraph {
    let mut r = rng(seed);
    let mut rot = random_tree(&mut r, n, max_deg.max(2));
    for _ in 0..extra {
        let faces = trace_faces(&rot);
        let Some(f) = faces.choose(&mut r) else { break };
        let mut options = Vec::new();
        for i in 0..f.len() {
            for j in 0..f.len() {
                let (a, b) = (f[i].0, f[j].0);
                if a < b && !rot[a].contains(&b) && rot[a].len() < max_deg && rot[b].len() < max_deg
                {
                    options.push((i, j));
                }
            }
        }
        if let Some(&(i, j)) = options.choose(&mut r) {
            let f = f.clone();
            insert_chord(&mut rot, &f, i, j);
        }
    }
    let outer = rot
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_empty())
        .map(|(v, x)| Dart::new(v, x[0]));
    let g = PlaneGraph::new(rot, outer).expect("chord insertion keeps planarity");
    // Random outer face.
    if g.edge_count() == 0 {
        return g;
    }
    let f = r.gen_range(0..g.face_count());
    g.with_outer(g.faces()[f].darts()[0]).unwrap()
}

/// Random outerplane graph: an n-gon with random non-crossing chords, a few
/// pendant trees hung on it.
pub fn random_outerplane(seed: u64, n: usize, chords: usize) -> PlaneGraph {
    let mut r = rng(seed);
    let k = n.max(3);
    let mut rot: Vec<Vec<usize>> = (0..k).map(|i| vec![(i + 1) % k, (i + k - 1) % k]).collect();
    for _ in 0..chords {
        // Faces other than the outer one (the walk 0 -> k-1 -> ...).
        let faces: Vec<Vec<(usize, usize)>> = trace_faces(&rot)
            .into_iter()
            .filter(|f| !f.contains(&(0, k - 1)))
            .collect();
        let f = faces.choose(&mut r).expect("inner face").clone();
        let options: Vec<(usize, usize)> = (0..f.len())
            .flat_map(|i| (0..f.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| f[i].0 < f[j].0 && !rot[f[i].0].contains(&f[j].0))
            .collect();
        if let Some(&(i, j)) = options.choose(&mut r) {
            insert_chord(&mut rot, &f, i, j);
        }
    }
    // Pendant vertices hung into the outer face keep every vertex outer.
    let total = k + r.gen_range(0..3);
    while rot.len() < total {
        let outer: Vec<(usize, usize)> = trace_faces(&rot)
            .into_iter()
            .find(|f| f.contains(&(0, k - 1)))
            .expect("outer walk");
        let i = r.gen_range(0..outer.len());
        let (x, a) = outer[(i + outer.len() - 1) % outer.len()];
        let v = rot.len();
        let p = rot[a].iter().position(|&w| w == x).unwrap();
        rot[a].insert(p + 1, v);
        rot.push(vec![a]);
    }
    PlaneGraph::new(rot, Some(Dart::new(0, k - 1))).expect("outerplane")
}

/// Relabels vertices by `perm` (old id -> new id), keeping the embedding.
pub fn relabel(g: &PlaneGraph, perm: &[usize]) -> PlaneGraph {
    let n = g.vertex_count();
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        rot[perm[v]] = g.rotation(v).iter().map(|&w| perm[w]).collect();
    }
    let outer: Vec<Dart> = g
        .outer_darts()
        .iter()
        .map(|d| Dart::new(perm[d.tail], perm[d.head]))
        .collect();
    if outer.is_empty() {
        PlaneGraph::new(rot, None).unwrap()
    } else {
        PlaneGraph::with_outer_darts(rot, &outer).unwrap()
    }
}

/// Cyclically shifts every rotation list by `shift[v]`, which leaves the
/// embedding unchanged.
pub fn shift_rotations(g: &PlaneGraph, shift: &[usize]) -> PlaneGraph {
    let rot: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            let mut r = g.rotation(v).to_vec();
            if !r.is_empty() {
                let s = shift[v] % r.len();
                r.rotate_left(s);
            }
            r
        })
        .collect();
    let outer = g.outer_darts();
    if outer.is_empty() {
        PlaneGraph::new(rot, None).unwrap()
    } else {
        PlaneGraph::with_outer_darts(rot, &outer).unwrap()
    }
}
