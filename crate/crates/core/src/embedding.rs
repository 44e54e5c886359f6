//! Plane graphs stored as rotation systems.
//!
//! Every vertex carries the cyclic (clockwise) order of its neighbours. A face
//! is traced from a dart `(u, v)` by repeatedly stepping to the rotation
//! successor of the reversed dart: from `(u, v)` the walk continues with
//! `(v, w)` where `w` follows `u` in the rotation of `v`. This single
//! convention is used by every algorithm in the crate.
//!
//! Disconnected graphs are embedded side by side: each component has its own
//! outer walk, and together those walks form the one outer face of the whole
//! graph. Nesting a component inside an inner face of another is not
//! represented.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fumcheck::{EdgePair, FreePairSet};

/// A directed occurrence of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
}

impl Dart {
    pub fn new(tail: usize, head: usize) -> Self {
        Dart { tail, head }
    }

    pub fn reversed(self) -> Self {
        Dart {
            tail: self.head,
            head: self.tail,
        }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

/// An undirected edge, normalised so that the first endpoint is the smaller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        if self.0 == x {
            self.1
        } else {
            debug_assert_eq!(self.1, x);
            self.0
        }
    }

    /// The endpoint shared with `other`, if there is exactly one.
    pub fn common_vertex(self, other: Edge) -> Option<usize> {
        if self == other {
            return None;
        }
        if other.contains(self.0) {
            Some(self.0)
        } else if other.contains(self.1) {
            Some(self.1)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {found} entries but the graph has {expected} vertices")]
    RotationLengthMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} lists neighbour {neighbor}, which is out of range")]
    VertexOutOfRange { vertex: usize, neighbor: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} lists neighbour {neighbor} more than once")]
    DuplicateNeighbor { vertex: usize, neighbor: usize },
    #[error("{from} lists {to} as a neighbour but not the other way round")]
    AsymmetricAdjacency { from: usize, to: usize },
    #[error("component {component} violates Euler's formula: V={vertices} E={edges} F={faces}")]
    EulerViolation {
        component: usize,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("outer dart ({tail}, {head}) is not usable")]
    InvalidOuterDart { tail: usize, head: usize },
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("operation needs a designated outer face")]
    MissingOuterDart,
    #[error("vertex {vertex} is out of range")]
    NoSuchVertex { vertex: usize },
}

/// A closed facial walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    darts: Vec<Dart>,
    vertices: Vec<usize>,
    component: usize,
    is_outer: bool,
}

impl Face {
    /// Darts of the walk in tracing order. Empty for the face of an isolated vertex.
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Distinct vertices of the walk in order of first occurrence.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Walk length; a bridge contributes two.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn is_outer(&self) -> bool {
        self.is_outer
    }

    /// Distinct edges of the walk in order of first occurrence.
    pub fn edges(&self) -> Vec<Edge> {
        let mut seen = BTreeSet::new();
        self.darts
            .iter()
            .map(|d| d.edge())
            .filter(|e| seen.insert(*e))
            .collect()
    }

    /// True when the walk visits pairwise distinct vertices and has length at least 3.
    pub fn is_cycle(&self) -> bool {
        self.darts.len() >= 3 && self.vertices.len() == self.darts.len()
    }
}

/// A face set that the unique-maximum conditions are checked against. The
/// outer walks of all components form a single region; every inner face is a
/// region of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub faces: Vec<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub is_outer: bool,
}

/// Old-to-new vertex renumbering produced by vertex deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// A simple plane graph given by its rotation system.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    rev: Vec<usize>,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    component_of: Vec<usize>,
    component_count: usize,
    outer_faces: Option<Vec<usize>>,
    outer_vertex: Vec<bool>,
    edges: Vec<Edge>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation && self.outer_face_sets() == other.outer_face_sets()
    }
}

impl Eq for PlaneGraph {}

/// Validating constructor in free-function form.
pub fn build_plane_graph(
    vertex_count: usize,
    rotation: Vec<Vec<usize>>,
    outer_dart: Option<Dart>,
) -> Result<PlaneGraph, EmbeddingError> {
    if rotation.len() != vertex_count {
        return Err(EmbeddingError::RotationLengthMismatch {
            expected: vertex_count,
            found: rotation.len(),
        });
    }
    PlaneGraph::new(rotation, outer_dart)
}

impl PlaneGraph {
    /// Builds and validates a plane graph. `outer` designates the outer face
    /// of the component containing it; the remaining components get the face
    /// left of the dart from their smallest vertex to its first neighbour.
    /// With `outer == None` an outer face is designated only if the graph has
    /// no edges.
    pub fn new(rotation: Vec<Vec<usize>>, outer: Option<Dart>) -> Result<Self, EmbeddingError> {
        let outer = outer.map(|d| vec![d]);
        Self::build(rotation, outer)
    }

    /// Like [`PlaneGraph::new`] but accepts one designating dart per component.
    pub fn with_outer_darts(
        rotation: Vec<Vec<usize>>,
        outer: &[Dart],
    ) -> Result<Self, EmbeddingError> {
        Self::build(rotation, Some(outer.to_vec()))
    }

    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self::build(vec![Vec::new(); n], None).expect("edgeless graphs are valid")
    }

    fn build(rotation: Vec<Vec<usize>>, outer: Option<Vec<Dart>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        for (v, nbrs) in rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in nbrs {
                if w >= n {
                    return Err(EmbeddingError::VertexOutOfRange {
                        vertex: v,
                        neighbor: w,
                    });
                }
                if w == v {
                    return Err(EmbeddingError::SelfLoop { vertex: v });
                }
                if !seen.insert(w) {
                    return Err(EmbeddingError::DuplicateNeighbor {
                        vertex: v,
                        neighbor: w,
                    });
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for nbrs in &rotation {
            offsets.push(total);
            total += nbrs.len();
        }
        offsets.push(total);

        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(total);
        for (v, nbrs) in rotation.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                index.insert((v, w), offsets[v] + i);
            }
        }
        let mut rev = vec![0; total];
        for (v, nbrs) in rotation.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                match index.get(&(w, v)) {
                    Some(&r) => rev[offsets[v] + i] = r,
                    None => return Err(EmbeddingError::AsymmetricAdjacency { from: v, to: w }),
                }
            }
        }

        let mut edges: Vec<Edge> = Vec::with_capacity(total / 2);
        for (v, nbrs) in rotation.iter().enumerate() {
            for &w in nbrs {
                if v < w {
                    edges.push(Edge(v, w));
                }
            }
        }
        edges.sort();

        // components
        let mut component_of = vec![usize::MAX; n];
        let mut component_count = 0;
        for s in 0..n {
            if component_of[s] != usize::MAX {
                continue;
            }
            let c = component_count;
            component_count += 1;
            component_of[s] = c;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &rotation[v] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = c;
                        queue.push_back(w);
                    }
                }
            }
        }

        // face tracing
        let dart_of = |id: usize| -> Dart {
            let v = offsets.partition_point(|&o| o <= id) - 1;
            Dart {
                tail: v,
                head: rotation[v][id - offsets[v]],
            }
        };
        let next = |id: usize| -> usize {
            let r = rev[id];
            let h = offsets.partition_point(|&o| o <= r) - 1;
            let deg = rotation[h].len();
            let i = r - offsets[h];
            offsets[h] + (i + 1) % deg
        };
        let mut dart_face = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut darts = Vec::new();
            let mut cur = start;
            loop {
                dart_face[cur] = fid;
                darts.push(dart_of(cur));
                cur = next(cur);
                if cur == start {
                    break;
                }
            }
            let mut seen = BTreeSet::new();
            let vertices = darts
                .iter()
                .map(|d| d.tail)
                .filter(|v| seen.insert(*v))
                .collect();
            let component = component_of[darts[0].tail];
            faces.push(Face {
                darts,
                vertices,
                component,
                is_outer: false,
            });
        }
        for v in 0..n {
            if rotation[v].is_empty() {
                faces.push(Face {
                    darts: Vec::new(),
                    vertices: vec![v],
                    component: component_of[v],
                    is_outer: false,
                });
            }
        }

        let mut comp_v = vec![0usize; component_count];
        let mut comp_e = vec![0usize; component_count];
        let mut comp_f = vec![0usize; component_count];
        for v in 0..n {
            comp_v[component_of[v]] += 1;
            comp_e[component_of[v]] += rotation[v].len();
        }
        for f in &faces {
            comp_f[f.component] += 1;
        }
        for c in 0..component_count {
            let e = comp_e[c] / 2;
            if comp_v[c] + comp_f[c] != e + 2 {
                return Err(EmbeddingError::EulerViolation {
                    component: c,
                    vertices: comp_v[c],
                    edges: e,
                    faces: comp_f[c],
                });
            }
        }

        let outer_faces = if total == 0 && outer.is_none() {
            Some(Vec::new())
        } else {
            outer
        };
        let outer_faces = match outer_faces {
            None => None,
            Some(darts) => {
                let mut chosen: Vec<Option<usize>> = vec![None; component_count];
                for d in darts {
                    let id = index.get(&(d.tail, d.head)).copied().ok_or(
                        EmbeddingError::InvalidOuterDart {
                            tail: d.tail,
                            head: d.head,
                        },
                    )?;
                    let c = component_of[d.tail];
                    if chosen[c].is_some() {
                        return Err(EmbeddingError::InvalidOuterDart {
                            tail: d.tail,
                            head: d.head,
                        });
                    }
                    chosen[c] = Some(dart_face[id]);
                }
                // default designation for the remaining components
                let mut first_vertex = vec![usize::MAX; component_count];
                for v in (0..n).rev() {
                    first_vertex[component_of[v]] = v;
                }
                let isolated_face: HashMap<usize, usize> = faces
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.darts.is_empty())
                    .map(|(i, f)| (f.vertices[0], i))
                    .collect();
                let mut res = Vec::with_capacity(component_count);
                for c in 0..component_count {
                    let face = match chosen[c] {
                        Some(f) => f,
                        None => {
                            let v = first_vertex[c];
                            if rotation[v].is_empty() {
                                isolated_face[&v]
                            } else {
                                dart_face[offsets[v]]
                            }
                        }
                    };
                    res.push(face);
                }
                Some(res)
            }
        };

        let mut outer_vertex = vec![false; n];
        if let Some(of) = &outer_faces {
            for &f in of {
                faces[f].is_outer = true;
                for &v in &faces[f].vertices {
                    outer_vertex[v] = true;
                }
            }
        }

        Ok(PlaneGraph {
            rotation,
            offsets,
            rev,
            faces,
            dart_face,
            component_of,
            component_count,
            outer_faces,
            outer_vertex,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Clockwise neighbour order of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted edge list; the position in this list is the canonical edge index.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count() && self.rotation[a].contains(&b)
    }

    fn dart_id(&self, d: Dart) -> Option<usize> {
        let nbrs = self.rotation.get(d.tail)?;
        nbrs.iter()
            .position(|&w| w == d.head)
            .map(|i| self.offsets[d.tail] + i)
    }

    pub fn is_dart(&self, d: Dart) -> bool {
        self.dart_id(d).is_some()
    }

    /// Rotation predecessor and successor of `w` around `v`.
    pub fn rotation_neighbors(&self, v: usize, w: usize) -> Option<(usize, usize)> {
        let nbrs = &self.rotation[v];
        let i = nbrs.iter().position(|&x| x == w)?;
        let d = nbrs.len();
        Some((nbrs[(i + d - 1) % d], nbrs[(i + 1) % d]))
    }

    /// The dart following `d` on its face.
    pub fn next_dart(&self, d: Dart) -> Option<Dart> {
        let id = self.dart_id(d)?;
        let r = self.rev[id];
        let h = d.head;
        let i = r - self.offsets[h];
        let deg = self.rotation[h].len();
        Some(Dart {
            tail: h,
            head: self.rotation[h][(i + 1) % deg],
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Index of the face whose walk contains `d`.
    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_id(d).map(|id| self.dart_face[id])
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut res = vec![Vec::new(); self.component_count];
        for v in 0..self.vertex_count() {
            res[self.component_of[v]].push(v);
        }
        res
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn has_outer(&self) -> bool {
        self.outer_faces.is_some()
    }

    /// Outer face index of each component, when designated.
    pub fn outer_faces(&self) -> Option<&[usize]> {
        self.outer_faces.as_deref()
    }

    fn outer_face_sets(&self) -> Option<Vec<BTreeSet<Dart>>> {
        self.outer_faces.as_ref().map(|of| {
            of.iter()
                .map(|&f| self.faces[f].darts.iter().copied().collect())
                .collect()
        })
    }

    /// Outer face of the component containing `v`.
    pub fn outer_face_of_component(&self, c: usize) -> Option<&Face> {
        self.outer_faces.as_ref().map(|of| &self.faces[of[c]])
    }

    /// First dart on the outer walk of each component that has edges.
    pub fn outer_darts(&self) -> Vec<Dart> {
        match &self.outer_faces {
            None => Vec::new(),
            Some(of) => of
                .iter()
                .filter_map(|&f| self.faces[f].darts.first().copied())
                .collect(),
        }
    }

    /// Designating dart of the first component with edges.
    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer_darts().into_iter().next()
    }

    /// True when `v` lies on the outer walk of its component.
    pub fn is_outer_vertex(&self, v: usize) -> bool {
        self.outer_vertex.get(v).copied().unwrap_or(false)
    }

    /// True when one of the darts of `e` lies on an outer walk.
    pub fn is_outer_edge(&self, e: Edge) -> bool {
        match &self.outer_faces {
            None => false,
            Some(_) => [Dart::new(e.u(), e.v()), Dart::new(e.v(), e.u())]
                .iter()
                .any(|&d| self.face_of(d).is_some_and(|f| self.faces[f].is_outer)),
        }
    }

    /// Vertices on any outer walk, sorted.
    pub fn outer_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.outer_vertex[v])
            .collect()
    }

    /// Faces grouped into the regions on which unique-maximum conditions apply.
    pub fn regions(&self) -> Vec<Region> {
        let mut res = Vec::new();
        if let Some(of) = &self.outer_faces {
            let mut vs = BTreeSet::new();
            let mut es = BTreeSet::new();
            for &f in of {
                vs.extend(self.faces[f].vertices.iter().copied());
                es.extend(self.faces[f].darts.iter().map(|d| d.edge()));
            }
            res.push(Region {
                faces: of.clone(),
                vertices: vs.into_iter().collect(),
                edges: es.into_iter().collect(),
                is_outer: true,
            });
        }
        for (i, f) in self.faces.iter().enumerate() {
            if f.is_outer {
                continue;
            }
            let es: BTreeSet<Edge> = f.darts.iter().map(|d| d.edge()).collect();
            let mut vs = f.vertices.clone();
            vs.sort_unstable();
            res.push(Region {
                faces: vec![i],
                vertices: vs,
                edges: es.into_iter().collect(),
                is_outer: false,
            });
        }
        res
    }

    /// Same rotation system, outer face of the affected component moved to the
    /// face left of `d`.
    pub fn with_outer(&self, d: Dart) -> Result<PlaneGraph, EmbeddingError> {
        if !self.is_dart(d) {
            return Err(EmbeddingError::InvalidOuterDart {
                tail: d.tail,
                head: d.head,
            });
        }
        let c = self.component_of[d.tail];
        let mut darts: Vec<Dart> = Vec::new();
        if let Some(of) = &self.outer_faces {
            for (comp, &f) in of.iter().enumerate() {
                if comp != c {
                    if let Some(&x) = self.faces[f].darts.first() {
                        darts.push(x);
                    }
                }
            }
        }
        darts.push(d);
        PlaneGraph::with_outer_darts(self.rotation.clone(), &darts)
    }

    /// Removes a single edge; vertex ids are kept. The outer face of each
    /// resulting component is the face holding a surviving dart of the old
    /// outer walk or, failing that, of a face that contained the edge.
    pub fn remove_edge(&self, e: Edge) -> Result<PlaneGraph, EmbeddingError> {
        let (a, b) = (e.u(), e.v());
        if !self.has_edge(a, b) {
            return Err(EmbeddingError::NotAnEdge { u: a, v: b });
        }
        let mut rotation = self.rotation.clone();
        rotation[a].retain(|&x| x != b);
        rotation[b].retain(|&x| x != a);
        let Some(outer_faces) = &self.outer_faces else {
            return PlaneGraph::build(rotation, None);
        };
        // provisional graph to learn the new components and faces
        let tmp = PlaneGraph::build(rotation.clone(), Some(Vec::new()))?;
        let fa = self.face_of(Dart::new(a, b)).expect("dart exists");
        let fb = self.face_of(Dart::new(b, a)).expect("dart exists");
        let mut chosen: Vec<Option<Dart>> = vec![None; tmp.component_count];
        let mut has_edges = vec![false; tmp.component_count];
        for v in 0..tmp.vertex_count() {
            if !tmp.rotation[v].is_empty() {
                has_edges[tmp.component_of[v]] = true;
            }
        }
        for &f in outer_faces {
            for &d in &self.faces[f].darts {
                if d.edge() == e {
                    continue;
                }
                let c = tmp.component_of[d.tail];
                if chosen[c].is_none() {
                    chosen[c] = Some(d);
                }
            }
        }
        for f in [fa, fb] {
            for &d in &self.faces[f].darts {
                if d.edge() == e {
                    continue;
                }
                let c = tmp.component_of[d.tail];
                if chosen[c].is_none() {
                    chosen[c] = Some(d);
                }
            }
        }
        let mut darts = Vec::new();
        for c in 0..tmp.component_count {
            match chosen[c] {
                Some(d) => darts.push(d),
                None => {
                    // untouched component without an outer dart cannot happen;
                    // edgeless components need none
                    debug_assert!(!has_edges[c]);
                }
            }
        }
        PlaneGraph::build(rotation, Some(darts))
    }

    /// Removes edges one at a time in the given order.
    pub fn remove_edges(&self, edges: &[Edge]) -> Result<PlaneGraph, EmbeddingError> {
        let mut g = self.clone();
        for &e in edges {
            g = g.remove_edge(e)?;
        }
        Ok(g)
    }

    /// Removes the edge `e` and records the new facial adjacencies it creates:
    /// at each endpoint of degree at least 4 the two rotation neighbours of
    /// `e` become a free pair. Pairs mentioning `e` are dropped.
    pub fn remove_edge_tracking_free_pairs(
        &self,
        e: Edge,
        free: &FreePairSet,
    ) -> Result<(PlaneGraph, FreePairSet), EmbeddingError> {
        let (a, b) = (e.u(), e.v());
        if !self.has_edge(a, b) {
            return Err(EmbeddingError::NotAnEdge { u: a, v: b });
        }
        let mut out = free.without_edge(e);
        for (x, y) in [(a, b), (b, a)] {
            if self.degree(x) >= 4 {
                let (p, s) = self.rotation_neighbors(x, y).expect("edge present");
                out.insert(EdgePair::new(Edge::new(x, p), Edge::new(x, s)));
            }
        }
        Ok((self.remove_edge(e)?, out))
    }

    /// Removes several edges, adding every facial adjacency of the result that
    /// did not exist before to the free pairs.
    pub fn remove_edges_tracking_free_pairs(
        &self,
        edges: &[Edge],
        free: &FreePairSet,
    ) -> Result<(PlaneGraph, FreePairSet), EmbeddingError> {
        let g = self.remove_edges(edges)?;
        let before = crate::fumcheck::facial_adjacent_edge_pairs(self);
        let after = crate::fumcheck::facial_adjacent_edge_pairs(&g);
        let mut out = free.clone();
        for &e in edges {
            out = out.without_edge(e);
        }
        for p in after.difference(&before) {
            out.insert(*p);
        }
        Ok((g, out))
    }

    /// Deletes the vertices in `set` in the given order and renumbers the
    /// survivors densely, preserving their relative order.
    pub fn delete_vertices(
        &self,
        set: &[usize],
    ) -> Result<(PlaneGraph, VertexMap), EmbeddingError> {
        let n = self.vertex_count();
        let mut doomed = vec![false; n];
        for &v in set {
            if v >= n {
                return Err(EmbeddingError::NoSuchVertex { vertex: v });
            }
            doomed[v] = true;
        }
        let mut g = self.clone();
        let mut handled = vec![false; n];
        for &v in set {
            if handled[v] {
                continue;
            }
            handled[v] = true;
            let nbrs = g.rotation[v].clone();
            for w in nbrs {
                g = g.remove_edge(Edge::new(v, w))?;
            }
        }
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::new();
        for v in 0..n {
            if !doomed[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let rotation: Vec<Vec<usize>> = new_to_old
            .iter()
            .map(|&v| {
                g.rotation[v]
                    .iter()
                    .map(|&w| old_to_new[w].expect("survivor"))
                    .collect()
            })
            .collect();
        let outer = if g.outer_faces.is_some() {
            let darts: Vec<Dart> = g
                .outer_darts()
                .into_iter()
                .map(|d| Dart::new(old_to_new[d.tail].unwrap(), old_to_new[d.head].unwrap()))
                .collect();
            Some(darts)
        } else {
            None
        };
        let h = PlaneGraph::build(rotation, outer)?;
        Ok((
            h,
            VertexMap {
                old_to_new,
                new_to_old,
            },
        ))
    }

    /// Subgraph induced by `keep`, obtained by deleting everything else.
    pub fn induced(&self, keep: &[usize]) -> Result<(PlaneGraph, VertexMap), EmbeddingError> {
        let mut k = vec![false; self.vertex_count()];
        for &v in keep {
            if v >= k.len() {
                return Err(EmbeddingError::NoSuchVertex { vertex: v });
            }
            k[v] = true;
        }
        let del: Vec<usize> = (0..self.vertex_count()).filter(|&v| !k[v]).collect();
        self.delete_vertices(&del)
    }

    /// Replaces every edge `uv` by a path `u w v` through a new vertex `w`.
    /// New vertices are numbered after the old ones in edge order.
    pub fn subdivide_all(&self) -> PlaneGraph {
        let n = self.vertex_count();
        let mid = |a: usize, b: usize| n + self.edge_index(Edge::new(a, b)).expect("edge");
        let mut rotation: Vec<Vec<usize>> = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, nbrs)| nbrs.iter().map(|&w| mid(v, w)).collect())
            .collect();
        for e in &self.edges {
            rotation.push(vec![e.u(), e.v()]);
        }
        let outer = self.outer_faces.as_ref().map(|_| {
            self.outer_darts()
                .into_iter()
                .map(|d| Dart::new(d.tail, mid(d.tail, d.head)))
                .collect::<Vec<_>>()
        });
        PlaneGraph::build(rotation, outer).expect("subdivision of a plane graph is plane")
    }

    /// Renders the rotation system as `v: n1 n2 ...` lines, for diagnostics.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (v, nbrs) in self.rotation.iter().enumerate() {
            let list: Vec<String> = nbrs.iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("{v}: {}\n", list.join(" ")));
        }
        if let Some(d) = self.outer_dart() {
            s.push_str(&format!("outer {} {}\n", d.tail, d.head));
        }
        s
    }
}

/// Structural class flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_subcubic: bool,
    pub is_outerplane: bool,
    pub is_quadrangulation: bool,
    pub is_bipartite: bool,
    pub is_connected: bool,
    pub is_2connected: bool,
    pub is_2edge_connected: bool,
    /// `None` for forests.
    pub girth: Option<usize>,
}

pub fn classify(g: &PlaneGraph) -> Result<Classification, EmbeddingError> {
    if !g.has_outer() {
        return Err(EmbeddingError::MissingOuterDart);
    }
    let n = g.vertex_count();
    let is_outerplane = (0..n).all(|v| g.is_outer_vertex(v));
    let is_quadrangulation = g.edge_count() > 0 && g.faces().iter().all(|f| f.len() == 4);
    let bt = blocks(g);
    let is_2connected =
        n >= 3 && g.is_connected() && bt.cut_vertices.is_empty() && bt.blocks.len() == 1;
    let is_2edge_connected =
        n >= 2 && g.is_connected() && bt.blocks.iter().all(|b| b.edges.len() > 1);
    Ok(Classification {
        is_subcubic: g.max_degree() <= 3,
        is_outerplane,
        is_quadrangulation,
        is_bipartite: bipartition(g).is_some(),
        is_connected: g.is_connected(),
        is_2connected,
        is_2edge_connected,
        girth: girth(g),
    })
}

/// Two-colouring `0/1` of the vertices, if the graph is bipartite.
pub fn bipartition(g: &PlaneGraph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.rotation(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// Length of a shortest cycle, via BFS from every vertex.
pub fn girth(g: &PlaneGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.rotation(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// A maximal 2-connected piece or a bridge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    /// A 2-connected block whose edge count equals its vertex count.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Block-cut decomposition. Isolated vertices carry no edges and form no block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// Block-cut tree edges `(block index, cut vertex)`.
    pub adjacency: Vec<(usize, usize)>,
}

impl BlockTree {
    /// Number of cut vertices inside block `b`.
    pub fn tree_degree(&self, b: usize) -> usize {
        self.adjacency.iter().filter(|(x, _)| *x == b).count()
    }

    pub fn cut_vertices_of(&self, b: usize) -> Vec<usize> {
        self.adjacency
            .iter()
            .filter(|(x, _)| *x == b)
            .map(|(_, v)| *v)
            .collect()
    }

    pub fn leaf_blocks(&self) -> Vec<&Block> {
        (0..self.blocks.len())
            .filter(|&b| self.tree_degree(b) <= 1)
            .map(|b| &self.blocks[b])
            .collect()
    }

    pub fn leaf_block_indices(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.tree_degree(b) <= 1)
            .collect()
    }
}

pub fn leaf_blocks(t: &BlockTree) -> Vec<&Block> {
    t.leaf_blocks()
}

/// Hopcroft-Tarjan biconnected components.
pub fn blocks(g: &PlaneGraph) -> BlockTree {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut raw_blocks: Vec<Vec<Edge>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.rotation(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(Edge::new(v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(Edge::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == Edge::new(p, v) {
                                break;
                            }
                        }
                        raw_blocks.push(comp);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|mut es| {
            es.sort();
            let vs: BTreeSet<usize> = es.iter().flat_map(|e| [e.u(), e.v()]).collect();
            Block {
                vertices: vs.into_iter().collect(),
                edges: es,
            }
        })
        .collect();
    blocks.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));

    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut adjacency = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if count[v] >= 2 {
                adjacency.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        cut_vertices,
        adjacency,
    }
}
