//! C interface to `fum-core`.
//!
//! Graphs are opaque [`FumGraph`] handles created by `fum_graph_new` or
//! `fum_graph_from_planar_code` and released with `fum_graph_free`. Every
//! fallible call returns a [`FumStatus`]; the message for the most recent
//! failure on the calling thread is available from `fum_last_error`.
//!
//! Edge colour buffers follow the order reported by `fum_graph_edge`.

use std::cell::RefCell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use fum_core::cli::parse_planar_code;
use fum_core::constructive::{
    self, color_quadrangulation, fum_edge_color_2connected, ConstructError,
};
use fum_core::embedding::{classify, Dart, PlaneGraph};
use fum_core::exact::{chi_fum_edge_with, chi_fum_with, ChiResult, SolveLimits};
use fum_core::fumcheck::{
    check_fum_edge, check_fum_vertex, EdgeCheckMode, EdgeColoring, FreePairSet, VertexColoring,
};

/// Passed as both outer-dart ends to request the default outer face.
pub const FUM_DEFAULT_OUTER: usize = usize::MAX;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidEmbedding = 3,
    InvalidFormat = 4,
    NotApplicable = 5,
    Exceeded = 6,
    TimedOut = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// Class selector for `fum_color`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FumClass {
    /// Subcubic or outerplane.
    SubcubicOrOuterplane = 0,
    Quadrangulation = 1,
}

/// Opaque plane graph handle.
pub struct FumGraph {
    inner: PlaneGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: FumStatus, msg: impl Into<String>) -> FumStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn guard(f: impl FnOnce() -> FumStatus) -> FumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(FumStatus::Internal, "panic inside fum-core"),
    }
}

fn construct_status(e: ConstructError) -> FumStatus {
    let s = match e {
        ConstructError::NotApplicable { .. } | ConstructError::PreconditionViolated { .. } => {
            FumStatus::NotApplicable
        }
        ConstructError::Embedding(_) => FumStatus::InvalidEmbedding,
        _ => FumStatus::Internal,
    };
    fail(s, e.to_string())
}

fn limits(timeout_ms: u64) -> SolveLimits {
    if timeout_ms == 0 {
        SolveLimits::none()
    } else {
        SolveLimits::timeout(Duration::from_millis(timeout_ms))
    }
}

unsafe fn graph<'a>(g: *const FumGraph) -> Option<&'a PlaneGraph> {
    g.as_ref().map(|g| &g.inner)
}

fn store(out: *mut *mut FumGraph, g: PlaneGraph) -> FumStatus {
    // SAFETY: caller checked `out` for null.
    unsafe { *out = Box::into_raw(Box::new(FumGraph { inner: g })) };
    FumStatus::Ok
}

/// Builds a graph from CSR adjacency: the rotation of vertex `v` (clockwise)
/// is `neighbors[offsets[v]..offsets[v+1]]`. `offsets` has `n + 1` entries.
///
/// # Safety
/// `offsets` must point to `n + 1` values, `neighbors` to `offsets[n]` values
/// (it may be null when that is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_new(
    n: usize,
    offsets: *const usize,
    neighbors: *const usize,
    outer_tail: usize,
    outer_head: usize,
    out: *mut *mut FumGraph,
) -> FumStatus {
    guard(|| {
        if offsets.is_null() || out.is_null() {
            return fail(FumStatus::NullPointer, "null offsets or output pointer");
        }
        let offs = std::slice::from_raw_parts(offsets, n + 1);
        let total = offs[n];
        if offs[0] != 0 || offs.windows(2).any(|w| w[0] > w[1]) {
            return fail(
                FumStatus::InvalidArgument,
                "offsets must start at 0 and be non-decreasing",
            );
        }
        if total > 0 && neighbors.is_null() {
            return fail(FumStatus::NullPointer, "null neighbour array");
        }
        let nbrs: &[usize] = if total == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(neighbors, total)
        };
        let rot: Vec<Vec<usize>> = (0..n)
            .map(|v| nbrs[offs[v]..offs[v + 1]].to_vec())
            .collect();
        let outer = if outer_tail == FUM_DEFAULT_OUTER && outer_head == FUM_DEFAULT_OUTER {
            rot.iter()
                .enumerate()
                .find(|(_, r)| !r.is_empty())
                .map(|(v, r)| Dart::new(v, r[0]))
        } else {
            Some(Dart::new(outer_tail, outer_head))
        };
        match PlaneGraph::new(rot, outer) {
            Ok(g) => store(out, g),
            Err(e) => fail(FumStatus::InvalidEmbedding, e.to_string()),
        }
    })
}

/// Decodes record `index` of a planar-code stream.
///
/// # Safety
/// `bytes` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_from_planar_code(
    bytes: *const u8,
    len: usize,
    index: usize,
    out: *mut *mut FumGraph,
) -> FumStatus {
    guard(|| {
        if bytes.is_null() || out.is_null() {
            return fail(FumStatus::NullPointer, "null input or output pointer");
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match parse_planar_code(data) {
            Ok(mut gs) if index < gs.len() => store(out, gs.swap_remove(index)),
            Ok(gs) => fail(
                FumStatus::InvalidArgument,
                format!("record {index} requested, stream has {}", gs.len()),
            ),
            Err(e) => fail(FumStatus::InvalidFormat, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_free(g: *mut FumGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_vertex_count(g: *const FumGraph) -> usize {
    graph(g).map_or(0, |g| g.vertex_count())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_edge_count(g: *const FumGraph) -> usize {
    graph(g).map_or(0, |g| g.edge_count())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_face_count(g: *const FumGraph) -> usize {
    graph(g).map_or(0, |g| g.face_count())
}

/// Endpoints (smaller first) of edge `i` in the canonical edge order.
///
/// # Safety
/// `g` must be a live handle; `u` and `v` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fum_graph_edge(
    g: *const FumGraph,
    i: usize,
    u: *mut usize,
    v: *mut usize,
) -> FumStatus {
    guard(|| {
        let (Some(g), false, false) = (graph(g), u.is_null(), v.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        match g.edges().get(i) {
            Some(e) => {
                *u = e.u();
                *v = e.v();
                FumStatus::Ok
            }
            None => fail(
                FumStatus::InvalidArgument,
                format!("edge index {i} out of range"),
            ),
        }
    })
}

fn chi_status(r: ChiResult, out: *mut u32) -> FumStatus {
    match r {
        ChiResult::Value(k) => {
            // SAFETY: caller checked `out`.
            unsafe { *out = k };
            FumStatus::Ok
        }
        ChiResult::Exceeded => fail(FumStatus::Exceeded, "more colours needed than allowed"),
        ChiResult::TimedOut => fail(FumStatus::TimedOut, "solver timed out"),
    }
}

/// Exact FUM chromatic number with at most `max_k` colours. A zero timeout
/// means no limit.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fum_chi(
    g: *const FumGraph,
    max_k: u32,
    timeout_ms: u64,
    out: *mut u32,
) -> FumStatus {
    guard(|| {
        let (Some(g), false) = (graph(g), out.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        chi_status(chi_fum_with(g, max_k, limits(timeout_ms)).0, out)
    })
}

/// Exact FUM chromatic index with at most `max_k` colours.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fum_chi_edge(
    g: *const FumGraph,
    max_k: u32,
    timeout_ms: u64,
    out: *mut u32,
) -> FumStatus {
    guard(|| {
        let (Some(g), false) = (graph(g), out.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        chi_status(chi_fum_edge_with(g, max_k, limits(timeout_ms)).0, out)
    })
}

unsafe fn out_buffer<'a>(
    buf: *mut u32,
    len: usize,
    need: usize,
) -> Result<&'a mut [u32], FumStatus> {
    if need > 0 && buf.is_null() {
        return Err(fail(FumStatus::NullPointer, "null output buffer"));
    }
    if len < need {
        return Err(fail(
            FumStatus::BufferTooSmall,
            format!("buffer holds {len}, need {need}"),
        ));
    }
    Ok(if need == 0 {
        &mut []
    } else {
        std::slice::from_raw_parts_mut(buf, need)
    })
}

/// Constructive FUM colouring with colours in `1..=4`, one per vertex.
///
/// # Safety
/// `g` must be a live handle and `colors` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn fum_color(
    g: *const FumGraph,
    class: FumClass,
    colors: *mut u32,
    len: usize,
) -> FumStatus {
    guard(|| {
        let Some(g) = graph(g) else {
            return fail(FumStatus::NullPointer, "null graph");
        };
        let dst = match out_buffer(colors, len, g.vertex_count()) {
            Ok(d) => d,
            Err(s) => return s,
        };
        let r = match class {
            FumClass::SubcubicOrOuterplane => constructive::fum_color(g),
            FumClass::Quadrangulation => color_quadrangulation(g),
        };
        match r {
            Ok(c) => {
                dst.copy_from_slice(&c.colors);
                FumStatus::Ok
            }
            Err(e) => construct_status(e),
        }
    })
}

/// Constructive FUM edge colouring of a 2-connected graph, in edge order.
///
/// # Safety
/// `g` must be a live handle and `colors` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn fum_color_edge(
    g: *const FumGraph,
    colors: *mut u32,
    len: usize,
) -> FumStatus {
    guard(|| {
        let Some(g) = graph(g) else {
            return fail(FumStatus::NullPointer, "null graph");
        };
        let dst = match out_buffer(colors, len, g.edge_count()) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match fum_edge_color_2connected(g) {
            Ok(c) => {
                dst.copy_from_slice(&c.to_indexed(g));
                FumStatus::Ok
            }
            Err(e) => construct_status(e),
        }
    })
}

unsafe fn in_buffer<'a>(buf: *const u32, len: usize, need: usize) -> Result<&'a [u32], FumStatus> {
    if len != need {
        return Err(fail(
            FumStatus::InvalidArgument,
            format!("{len} colours given, {need} expected"),
        ));
    }
    if need > 0 && buf.is_null() {
        return Err(fail(FumStatus::NullPointer, "null colour buffer"));
    }
    Ok(if need == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(buf, need)
    })
}

/// Sets `*valid` to 1 if `colors` is a FUM colouring, else 0.
///
/// # Safety
/// `g` must be a live handle, `colors` must hold `len` values, `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn fum_check_vertex(
    g: *const FumGraph,
    colors: *const u32,
    len: usize,
    valid: *mut i32,
) -> FumStatus {
    guard(|| {
        let (Some(g), false) = (graph(g), valid.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        let src = match in_buffer(colors, len, g.vertex_count()) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match check_fum_vertex(g, &VertexColoring::from(src.to_vec())) {
            Ok(v) => {
                *valid = v.is_ok() as i32;
                FumStatus::Ok
            }
            Err(e) => fail(FumStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Sets `*valid` to 1 if `colors` (in edge order) is a FUM edge colouring.
///
/// # Safety
/// `g` must be a live handle, `colors` must hold `len` values, `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn fum_check_edge(
    g: *const FumGraph,
    colors: *const u32,
    len: usize,
    valid: *mut i32,
) -> FumStatus {
    guard(|| {
        let (Some(g), false) = (graph(g), valid.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        let src = match in_buffer(colors, len, g.edge_count()) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let c = EdgeColoring::from_indexed(g, src);
        match check_fum_edge(g, &c, &FreePairSet::new(), EdgeCheckMode::default()) {
            Ok(v) => {
                *valid = v.is_ok() as i32;
                FumStatus::Ok
            }
            Err(e) => fail(FumStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Sets `*out` to 1 if the graph is subcubic, 2 if outerplane, 4 if a
/// quadrangulation, 8 if 2-connected (bitwise or).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fum_classify(g: *const FumGraph, out: *mut u32) -> FumStatus {
    guard(|| {
        let (Some(g), false) = (graph(g), out.is_null()) else {
            return fail(FumStatus::NullPointer, "null argument");
        };
        match classify(g) {
            Ok(c) => {
                *out = c.is_subcubic as u32
                    | (c.is_outerplane as u32) << 1
                    | (c.is_quadrangulation as u32) << 2
                    | (c.is_2connected as u32) << 3;
                FumStatus::Ok
            }
            Err(e) => fail(FumStatus::InvalidEmbedding, e.to_string()),
        }
    })
}

/// Copies the last error message of this thread, NUL-terminated and
/// truncated to `len` bytes, into `buf`. Returns the full message length
/// without the terminator. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or hold `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fum_last_error(buf: *mut std::os::raw::c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
