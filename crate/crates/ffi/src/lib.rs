//! C ABI over `hypercover`.
//!
//! Graphs are opaque [`HcGraph`] handles created by the `hc_*` constructors
//! and released with [`hc_graph_free`]. Every fallible function returns an
//! [`HcStatus`]; on failure a message is available from [`hc_last_error`]
//! until the next failing call on the same thread. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use hypercover::constructions;
use hypercover::cover::{book_number, covers, independence_number, t_max, uncovered_vertices};
use hypercover::formulas::{d_star, parse_rational};
use hypercover::oracle::{max_delta1_no_cover, SearchConfig};
use hypercover::steiner::sts;
use hypercover::{Error, Motif, RGraph, VertexSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    HcOk = 0,
    HcNullPointer = 1,
    HcInvalidArgument = 2,
    HcInvalidUtf8 = 3,
    HcParseError = 4,
    HcLimitExceeded = 5,
    HcBudgetExceeded = 6,
    HcIoError = 7,
    HcBufferTooSmall = 8,
    HcPanic = 9,
}

/// Opaque hypergraph handle.
pub struct HcGraph {
    inner: RGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::Parse { .. } => HcStatus::HcParseError,
        Error::LimitExceeded { .. } => HcStatus::HcLimitExceeded,
        Error::BudgetExceeded => HcStatus::HcBudgetExceeded,
        Error::Io(_) => HcStatus::HcIoError,
        _ => HcStatus::HcInvalidArgument,
    }
}

struct Fail(HcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(HcStatus::HcNullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::HcOk,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::HcPanic
        }
    }
}

unsafe fn graph<'a>(g: *const HcGraph) -> Result<&'a RGraph, Fail> {
    g.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn string<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(HcStatus::HcInvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut HcGraph, g: RGraph) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(HcGraph { inner: g })))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HcStatus::HcInvalidArgument, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failing call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a graph handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_free(g: *mut HcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds an r-graph on `n` vertices from `edge_count` edges stored
/// contiguously, `r` vertices each.
///
/// # Safety
/// `edges` must point to `r * edge_count` readable values.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_from_edges(
    r: usize,
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut HcGraph,
) -> HcStatus {
    guard(|| {
        if r == 0 {
            return Err(Error::UniformityTooSmall(0).into());
        }
        let flat = slice(edges, r.checked_mul(edge_count).ok_or_else(null)?)?;
        put_graph(out, RGraph::from_edges(r, n, flat.chunks_exact(r))?)
    })
}

/// Parses the text format (header `r n`, one ascending edge per line).
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_from_text(text: *const c_char, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| put_graph(out, RGraph::from_text(string(text)?)?))
}

/// # Safety
/// `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_read_file(path: *const c_char, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| put_graph(out, RGraph::read_file(string(path)?)?))
}

/// # Safety
/// `g` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_write_file(g: *const HcGraph, path: *const c_char) -> HcStatus {
    guard(|| Ok(graph(g)?.write_file(string(path)?)?))
}

/// Text form of the graph; free with [`hc_string_free`].
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_to_text(g: *const HcGraph, out: *mut *mut c_char) -> HcStatus {
    guard(|| put_string(out, graph(g)?.to_text()))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_uniformity(g: *const HcGraph, out: *mut usize) -> HcStatus {
    guard(|| put(out, graph(g)?.uniformity()))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_vertex_count(g: *const HcGraph, out: *mut usize) -> HcStatus {
    guard(|| put(out, graph(g)?.vertex_count()))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_edge_count(g: *const HcGraph, out: *mut usize) -> HcStatus {
    guard(|| put(out, graph(g)?.edge_count()))
}

/// Copies the sorted edge list into `buf` (`r * edge_count` values).
/// `needed` receives the required length; `HC_BUFFER_TOO_SMALL` is returned
/// when `capacity` is short, in which case nothing is copied.
///
/// # Safety
/// `buf` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_edges(
    g: *const HcGraph,
    buf: *mut u32,
    capacity: usize,
    needed: *mut usize,
) -> HcStatus {
    guard(|| {
        let g = graph(g)?;
        let len = g.uniformity() * g.edge_count();
        put(needed, len)?;
        if capacity < len {
            return Err(Fail(HcStatus::HcBufferTooSmall, format!("edge buffer needs {len} values")));
        }
        if len > 0 && buf.is_null() {
            return Err(null());
        }
        for (i, &v) in g.edges().flatten().enumerate() {
            buf.add(i).write(v);
        }
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `edge` point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_contains(g: *const HcGraph, edge: *const u32, len: usize, out: *mut bool) -> HcStatus {
    guard(|| put(out, graph(g)?.contains(slice(edge, len)?)))
}

/// Number of edges containing the vertex set.
///
/// # Safety
/// `g` must be a live handle and `set` point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_degree(g: *const HcGraph, set: *const u32, len: usize, out: *mut usize) -> HcStatus {
    guard(|| {
        let s = VertexSet::new(slice(set, len)?.iter().copied())?;
        put(out, graph(g)?.degree(&s)?)
    })
}

/// Minimum degree over all `i`-sets.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_min_degree(g: *const HcGraph, i: usize, out: *mut usize) -> HcStatus {
    guard(|| put(out, graph(g)?.min_i_degree(i)?.value))
}

/// Maximum triangle-degree of a 2-graph.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_t_max(g: *const HcGraph, out: *mut usize) -> HcStatus {
    guard(|| put(out, t_max(graph(g)?)?.0))
}

/// Book number of a 2-graph.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_book_number(g: *const HcGraph, out: *mut usize) -> HcStatus {
    guard(|| put(out, book_number(graph(g)?)?.0))
}

/// Exact independence number; fails above `limit` vertices.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_independence_number(g: *const HcGraph, limit: usize, out: *mut usize) -> HcStatus {
    guard(|| put(out, independence_number(graph(g)?, limit)?.alpha))
}

/// Whether vertex `v` lies in a copy of the named motif (`k4`, `k4-`, `c5`,
/// `k<t>`, `clique<r>`).
///
/// # Safety
/// `g` must be a live handle and `motif` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_covers(g: *const HcGraph, motif: *const c_char, v: u32, out: *mut bool) -> HcStatus {
    guard(|| {
        let m: Motif = string(motif)?.parse()?;
        put(out, covers(graph(g)?, &m, v)?.is_some())
    })
}

/// Number of vertices in no copy of the named motif.
///
/// # Safety
/// `g` must be a live handle and `motif` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_uncovered_count(g: *const HcGraph, motif: *const c_char, out: *mut usize) -> HcStatus {
    guard(|| {
        let m: Motif = string(motif)?.parse()?;
        put(out, uncovered_vertices(graph(g)?, &m)?.uncovered.len())
    })
}

/// K₄⁽³⁾⁻ lower-bound construction on odd `n` with link degree `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_k4minus_lower(n: usize, d: usize, seed: u64, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| put_graph(out, constructions::k4minus_lower(n, d, seed)?.graph))
}

/// Balanced r-partite construction with inner degree from `rho` (`p/q` or a
/// terminating decimal).
///
/// # Safety
/// `rho` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_tau_lower(n: usize, rho: *const c_char, r: usize, seed: u64, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| {
        let rho = parse_rational(string(rho)?)?;
        put_graph(out, constructions::tau_lower_interval(n, &rho, r, seed)?.graph)
    })
}

/// Vectors over `[r₁] × … × [r_k] × [t]` adjacent when they differ in every
/// factor coordinate.
///
/// # Safety
/// `factors` must point to `len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_efg_graph(factors: *const usize, len: usize, t: usize, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| put_graph(out, constructions::efg_graph(slice(factors, len)?, t)?.graph))
}

/// Steiner triple system of order `t`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_sts(t: usize, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| put_graph(out, sts(t)?.triples))
}

/// Exact largest minimum degree of an `n`-vertex graph with a vertex in no
/// copy of the motif. `budget_ms = 0` means unlimited. `witness` may be NULL.
///
/// # Safety
/// `motif` must be a NUL-terminated string and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_max_delta1_no_cover(
    n: usize,
    motif: *const c_char,
    budget_ms: u64,
    value: *mut usize,
    witness: *mut *mut HcGraph,
) -> HcStatus {
    guard(|| {
        let m: Motif = string(motif)?.parse()?;
        let cfg = SearchConfig {
            budget: (budget_ms > 0).then(|| Duration::from_millis(budget_ms)),
            prefix_bits: None,
        };
        let r = max_delta1_no_cover(n, &m, &cfg)?;
        put(value, r.value)?;
        if !witness.is_null() {
            put_graph(witness, r.witness)?;
        }
        Ok(())
    })
}

/// Decimal expansion of d⋆(n) to `digits` significant digits; free with
/// [`hc_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_d_star(n: u64, digits: u64, out: *mut *mut c_char) -> HcStatus {
    guard(|| put_string(out, d_star(n, digits.max(1))?.value.to_plain_string()))
}
