//! C ABI for `tristring`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every call returns a [`TsStatus`]; on
//! failure [`ts_last_error`] describes what went wrong on the calling thread.
//! Strings come back through caller-owned buffers: the call always stores the
//! required size (including the terminating NUL) in `needed` and writes the
//! string only when it fits.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tristring::format::parse_embedding;
use tristring::graph::MultiGraph;
use tristring::partition::DEFAULT_EPS;
use tristring::{
    builtin_catalog, canonical_code, enumerate_up_to, euler_characteristic, is_irreducible,
    orientability, spanning_tree_count, sphere_lower_bound, tutte, EmbeddedTriangulation,
    EnumerationResult, Error, SeriesConfig, SeriesMode, SimpleGraph, SurfaceSpec, Truncation,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Disconnected = 5,
    LimitExceeded = 6,
    BufferTooSmall = 7,
    UnknownSurface = 8,
    Panic = 9,
}

/// An embedded triangulation.
pub struct TsTriangulation(EmbeddedTriangulation);

/// A simple graph.
pub struct TsGraph(SimpleGraph);

/// Class counts of an enumeration.
pub struct TsEnumeration(EnumerationResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(err: &Error) -> TsStatus {
    match err {
        Error::Parse { .. } => TsStatus::Parse,
        Error::Disconnected => TsStatus::Disconnected,
        Error::EdgeLimitExceeded { .. } => TsStatus::LimitExceeded,
        _ => TsStatus::InvalidInput,
    }
}

fn fail(status: TsStatus, msg: impl Into<String>) -> TsStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), TsStatus>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(TsStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: tristring::Result<T>) -> Result<T, TsStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, TsStatus> {
    if s.is_null() {
        return Err(fail(TsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TsStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, TsStatus> {
    p.as_ref()
        .ok_or_else(|| fail(TsStatus::NullPointer, "null handle"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, TsStatus> {
    p.as_mut()
        .ok_or_else(|| fail(TsStatus::NullPointer, "null output pointer"))
}

unsafe fn write_str(
    s: &str,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Result<(), TsStatus> {
    *out(needed)? = s.len() + 1;
    if buf.is_null() || len < s.len() + 1 {
        return Err(fail(
            TsStatus::BufferTooSmall,
            format!("buffer holds {len} bytes, {} needed", s.len() + 1),
        ));
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an embedding file (`V E orientable`, rotation lines, sign lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_t` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_parse(
    text: *const c_char,
    out_t: *mut *mut TsTriangulation,
) -> TsStatus {
    guard(|| {
        let slot = out(out_t)?;
        *slot = ptr::null_mut();
        let file = lift(parse_embedding(utf8(text)?))?;
        *slot = Box::into_raw(Box::new(TsTriangulation(file.triangulation)));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`ts_triangulation_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_free(t: *mut TsTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_shape(
    t: *const TsTriangulation,
    n_vertices: *mut usize,
    n_edges: *mut usize,
) -> TsStatus {
    guard(|| {
        let t = &handle(t)?.0;
        *out(n_vertices)? = t.n_vertices();
        *out(n_edges)? = t.n_edges();
        Ok(())
    })
}

/// Euler characteristic and orientability of the surface.
///
/// # Safety
/// `t` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_surface(
    t: *const TsTriangulation,
    euler: *mut i64,
    orientable: *mut bool,
) -> TsStatus {
    guard(|| {
        let t = &handle(t)?.0;
        *out(euler)? = lift(euler_characteristic(t))?;
        *out(orientable)? = orientability(t);
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle and `result` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_is_irreducible(
    t: *const TsTriangulation,
    result: *mut bool,
) -> TsStatus {
    guard(|| {
        let t = &handle(t)?.0;
        lift(t.check_structure())?;
        *out(result)? = is_irreducible(t);
        Ok(())
    })
}

/// Canonical code as a hex string; equal strings mean isomorphic
/// triangulations.
///
/// # Safety
/// `t` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_canonical_code(
    t: *const TsTriangulation,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TsStatus {
    guard(|| {
        let code = lift(canonical_code(&handle(t)?.0))?;
        write_str(&code.to_string(), buf, len, needed)
    })
}

/// Spanning-tree count of the triangulation's graph, in decimal.
///
/// # Safety
/// `t` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_triangulation_kappa(
    t: *const TsTriangulation,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TsStatus {
    guard(|| {
        let g = lift(handle(t)?.0.graph())?;
        write_str(&spanning_tree_count(&g).to_string(), buf, len, needed)
    })
}

/// Parses a graph file: `n m` then one `u v` line per edge.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_g` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_parse(text: *const c_char, out_g: *mut *mut TsGraph) -> TsStatus {
    guard(|| {
        let slot = out(out_g)?;
        *slot = ptr::null_mut();
        let g = lift(SimpleGraph::parse(utf8(text)?))?;
        *slot = Box::into_raw(Box::new(TsGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`ts_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_free(g: *mut TsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Spanning-tree count in decimal. A disconnected graph gives
/// [`TsStatus::Disconnected`].
///
/// # Safety
/// `g` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_kappa(
    g: *const TsGraph,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TsStatus {
    guard(|| {
        let g = &handle(g)?.0;
        if !g.is_connected() {
            return Err(fail(TsStatus::Disconnected, "graph is disconnected"));
        }
        write_str(&spanning_tree_count(g).to_string(), buf, len, needed)
    })
}

/// Tutte polynomial, e.g. `x^2+x+y`. Graphs with more than `edge_limit`
/// edges are refused.
///
/// # Safety
/// `g` must be a live handle, `buf` writable for `len` bytes, `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_tutte(
    g: *const TsGraph,
    edge_limit: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TsStatus {
    guard(|| {
        let p = lift(tutte(&MultiGraph::from(&handle(g)?.0), edge_limit))?;
        write_str(&p.to_string(), buf, len, needed)
    })
}

/// Enumerates the classes of `surface` (`sphere`, `torus` or
/// `projective-plane`) up to `max_vertices` from the bundled catalog.
///
/// # Safety
/// `surface` must be a NUL-terminated string and `out_e` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_enumerate(
    surface: *const c_char,
    max_vertices: usize,
    out_e: *mut *mut TsEnumeration,
) -> TsStatus {
    guard(|| {
        let slot = out(out_e)?;
        *slot = ptr::null_mut();
        let name = utf8(surface)?;
        let spec = SurfaceSpec::from_name(name).ok_or_else(|| {
            fail(
                TsStatus::UnknownSurface,
                format!("unknown surface `{name}`"),
            )
        })?;
        let catalog = builtin_catalog(spec);
        if catalog.seeds.is_empty() {
            return Err(fail(
                TsStatus::UnknownSurface,
                format!("no bundled catalog for `{name}`"),
            ));
        }
        let r = lift(enumerate_up_to(&catalog, max_vertices))?;
        *slot = Box::into_raw(Box::new(TsEnumeration(r)));
        Ok(())
    })
}

/// Number of classes with `n_vertices` vertices; 0 outside the enumerated
/// range.
///
/// # Safety
/// `e` must be a live handle and `count` valid.
#[no_mangle]
pub unsafe extern "C" fn ts_enumeration_count(
    e: *const TsEnumeration,
    n_vertices: usize,
    count: *mut usize,
) -> TsStatus {
    guard(|| {
        let e = &handle(e)?.0;
        *out(count)? = e.classes.get(&n_vertices).map_or(0, |c| c.len());
        Ok(())
    })
}

/// # Safety
/// `e` must come from [`ts_enumerate`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_enumeration_free(e: *mut TsEnumeration) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Sphere lower-bound series at `mu` in dimension `dim`, stopped at relative
/// tolerance `eps` (`eps <= 0` uses the default).
///
/// # Safety
/// `value` and `converged` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_sphere_lower_bound(
    mu: f64,
    dim: u32,
    eps: f64,
    value: *mut f64,
    converged: *mut bool,
) -> TsStatus {
    guard(|| {
        let eps = if eps > 0.0 { eps } else { DEFAULT_EPS };
        let cfg = SeriesConfig::new(
            mu,
            dim,
            Truncation::Tolerance(eps),
            SeriesMode::LowerBoundSphere,
        );
        lift(cfg.validate())?;
        let r = lift(sphere_lower_bound(&cfg))?;
        *out(value)? = r.value;
        *out(converged)? = r.converged;
        Ok(())
    })
}

/// Smallest μ at which the sphere lower-bound series converges.
#[no_mangle]
pub extern "C" fn ts_mu_critical(dim: u32) -> f64 {
    tristring::mu_critical(dim)
}
