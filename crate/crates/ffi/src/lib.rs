//! C interface to critlab.
//!
//! Graphs and matrices are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`CritlabStatus`];
//! on failure, [`critlab_last_error`] describes the most recent error on
//! the calling thread. Strings handed out by the library are released with
//! [`critlab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use critlab::cli::builtin_graph;
use critlab::critical::critical_group;
use critlab::moore::analyze;
use critlab::report::{to_json, CritGroupReport, MooreReport, ProfileReport};
use critlab::{elem_divisor_profile, snf, Error, Graph, IntMatrix, Prime, SrgParams};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CritlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    NotPrime = 5,
    Infeasible = 6,
    Contradiction = 7,
    Unsupported = 8,
    Internal = 9,
}

/// Opaque graph handle.
pub struct CritlabGraph(Graph);

/// Opaque integer matrix handle.
pub struct CritlabMatrix(IntMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CritlabStatus {
    match e {
        Error::Parse { .. } => CritlabStatus::Parse,
        Error::VertexOutOfRange { .. } | Error::Loop(_) | Error::DuplicateEdge(..) | Error::Disconnected => {
            CritlabStatus::InvalidGraph
        }
        Error::NotPrime(_) => CritlabStatus::NotPrime,
        Error::InfeasibleParameters(_) => CritlabStatus::Infeasible,
        Error::Contradiction(_) => CritlabStatus::Contradiction,
        Error::UnknownMooreGraph(_) | Error::MooreExistenceUnknown | Error::Underdetermined(_) => {
            CritlabStatus::Unsupported
        }
        _ => CritlabStatus::Internal,
    }
}

struct Fail(CritlabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic for `critlab_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CritlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CritlabStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            CritlabStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(CritlabStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(CritlabStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CritlabStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CritlabStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CritlabStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|_| Fail(CritlabStatus::Internal, "interior NUL".into()))?.into_raw();
    Ok(())
}

fn prime(p: u64) -> Result<Prime, Fail> {
    Ok(Prime::new(p)?)
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn critlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn critlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builtin graph by name, e.g. "petersen", "hoffman-singleton", "cycle:5".
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_builtin(name: *const c_char, out: *mut *mut CritlabGraph) -> CritlabStatus {
    guard(|| put(out, CritlabGraph(builtin_graph(text(name)?)?)))
}

/// Parses an edge list: "n m" then m lines "u v".
///
/// # Safety
/// `edges` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_parse(edges: *const c_char, out: *mut *mut CritlabGraph) -> CritlabStatus {
    guard(|| put(out, CritlabGraph(Graph::parse_edge_list(text(edges)?)?)))
}

/// # Safety
/// `g` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_free(g: *mut CritlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_vertex_count(g: *const CritlabGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_edge_count(g: *const CritlabGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Parses a matrix: "rows cols" then the entries.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_matrix_parse(s: *const c_char, out: *mut *mut CritlabMatrix) -> CritlabStatus {
    guard(|| put(out, CritlabMatrix(IntMatrix::parse(text(s)?)?)))
}

/// The Laplacian of a graph as a new matrix handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_graph_laplacian(
    g: *const CritlabGraph,
    out: *mut *mut CritlabMatrix,
) -> CritlabStatus {
    guard(|| put(out, CritlabMatrix(borrow(g)?.0.laplacian_matrix())))
}

/// # Safety
/// `m` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn critlab_matrix_free(m: *mut CritlabMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Smith normal form diagonal as space-separated decimal integers.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_matrix_snf(m: *const CritlabMatrix, out: *mut *mut c_char) -> CritlabStatus {
    guard(|| {
        let r = snf(&borrow(m)?.0, false);
        let s: Vec<String> = r.invariant_factors.iter().map(|d| d.to_string()).collect();
        put_string(out, s.join(" "))
    })
}

/// Elementary divisor profile at `p` as a JSON report.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_matrix_profile_json(
    m: *const CritlabMatrix,
    p: u64,
    out: *mut *mut c_char,
) -> CritlabStatus {
    guard(|| {
        let prof = elem_divisor_profile(&borrow(m)?.0, prime(p)?);
        put_string(out, to_json(&ProfileReport::of(&prof)))
    })
}

/// Critical group of a graph as a JSON report.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_critical_group_json(g: *const CritlabGraph, out: *mut *mut c_char) -> CritlabStatus {
    guard(|| {
        let g = &borrow(g)?.0;
        put_string(out, to_json(&CritGroupReport::of(g, &critical_group(g))))
    })
}

/// Parameter analysis of a strongly regular graph as a JSON report.
/// With `prime_count == 0`, families are enumerated for every prime whose
/// higher powers are allowed.
///
/// # Safety
/// `primes` must point to `prime_count` values (or be NULL when zero);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn critlab_moore_analyze_json(
    v: i64,
    k: i64,
    lambda: i64,
    mu: i64,
    primes: *const u64,
    prime_count: usize,
    out: *mut *mut c_char,
) -> CritlabStatus {
    guard(|| {
        let ps: &[u64] = if prime_count == 0 {
            &[]
        } else if primes.is_null() {
            return Err(Fail(CritlabStatus::NullPointer, "null prime list".into()));
        } else {
            std::slice::from_raw_parts(primes, prime_count)
        };
        let ps = ps.iter().map(|&p| prime(p)).collect::<Result<Vec<_>, _>>()?;
        let analysis = analyze(&SrgParams::new(v, k, lambda, mu)?, &ps)?;
        put_string(out, to_json(&MooreReport::of(&analysis)))
    })
}
