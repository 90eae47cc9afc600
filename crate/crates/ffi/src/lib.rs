//! C ABI over posetlab.
//!
//! Every entry point returns a [`PlStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `*_free`
//! function, and strings handed out are released with [`pl_string_free`].
//! After a non-`Ok` status, [`pl_last_error`] describes what went wrong on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use posetlab::enumerate::{canonical_key, enumerate_spine_graphs, resolve_graph, verify_fiber};
use posetlab::graph_posets::{self, build_poset, GraphPosetKind};
use posetlab::homology::{reduced_homology, HomologyResult};
use posetlab::multigraph::Multigraph;
use posetlab::poset::FinitePoset;
use posetlab::report::{Status, Verification};
use posetlab::suite::{run_suite, SuiteOptions};
use posetlab::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Unsupported = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Which subgraph poset to build.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlPosetKind {
    Sub = 0,
    For = 1,
    X = 2,
    C = 3,
    CX = 4,
    CC = 5,
}

impl From<PlPosetKind> for GraphPosetKind {
    fn from(k: PlPosetKind) -> Self {
        match k {
            PlPosetKind::Sub => GraphPosetKind::Sub,
            PlPosetKind::For => GraphPosetKind::For,
            PlPosetKind::X => GraphPosetKind::X,
            PlPosetKind::C => GraphPosetKind::C,
            PlPosetKind::CX => GraphPosetKind::CX,
            PlPosetKind::CC => GraphPosetKind::CC,
        }
    }
}

/// Outcome of a verifier or suite.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlVerdict {
    Pass = 0,
    HomologyOnly = 1,
    Fail = 2,
}

impl From<Status> for PlVerdict {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => PlVerdict::Pass,
            Status::HomologyOnly => PlVerdict::HomologyOnly,
            Status::Fail => PlVerdict::Fail,
        }
    }
}

/// Opaque multigraph.
pub struct PlGraph(Multigraph);

/// Opaque finite poset.
pub struct PlPoset(FinitePoset);

/// Opaque reduced homology of an order complex.
pub struct PlHomology(HomologyResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => PlStatus::Parse,
        Error::UnsupportedRank(_) | Error::UnsupportedExport(_) => PlStatus::Unsupported,
        _ => PlStatus::Precondition,
    }
}

/// Runs `f` behind a panic guard, recording failures as the last error.
fn guard(f: impl FnOnce() -> Result<(), (PlStatus, String)>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PlStatus::Internal
        }
    }
}

fn lib<T>(r: posetlab::Result<T>) -> Result<T, (PlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PlStatus, String) {
    (PlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PlStatus, String)> {
    // SAFETY: the caller passes a live handle or null.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PlStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null, and the caller promises a NUL-terminated string.
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| (PlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), (PlStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null out pointer supplied by the caller.
    unsafe { out.write(value) };
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a graph alias (`theta`, `rose3`, ...), a canonical key such as
/// `2|0-1,0-1,0-1`, or a path to a JSON graph.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_parse(spec: *const c_char, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        let spec = unsafe { text(spec, "spec") }?;
        let g = lib(resolve_graph(spec))?;
        unsafe { put(out, Box::into_raw(Box::new(PlGraph(g))), "out") }
    })
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_free(g: *mut PlGraph) {
    if !g.is_null() {
        // SAFETY: created by Box::into_raw in pl_graph_parse.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_rank(g: *const PlGraph, out: *mut usize) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        unsafe { put(out, g.0.rank(), "out") }
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_edge_count(g: *const PlGraph, out: *mut usize) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        unsafe { put(out, g.0.edge_count(), "out") }
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_has_separating_edge(g: *const PlGraph, out: *mut bool) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        unsafe { put(out, g.0.has_separating_edge(), "out") }
    })
}

/// Isomorphism-invariant key; free with `pl_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_canonical_key(g: *const PlGraph, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        let key = lib(canonical_key(&g.0))?;
        unsafe { put(out, owned_string(key), "out") }
    })
}

/// Number of spine graphs of `rank` (2 to 4) up to isomorphism.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_enumerate_count(rank: usize, out: *mut usize) -> PlStatus {
    guard(|| {
        let n = lib(enumerate_spine_graphs(rank))?.len();
        unsafe { put(out, n, "out") }
    })
}

/// Spine graphs of `rank` as a JSON array of `{key, graph}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_enumerate_json(rank: usize, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let graphs = lib(enumerate_spine_graphs(rank))?;
        let json = serde_json::to_string(&graphs).map_err(|e| (PlStatus::Internal, e.to_string()))?;
        unsafe { put(out, owned_string(json), "out") }
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_build(g: *const PlGraph, kind: PlPosetKind, out: *mut *mut PlPoset) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        let p = lib(build_poset(&g.0, kind.into()))?;
        unsafe { put(out, Box::into_raw(Box::new(PlPoset(p.poset))), "out") }
    })
}

/// Reads a poset from `{"labels": [...], "covers": [[i, j], ...]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_from_json(json: *const c_char, out: *mut *mut PlPoset) -> PlStatus {
    guard(|| {
        let json = unsafe { text(json, "json") }?;
        let p = lib(FinitePoset::from_json(json))?;
        unsafe { put(out, Box::into_raw(Box::new(PlPoset(p))), "out") }
    })
}

/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_free(p: *mut PlPoset) {
    if !p.is_null() {
        // SAFETY: created by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_len(p: *const PlPoset, out: *mut usize) -> PlStatus {
    guard(|| {
        let p = unsafe { borrow(p, "poset") }?;
        unsafe { put(out, p.0.len(), "out") }
    })
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_to_json(p: *const PlPoset, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let p = unsafe { borrow(p, "poset") }?;
        unsafe { put(out, owned_string(p.0.to_json()), "out") }
    })
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poset_to_dot(p: *const PlPoset, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let p = unsafe { borrow(p, "poset") }?;
        unsafe { put(out, owned_string(p.0.to_dot()), "out") }
    })
}

/// Reduced integral homology of the order complex.
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_compute(p: *const PlPoset, out: *mut *mut PlHomology) -> PlStatus {
    guard(|| {
        let p = unsafe { borrow(p, "poset") }?;
        let h = reduced_homology(&p.0.order_complex());
        unsafe { put(out, Box::into_raw(Box::new(PlHomology(h))), "out") }
    })
}

/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_free(h: *mut PlHomology) {
    if !h.is_null() {
        // SAFETY: created by Box::into_raw in pl_homology_compute.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Reduced Betti number in `degree` (0 outside the computed range).
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_betti(h: *const PlHomology, degree: isize, out: *mut usize) -> PlStatus {
    guard(|| {
        let h = unsafe { borrow(h, "homology") }?;
        unsafe { put(out, h.0.betti(degree), "out") }
    })
}

/// Number of torsion factors in `degree`.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_torsion_count(h: *const PlHomology, degree: isize, out: *mut usize) -> PlStatus {
    guard(|| {
        let h = unsafe { borrow(h, "homology") }?;
        unsafe { put(out, h.0.torsion(degree).len(), "out") }
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_is_trivial(h: *const PlHomology, out: *mut bool) -> PlStatus {
    guard(|| {
        let h = unsafe { borrow(h, "homology") }?;
        unsafe { put(out, h.0.is_trivial(), "out") }
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pl_homology_to_json(h: *const PlHomology, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let h = unsafe { borrow(h, "homology") }?;
        unsafe { put(out, owned_string(h.0.to_json()), "out") }
    })
}

fn run_check(g: &Multigraph, check: &str) -> posetlab::Result<Verification> {
    match check {
        "x" => graph_posets::verify_x_sphericity(g),
        "cx" => graph_posets::verify_cx_sphericity(g),
        "retraction" => graph_posets::verify_core_retractions(g),
        "generators" => graph_posets::forest_generator_count(g),
        "sub" => graph_posets::verify_sub_sphere(g),
        "for" => graph_posets::verify_for_homology(g),
        "duality" => graph_posets::verify_duality(g),
        "relations" => graph_posets::verify_poset_relations(g),
        "fiber" => verify_fiber(g, false),
        "fiber-connected" => verify_fiber(g, true),
        other => Err(Error::Parse(format!("unknown check '{other}'"))),
    }
}

/// Runs one verifier (`x`, `cx`, `retraction`, `generators`, `sub`, `for`,
/// `duality`, `relations`, `fiber`, `fiber-connected`). The record is
/// written as JSON to `out_json` when that is non-null.
///
/// # Safety
/// `g` must be a live handle, `check` NUL-terminated, `verdict` writable and
/// `out_json` writable or null.
#[no_mangle]
pub unsafe extern "C" fn pl_verify(
    g: *const PlGraph,
    check: *const c_char,
    verdict: *mut PlVerdict,
    out_json: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let g = unsafe { borrow(g, "graph") }?;
        let check = unsafe { text(check, "check") }?;
        let v = lib(run_check(&g.0, check))?;
        unsafe { put(verdict, v.status.into(), "verdict") }?;
        if !out_json.is_null() {
            let json = serde_json::to_string(&v).map_err(|e| (PlStatus::Internal, e.to_string()))?;
            unsafe { put(out_json, owned_string(json), "out_json") }?;
        }
        Ok(())
    })
}

/// Runs a named suite (`rank2`, `rank3`, `duality`, ...). `verdict` is
/// `Fail` if any record failed; the report JSON goes to `out_json` when
/// non-null. Thread count follows `POSETLAB_THREADS`.
///
/// # Safety
/// `suite` must be NUL-terminated, `verdict` writable and `out_json`
/// writable or null.
#[no_mangle]
pub unsafe extern "C" fn pl_suite_run(
    suite: *const c_char,
    verdict: *mut PlVerdict,
    out_json: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let name = unsafe { text(suite, "suite") }?;
        let suite = lib(name.parse())?;
        let report = lib(run_suite(suite, &SuiteOptions::default()))?;
        let v = if report.summary.fail > 0 {
            PlVerdict::Fail
        } else if report.summary.homology_only > 0 {
            PlVerdict::HomologyOnly
        } else {
            PlVerdict::Pass
        };
        unsafe { put(verdict, v, "verdict") }?;
        if !out_json.is_null() {
            unsafe { put(out_json, owned_string(report.to_json()), "out_json") }?;
        }
        Ok(())
    })
}
