//! C ABI over `realquot`.
//!
//! Objects cross the boundary as opaque handles created by `rq_*_from_json` or
//! a constructor and released by the matching `rq_*_free`. Every fallible call
//! returns an [`RqStatus`]; on failure [`rq_last_error`] describes the cause
//! for the calling thread. Strings returned through `char **` are owned by the
//! caller and released with [`rq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use realquot::arrangement::{
    quotient_invariants, split_curve_bus_certificate, ArrangementError, LineArrangement,
};
use realquot::ledger::{is_bus_trivial, run_path, DeformationEvent, QuotientLedger};
use realquot::plumbing::{
    boundary_is_s3, determinant, intersection_matrix, is_negative_definite, reduce, BoundaryClass,
};
use realquot::resolution::RealPlumbingGraph;
use realquot::sf::is_sf;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RqStatus {
    Ok = 0,
    /// The call succeeded and the answer is negative.
    Negative = 1,
    InvalidInput = 2,
    Internal = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
}

/// Boundary classification of a plumbing graph.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RqBoundary {
    Sphere3 = 0,
    NotSphere3 = 1,
    Indeterminate = 2,
}

/// Opaque real plumbing graph.
pub struct RqGraph(RealPlumbingGraph);

/// Opaque quotient ledger.
pub struct RqLedger(QuotientLedger);

/// Opaque line arrangement.
pub struct RqArrangement(LineArrangement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(RqStatus, String);

impl Fail {
    fn input(msg: impl ToString) -> Fail {
        Fail(RqStatus::InvalidInput, msg.to_string())
    }
}

/// Run `f`, record any error and convert panics into `RqStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<RqStatus, Fail>) -> RqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            RqStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(RqStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(RqStatus::Utf8, format!("{name}: {e}")))
}

unsafe fn obj<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(RqStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(RqStatus::NullPointer, format!("{name} is null")))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Fail(RqStatus::Internal, e.to_string()))
}

fn verdict(b: bool) -> RqStatus {
    if b {
        RqStatus::Ok
    } else {
        RqStatus::Negative
    }
}

fn arrangement_fail(e: ArrangementError) -> Fail {
    match e {
        ArrangementError::Internal(_) | ArrangementError::ModelInconsistency(_) => {
            Fail(RqStatus::Internal, e.to_string())
        }
        other => Fail::input(other),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// Graphs

/// Parse and validate a graph from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_graph` writable.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_from_json(
    json: *const c_char,
    out_graph: *mut *mut RqGraph,
) -> RqStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        *slot = ptr::null_mut();
        let g: RealPlumbingGraph =
            serde_json::from_str(str_arg(json, "json")?).map_err(Fail::input)?;
        let violations = g.validate();
        if !violations.is_empty() {
            let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(Fail::input(text.join("; ")));
        }
        *slot = Box::into_raw(Box::new(RqGraph(g)));
        Ok(RqStatus::Ok)
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_free(g: *mut RqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Serialize a graph to JSON.
///
/// # Safety
/// Pointers must be valid; the string is released with `rq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_to_json(
    g: *const RqGraph,
    out_json: *mut *mut c_char,
) -> RqStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let g = obj(g, "graph")?;
        *slot = c_string(
            serde_json::to_string(&g.0).map_err(|e| Fail(RqStatus::Internal, e.to_string()))?,
        )?;
        Ok(RqStatus::Ok)
    })
}

/// `RQ_STATUS_OK` when the singularity is smoothly folding, `RQ_STATUS_NEGATIVE` otherwise.
///
/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_is_sf(g: *const RqGraph) -> RqStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        Ok(verdict(is_sf(&g.0).map_err(Fail::input)?.is_sf()))
    })
}

/// `RQ_STATUS_OK` when the intersection form is negative definite.
///
/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_is_negative_definite(g: *const RqGraph) -> RqStatus {
    guard(|| {
        let m = intersection_matrix(&obj(g, "graph")?.0).map_err(Fail::input)?;
        Ok(verdict(
            is_negative_definite(&m.entries).map_err(Fail::input)?,
        ))
    })
}

/// Exact determinant of the intersection form as a decimal string.
///
/// # Safety
/// Pointers must be valid; the string is released with `rq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_determinant(
    g: *const RqGraph,
    out_decimal: *mut *mut c_char,
) -> RqStatus {
    guard(|| {
        let slot = out(out_decimal, "out_decimal")?;
        let m = intersection_matrix(&obj(g, "graph")?.0).map_err(Fail::input)?;
        *slot = c_string(determinant(&m.entries).map_err(Fail::input)?.to_string())?;
        Ok(RqStatus::Ok)
    })
}

/// Blow down equivariantly until minimal. The result is a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_reduce(
    g: *const RqGraph,
    out_graph: *mut *mut RqGraph,
) -> RqStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        *slot = ptr::null_mut();
        let r = reduce(&obj(g, "graph")?.0).map_err(Fail::input)?;
        *slot = Box::into_raw(Box::new(RqGraph(r)));
        Ok(RqStatus::Ok)
    })
}

/// Classify the boundary 3-manifold of a negative-definite good tree.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rq_graph_boundary(
    g: *const RqGraph,
    out_class: *mut RqBoundary,
) -> RqStatus {
    guard(|| {
        let slot = out(out_class, "out_class")?;
        *slot = match boundary_is_s3(&obj(g, "graph")?.0) {
            BoundaryClass::Sphere3 => RqBoundary::Sphere3,
            BoundaryClass::NotSphere3(_) => RqBoundary::NotSphere3,
            BoundaryClass::Indeterminate(_) => RqBoundary::Indeterminate,
        };
        Ok(RqStatus::Ok)
    })
}

// Ledgers

/// A ledger for S⁴ with no summands and no nodes. Never null.
#[no_mangle]
pub extern "C" fn rq_ledger_new() -> *mut RqLedger {
    Box::into_raw(Box::new(RqLedger(QuotientLedger::pristine())))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out_ledger` writable.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_from_json(
    json: *const c_char,
    out_ledger: *mut *mut RqLedger,
) -> RqStatus {
    guard(|| {
        let slot = out(out_ledger, "out_ledger")?;
        *slot = ptr::null_mut();
        let l: QuotientLedger =
            serde_json::from_str(str_arg(json, "json")?).map_err(Fail::input)?;
        *slot = Box::into_raw(Box::new(RqLedger(l)));
        Ok(RqStatus::Ok)
    })
}

/// # Safety
/// `l` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_free(l: *mut RqLedger) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// Pointers must be valid; the string is released with `rq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_to_json(
    l: *const RqLedger,
    out_json: *mut *mut c_char,
) -> RqStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let l = obj(l, "ledger")?;
        *slot = c_string(
            serde_json::to_string(&l.0).map_err(|e| Fail(RqStatus::Internal, e.to_string()))?,
        )?;
        Ok(RqStatus::Ok)
    })
}

/// Euler characteristic of the resolved manifold. `RQ_STATUS_NEGATIVE` when
/// the base is not S⁴.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_euler(l: *const RqLedger, out_chi: *mut i64) -> RqStatus {
    guard(|| {
        let slot = out(out_chi, "out_chi")?;
        match obj(l, "ledger")?.0.euler_characteristic() {
            Some(chi) => {
                *slot = chi;
                Ok(RqStatus::Ok)
            }
            None => Ok(RqStatus::Negative),
        }
    })
}

/// `RQ_STATUS_OK` when the ledger is BUS-trivial; fails on an untracked ledger.
///
/// # Safety
/// `l` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_is_bus_trivial(l: *const RqLedger) -> RqStatus {
    guard(|| {
        Ok(verdict(
            is_bus_trivial(&obj(l, "ledger")?.0).map_err(Fail::input)?,
        ))
    })
}

/// Apply a JSON array of events to a ledger. The final ledger is a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rq_ledger_run(
    l: *const RqLedger,
    events_json: *const c_char,
    out_ledger: *mut *mut RqLedger,
) -> RqStatus {
    guard(|| {
        let slot = out(out_ledger, "out_ledger")?;
        *slot = ptr::null_mut();
        let l = obj(l, "ledger")?;
        let events: Vec<DeformationEvent> =
            serde_json::from_str(str_arg(events_json, "events_json")?).map_err(Fail::input)?;
        let run = run_path(&l.0, &events)
            .map_err(|e| Fail::input(format!("event {}: {}", e.index, e.error)))?;
        *slot = Box::into_raw(Box::new(RqLedger(run.final_ledger)));
        Ok(RqStatus::Ok)
    })
}

/// `true` when Seiberg-Witten invariants vanish for the given geometric genera.
#[no_mangle]
pub extern "C" fn rq_sw_vanishes(pg_res: u64, pg_prime: u64) -> bool {
    realquot::ledger::sw_vanishes(pg_res, pg_prime)
}

// Arrangements

/// Parse and validate an arrangement from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_arrangement` writable.
#[no_mangle]
pub unsafe extern "C" fn rq_arrangement_from_json(
    json: *const c_char,
    out_arrangement: *mut *mut RqArrangement,
) -> RqStatus {
    guard(|| {
        let slot = out(out_arrangement, "out_arrangement")?;
        *slot = ptr::null_mut();
        let a: LineArrangement =
            serde_json::from_str(str_arg(json, "json")?).map_err(Fail::input)?;
        a.validate().map_err(arrangement_fail)?;
        *slot = Box::into_raw(Box::new(RqArrangement(a)));
        Ok(RqStatus::Ok)
    })
}

/// A generic arrangement of 2k lines. Null when k is 0 or above 64.
#[no_mangle]
pub extern "C" fn rq_arrangement_generic(k: u32) -> *mut RqArrangement {
    if !(1..=64).contains(&k) {
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(RqArrangement(LineArrangement::generic(k))))
}

/// A pencil of 2k lines. Null when k is 0 or above 64.
#[no_mangle]
pub extern "C" fn rq_arrangement_pencil(k: u32) -> *mut RqArrangement {
    if !(1..=64).contains(&k) {
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(RqArrangement(LineArrangement::pencil(k))))
}

/// # Safety
/// `a` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rq_arrangement_free(a: *mut RqArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Euler characteristic of the quotient of the double plane.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rq_arrangement_chi_quotient(
    a: *const RqArrangement,
    perturbed: bool,
    out_chi: *mut i64,
) -> RqStatus {
    guard(|| {
        let slot = out(out_chi, "out_chi")?;
        let r =
            quotient_invariants(&obj(a, "arrangement")?.0, perturbed).map_err(arrangement_fail)?;
        *slot = r.chi_xbar();
        Ok(RqStatus::Ok)
    })
}

/// Full invariant report as JSON.
///
/// # Safety
/// Pointers must be valid; the string is released with `rq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rq_arrangement_report(
    a: *const RqArrangement,
    perturbed: bool,
    out_json: *mut *mut c_char,
) -> RqStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let r =
            quotient_invariants(&obj(a, "arrangement")?.0, perturbed).map_err(arrangement_fail)?;
        *slot = c_string(
            serde_json::to_string(&r).map_err(|e| Fail(RqStatus::Internal, e.to_string()))?,
        )?;
        Ok(RqStatus::Ok)
    })
}

/// BUS-triviality certificate for a split branch curve. `RQ_STATUS_NEGATIVE`
/// when no certificate exists; the JSON is written in both cases.
///
/// # Safety
/// `out_json` must be writable; the string is released with `rq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rq_certify(
    deg_b: u32,
    deg_c: u32,
    rb0: bool,
    rc0: bool,
    rb1: bool,
    rc1: bool,
    out_json: *mut *mut c_char,
) -> RqStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        *slot = ptr::null_mut();
        let c =
            split_curve_bus_certificate(deg_b, deg_c, rb0, rc0, rb1, rc1).map_err(Fail::input)?;
        *slot = c_string(
            serde_json::to_string(&c).map_err(|e| Fail(RqStatus::Internal, e.to_string()))?,
        )?;
        Ok(verdict(c.is_certified()))
    })
}
