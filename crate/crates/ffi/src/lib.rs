//! C ABI for `pivotlab`.
//!
//! Objects cross the boundary as opaque handles created by `pl_*_new`-style
//! constructors and released with the matching `pl_*_free`. Every fallible
//! call returns a [`PlStatus`]; on failure the message is available from
//! [`pl_last_error`] on the same thread.
//!
//! Vertices are `uint64_t` masks: coordinate `i` is bit `i - 1`. Outmaps
//! use the same packing, with a set bit meaning the edge is outgoing.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pivotlab::pivot::{parse_permutation, run, Limits, PivotRule, RuleKind, RunTrace, Status};
use pivotlab::uso::{morris_instance, tabulate, uniform, MorrisOracle, PlcpOracle};
use pivotlab::verify::Check;
use pivotlab::{Error, LcpInstance, Orientation, UsoTable, Vertex};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Parse = 3,
    Dimension = 4,
    NotPMatrix = 5,
    Degenerate = 6,
    Capability = 7,
    MalformedOrientation = 8,
    Io = 9,
    Internal = 10,
    Panic = 11,
}

/// How a pivot run ended.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlRunStatus {
    SinkReached = 0,
    CycleDetected = 1,
    StepLimit = 2,
}

/// An LCP instance `(M, q)` with exact rational data.
pub struct PlInstance(LcpInstance);

/// A unique-sink orientation oracle.
pub struct PlOrientation(Box<dyn Orientation>);

/// The recorded visits of one pivot run.
pub struct PlTrace(RunTrace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::Oracle { source, .. } => status_of(source),
        Error::CoordOutOfRange { .. }
        | Error::Dimension { .. }
        | Error::DimensionMismatch { .. }
        | Error::Parity(_) => PlStatus::Dimension,
        Error::Singular { .. } | Error::NotPMatrix { .. } => PlStatus::NotPMatrix,
        Error::Degenerate { .. } => PlStatus::Degenerate,
        Error::Capability { .. } => PlStatus::Capability,
        Error::MalformedOrientation { .. } => PlStatus::MalformedOrientation,
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => PlStatus::Parse,
        Error::InvalidArgument(_) => PlStatus::InvalidArgument,
        Error::Io { .. } => PlStatus::Io,
        _ => PlStatus::Internal,
    }
}

struct Fail(PlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PlStatus::NullArgument, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(PlStatus::InvalidArgument, msg.into())
}

// Runs `f`, recording any error or panic for `pl_last_error`.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            PlStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            PlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(PlStatus::Internal, "string contains NUL".into()))
}

fn vertex(n: usize, mask: u64) -> Result<Vertex, Fail> {
    Ok(Vertex::from_mask(n, mask)?)
}

/// Message for the last failed call on this thread, or NULL after a
/// successful one. Valid until the next `pl_*` call on this thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Instances

/// The Morris instance of odd dimension `n >= 3`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_morris(n: usize, out: *mut *mut PlInstance) -> PlStatus {
    guard(|| {
        let inst = morris_instance(n)?;
        put(out, boxed(PlInstance(inst)), "out")
    })
}

/// Parses an instance from its JSON text (`{"n", "M", "q"}`).
///
/// # Safety
/// `json` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_from_json(
    json: *const c_char,
    out: *mut *mut PlInstance,
) -> PlStatus {
    guard(|| {
        let inst = LcpInstance::from_json(str_arg(json, "json")?)?;
        put(out, boxed(PlInstance(inst)), "out")
    })
}

/// JSON text of `inst`; free with [`pl_string_free`].
///
/// # Safety
/// `inst` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_to_json(
    inst: *const PlInstance,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        put(out, owned_string(inst.0.to_json())?, "out")
    })
}

/// Dimension of `inst`, or 0 if it is null.
///
/// # Safety
/// `inst` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_dim(inst: *const PlInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// # Safety
/// `inst` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pl_instance_free(inst: *mut PlInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

// ---------------------------------------------------------------------------
// Orientations

/// The orientation induced by `inst`. The instance is copied; it may be
/// freed afterwards.
///
/// # Safety
/// `inst` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_from_instance(
    inst: *const PlInstance,
    out: *mut *mut PlOrientation,
) -> PlStatus {
    guard(|| {
        let inst = handle(inst, "instance")?.0.clone();
        put(out, boxed(PlOrientation(Box::new(PlcpOracle::new(inst)))), "out")
    })
}

/// The Morris orientation, evaluated by its transducer.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_morris(n: usize, out: *mut *mut PlOrientation) -> PlStatus {
    guard(|| {
        let o = MorrisOracle::new(n)?;
        put(out, boxed(PlOrientation(Box::new(o))), "out")
    })
}

/// The uniform orientation with its sink at the all-ones vertex.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_uniform(n: usize, out: *mut *mut PlOrientation) -> PlStatus {
    guard(|| {
        let o = uniform(n)?;
        put(out, boxed(PlOrientation(Box::new(o))), "out")
    })
}

/// Parses an orientation table in the text format written by `export`.
///
/// # Safety
/// `text` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_from_table(
    text: *const c_char,
    out: *mut *mut PlOrientation,
) -> PlStatus {
    guard(|| {
        let t = UsoTable::from_text(str_arg(text, "text")?)?;
        put(out, boxed(PlOrientation(Box::new(t))), "out")
    })
}

/// Table text of the whole orientation; free with [`pl_string_free`].
///
/// # Safety
/// `o` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_to_table(
    o: *const PlOrientation,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let t = tabulate(&*handle(o, "orientation")?.0)?;
        put(out, owned_string(t.to_text())?, "out")
    })
}

/// Dimension of `o`, or 0 if it is null.
///
/// # Safety
/// `o` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_dim(o: *const PlOrientation) -> usize {
    o.as_ref().map_or(0, |o| o.0.dim())
}

/// Outgoing coordinates at vertex `v` as a mask.
///
/// # Safety
/// `o` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_outmap(
    o: *const PlOrientation,
    v: u64,
    out: *mut u64,
) -> PlStatus {
    guard(|| {
        let o = &handle(o, "orientation")?.0;
        let om = o.outmap(vertex(o.dim(), v)?)?;
        put(out, om.outgoing().mask(), "out")
    })
}

/// Runs `checks` (comma-separated names such as `"uso,holt-klee"`) on the
/// tabulated orientation. `passed` receives 1 if all pass, else 0.
///
/// # Safety
/// `o`, `checks` and `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_verify(
    o: *const PlOrientation,
    checks: *const c_char,
    passed: *mut i32,
) -> PlStatus {
    guard(|| {
        let o = &handle(o, "orientation")?.0;
        let checks = Check::parse_list(str_arg(checks, "checks")?)?;
        let t = tabulate(&**o)?;
        let mut ok = true;
        for c in checks {
            ok &= c.run(&t)?.passed();
        }
        put(passed, ok as i32, "passed")
    })
}

/// # Safety
/// `o` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pl_orientation_free(o: *mut PlOrientation) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

// ---------------------------------------------------------------------------
// Pivot runs

/// Runs the rule named `rule` (`murty`, `murty-pi`, `randomized-murty`,
/// `random-edge`, `greedy-antipodal`, `greedy-subcube-sink`) from `start`.
///
/// `pi` is a comma-separated permutation, required for `murty-pi` and
/// NULL otherwise. `max_steps == 0` selects the default limit `50 n^2`.
///
/// # Safety
/// `o`, `rule` and `out` must be valid; `pi` must be NULL or
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pl_run(
    o: *const PlOrientation,
    rule: *const c_char,
    pi: *const c_char,
    seed: u64,
    start: u64,
    max_steps: u64,
    out: *mut *mut PlTrace,
) -> PlStatus {
    guard(|| {
        let o = &handle(o, "orientation")?.0;
        let n = o.dim();
        let kind: RuleKind = str_arg(rule, "rule")?.parse()?;
        let pi = if pi.is_null() {
            None
        } else {
            Some(parse_permutation(str_arg(pi, "pi")?)?)
        };
        let rule = PivotRule::new(kind, pi, seed)?;
        let limits = if max_steps == 0 {
            Limits::default_for(n)
        } else {
            Limits::steps(max_steps)
        };
        let trace = run(&**o, &rule, vertex(n, start)?, limits)?;
        put(out, boxed(PlTrace(trace)), "out")
    })
}

/// Number of pivot steps, or 0 if `t` is null.
///
/// # Safety
/// `t` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_steps(t: *const PlTrace) -> u64 {
    t.as_ref().map_or(0, |t| t.0.steps())
}

/// Number of coordinate flips; differs from the step count only for the
/// greedy rules.
///
/// # Safety
/// `t` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_flips(t: *const PlTrace) -> u64 {
    t.as_ref().map_or(0, |t| t.0.flips())
}

/// Number of recorded visits (`steps + 1`).
///
/// # Safety
/// `t` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_len(t: *const PlTrace) -> usize {
    t.as_ref().map_or(0, |t| t.0.visits.len())
}

/// # Safety
/// `t` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_status(t: *const PlTrace, out: *mut PlRunStatus) -> PlStatus {
    guard(|| {
        let s = match handle(t, "trace")?.0.status {
            Status::SinkReached => PlRunStatus::SinkReached,
            Status::CycleDetected => PlRunStatus::CycleDetected,
            Status::StepLimit => PlRunStatus::StepLimit,
        };
        put(out, s, "out")
    })
}

/// Vertex of visit `index`.
///
/// # Safety
/// `t` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_vertex(t: *const PlTrace, index: usize, out: *mut u64) -> PlStatus {
    guard(|| {
        let visits = &handle(t, "trace")?.0.visits;
        let s = visits
            .get(index)
            .ok_or_else(|| invalid(format!("visit {index} out of range 0..{}", visits.len())))?;
        put(out, s.vertex.mask(), "out")
    })
}

/// Trace CSV; free with [`pl_string_free`].
///
/// # Safety
/// `t` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_to_csv(t: *const PlTrace, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let csv = handle(t, "trace")?.0.to_csv()?;
        put(out, owned_string(csv)?, "out")
    })
}

/// # Safety
/// `t` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pl_trace_free(t: *mut PlTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
