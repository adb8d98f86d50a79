//! C ABI for the geobip solvers.
//!
//! Instances and solutions are opaque handles created and released by this
//! library. Every function returns a [`GeobipStatus`]; on failure the
//! message is available from [`geobip_last_error_message`] on the same
//! thread. Strings returned through `char **` are released with
//! [`geobip_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use geobip::io::{self, Instance, SolutionFile, Verdict};
use geobip::oracle::Problem;
use geobip::solve::{self, Algorithm, SolveOptions};
use geobip::Error;

/// Result of every call. Codes 0 and 3 to 7 match the CLI exit statuses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeobipStatus {
    Ok = 0,
    /// `geobip_verify` found the solution infeasible.
    Infeasible = 1,
    /// A required pointer argument was null.
    NullArgument = 2,
    Validation = 3,
    Capacity = 4,
    Io = 5,
    Parse = 6,
    Internal = 7,
    /// A panic was caught at the boundary.
    Panic = 8,
}

/// A parsed instance.
pub struct GeobipInstance {
    inner: Instance,
}

/// A solver result.
pub struct GeobipSolution {
    file: SolutionFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(GeobipStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Validation(_) => GeobipStatus::Validation,
            Error::Capacity { .. } => GeobipStatus::Capacity,
            Error::Parse(_) => GeobipStatus::Parse,
            Error::Io(_) => GeobipStatus::Io,
            Error::Internal(_) => GeobipStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GeobipStatus::NullArgument, format!("{what} is null"))
}

/// Runs `body` with panics contained and the last error updated.
fn guard(body: impl FnOnce() -> Result<GeobipStatus, Failure>) -> GeobipStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic in geobip");
            GeobipStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(GeobipStatus::Parse, format!("{what} is not valid UTF-8")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(GeobipStatus::Internal, "string contains NUL".into()))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn geobip_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an instance document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn geobip_instance_from_json(
    json: *const c_char,
    out: *mut *mut GeobipInstance,
) -> GeobipStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let inner = Instance::from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(GeobipInstance { inner }));
        Ok(GeobipStatus::Ok)
    })
}

/// # Safety
/// `inst` is null or a handle from `geobip_instance_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn geobip_instance_free(inst: *mut GeobipInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of objects; 0 for a null handle.
///
/// # Safety
/// `inst` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn geobip_instance_len(inst: *const GeobipInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.scene.len())
}

/// Solves with the named algorithm (`"auto"` when `algorithm` is null).
///
/// # Safety
/// `inst` is a live handle, `algorithm` is null or NUL-terminated, `out`
/// points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn geobip_solve(
    inst: *const GeobipInstance,
    algorithm: *const c_char,
    out: *mut *mut GeobipSolution,
) -> GeobipStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let algorithm: Algorithm = if algorithm.is_null() {
            Algorithm::Auto
        } else {
            read_str(algorithm, "algorithm")?.parse()?
        };
        let opts = SolveOptions {
            algorithm,
            ..Default::default()
        };
        let outcome = solve::solve(&inst.inner.scene, inst.inner.weights(), &opts)?;
        let file = SolutionFile::new(
            Problem::Mbs,
            outcome.algorithm.name(),
            &outcome.solution,
            outcome.weight.as_ref(),
        );
        *out = Box::into_raw(Box::new(GeobipSolution { file }));
        Ok(GeobipStatus::Ok)
    })
}

/// # Safety
/// `sol` is null or a handle from `geobip_solve` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn geobip_solution_free(sol: *mut GeobipSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Number of selected objects; 0 for a null handle.
///
/// # Safety
/// `sol` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn geobip_solution_len(sol: *const GeobipSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.file.selected.len())
}

/// Selected indices in increasing order, `geobip_solution_len` entries.
/// Owned by the handle.
///
/// # Safety
/// `sol` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn geobip_solution_indices(sol: *const GeobipSolution) -> *const usize {
    sol.as_ref()
        .map_or(ptr::null(), |s| s.file.selected.as_ptr())
}

/// Side (0 or 1) of each selected index, parallel to the indices; null when
/// the solution carries no coloring. Owned by the handle.
///
/// # Safety
/// `sol` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn geobip_solution_colors(sol: *const GeobipSolution) -> *const u8 {
    sol.as_ref()
        .and_then(|s| s.file.coloring.as_ref())
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// Serializes the solution document; release with `geobip_string_free`.
///
/// # Safety
/// `sol` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn geobip_solution_to_json(
    sol: *const GeobipSolution,
    out: *mut *mut c_char,
) -> GeobipStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let sol = sol.as_ref().ok_or_else(|| null("solution"))?;
        *out = into_c_string(sol.file.to_json())?;
        Ok(GeobipStatus::Ok)
    })
}

/// Checks a solution document against an instance. Returns `Ok` when
/// feasible and `Infeasible` otherwise. When `report` is non-null it
/// receives a line such as `feasible size=3` or `infeasible witness=...`,
/// released with `geobip_string_free`.
///
/// # Safety
/// `inst` is a live handle, `solution_json` is NUL-terminated, `report` is
/// null or points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn geobip_verify(
    inst: *const GeobipInstance,
    solution_json: *const c_char,
    report: *mut *mut c_char,
) -> GeobipStatus {
    guard(|| {
        if !report.is_null() {
            *report = ptr::null_mut();
        }
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let file = SolutionFile::from_json(read_str(solution_json, "solution_json")?)?;
        let (status, text) = match io::verify(&inst.inner, &file)? {
            Verdict::Feasible { size } => (GeobipStatus::Ok, format!("feasible size={size}")),
            Verdict::Infeasible(w) => (GeobipStatus::Infeasible, format!("infeasible witness={w}")),
        };
        if !report.is_null() {
            *report = into_c_string(text)?;
        }
        Ok(status)
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn geobip_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
