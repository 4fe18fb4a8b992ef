//! C interface.
//!
//! Objects cross the boundary as opaque handles created by `polystab_*`
//! constructors and released with the matching `_free` function. Every
//! fallible call returns a [`PolystabStatus`]; on failure the message is
//! available from [`polystab_last_error`] on the same thread. Strings
//! returned to the caller are owned by it and must be released with
//! [`polystab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use num_rational::BigRational;
use polystab::report::Report;
use polystab::system::{parse_system, ProblemFile};
use polystab::{
    is_stabilizable, stable_polynomial_with, Error, StabilityResult, StabilizabilityVerdict, StabilizationOptions,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolystabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    EmptySystem = 4,
    NotZeroDimensional = 5,
    NotStabilizable = 6,
    IterationCap = 7,
    InvalidArgument = 8,
    Internal = 9,
}

/// A parsed polynomial system.
pub struct PolystabSystem {
    problem: ProblemFile,
}

/// Outcome of the stabilizability test.
pub struct PolystabVerdict {
    problem: ProblemFile,
    verdict: StabilizabilityVerdict,
}

/// A stable polynomial with its cofactors and certificate.
pub struct PolystabStable {
    problem: ProblemFile,
    result: StabilityResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PolystabStatus {
    match e {
        Error::Parse { .. } | Error::UndeclaredVariable { .. } => PolystabStatus::Parse,
        Error::EmptySystem => PolystabStatus::EmptySystem,
        Error::NotZeroDimensional => PolystabStatus::NotZeroDimensional,
        Error::NotStabilizable | Error::SpectrumCap => PolystabStatus::NotStabilizable,
        Error::IterationCap(_) | Error::SeparatingFormExhausted(_) => PolystabStatus::IterationCap,
        _ => PolystabStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (PolystabStatus, String)>) -> PolystabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PolystabStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            PolystabStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (PolystabStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (PolystabStatus, String) {
    (PolystabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PolystabStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PolystabStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn put<T>(out: *mut *mut T, v: T) {
    *out = Box::into_raw(Box::new(v));
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next `polystab_*` call on the same thread.
#[no_mangle]
pub extern "C" fn polystab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polystab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn polystab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a problem text (`vars: z1 z2` followed by one polynomial per line).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polystab_system_parse(text: *const c_char, out: *mut *mut PolystabSystem) -> PolystabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = ptr::null_mut();
        let t = read_str(text, "text")?;
        let problem = parse_system(t).map_err(lib_err)?;
        put(out, PolystabSystem { problem });
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a live handle from [`polystab_system_parse`].
#[no_mangle]
pub unsafe extern "C" fn polystab_system_free(sys: *mut PolystabSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of declared variables, 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_system_num_vars(sys: *const PolystabSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.problem.variables.len())
}

/// Number of polynomials, 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_system_num_polys(sys: *const PolystabSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.problem.polynomials.len())
}

/// Decides whether the variety avoids the closed unit polydisc.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polystab_is_stabilizable(
    sys: *const PolystabSystem,
    out: *mut *mut PolystabVerdict,
) -> PolystabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = ptr::null_mut();
        let s = sys.as_ref().ok_or_else(|| null_err("system"))?;
        let verdict = is_stabilizable(&s.problem.polynomials).map_err(lib_err)?;
        put(out, PolystabVerdict { problem: s.problem.clone(), verdict });
        Ok(())
    })
}

/// 1 if stabilizable, 0 if not, -1 for a null handle.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_verdict_stabilizable(v: *const PolystabVerdict) -> i32 {
    v.as_ref().map_or(-1, |v| v.verdict.stabilizable as i32)
}

/// Number of witness points inside the polydisc.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_verdict_num_witnesses(v: *const PolystabVerdict) -> usize {
    v.as_ref().map_or(0, |v| v.verdict.witnesses.len())
}

/// JSON report including witnesses; free with [`polystab_string_free`].
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_verdict_to_json(v: *const PolystabVerdict) -> *mut c_char {
    match v.as_ref() {
        Some(v) => to_c(Report::new("is-stabilizable", &v.problem).with_verdict(&v.verdict, true).to_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_verdict_free(v: *mut PolystabVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Builds a stable polynomial in the ideal. `initial_eps` is a rational such
/// as `"1/2"` or null for the default; `max_halvings` 0 selects the default.
///
/// # Safety
/// `sys` must be a live handle, `initial_eps` null or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_polynomial(
    sys: *const PolystabSystem,
    initial_eps: *const c_char,
    max_halvings: u32,
    out: *mut *mut PolystabStable,
) -> PolystabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = ptr::null_mut();
        let s = sys.as_ref().ok_or_else(|| null_err("system"))?;
        let mut opts = StabilizationOptions::default();
        if !initial_eps.is_null() {
            let t = read_str(initial_eps, "initial_eps")?;
            let q = BigRational::from_str(t.trim())
                .map_err(|_| (PolystabStatus::InvalidArgument, format!("not a rational number: `{t}`")))?;
            opts.initial_eps = Some(q);
        }
        if max_halvings > 0 {
            opts.max_halvings = max_halvings;
        }
        let result = stable_polynomial_with(&s.problem.polynomials, &opts).map_err(lib_err)?;
        put(out, PolystabStable { problem: s.problem.clone(), result });
        Ok(())
    })
}

/// The stable polynomial `s` in text form.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_s(r: *const PolystabStable) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| to_c(r.result.s.to_string()))
}

/// Number of cofactors (one per input polynomial).
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_num_cofactors(r: *const PolystabStable) -> usize {
    r.as_ref().map_or(0, |r| r.result.cofactors.len())
}

/// Cofactor `i` in text form, or null when out of range.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_cofactor(r: *const PolystabStable, i: usize) -> *mut c_char {
    match r.as_ref().and_then(|r| r.result.cofactors.get(i)) {
        Some(u) => to_c(u.to_string()),
        None => {
            set_error("cofactor index out of range");
            ptr::null_mut()
        }
    }
}

/// Exponent `m` with `s^m = Σ u_i p_i`; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_power(r: *const PolystabStable) -> u32 {
    r.as_ref().map_or(0, |r| r.result.power)
}

/// Full JSON report.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_to_json(r: *const PolystabStable) -> *mut c_char {
    match r.as_ref() {
        Some(r) => to_c(Report::new("stable-poly", &r.problem).with_stable(&r.result).to_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polystab_stable_free(r: *mut PolystabStable) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
