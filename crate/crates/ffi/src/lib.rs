//! C ABI over the supercircle library.
//!
//! Objects cross the boundary as opaque handles built from JSON documents
//! in the same formats the command line tool reads. Results come back as
//! JSON strings owned by the caller and released with [`sc_string_free`].
//! Every entry point returns an [`ScStatus`]; on failure the message is
//! available from [`sc_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::Value;
use supercircle::cli::{
    cmd_point, cmd_pw_coeffs, cmd_pw_expand, cmd_rep, cmd_verify, CoeffTarget, Exit, Outcome, PointAction, RepAction,
    RunConfig,
};
use supercircle::harmonic::Section;
use supercircle::json::{
    point_from_json, point_to_json, representation_from_json, representation_to_json, section_from_json,
    section_to_json,
};
use supercircle::liealg::Representation;
use supercircle::reps::Sign;
use supercircle::scalars::ScalarMode;
use supercircle::supergroup::{GL11Point, GroupKind};
use supercircle::Error;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// The input was well formed but a mathematical check failed.
    MathFailure = 1,
    /// Malformed JSON, unknown tag or unsupported request.
    InvalidInput = 2,
    NullPointer = 3,
    /// A Rust panic was caught at the boundary.
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScGroup {
    Sl11 = 0,
    Su11 = 1,
    Su11Minus = 2,
}

impl From<ScGroup> for GroupKind {
    fn from(g: ScGroup) -> Self {
        match g {
            ScGroup::Sl11 => GroupKind::Sl11,
            ScGroup::Su11 => GroupKind::Su11,
            ScGroup::Su11Minus => GroupKind::Su11Minus,
        }
    }
}

/// Opaque representation handle.
pub struct ScRepresentation(Representation);

/// Opaque handle to a (1|1) supermatrix point.
pub struct ScPoint(GL11Point);

/// Opaque handle to a section of the structure sheaf.
pub struct ScSection(Section);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(exit: Exit) -> ScStatus {
    match exit {
        Exit::Success => ScStatus::Ok,
        Exit::MathFailure => ScStatus::MathFailure,
        Exit::InputFailure => ScStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> ScStatus {
    set_last_error(e.to_string());
    status_of(Exit::of_error(e))
}

fn guard(f: impl FnOnce() -> ScStatus) -> ScStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {msg}"));
            ScStatus::Internal
        }
    }
}

fn mode(tol: f64) -> Result<ScalarMode, ScStatus> {
    if tol == 0.0 {
        Ok(ScalarMode::Exact)
    } else if tol > 0.0 && tol.is_finite() {
        Ok(ScalarMode::Float { tol })
    } else {
        set_last_error("tolerance must be 0 (exact) or a positive number");
        Err(ScStatus::InvalidInput)
    }
}

unsafe fn read_json(s: *const c_char) -> Result<Value, ScStatus> {
    if s.is_null() {
        set_last_error("null string argument");
        return Err(ScStatus::NullPointer);
    }
    let text = CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error("string argument is not UTF-8");
        ScStatus::InvalidInput
    })?;
    serde_json::from_str(text).map_err(|e| {
        set_last_error(format!("invalid JSON: {e}"));
        ScStatus::InvalidInput
    })
}

unsafe fn write_string(out: *mut *mut c_char, v: &Value) -> ScStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return ScStatus::NullPointer;
    }
    let text = serde_json::to_string(v).expect("JSON values serialize");
    *out = CString::new(text).expect("JSON has no interior NUL").into_raw();
    ScStatus::Ok
}

/// Writes the report whatever the exit, so callers can read the diagnostics.
unsafe fn emit(outcome: Outcome, out_json: *mut *mut c_char) -> ScStatus {
    let status = write_string(out_json, &outcome.output);
    if status != ScStatus::Ok {
        return status;
    }
    if outcome.exit != Exit::Success {
        let msg = match outcome.output.get("error").and_then(Value::as_str) {
            Some(e) => e.to_string(),
            None => outcome.output.to_string(),
        };
        set_last_error(msg);
    }
    status_of(outcome.exit)
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> ScStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return ScStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    ScStatus::Ok
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, ScStatus> {
    p.as_ref().ok_or_else(|| {
        set_last_error("null handle");
        ScStatus::NullPointer
    })
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(s) => return s,
        }
    };
}

/// Returns the message of the last failed call on this thread, or null.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the self-check suite and writes the report. Returns
/// `MathFailure` when a check fails; the report is written either way.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(seed: u64, weights: i64, tol: f64, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let mode = tri!(mode(tol));
        if weights < 1 {
            set_last_error("weights must be at least 1");
            return ScStatus::InvalidInput;
        }
        emit(cmd_verify(&RunConfig { mode, weights, seed, ..RunConfig::default() }), out_json)
    })
}

/// Parses a representation. `tol` is 0 for exact arithmetic.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_from_json(json: *const c_char, tol: f64, out: *mut *mut ScRepresentation) -> ScStatus {
    guard(|| {
        let mode = tri!(mode(tol));
        let v = tri!(read_json(json));
        match representation_from_json(&v, mode) {
            Ok(r) => write_handle(out, ScRepresentation(r)),
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `rep` must be null or a handle from [`sc_rep_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_free(rep: *mut ScRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_to_json(rep: *const ScRepresentation, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let r = tri!(borrow(rep));
        write_string(out_json, &representation_to_json(&r.0))
    })
}

unsafe fn rep_action(rep: *const ScRepresentation, action: RepAction, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let r = tri!(borrow(rep));
        let input = representation_to_json(&r.0);
        let outcome = cmd_rep(action, &input, &RunConfig::default());
        emit(outcome, out_json)
    })
}

/// Checks the defining relations; the report lists the violations.
///
/// # Safety
/// `rep` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_validate(rep: *const ScRepresentation, out_json: *mut *mut c_char) -> ScStatus {
    rep_action(rep, RepAction::Validate, out_json)
}

/// Decomposes into irreducibles and reports the change of basis.
///
/// # Safety
/// `rep` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_decompose(rep: *const ScRepresentation, out_json: *mut *mut c_char) -> ScStatus {
    rep_action(rep, RepAction::Decompose, out_json)
}

/// Parses a point `{a, beta, gamma, d}` over a shared generator set.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_point_from_json(json: *const c_char, tol: f64, out: *mut *mut ScPoint) -> ScStatus {
    guard(|| {
        let mode = tri!(mode(tol));
        let v = tri!(read_json(json));
        match point_from_json(&v, mode) {
            Ok(p) => write_handle(out, ScPoint(p)),
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `point` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_point_free(point: *mut ScPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

/// # Safety
/// `point` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_point_to_json(point: *const ScPoint, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let p = tri!(borrow(point));
        write_string(out_json, &point_to_json(&p.0))
    })
}

unsafe fn point_action(
    point: *const ScPoint,
    group: ScGroup,
    action: PointAction,
    out_json: *mut *mut c_char,
) -> ScStatus {
    guard(|| {
        let p = tri!(borrow(point));
        let cfg = RunConfig { group: group.into(), ..RunConfig::default() };
        let outcome = cmd_point(action, &point_to_json(&p.0), &cfg);
        emit(outcome, out_json)
    })
}

/// Membership in `group`. Returns `MathFailure` for non-members; the report
/// names the violated relations.
///
/// # Safety
/// `point` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_point_check(point: *const ScPoint, group: ScGroup, out_json: *mut *mut c_char) -> ScStatus {
    point_action(point, group, PointAction::Check, out_json)
}

/// Writes the factorization `{t, theta, eta}` of a unitary point.
///
/// # Safety
/// `point` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_point_factorize(
    point: *const ScPoint,
    group: ScGroup,
    out_json: *mut *mut c_char,
) -> ScStatus {
    point_action(point, group, PointAction::Factorize, out_json)
}

/// Applies the real-structure involution and returns a new handle.
///
/// # Safety
/// `point` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_point_involute(point: *const ScPoint, out: *mut *mut ScPoint) -> ScStatus {
    guard(|| {
        let p = tri!(borrow(point));
        match supercircle::supergroup::sigma_su(&p.0) {
            Ok(q) => write_handle(out, ScPoint(q)),
            Err(e) => fail(&e),
        }
    })
}

/// Parses a section `{group, terms}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_section_from_json(json: *const c_char, tol: f64, out: *mut *mut ScSection) -> ScStatus {
    guard(|| {
        let mode = tri!(mode(tol));
        let v = tri!(read_json(json));
        match section_from_json(&v, mode) {
            Ok(s) => write_handle(out, ScSection(s)),
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `section` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_section_free(section: *mut ScSection) {
    if !section.is_null() {
        drop(Box::from_raw(section));
    }
}

/// Expands a section in matrix coefficients. A nonzero residual is
/// reported in the JSON and is not an error.
///
/// # Safety
/// `section` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_section_expand(section: *const ScSection, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let s = tri!(borrow(section));
        let outcome = cmd_pw_expand(&section_to_json(&s.0), &RunConfig::default());
        emit(outcome, out_json)
    })
}

/// Matrix coefficients of `pi_m^sign` (`sign` is `'+'` or `'-'`), of `V_m`
/// when `sign` is 0, or of the adjoint when `m` is 0 and `sign` is 0.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_pw_coeffs(m: i64, sign: c_char, out_json: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let target = match (m, sign as u8) {
            (0, 0) => CoeffTarget::Adjoint,
            (m, 0) => CoeffTarget::Weight { m, sign: None },
            (m, b'+') => CoeffTarget::Weight { m, sign: Some(Sign::Plus) },
            (m, b'-') => CoeffTarget::Weight { m, sign: Some(Sign::Minus) },
            _ => {
                set_last_error("sign must be '+', '-' or 0");
                return ScStatus::InvalidInput;
            }
        };
        let outcome = cmd_pw_coeffs(&target, &RunConfig::default());
        if outcome.exit != Exit::Success {
            set_last_error(outcome.output["error"].as_str().unwrap_or("failure"));
            return status_of(outcome.exit);
        }
        write_string(out_json, &outcome.output)
    })
}
