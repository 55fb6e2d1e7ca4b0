use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use supercircle::json::{point_to_json, representation_to_json};
use supercircle::liealg::Representation;
use supercircle::reps::{make_adjoint_su11, make_pi_m, scramble, Sign};
use supercircle::scalars::ScalarMode;
use supercircle::supergroup::{GenericUnitaryRing, GroupKind};
use supercircle_ffi::*;

fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { sc_string_free(s) };
    v
}

fn last_error() -> String {
    let p = sc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cstring(v: &Value) -> CString {
    CString::new(v.to_string()).unwrap()
}

#[test]
fn decompose_through_handles() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let parts = [make_pi_m(3, Sign::Minus, ScalarMode::Exact).unwrap(), make_adjoint_su11()];
    let rep = scramble(&Representation::direct_sum(&parts).unwrap(), &mut rng, true).unwrap();
    let text = cstring(&representation_to_json(&rep));

    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_from_json(text.as_ptr(), 0.0, &mut handle) }, ScStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_validate(handle, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out)["valid"], true);
    assert_eq!(unsafe { sc_rep_decompose(handle, &mut out) }, ScStatus::Ok);
    let report = take(out);
    assert_eq!(report["su11"]["pi"][0]["m"], 3);
    assert_eq!(report["su11"]["pi"][0]["sign"], "-");
    unsafe { sc_rep_free(handle) };
}

#[test]
fn invalid_representation_is_math_failure() {
    let mut v = representation_to_json(&make_pi_m(2, Sign::Plus, ScalarMode::Exact).unwrap());
    v["U"][0][1] = serde_json::json!("5");
    let text = cstring(&v);
    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_from_json(text.as_ptr(), 0.0, &mut handle) }, ScStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_validate(handle, &mut out) }, ScStatus::MathFailure);
    assert_eq!(take(out)["valid"], false);
    assert!(last_error().contains("ρ(U)²"));
    unsafe { sc_rep_free(handle) };
}

#[test]
fn parse_errors_and_null_pointers() {
    let bad = CString::new("{not json").unwrap();
    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_from_json(bad.as_ptr(), 0.0, &mut handle) }, ScStatus::InvalidInput);
    assert!(last_error().contains("invalid JSON"));
    assert!(handle.is_null());

    let unknown = CString::new(r#"{"algebra": "gl22", "basis": []}"#).unwrap();
    assert_eq!(unsafe { sc_rep_from_json(unknown.as_ptr(), 0.0, &mut handle) }, ScStatus::InvalidInput);

    assert_eq!(unsafe { sc_rep_from_json(ptr::null(), 0.0, &mut handle) }, ScStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_rep_validate(ptr::null(), &mut out) }, ScStatus::NullPointer);
    assert_eq!(unsafe { sc_verify(0, 10, -1.0, &mut out) }, ScStatus::InvalidInput);
    unsafe {
        sc_rep_free(ptr::null_mut());
        sc_string_free(ptr::null_mut());
    }
}

#[test]
fn point_membership_factorization_and_involution() {
    let ring = GenericUnitaryRing::new(GroupKind::Su11, 1).unwrap();
    let text = cstring(&point_to_json(&ring.points[0]));
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sc_point_from_json(text.as_ptr(), 0.0, &mut p) }, ScStatus::Ok);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_point_check(p, ScGroup::Su11, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out)["member"], true);
    assert_eq!(unsafe { sc_point_check(p, ScGroup::Su11Minus, &mut out) }, ScStatus::MathFailure);
    assert!(!take(out)["violations"].as_array().unwrap().is_empty());

    assert_eq!(unsafe { sc_point_factorize(p, ScGroup::Su11, &mut out) }, ScStatus::Ok);
    let triple = take(out);
    assert!(triple.get("t").is_some() && triple.get("theta").is_some() && triple.get("eta").is_some());
    assert_eq!(unsafe { sc_point_factorize(p, ScGroup::Sl11, &mut out) }, ScStatus::InvalidInput);
    take(out);

    let mut q = ptr::null_mut();
    assert_eq!(unsafe { sc_point_involute(p, &mut q) }, ScStatus::Ok);
    assert_eq!(unsafe { sc_point_to_json(q, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out), point_to_json(&ring.points[0]));
    unsafe {
        sc_point_free(q);
        sc_point_free(p);
    }
}

#[test]
fn expansion_reports_residual() {
    let text =
        CString::new(r#"{"group": "su11", "terms": [{"m": 0, "mono": ["theta", "eta"], "coef": "1"}]}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sc_section_from_json(text.as_ptr(), 0.0, &mut s) }, ScStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_section_expand(s, &mut out) }, ScStatus::Ok);
    let v = take(out);
    assert_eq!(v["note"], "outside listed span");
    unsafe { sc_section_free(s) };
}

#[test]
fn coefficients_and_degenerate_weight() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_pw_coeffs(2, b'+' as c_char, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out)["entries"].as_array().unwrap().len(), 4);
    assert_eq!(unsafe { sc_pw_coeffs(0, 0, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out)["entries"].as_array().unwrap().len(), 9);
    assert_eq!(unsafe { sc_pw_coeffs(0, b'-' as c_char, &mut out) }, ScStatus::MathFailure);
    assert!(last_error().contains("degenerate"));
    assert_eq!(unsafe { sc_pw_coeffs(1, b'x' as c_char, &mut out) }, ScStatus::InvalidInput);
}

#[test]
fn verify_small_suite() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sc_verify(1, 2, 0.0, &mut out) }, ScStatus::Ok);
    assert_eq!(take(out)["summary"]["fail"], 0);
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/supercircle.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["sc_rep_from_json", "sc_point_factorize", "sc_last_error", "SC_STATUS_MATH_FAILURE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    match Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() {
        Ok(s) => assert!(s.success()),
        Err(_) => eprintln!("no C compiler; skipped syntax check"),
    }
}
