use std::ffi::{CStr, CString};
use std::ptr;

use geobip_ffi::*;

const INTERVALS: &str = r#"{"kind":"intervals","objects":[
  {"left":"0","right":"1"},{"left":"2","right":"3"},{"left":"4","right":"5"}]}"#;

const TRIANGLE: &str = r#"{"kind":"intervals","objects":[
  {"left":"0","right":"2"},{"left":"1","right":"3"},{"left":"1/2","right":"5/2"}]}"#;

fn instance(json: &str) -> *mut GeobipInstance {
    let text = CString::new(json).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_instance_from_json(text.as_ptr(), &mut inst) },
        GeobipStatus::Ok
    );
    assert!(!inst.is_null());
    inst
}

fn last_error() -> String {
    let p = geobip_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { geobip_string_free(p) };
    s
}

#[test]
fn solve_and_read_back() {
    let inst = instance(INTERVALS);
    assert_eq!(unsafe { geobip_instance_len(inst) }, 3);
    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_solve(inst, ptr::null(), &mut sol) },
        GeobipStatus::Ok
    );
    let n = unsafe { geobip_solution_len(sol) };
    let idx = unsafe { std::slice::from_raw_parts(geobip_solution_indices(sol), n) };
    assert_eq!(idx, &[0, 1, 2]);
    let colors = unsafe { geobip_solution_colors(sol) };
    assert!(!colors.is_null());
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_solution_to_json(sol, &mut json) },
        GeobipStatus::Ok
    );
    let text = take_string(json);
    assert!(text.contains("\"size\": 3"));

    let doc = CString::new(text).unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_verify(inst, doc.as_ptr(), &mut report) },
        GeobipStatus::Ok
    );
    assert_eq!(take_string(report), "feasible size=3");
    unsafe {
        geobip_solution_free(sol);
        geobip_instance_free(inst);
    }
}

#[test]
fn verify_reports_triangle() {
    let inst = instance(TRIANGLE);
    let doc =
        CString::new(r#"{"problem":"mbs","algorithm":"x","size":3,"selected":[0,1,2]}"#).unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_verify(inst, doc.as_ptr(), &mut report) },
        GeobipStatus::Infeasible
    );
    assert_eq!(take_string(report), "infeasible witness=triangle 0 1 2");
    unsafe { geobip_instance_free(inst) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut inst = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    assert_eq!(
        unsafe { geobip_instance_from_json(bad.as_ptr(), &mut inst) },
        GeobipStatus::Parse
    );
    assert!(inst.is_null());
    assert!(last_error().contains("parse"));

    assert_eq!(
        unsafe { geobip_instance_from_json(ptr::null(), &mut inst) },
        GeobipStatus::NullArgument
    );
    assert_eq!(last_error(), "json is null");

    let inst = instance(INTERVALS);
    let mut sol = ptr::null_mut();
    let algo = CString::new("no-such-algorithm").unwrap();
    assert_eq!(
        unsafe { geobip_solve(inst, algo.as_ptr(), &mut sol) },
        GeobipStatus::Validation
    );
    assert!(sol.is_null());
    let algo = CString::new("logn").unwrap();
    assert_eq!(
        unsafe { geobip_solve(inst, algo.as_ptr(), &mut sol) },
        GeobipStatus::Validation
    );
    assert!(!last_error().is_empty());
    unsafe { geobip_instance_free(inst) };

    let inst = instance(INTERVALS);
    assert_eq!(
        unsafe { geobip_solve(inst, ptr::null(), &mut sol) },
        GeobipStatus::Ok
    );
    assert!(geobip_last_error_message().is_null());
    unsafe {
        geobip_solution_free(sol);
        geobip_instance_free(inst);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        assert_eq!(geobip_instance_len(ptr::null()), 0);
        assert_eq!(geobip_solution_len(ptr::null()), 0);
        assert!(geobip_solution_indices(ptr::null()).is_null());
        assert!(geobip_solution_colors(ptr::null()).is_null());
        geobip_instance_free(ptr::null_mut());
        geobip_solution_free(ptr::null_mut());
        geobip_string_free(ptr::null_mut());
    }
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { geobip_solution_to_json(ptr::null(), &mut out) },
        GeobipStatus::NullArgument
    );
}

#[test]
fn header_is_generated_and_compiles() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/geobip.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "GeobipInstance",
        "GeobipSolution",
        "GEOBIP_STATUS_OK",
        "geobip_instance_from_json",
        "geobip_solve",
        "geobip_solution_indices",
        "geobip_verify",
        "geobip_last_error_message",
        "geobip_string_free",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("cc not available; skipping compile check");
        return;
    };
    assert!(status.success());
}
