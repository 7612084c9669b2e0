use std::ffi::{CStr, CString};
use std::ptr;

use newtonpoly_ffi::*;

fn parse(s: &str) -> *mut NpPolynomial {
    let c = CString::new(s).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { np_polynomial_parse(c.as_ptr(), &mut h) }, NpStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> Option<String> {
    let p = np_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn exact_invariants_of_the_model_example() {
    let h = parse("(x2-x1^2)^2+x1^5");
    let (mut n, mut d, mut nu) = (0i64, 0i64, 9u8);
    for (which, want) in [
        (NpInvariant::Height, (10, 7)),
        (NpInvariant::RHeight, (4, 3)),
        (NpInvariant::RestrictionPcPrime, (14, 3)),
        (NpInvariant::Distance, (4, 3)),
    ] {
        assert_eq!(unsafe { np_invariant(h, which, &mut n, &mut d, &mut nu) }, NpStatus::Ok);
        assert_eq!((n, d), want, "{which:?}");
        assert_eq!(nu, 0);
    }
    unsafe { np_polynomial_free(h) };
}

#[test]
fn json_report_round_trips() {
    let h = parse("x1^2*x2^2");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { np_analyze_json(h, &mut out) }, NpStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { np_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["heightData"]["h"], "2");
    assert_eq!(v["heightData"]["nu"], 1);
    assert!(v.get("generatedAt").is_none());

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { np_polynomial_to_string(h, &mut s) }, NpStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "x1^2*x2^2");
    unsafe { np_string_free(s) };
    unsafe { np_polynomial_free(h) };
}

#[test]
fn errors_set_status_and_message() {
    let c = CString::new("x1^").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { np_polynomial_parse(c.as_ptr(), &mut h) }, NpStatus::ParseError);
    assert!(h.is_null());
    assert!(last_error().unwrap().contains("position"));

    assert_eq!(unsafe { np_polynomial_parse(ptr::null(), &mut h) }, NpStatus::NullArgument);

    let bad = [0xffu8, 0];
    assert_eq!(unsafe { np_polynomial_parse(bad.as_ptr().cast(), &mut h) }, NpStatus::InvalidUtf8);

    // An adapted phase has no r-height.
    let h = parse("x1^2+x2^2");
    let (mut n, mut d) = (0i64, 0i64);
    let st = unsafe { np_invariant(h, NpInvariant::RHeight, &mut n, &mut d, ptr::null_mut()) };
    assert_eq!(st, NpStatus::PipelineError);
    assert_eq!(unsafe { np_invariant(h, NpInvariant::Height, &mut n, &mut d, ptr::null_mut()) }, NpStatus::Ok);
    assert_eq!((n, d), (1, 1));
    assert!(last_error().is_none(), "success clears the message");
    unsafe { np_polynomial_free(h) };

    // Not of finite type: the pipeline rejects it.
    let h = parse("x1");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { np_analyze_json(h, &mut out) }, NpStatus::PipelineError);
    assert!(out.is_null());
    unsafe { np_polynomial_free(h) };
    unsafe { np_polynomial_free(ptr::null_mut()) };
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/newtonpoly.h");
    for name in [
        "np_polynomial_parse",
        "np_polynomial_free",
        "np_polynomial_to_string",
        "np_analyze_json",
        "np_invariant",
        "np_string_free",
        "np_last_error_message",
        "np_version",
        "NP_STATUS_PARSE_ERROR",
        "typedef struct NpPolynomial NpPolynomial",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
    let v = unsafe { CStr::from_ptr(np_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
