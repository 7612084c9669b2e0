//! C ABI over the exact invariant pipeline.
//!
//! Polynomials are opaque handles created by [`np_polynomial_parse`] and released with
//! [`np_polynomial_free`]. Strings returned to the caller are owned by the caller and
//! must be released with [`np_string_free`]. Every call returns an [`NpStatus`]; on
//! failure, [`np_last_error_message`] describes the most recent error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use newtonpoly::invariants::critical_exponents;
use newtonpoly::report::AnalysisReport;
use newtonpoly::{parse_polynomial, BivariatePolynomial, Rational};
use num_traits::ToPrimitive;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    PipelineError = 4,
    /// A rational does not fit the 64-bit output slots.
    Overflow = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Which exact invariant [`np_invariant`] should return.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NpInvariant {
    Distance = 0,
    Height = 1,
    RHeight = 2,
    DecayRate = 3,
    RestrictionPcPrime = 4,
    RestrictionPc = 5,
    ContactIndex = 6,
}

/// Opaque polynomial handle.
pub struct NpPolynomial {
    expression: String,
    poly: BivariatePolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), (NpStatus, String)>) -> NpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NpStatus::Panic
        }
    }
}

fn null() -> (NpStatus, String) {
    (NpStatus::NullArgument, "null pointer argument".into())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Parses `text` (NUL-terminated UTF-8) into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_polynomial_parse(text: *const c_char, out: *mut *mut NpPolynomial) -> NpStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (NpStatus::InvalidUtf8, e.to_string()))?;
        let poly = parse_polynomial(s).map_err(|e| (NpStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(NpPolynomial {
            expression: s.to_string(),
            poly,
        }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from [`np_polynomial_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn np_polynomial_free(p: *mut NpPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the canonical form of the polynomial to `*out`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_polynomial_to_string(p: *const NpPolynomial, out: *mut *mut c_char) -> NpStatus {
    guard(|| {
        let (p, out) = (p.as_ref().ok_or_else(null)?, out.as_mut().ok_or_else(null)?);
        *out = into_c_string(p.poly.to_string());
        Ok(())
    })
}

/// Runs the full pipeline and writes the JSON report (without timestamp) to `*out`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_analyze_json(p: *const NpPolynomial, out: *mut *mut c_char) -> NpStatus {
    guard(|| {
        let (p, out) = (p.as_ref().ok_or_else(null)?, out.as_mut().ok_or_else(null)?);
        *out = ptr::null_mut();
        let rep = critical_exponents(&p.poly).map_err(|e| (NpStatus::PipelineError, e.to_string()))?;
        *out = into_c_string(AnalysisReport::new(&p.expression, &rep, None).to_json());
        Ok(())
    })
}

fn pick(rep: &newtonpoly::invariants::InvariantReport, which: NpInvariant) -> Option<&Rational> {
    Some(match which {
        NpInvariant::Distance => &rep.d,
        NpInvariant::Height => &rep.h,
        NpInvariant::RHeight => return rep.r_height.as_ref().map(|r| &r.value),
        NpInvariant::DecayRate => &rep.decay_rate,
        NpInvariant::RestrictionPcPrime => &rep.restriction_pc_prime,
        NpInvariant::RestrictionPc => &rep.restriction_pc,
        NpInvariant::ContactIndex => &rep.contact_index,
    })
}

/// Computes one exact invariant as `*num / *den`, and the Varchenko exponent in `*nu`
/// when `nu` is non-null. The r-height of an adapted phase does not exist and yields
/// `PipelineError`.
///
/// # Safety
/// `p` must be a live handle; `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn np_invariant(
    p: *const NpPolynomial,
    which: NpInvariant,
    num: *mut i64,
    den: *mut i64,
    nu: *mut u8,
) -> NpStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        if num.is_null() || den.is_null() {
            return Err(null());
        }
        let rep = critical_exponents(&p.poly).map_err(|e| (NpStatus::PipelineError, e.to_string()))?;
        let q = pick(&rep, which)
            .ok_or_else(|| (NpStatus::PipelineError, "the phase is adapted; it has no r-height".to_string()))?;
        let overflow = || (NpStatus::Overflow, format!("{q} does not fit in 64 bits"));
        *num = q.numer().to_i64().ok_or_else(overflow)?;
        *den = q.denom().to_i64().ok_or_else(overflow)?;
        if let Some(nu) = nu.as_mut() {
            *nu = rep.nu;
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn np_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn np_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn np_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
