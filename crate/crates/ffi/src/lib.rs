//! C ABI over the `nashcert` toolkit.
//!
//! Parsed inputs and certificates are opaque heap handles released with the
//! matching `*_free` function. Every fallible call returns an [`NcStatus`];
//! on failure a description is available from [`nc_last_error`] until the
//! next call on the same thread. Strings handed out by the library are
//! released with [`nc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nashcert::cax2::{certify_nash, CertifyOptions, NashCertificate, Sign, Verdict};
use nashcert::cli::{parse_cone, CliError};
use nashcert::dsl::{parse_singularity, print_singularity, DslError, SingularityFile};
use nashcert::num::parse_q;
use nashcert::report::{CommandResult, ConeEcho, InputEcho, Report, ToricNash};

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    SemanticError = 4,
    Panic = 5,
}

/// Outcome of a certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcVerdict {
    Verified = 0,
    Incomplete = 1,
    Failed = 2,
}

/// Branch of the Case-2 change of coordinates.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcSign {
    Default = 0,
    Plus = 1,
    Minus = 2,
}

/// A parsed `.sing` input.
pub struct NcSingularity(SingularityFile);

/// A computed cAx/2 certificate.
pub struct NcCertificate(NashCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: NcStatus, msg: impl Into<String>) -> NcStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into [`NcStatus::Panic`].
fn guarded(f: impl FnOnce() -> NcStatus) -> NcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(NcStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, NcStatus> {
    if p.is_null() {
        return Err(fail(NcStatus::NullPointer, "null string argument"));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| fail(NcStatus::InvalidUtf8, e.to_string()))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> NcStatus {
    if out.is_null() {
        return fail(NcStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            NcStatus::Ok
        }
        Err(e) => fail(NcStatus::InvalidUtf8, e.to_string()),
    }
}

fn dsl_status(e: &DslError) -> NcStatus {
    match e {
        DslError::Syntax { .. } => NcStatus::ParseError,
        DslError::Semantic { .. } => NcStatus::SemanticError,
    }
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Description of the last failure on this thread, or null. Valid until the
/// next library call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn nc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses `.sing` text into a new handle stored in `*out`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_singularity_parse(
    text: *const c_char,
    out: *mut *mut NcSingularity,
) -> NcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NcStatus::NullPointer, "null output pointer");
        }
        let text = match unsafe { read_str(text) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_singularity(text) {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(NcSingularity(f))) };
                NcStatus::Ok
            }
            Err(e) => fail(dsl_status(&e), e.to_string()),
        }
    })
}

/// Canonical `.sing` text of a parsed input.
///
/// # Safety
/// `sing` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_singularity_print(
    sing: *const NcSingularity,
    out: *mut *mut c_char,
) -> NcStatus {
    guarded(|| {
        let Some(sing) = (unsafe { sing.as_ref() }) else {
            return fail(NcStatus::NullPointer, "null singularity handle");
        };
        unsafe { write_string(out, print_singularity(&sing.0)) }
    })
}

/// Releases a parsed input. Null is ignored.
///
/// # Safety
/// `sing` is null or a live handle from [`nc_singularity_parse`].
#[no_mangle]
pub unsafe extern "C" fn nc_singularity_free(sing: *mut NcSingularity) {
    if !sing.is_null() {
        drop(unsafe { Box::from_raw(sing) });
    }
}

/// Runs the cAx/2 certificate pipeline. The file's weight, if any, replaces
/// the selected weight.
///
/// # Safety
/// `sing` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_certify(
    sing: *const NcSingularity,
    sign: NcSign,
    out: *mut *mut NcCertificate,
) -> NcStatus {
    guarded(|| {
        let Some(sing) = (unsafe { sing.as_ref() }) else {
            return fail(NcStatus::NullPointer, "null singularity handle");
        };
        if out.is_null() {
            return fail(NcStatus::NullPointer, "null output pointer");
        }
        let opts = CertifyOptions {
            sign: match sign {
                NcSign::Default => None,
                NcSign::Plus => Some(Sign::Plus),
                NcSign::Minus => Some(Sign::Minus),
            },
            weight: sing.0.weight.clone(),
        };
        match certify_nash(&sing.0.hq, &opts) {
            Ok(c) => {
                unsafe { *out = Box::into_raw(Box::new(NcCertificate(c))) };
                NcStatus::Ok
            }
            Err(e) => fail(NcStatus::SemanticError, e.to_string()),
        }
    })
}

/// Verdict of a certificate.
///
/// # Safety
/// `cert` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_certificate_verdict(
    cert: *const NcCertificate,
    out: *mut NcVerdict,
) -> NcStatus {
    guarded(|| {
        let (Some(cert), false) = (unsafe { cert.as_ref() }, out.is_null()) else {
            return fail(NcStatus::NullPointer, "null argument");
        };
        let v = match cert.0.verdict {
            Verdict::Verified => NcVerdict::Verified,
            Verdict::Incomplete => NcVerdict::Incomplete,
            Verdict::Failed => NcVerdict::Failed,
        };
        unsafe { *out = v };
        NcStatus::Ok
    })
}

/// Discrepancy of the exceptional divisor as `"p/q"`.
///
/// # Safety
/// `cert` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_certificate_discrepancy(
    cert: *const NcCertificate,
    out: *mut *mut c_char,
) -> NcStatus {
    guarded(|| {
        let Some(cert) = (unsafe { cert.as_ref() }) else {
            return fail(NcStatus::NullPointer, "null certificate handle");
        };
        unsafe { write_string(out, nashcert::num::fmt_q(&cert.0.discrepancy)) }
    })
}

/// The certificate as a JSON report.
///
/// # Safety
/// `cert` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_certificate_json(
    cert: *const NcCertificate,
    out: *mut *mut c_char,
) -> NcStatus {
    guarded(|| {
        let Some(cert) = (unsafe { cert.as_ref() }) else {
            return fail(NcStatus::NullPointer, "null certificate handle");
        };
        let report = Report::new(
            "cax2 certify",
            InputEcho::default(),
            CommandResult::Certificate((&cert.0).into()),
        );
        unsafe { write_string(out, report.to_json()) }
    })
}

/// Releases a certificate. Null is ignored.
///
/// # Safety
/// `cert` is null or a live handle from [`nc_certify`].
#[no_mangle]
pub unsafe extern "C" fn nc_certificate_free(cert: *mut NcCertificate) {
    if !cert.is_null() {
        drop(unsafe { Box::from_raw(cert) });
    }
}

/// Nash valuations of a cone as a JSON report. `lattice` is `Z^n` or
/// `1/m(a,...)`, `cone` is `std` or `(..);(..)`, `bound` a rational level
/// bound and `box_bound` the initial box size.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nc_toric_nash_json(
    lattice: *const c_char,
    cone: *const c_char,
    bound: *const c_char,
    box_bound: u64,
    out: *mut *mut c_char,
) -> NcStatus {
    guarded(|| {
        let args = unsafe { (read_str(lattice), read_str(cone), read_str(bound)) };
        let (lattice, cone, bound) = match args {
            (Ok(l), Ok(c), Ok(b)) => (l, c, b),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let cone = match parse_cone(lattice, cone) {
            Ok(c) => c,
            Err(e @ CliError::Parse(_)) => return fail(NcStatus::ParseError, e.to_string()),
            Err(e) => return fail(NcStatus::SemanticError, e.to_string()),
        };
        let bound = match parse_q(bound) {
            Ok(b) => b,
            Err(e) => return fail(NcStatus::ParseError, e.to_string()),
        };
        let nash = match cone.nash_valuations(&bound, box_bound) {
            Ok(n) => n,
            Err(e) => return fail(NcStatus::SemanticError, e.to_string()),
        };
        let result = ToricNash {
            cone: ConeEcho::of(&cone),
            nash,
        };
        let report = Report::new(
            "toric nash",
            InputEcho::default(),
            CommandResult::ToricNash(result),
        );
        unsafe { write_string(out, report.to_json()) }
    })
}
