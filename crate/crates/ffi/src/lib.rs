//! C ABI over the `aurellion` crate.
//!
//! Terms and certificates live behind opaque handles. Every fallible function
//! returns an [`AurStatus`]; on failure [`aur_last_error`] describes the
//! problem. Strings returned through `char **` out-parameters are owned by
//! the caller and released with [`aur_string_free`].
//!
//! A budget argument of `0` selects the library default.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aurellion::dominance::{check_certificate_with, Relation};
use aurellion::engine::{Budget, EvalOutcome, DEFAULT_MAX_BITS, DEFAULT_MAX_STEPS};
use aurellion::{compare, lemma1_certificate, parse_term, print_term, Certificate, Nat, Term};

/// A parsed, validated term.
pub struct AurTerm(Term);

/// A certificate in `cert_v1` form.
pub struct AurCertificate(Certificate);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AurStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidTerm = 4,
    InvalidArgument = 5,
    /// Evaluation ran out of budget; the out string holds the residual term.
    Overflow = 6,
    /// Evaluation reached a term no rule applies to; the out string holds it.
    Stuck = 7,
    /// Comparison could not be decided.
    Unknown = 8,
    InvalidCertificate = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AurRelation {
    Less = -1,
    Equal = 0,
    Greater = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior NUL"));
}

type Fallible<T> = Result<T, (AurStatus, String)>;

/// Runs `f`, records any failure and converts panics into `AurStatus::Panic`.
fn guard(f: impl FnOnce() -> Fallible<AurStatus>) -> AurStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AurStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Fallible<&'a str> {
    if s.is_null() {
        return Err((AurStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (AurStatus::InvalidUtf8, e.to_string()))
}

unsafe fn term_ref<'a>(t: *const AurTerm) -> Fallible<&'a Term> {
    t.as_ref()
        .map(|t| &t.0)
        .ok_or((AurStatus::NullPointer, "null term handle".into()))
}

fn check_out<T>(out: *mut T) -> Fallible<()> {
    if out.is_null() {
        Err((AurStatus::NullPointer, "null out-parameter".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior NUL")
        .into_raw()
}

fn budget(max_steps: u64, max_bits: u64) -> Budget {
    let pick = |v: u64, d: u64| if v == 0 { d } else { v };
    Budget::new(
        pick(max_steps, DEFAULT_MAX_STEPS),
        pick(max_bits, DEFAULT_MAX_BITS),
    )
    .expect("both fields are positive")
}

fn validated(t: Term) -> Fallible<*mut AurTerm> {
    let report = t.validate();
    if !report.is_valid() {
        return Err((AurStatus::InvalidTerm, report.to_string()));
    }
    Ok(Box::into_raw(Box::new(AurTerm(t))))
}

/// Parses the ASCII surface syntax into `*out`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aur_term_parse(src: *const c_char, out: *mut *mut AurTerm) -> AurStatus {
    guard(|| {
        check_out(out)?;
        let src = read_str(src)?;
        let t = parse_term(src.trim()).map_err(|e| (AurStatus::ParseError, e.to_string()))?;
        *out = validated(t)?;
        Ok(AurStatus::Ok)
    })
}

/// Reads a term from its JSON AST into `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aur_term_from_json(
    json: *const c_char,
    out: *mut *mut AurTerm,
) -> AurStatus {
    guard(|| {
        check_out(out)?;
        let t: Term = serde_json::from_str(read_str(json)?)
            .map_err(|e| (AurStatus::ParseError, e.to_string()))?;
        *out = validated(t)?;
        Ok(AurStatus::Ok)
    })
}

/// Canonical text of a term, or NULL for a NULL handle.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aur_term_print(t: *const AurTerm) -> *mut c_char {
    match t.as_ref() {
        Some(t) => to_c_string(print_term(&t.0)),
        None => ptr::null_mut(),
    }
}

/// JSON AST of a term, or NULL for a NULL handle.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aur_term_to_json(t: *const AurTerm) -> *mut c_char {
    match t.as_ref() {
        Some(t) => to_c_string(serde_json::to_string(&t.0).expect("terms serialize")),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `t` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aur_term_free(t: *mut AurTerm) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Evaluates `t`. On `Ok` `*out` is the decimal value; on `Overflow` or
/// `Stuck` it is the residual term.
///
/// # Safety
/// `t` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aur_eval(
    t: *const AurTerm,
    max_steps: u64,
    max_bits: u64,
    out: *mut *mut c_char,
) -> AurStatus {
    guard(|| {
        check_out(out)?;
        let t = term_ref(t)?;
        let (status, text) = match aurellion::eval(t, &budget(max_steps, max_bits)) {
            EvalOutcome::Exact(n) => (AurStatus::Ok, n.to_string()),
            EvalOutcome::Overflow {
                residual, reason, ..
            } => {
                set_error(format!("overflow: {reason}"));
                (AurStatus::Overflow, print_term(&residual))
            }
            EvalOutcome::Stuck {
                residual, reason, ..
            } => {
                set_error(format!("stuck: {reason}"));
                (AurStatus::Stuck, print_term(&residual))
            }
        };
        *out = to_c_string(text);
        Ok(status)
    })
}

/// Decides the order of `lhs` and `rhs`. Returns `Ok` with a decided
/// relation, or `Unknown`. When `cert_out` is non-NULL and the relation is
/// decided, it receives a certificate handle.
///
/// # Safety
/// `lhs` and `rhs` must be live handles, `rel_out` writable, and `cert_out`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn aur_compare(
    lhs: *const AurTerm,
    rhs: *const AurTerm,
    max_steps: u64,
    max_bits: u64,
    rel_out: *mut AurRelation,
    cert_out: *mut *mut AurCertificate,
) -> AurStatus {
    guard(|| {
        check_out(rel_out)?;
        let (l, r) = (term_ref(lhs)?, term_ref(rhs)?);
        let v = compare(l, r, &budget(max_steps, max_bits));
        *rel_out = match v.relation {
            Relation::Less => AurRelation::Less,
            Relation::Equal => AurRelation::Equal,
            Relation::Greater => AurRelation::Greater,
            Relation::Unknown => AurRelation::Unknown,
        };
        if !cert_out.is_null() {
            *cert_out = v.certificate.map_or(ptr::null_mut(), |c| {
                Box::into_raw(Box::new(AurCertificate(c)))
            });
        }
        if v.relation == Relation::Unknown {
            set_error("no certificate found within the budget");
            Ok(AurStatus::Unknown)
        } else {
            Ok(AurStatus::Ok)
        }
    })
}

/// The certificate of `A[n] >= 10^[n+2]10`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aur_cert_lemma1(n: u64, out: *mut *mut AurCertificate) -> AurStatus {
    guard(|| {
        check_out(out)?;
        let c = lemma1_certificate(&Nat::from(n))
            .map_err(|e| (AurStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(AurCertificate(c)));
        Ok(AurStatus::Ok)
    })
}

/// Reads a `cert_v1` document into `*out` without checking it.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aur_cert_from_json(
    json: *const c_char,
    out: *mut *mut AurCertificate,
) -> AurStatus {
    guard(|| {
        check_out(out)?;
        let c = Certificate::from_json(read_str(json)?)
            .map_err(|e| (AurStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(AurCertificate(c)));
        Ok(AurStatus::Ok)
    })
}

/// The `cert_v1` JSON of a certificate, or NULL for a NULL handle.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aur_cert_to_json(c: *const AurCertificate) -> *mut c_char {
    match c.as_ref() {
        Some(c) => to_c_string(c.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// Validates a certificate: `Ok` or `InvalidCertificate`.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn aur_cert_check(
    c: *const AurCertificate,
    max_steps: u64,
    max_bits: u64,
) -> AurStatus {
    guard(|| {
        let c = c.as_ref().ok_or((
            AurStatus::NullPointer,
            "null certificate handle".to_string(),
        ))?;
        check_certificate_with(&c.0, &budget(max_steps, max_bits))
            .map_err(|e| (AurStatus::InvalidCertificate, e.to_string()))?;
        Ok(AurStatus::Ok)
    })
}

/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aur_cert_free(c: *mut AurCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The message of the most recent failure on this thread; empty if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aur_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aur_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn aur_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
