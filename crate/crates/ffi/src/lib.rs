//! C interface to `tensor-atoms`.
//!
//! Every fallible function returns a [`TaStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`ta_last_error`] until the next call on the same thread. Strings returned
//! to the caller are owned by the caller and released with [`ta_string_free`];
//! handles are released with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tensor_atoms::lr::LrDecompositionJson;
use tensor_atoms::measure::PatternSampler;
use tensor_atoms::{check_identity, dim_checked, format_rational, lr_measure, Caps, Error, Weight};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaStatus {
    Ok = 0,
    /// Malformed or inconsistent input.
    InvalidInput = 1,
    /// An enumeration cap would be exceeded.
    CapExceeded = 2,
    NullPointer = 3,
    IndexOutOfRange = 4,
    Internal = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Opaque highest weight.
pub struct TaWeight(Weight);

/// Opaque tensor-product decomposition with its exact measure.
pub struct TaLr {
    json: LrDecompositionJson,
    terms: Vec<(Weight, String, String)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TaStatus {
    match e {
        Error::CapExceeded { .. } | Error::TooLarge(_) => TaStatus::CapExceeded,
        Error::Internal(_) | Error::Io(_) | Error::NoConvergence(_) => TaStatus::Internal,
        _ => TaStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (TaStatus, String)>) -> TaStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TaStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside tensor-atoms");
            TaStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TaStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TaStatus, String) {
    (TaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn weight_ref<'a>(w: *const TaWeight, what: &str) -> Result<&'a Weight, (TaStatus, String)> {
    w.as_ref().map(|w| &w.0).ok_or_else(|| null(what))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ta_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer is valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"9,7,3"` (negative parts allowed).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_weight_parse(text: *const c_char, out: *mut *mut TaWeight) -> TaStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (TaStatus::InvalidInput, "text is not UTF-8".to_string()))?;
        let w: Weight = s.parse().map_err(lib)?;
        *out = Box::into_raw(Box::new(TaWeight(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ta_weight_free(w: *mut TaWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Rank `n`, or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_weight_rank(w: *const TaWeight) -> usize {
    w.as_ref().map_or(0, |w| w.0.rank())
}

/// `"9,7,3"`; null for a null handle. Free with [`ta_string_free`].
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_weight_to_string(w: *const TaWeight) -> *mut c_char {
    w.as_ref().map_or(ptr::null_mut(), |w| to_c(w.0.to_string()))
}

/// Dimension `d_λ` as a decimal string.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_dim(w: *const TaWeight, out: *mut *mut c_char) -> TaStatus {
    guard(|| {
        let w = weight_ref(w, "weight")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c(dim_checked(w).map_err(lib)?.to_string());
        Ok(())
    })
}

/// Decomposition of `λ ⊗ μ` with atoms `c·d_ν/(d_λ d_μ)`.
///
/// # Safety
/// `lambda`, `mu` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_lr_measure(
    lambda: *const TaWeight,
    mu: *const TaWeight,
    out: *mut *mut TaLr,
) -> TaStatus {
    guard(|| {
        let l = weight_ref(lambda, "lambda")?;
        let m = weight_ref(mu, "mu")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let dec = lr_measure(l, m).map_err(lib)?;
        let terms = dec
            .terms
            .iter()
            .map(|(nu, t)| (nu.clone(), t.multiplicity.to_string(), format_rational(&t.atom)))
            .collect();
        *out = Box::into_raw(Box::new(TaLr { json: LrDecompositionJson::from(&dec), terms }));
        Ok(())
    })
}

/// Number of distinct `ν`, or 0 for a null handle.
///
/// # Safety
/// `lr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_lr_len(lr: *const TaLr) -> usize {
    lr.as_ref().map_or(0, |l| l.terms.len())
}

/// Term `index` in increasing lexicographic order of `ν`. Each out-pointer
/// may be null to skip that field; strings are `"c"` and `"num/den"`.
///
/// # Safety
/// `lr` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_lr_term(
    lr: *const TaLr,
    index: usize,
    nu: *mut *mut TaWeight,
    multiplicity: *mut *mut c_char,
    atom: *mut *mut c_char,
) -> TaStatus {
    guard(|| {
        let lr = lr.as_ref().ok_or_else(|| null("lr"))?;
        let (w, c, a) = lr.terms.get(index).ok_or_else(|| {
            (TaStatus::IndexOutOfRange, format!("index {index} >= {}", lr.terms.len()))
        })?;
        if !nu.is_null() {
            *nu = Box::into_raw(Box::new(TaWeight(w.clone())));
        }
        if !multiplicity.is_null() {
            *multiplicity = to_c(c.clone());
        }
        if !atom.is_null() {
            *atom = to_c(a.clone());
        }
        Ok(())
    })
}

/// `{"lambda":[..],"mu":[..],"terms":[{"nu":[..],"c":"..","atom":"num/den"}]}`.
///
/// # Safety
/// `lr` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_lr_to_json(lr: *const TaLr, out: *mut *mut c_char) -> TaStatus {
    guard(|| {
        let lr = lr.as_ref().ok_or_else(|| null("lr"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(&lr.json).map_err(|e| (TaStatus::Internal, e.to_string()))?;
        *out = to_c(s);
        Ok(())
    })
}

/// # Safety
/// `lr` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ta_lr_free(lr: *mut TaLr) {
    if !lr.is_null() {
        drop(Box::from_raw(lr));
    }
}

/// Whether the max-convolution law equals the law of `ν_1` exactly.
///
/// # Safety
/// `lambda`, `mu` must be live handles; `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_check_identity(
    lambda: *const TaWeight,
    mu: *const TaWeight,
    equal: *mut bool,
) -> TaStatus {
    guard(|| {
        let l = weight_ref(lambda, "lambda")?;
        let m = weight_ref(mu, "mu")?;
        if equal.is_null() {
            return Err(null("equal"));
        }
        *equal = check_identity(l, m).map_err(lib)?;
        Ok(())
    })
}

/// `count` uniform patterns of shape `λ` as a JSON array of row arrays.
/// `cap` bounds the candidate rows per level; 0 selects the default.
///
/// # Safety
/// `lambda` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ta_sample_patterns_json(
    lambda: *const TaWeight,
    count: usize,
    seed: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> TaStatus {
    guard(|| {
        let l = weight_ref(lambda, "lambda")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cap = if cap == 0 { Caps::default().sampler_rows } else { cap };
        let patterns = PatternSampler::new(l, cap)
            .and_then(|s| s.sample_many(count, seed))
            .map_err(lib)?;
        let s = serde_json::to_string(&patterns).map_err(|e| (TaStatus::Internal, e.to_string()))?;
        *out = to_c(s);
        Ok(())
    })
}
