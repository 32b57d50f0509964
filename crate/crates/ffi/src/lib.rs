//! C ABI for llab.
//!
//! Every call returns an [`LlabStatus`]. On failure the message is available
//! from [`llab_last_error`] until the next failing call on the same thread.
//! Handles are opaque and released with their `_free` function; strings
//! returned through out-parameters are released with [`llab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use llab::ideal::{bpn_ideal, coletterplace_ideal, letterplace_ideal};
use llab::io::{parse_poset, to_json, IdealSpec, ResolutionDto};
use llab::linalg::Field;
use llab::poset::{HomSpace, Poset, PosetIdeal};
use llab::resolution::{coletterplace_resolution, verify_resolves, MultigradedComplex};
use llab::sphere::certify;
use llab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    CertificationFailed = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LlabIdealKind {
    Coletterplace = 0,
    Letterplace = 1,
    Dual = 2,
    Bpn = 3,
}

pub struct LlabPoset {
    inner: Poset,
}

pub struct LlabPosetIdeal {
    inner: PosetIdeal,
}

pub struct LlabResolution {
    inner: MultigradedComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LlabStatus {
    match e {
        Error::Parse { .. } => LlabStatus::ParseError,
        Error::CertificationFailed { .. } => LlabStatus::CertificationFailed,
        _ => LlabStatus::InvalidInput,
    }
}

fn fail(e: Error) -> LlabStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn guard(f: impl FnOnce() -> LlabStatus) -> LlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            LlabStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LlabStatus> {
    if p.is_null() {
        set_error("null string".into());
        return Err(LlabStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        LlabStatus::InvalidUtf8
    })
}

fn null_error() -> LlabStatus {
    set_error("null pointer".into());
    LlabStatus::NullPointer
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> LlabStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LlabStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte".into());
            LlabStatus::InvalidInput
        }
    }
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn llab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn llab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the `elements:` / `covers:` text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_parse(text: *const c_char, out: *mut *mut LlabPoset) -> LlabStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_poset(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(LlabPoset { inner: p }));
                LlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The chain `p1 < ... < pm`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_chain(m: usize, out: *mut *mut LlabPoset) -> LlabStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        *out = Box::into_raw(Box::new(LlabPoset { inner: Poset::chain(m) }));
        LlabStatus::Ok
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_free(p: *mut LlabPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_size(p: *const LlabPoset) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// A poset ideal of `Hom(P, [n])`; `spec` is `all` or maps such as `1,2;2,2`.
///
/// # Safety
/// `poset` must be a valid handle, `spec` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_ideal_new(
    poset: *const LlabPoset,
    n: u32,
    spec: *const c_char,
    out: *mut *mut LlabPosetIdeal,
) -> LlabStatus {
    guard(|| {
        let (Some(p), false) = (poset.as_ref(), out.is_null()) else {
            return null_error();
        };
        let spec = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = HomSpace::new(p.inner.clone(), n)
            .and_then(|space| IdealSpec::parse(spec)?.resolve(&space));
        match built {
            Ok(j) => {
                *out = Box::into_raw(Box::new(LlabPosetIdeal { inner: j }));
                LlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `j` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_ideal_free(j: *mut LlabPosetIdeal) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Number of maps in the poset ideal.
///
/// # Safety
/// `j` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn llab_poset_ideal_size(j: *const LlabPosetIdeal) -> usize {
    j.as_ref().map_or(0, |j| j.inner.len())
}

/// Generators of the requested ideal, one per line.
///
/// # Safety
/// `j` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_ideal_generators(
    j: *const LlabPosetIdeal,
    kind: LlabIdealKind,
    out: *mut *mut c_char,
) -> LlabStatus {
    guard(|| {
        let (Some(j), false) = (j.as_ref(), out.is_null()) else {
            return null_error();
        };
        let space = j.inner.space();
        let gens = match kind {
            LlabIdealKind::Coletterplace => coletterplace_ideal(&j.inner).gen_strings(),
            LlabIdealKind::Letterplace => letterplace_ideal(space).gen_strings(),
            LlabIdealKind::Bpn => bpn_ideal(space).gen_strings(),
            LlabIdealKind::Dual => match coletterplace_ideal(&j.inner).alexander_dual() {
                Ok(d) => d.gen_strings(),
                Err(e) => return fail(e),
            },
        };
        write_string(out, gens.join("\n"))
    })
}

/// The linear resolution of `L(J)`.
///
/// # Safety
/// `j` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_resolution_new(
    j: *const LlabPosetIdeal,
    out: *mut *mut LlabResolution,
) -> LlabStatus {
    guard(|| {
        let (Some(j), false) = (j.as_ref(), out.is_null()) else {
            return null_error();
        };
        match coletterplace_resolution(&j.inner) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(LlabResolution { inner: c }));
                LlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn llab_resolution_free(r: *mut LlabResolution) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Copies the module ranks into `buf`. `len` receives the number of ranks;
/// if `capacity` is too small nothing is copied.
///
/// # Safety
/// `r` and `len` must be valid; `buf` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn llab_resolution_ranks(
    r: *const LlabResolution,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> LlabStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), len.is_null()) else {
            return null_error();
        };
        let ranks = r.inner.ranks();
        *len = ranks.len();
        if ranks.len() > capacity || buf.is_null() {
            set_error(format!("need room for {} ranks", ranks.len()));
            return LlabStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(ranks.as_ptr(), buf, ranks.len());
        LlabStatus::Ok
    })
}

/// Checks that the resolution resolves `L(J)` over `field` (`q`, `f2`, `gf3`, ...).
/// Returns `CertificationFailed` if it does not.
///
/// # Safety
/// Handles must be valid and `field` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn llab_resolution_verify(
    r: *const LlabResolution,
    j: *const LlabPosetIdeal,
    field: *const c_char,
) -> LlabStatus {
    guard(|| {
        let (Some(r), Some(j)) = (r.as_ref(), j.as_ref()) else {
            return null_error();
        };
        let field: Field = match read_str(field).map(str::parse) {
            Ok(Ok(f)) => f,
            Ok(Err(e)) => return fail(e),
            Err(s) => return s,
        };
        if verify_resolves(&r.inner, &coletterplace_ideal(&j.inner), field) {
            LlabStatus::Ok
        } else {
            fail(Error::CertificationFailed {
                reason: "complex does not resolve L(J)".into(),
                face: vec![],
            })
        }
    })
}

/// The resolution as JSON.
///
/// # Safety
/// `r` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_resolution_json(
    r: *const LlabResolution,
    out: *mut *mut c_char,
) -> LlabStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return null_error();
        };
        write_string(out, to_json(&ResolutionDto::from_complex(&r.inner)))
    })
}

/// Certifies `Delta(J)` and writes a one-line summary.
///
/// # Safety
/// `j` must be a valid handle, `field` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn llab_certify(
    j: *const LlabPosetIdeal,
    field: *const c_char,
    out: *mut *mut c_char,
) -> LlabStatus {
    guard(|| {
        let (Some(j), false) = (j.as_ref(), out.is_null()) else {
            return null_error();
        };
        let field: Field = match read_str(field).map(str::parse) {
            Ok(Ok(f)) => f,
            Ok(Err(e)) => return fail(e),
            Err(s) => return s,
        };
        match certify(&j.inner, field) {
            Ok(c) => write_string(out, c.summary()),
            Err(e) => fail(e),
        }
    })
}
