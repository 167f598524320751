//! C ABI over `lamplighter`.
//!
//! Groups and elements are opaque heap handles released with
//! `ll_group_free` / `ll_element_free`. Every fallible call returns an
//! `LlStatus`; on failure a message is available from
//! `ll_last_error_message` on the same thread until the next call.
//! Strings returned through `char **` out-parameters are owned by the
//! caller and released with `ll_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lamplighter::cayley::{self, Exec, Format};
use lamplighter::{json, trees, Error, GammaGroup, GroupElement, PresentationId, RingSpec};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotInvertible = 4,
    Mismatch = 5,
    Unsupported = 6,
    InvalidInput = 7,
    CheckFailed = 8,
    Panic = 9,
}

/// Opaque handle to a group `Γ_n(R)`.
pub struct LlGroup {
    group: GammaGroup,
}

/// Opaque handle to a group element.
pub struct LlElement {
    element: GroupElement,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::InvalidToken { .. } | Error::Json(_) => LlStatus::Parse,
            Error::NotInvertible { .. } => LlStatus::NotInvertible,
            Error::RingMismatch { .. } | Error::ContextMismatch(_) => LlStatus::Mismatch,
            Error::Unsupported(_) => LlStatus::Unsupported,
            Error::IndexOutOfRange { .. } | Error::InvalidVertex(_) | Error::Config(_) => LlStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(LlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(LlStatus::InvalidInput, "output has a nul byte".into()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_element(out: *mut *mut LlElement, element: GroupElement) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(LlElement { element })), "out")
}

fn group_of(e: &GroupElement) -> GammaGroup {
    GammaGroup::from_context(*e.f.ctx())
}

/// The message of the last failed call on this thread, or `""`. Owned by
/// the library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ll_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ll_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `Γ_n(R)` for a ring written `"Z"` or `"Z/m"`.
///
/// # Safety
/// `ring` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_group_new(n: usize, ring: *const c_char, out: *mut *mut LlGroup) -> LlStatus {
    guard(|| {
        let ring = RingSpec::parse(text(ring, "ring")?)?;
        let group = GammaGroup::new(n, ring)?;
        put(out, Box::into_raw(Box::new(LlGroup { group })), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from `ll_group_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ll_group_free(g: *mut LlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The rank `n`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn ll_group_rank(g: *const LlGroup) -> usize {
    g.as_ref().map_or(0, |g| g.group.n())
}

/// # Safety
/// `e` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ll_element_free(e: *mut LlElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Evaluates a word such as `"t^-4 a t^4 a"`.
///
/// # Safety
/// `g` must be a live group handle, `word` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_eval_word(g: *const LlGroup, word: *const c_char, out: *mut *mut LlElement) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let e = g.group.parse_and_eval(text(word, "word")?)?;
        put_element(out, e)
    })
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_element_mul(a: *const LlElement, b: *const LlElement, out: *mut *mut LlElement) -> LlStatus {
    guard(|| {
        let a = deref(a, "left")?;
        let b = deref(b, "right")?;
        put_element(out, a.element.mul(&b.element)?)
    })
}

/// # Safety
/// `a` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_element_inv(a: *const LlElement, out: *mut *mut LlElement) -> LlStatus {
    guard(|| put_element(out, deref(a, "element")?.element.inv()))
}

/// Writes 1 to `out` if the elements are equal, 0 otherwise.
///
/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_element_equal(a: *const LlElement, b: *const LlElement, out: *mut i32) -> LlStatus {
    guard(|| {
        let a = deref(a, "left")?;
        let b = deref(b, "right")?;
        put(out, i32::from(a.element == b.element), "out")
    })
}

/// # Safety
/// `g` must be a live group handle, `json_text` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_element_from_json(g: *const LlGroup, json_text: *const c_char, out: *mut *mut LlElement) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let v = json::parse(text(json_text, "json")?)?;
        put_element(out, json::group_element_from_json(&g.group, &v)?)
    })
}

/// Compact JSON of an element.
///
/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_element_to_json(e: *const LlElement, out: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let e = &deref(e, "element")?.element;
        put_string(out, json::compact(&json::group_element_to_json(&group_of(e), e)))
    })
}

/// Normal-form word (ranks 1 and 2).
///
/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_normal_form(e: *const LlElement, out: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let e = &deref(e, "element")?.element;
        put_string(out, group_of(e).normal_form(e)?.to_string())
    })
}

/// Compact JSON of the vertex `phi(e)`.
///
/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_phi_json(e: *const LlElement, out: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let e = &deref(e, "element")?.element;
        let v = trees::phi(&group_of(e), e)?;
        put_string(out, json::compact(&json::vertex_to_json(&v)))
    })
}

/// The element whose vertex is the given JSON.
///
/// # Safety
/// `g` must be a live group handle, `vertex` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_phi_inv_json(g: *const LlGroup, vertex: *const c_char, out: *mut *mut LlElement) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let v = json::vertex_from_json(g.group.ring(), &json::parse(text(vertex, "vertex")?)?)?;
        put_element(out, trees::phi_inv(&g.group, &v)?)
    })
}

unsafe fn finish_report(report: lamplighter::report::Report, out: *mut *mut c_char) -> Result<(), Failure> {
    let passed = report.passed();
    if !out.is_null() {
        put_string(out, json::compact(&report.to_json()))?;
    }
    if passed {
        Ok(())
    } else {
        Err(Failure(LlStatus::CheckFailed, report.title))
    }
}

/// Runs the isomorphism check; `LL_STATUS_CHECK_FAILED` on violations.
/// The JSON report is written to `report` unless it is null.
///
/// # Safety
/// `g` must be a live group handle; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ll_verify_iso(g: *const LlGroup, radius: u32, coeff_bound: u64, report: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        finish_report(cayley::verify_iso(&g.group, radius, coeff_bound, Exec::Parallel)?, report)
    })
}

/// Evaluates the relators of a presentation (`"i"`, `"g2-ii"`, `"complex"`, ...).
///
/// # Safety
/// `g` must be a live group handle, `pres` a nul-terminated string; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ll_verify_relators(g: *const LlGroup, pres: *const c_char, bound: u64, report: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let id = PresentationId::resolve(text(pres, "presentation")?, g.group.n())?;
        finish_report(cayley::verify_relators(&g.group, id, bound)?, report)
    })
}

/// Exports the Cayley ball as `"dot"`, `"graphml"`, `"edge-csv"` or `"json"`.
///
/// # Safety
/// `g` must be a live group handle, `format` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ll_export_ball(g: *const LlGroup, radius: u32, coeff_bound: u64, format: *const c_char, out: *mut *mut c_char) -> LlStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let format: Format = text(format, "format")?.parse()?;
        let ball = cayley::cayley_ball(&g.group, radius, coeff_bound, Exec::Parallel)?;
        put_string(out, ball.to_graph().export(format))
    })
}
