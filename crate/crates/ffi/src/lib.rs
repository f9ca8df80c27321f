//! C ABI over `rlk-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json`
//! or by a constructor and released with the matching `*_free`. Every
//! fallible call returns an [`RlkStatus`]; on anything other than
//! `RLK_OK` the message is available from [`rlk_last_error`] until the
//! next call on the same thread. Strings returned through `char **` are
//! owned by the caller and must be released with [`rlk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rlk::algebra::{check_leibniz, check_reynolds, induced_bracket, LeibnizAlgebra, ReynoldsContext, Verdict};
use rlk::field::FieldSpec;
use rlk::io;
use rlk::linalg::Matrix;
use rlk::ybe::{clybe_defect, coboundary_coproduct};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlkStatus {
    /// The call succeeded; for checks, the identities hold.
    RlkOk = 0,
    /// Malformed JSON, bad field or scalar, or mismatched dimensions.
    RlkInputError = 1,
    /// A check ran and found a violated identity.
    RlkViolated = 2,
    /// A required pointer argument was null.
    RlkNullPointer = 3,
    /// The inputs were well formed but a mathematical precondition failed.
    RlkPrecondition = 4,
    /// A panic was caught at the boundary.
    RlkInternal = 5,
}

/// A Leibniz algebra.
pub struct RlkAlgebra(LeibnizAlgebra);

/// A matrix over the field of the algebra it was read against.
pub struct RlkMatrix(Matrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(err: &rlk::Error) -> RlkStatus {
    use rlk::Error::*;
    match err {
        NotLeibniz(_)
        | NotReynolds
        | NotCoLeibniz(_)
        | DualNotLeibniz
        | NotSkew
        | Degenerate
        | NotInvertible
        | PreconditionFailed(_)
        | ConstraintViolated(_)
        | ExhaustedField => RlkStatus::RlkPrecondition,
        _ => RlkStatus::RlkInputError,
    }
}

/// Runs `f`, recording any error or panic for `rlk_last_error`.
fn guard(f: impl FnOnce() -> Result<RlkStatus, (RlkStatus, String)>) -> RlkStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside rlk");
            RlkStatus::RlkInternal
        }
    }
}

fn lib<T>(r: rlk::Result<T>) -> Result<T, (RlkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RlkStatus, String)> {
    if p.is_null() {
        return Err((RlkStatus::RlkNullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RlkStatus::RlkInputError, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RlkStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (RlkStatus::RlkNullPointer, format!("{what} is null")))
}

unsafe fn out_slot<T>(p: *mut T, what: &str) -> Result<&'static mut T, (RlkStatus, String)> {
    p.as_mut()
        .ok_or_else(|| (RlkStatus::RlkNullPointer, format!("{what} is null")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

fn verdict_status(v: &Verdict) -> RlkStatus {
    if v.holds() {
        RlkStatus::RlkOk
    } else {
        RlkStatus::RlkViolated
    }
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `rlk_*` call on the same thread.
#[no_mangle]
pub extern "C" fn rlk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn rlk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn rlk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra file.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_algebra_from_json(json: *const c_char, out: *mut *mut RlkAlgebra) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let alg = lib(io::algebra_from_json(text(json, "json")?))?;
        *slot = Box::into_raw(Box::new(RlkAlgebra(alg)));
        Ok(RlkStatus::RlkOk)
    })
}

/// Builds one of the builtin two-dimensional algebras, `"A1"` or `"A2"`,
/// over `field` (`"Q"` or `"F<p>"`).
///
/// # Safety
/// `name` and `field` must be nul-terminated strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_algebra_builtin(
    name: *const c_char,
    field: *const c_char,
    out: *mut *mut RlkAlgebra,
) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let id = lib(rlk::classify::BuiltinAlgebra::parse(text(name, "name")?))?;
        let f = lib(io::parse_field(text(field, "field")?))?;
        *slot = Box::into_raw(Box::new(RlkAlgebra(rlk::classify::builtin_algebra(id, f))));
        Ok(RlkStatus::RlkOk)
    })
}

/// Releases an algebra. Null is ignored.
///
/// # Safety
/// `alg` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rlk_algebra_free(alg: *mut RlkAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rlk_algebra_dim(alg: *const RlkAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.dim())
}

/// Writes the algebra file for `alg` into `*out`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_algebra_to_json(alg: *const RlkAlgebra, out: *mut *mut c_char) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        *slot = owned_string(io::algebra_to_json(&handle(alg, "alg")?.0));
        Ok(RlkStatus::RlkOk)
    })
}

/// Parses a matrix file over the field of `alg`.
///
/// # Safety
/// `alg` must be a live handle, `json` a nul-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_matrix_from_json(
    alg: *const RlkAlgebra,
    json: *const c_char,
    out: *mut *mut RlkMatrix,
) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let field: FieldSpec = handle(alg, "alg")?.0.field();
        let m = lib(io::matrix_from_json(field, text(json, "json")?))?;
        *slot = Box::into_raw(Box::new(RlkMatrix(m)));
        Ok(RlkStatus::RlkOk)
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rlk_matrix_free(m: *mut RlkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `RLK_OK` when the bracket satisfies the Leibniz identity, `RLK_VIOLATED`
/// otherwise.
///
/// # Safety
/// `alg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rlk_check_leibniz(alg: *const RlkAlgebra) -> RlkStatus {
    guard(|| Ok(verdict_status(&lib(check_leibniz(handle(alg, "alg")?.0.structure()))?)))
}

/// Like [`rlk_check_leibniz`] but on an unvalidated algebra file, so that
/// brackets failing the identity can be inspected. `rlk_algebra_from_json`
/// rejects those with `RLK_PRECONDITION`.
///
/// # Safety
/// `json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rlk_check_leibniz_json(json: *const c_char) -> RlkStatus {
    guard(|| {
        let c = lib(io::tensor_from_json(text(json, "json")?))?;
        Ok(verdict_status(&lib(check_leibniz(&c))?))
    })
}

/// `RLK_OK` when `op` is a Reynolds operator of weight `lambda` (a scalar
/// such as `"1"` or `"-3/4"`), `RLK_VIOLATED` otherwise.
///
/// # Safety
/// `alg` and `op` must be live handles and `lambda` a nul-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn rlk_check_reynolds(
    alg: *const RlkAlgebra,
    lambda: *const c_char,
    op: *const RlkMatrix,
) -> RlkStatus {
    guard(|| {
        let a = &handle(alg, "alg")?.0;
        let l = lib(a.field().parse(text(lambda, "lambda")?))?;
        Ok(verdict_status(&lib(check_reynolds(a, &l, &handle(op, "op")?.0))?))
    })
}

/// Computes the cLYBe defect of `r` and writes it as a coproduct-style
/// file into `*out`. Returns `RLK_OK` when the defect vanishes and
/// `RLK_VIOLATED` otherwise; the defect is written in both cases.
///
/// # Safety
/// `alg` and `r` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_clybe_defect(
    alg: *const RlkAlgebra,
    r: *const RlkMatrix,
    out: *mut *mut c_char,
) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let defect = lib(clybe_defect(&handle(alg, "alg")?.0, &handle(r, "r")?.0))?;
        *slot = owned_string(io::coproduct_to_json(&defect));
        Ok(if defect.is_zero() {
            RlkStatus::RlkOk
        } else {
            RlkStatus::RlkViolated
        })
    })
}

/// Writes the coboundary coproduct of `r` into `*out`.
///
/// # Safety
/// `alg` and `r` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_coboundary(
    alg: *const RlkAlgebra,
    r: *const RlkMatrix,
    out: *mut *mut c_char,
) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let d = lib(coboundary_coproduct(&handle(alg, "alg")?.0, &handle(r, "r")?.0))?;
        *slot = owned_string(io::coproduct_to_json(&d));
        Ok(RlkStatus::RlkOk)
    })
}

/// The bracket `[x,y]_R` induced by a Reynolds operator, as a new algebra.
/// Fails with `RLK_PRECONDITION` if `op` is not a Reynolds operator of
/// weight `lambda`.
///
/// # Safety
/// `alg` and `op` must be live handles, `lambda` a nul-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rlk_induced_bracket(
    alg: *const RlkAlgebra,
    lambda: *const c_char,
    op: *const RlkMatrix,
    out: *mut *mut RlkAlgebra,
) -> RlkStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let a = &handle(alg, "alg")?.0;
        let l = lib(a.field().parse(text(lambda, "lambda")?))?;
        let ctx = lib(ReynoldsContext::new(a.clone(), l, handle(op, "op")?.0.clone()))?;
        *slot = Box::into_raw(Box::new(RlkAlgebra(lib(induced_bracket(&ctx))?)));
        Ok(RlkStatus::RlkOk)
    })
}
