//! C ABI for `compact-cubic`.
//!
//! Interpolants are opaque handles created by `cc_interpolant_new` and
//! released with `cc_interpolant_free`. Every fallible call returns a
//! [`CcStatus`]; on failure `cc_last_error_message` describes the most recent
//! error on the calling thread. No function unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use compact_cubic::{fit, EdgeScheme, Error, Mesh, Method, PiecewiseCubic, Side};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    TooFewNodes = 2,
    NonMonotone = 3,
    LengthMismatch = 4,
    NonFinite = 5,
    InvalidScheme = 6,
    NonUniform = 7,
    Singular = 8,
    OutOfDomain = 9,
    BufferTooSmall = 10,
    InvalidArgument = 11,
    Panic = 12,
    Other = 13,
}

/// Interpolation method.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcMethod {
    SplineNatural = 0,
    /// Uses the `dleft` / `dright` arguments as end slopes.
    SplineClamped = 1,
    SplineNotAKnot = 2,
    Compact4 = 3,
    /// Compact interpolant with five-point edges; uniform meshes only.
    CompactC = 4,
}

/// Which piece to use for a second derivative evaluated exactly at a node.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcSide {
    Left = 0,
    Right = 1,
}

/// Opaque interpolant handle.
pub struct CcInterpolant {
    cubic: PiecewiseCubic,
    condition: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::TooFewNodes { .. } => CcStatus::TooFewNodes,
        Error::NonMonotone { .. } | Error::ZeroWidth | Error::DegenerateInterval { .. } => {
            CcStatus::NonMonotone
        }
        Error::LengthMismatch { .. } => CcStatus::LengthMismatch,
        Error::NonFinite { .. } => CcStatus::NonFinite,
        Error::InvalidScheme { .. } => CcStatus::InvalidScheme,
        Error::NonUniformUnsupported { .. } => CcStatus::NonUniform,
        Error::SingularPivot { .. } | Error::Reducible { .. } => CcStatus::Singular,
        Error::OutOfDomain { .. } | Error::SideUnavailable { .. } => CcStatus::OutOfDomain,
        Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } => CcStatus::InvalidArgument,
        _ => CcStatus::Other,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), CcStatus>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            CcStatus::Panic
        }
    }
}

fn fail(e: Error) -> CcStatus {
    set_last_error(&e.to_string());
    status_of(&e)
}

fn null() -> CcStatus {
    set_last_error("null pointer argument");
    CcStatus::NullPointer
}

/// Reads `len` doubles, rejecting null pointers.
unsafe fn input<'a>(p: *const f64, len: usize) -> Result<&'a [f64], CcStatus> {
    if p.is_null() {
        return Err(null());
    }
    // SAFETY: the caller promises `len` readable doubles at `p`.
    Ok(unsafe { slice::from_raw_parts(p, len) })
}

unsafe fn handle<'a>(h: *const CcInterpolant) -> Result<&'a CcInterpolant, CcStatus> {
    // SAFETY: non-null handles come from `cc_interpolant_new`.
    unsafe { h.as_ref() }.ok_or_else(null)
}

unsafe fn write_out(out: *mut f64, v: f64) -> Result<(), CcStatus> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: checked non-null; caller provides a writable double.
    unsafe { *out = v };
    Ok(())
}

unsafe fn write_slice(out: *mut f64, cap: usize, src: &[f64]) -> Result<(), CcStatus> {
    if out.is_null() {
        return Err(null());
    }
    if cap < src.len() {
        set_last_error(&format!("buffer holds {cap} values, need {}", src.len()));
        return Err(CcStatus::BufferTooSmall);
    }
    // SAFETY: `out` has room for `cap >= src.len()` doubles.
    unsafe { ptr::copy_nonoverlapping(src.as_ptr(), out, src.len()) };
    Ok(())
}

fn method_code(code: i32) -> Result<CcMethod, CcStatus> {
    Ok(match code {
        0 => CcMethod::SplineNatural,
        1 => CcMethod::SplineClamped,
        2 => CcMethod::SplineNotAKnot,
        3 => CcMethod::Compact4,
        4 => CcMethod::CompactC,
        other => {
            set_last_error(&format!("unknown method code {other}"));
            return Err(CcStatus::InvalidArgument);
        }
    })
}

fn method_of(m: CcMethod, dleft: f64, dright: f64) -> Method {
    match m {
        CcMethod::SplineNatural => Method::SplineNatural,
        CcMethod::SplineClamped => Method::SplineClamped {
            left: dleft,
            right: dright,
        },
        CcMethod::SplineNotAKnot => Method::SplineNotAKnot,
        CcMethod::Compact4 => Method::Compact4,
        CcMethod::CompactC => Method::CompactC,
    }
}

/// Builds an interpolant through `(x[i], y[i])`, `i < len`.
///
/// `method` is a `CcMethod` value; `dleft` and `dright` are read only for
/// `CC_METHOD_SPLINE_CLAMPED`. On success `*out` owns a handle to be
/// released with `cc_interpolant_free`.
///
/// # Safety
/// `x` and `y` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_new(
    x: *const f64,
    y: *const f64,
    len: usize,
    method: i32,
    dleft: f64,
    dright: f64,
    out: *mut *mut CcInterpolant,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let method = method_code(method)?;
        let (x, y) = unsafe { (input(x, len)?, input(y, len)?) };
        let mesh = Mesh::from_nodes(x.to_vec()).map_err(fail)?;
        let fitted = fit(&mesh, y, method_of(method, dleft, dright)).map_err(fail)?;
        let h = Box::new(CcInterpolant {
            cubic: fitted.cubic,
            condition: fitted.derivatives.condition,
        });
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(h) };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle from `cc_interpolant_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_free(h: *mut CcInterpolant) {
    if !h.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_len(h: *const CcInterpolant) -> usize {
    unsafe { h.as_ref() }.map_or(0, |h| h.cubic.mesh().len())
}

/// 1-norm condition number of the slope system solved at construction.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_condition(
    h: *const CcInterpolant,
    out: *mut f64,
) -> CcStatus {
    guard(|| unsafe { write_out(out, handle(h)?.condition) })
}

/// Value at `t`.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_eval(
    h: *const CcInterpolant,
    t: f64,
    out: *mut f64,
) -> CcStatus {
    guard(|| unsafe {
        let v = handle(h)?.cubic.evaluate(t).map_err(fail)?;
        write_out(out, v)
    })
}

/// First derivative at `t`.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_eval_derivative(
    h: *const CcInterpolant,
    t: f64,
    out: *mut f64,
) -> CcStatus {
    guard(|| unsafe {
        let v = handle(h)?.cubic.evaluate_derivative(t).map_err(fail)?;
        write_out(out, v)
    })
}

/// Second derivative at `t`; `side` (a `CcSide` value) picks the piece when
/// `t` is a node.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_eval_second_derivative(
    h: *const CcInterpolant,
    t: f64,
    side: i32,
    out: *mut f64,
) -> CcStatus {
    guard(|| unsafe {
        let side = match side {
            x if x == CcSide::Left as i32 => Side::Left,
            x if x == CcSide::Right as i32 => Side::Right,
            other => {
                set_last_error(&format!("unknown side code {other}"));
                return Err(CcStatus::InvalidArgument);
            }
        };
        let v = handle(h)?
            .cubic
            .evaluate_second_derivative(t, side)
            .map_err(fail)?;
        write_out(out, v)
    })
}

/// Copies the nodal slopes into `out` (`cap >= cc_interpolant_len(h)`).
///
/// # Safety
/// `h` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_slopes(
    h: *const CcInterpolant,
    out: *mut f64,
    cap: usize,
) -> CcStatus {
    guard(|| unsafe { write_slice(out, cap, handle(h)?.cubic.slopes()) })
}

/// Copies local-monomial coefficients, four per piece in increasing powers
/// of `t - x[k]`, into `out` (`cap >= 4 * (len - 1)`).
///
/// # Safety
/// `h` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_interpolant_ppform_coefs(
    h: *const CcInterpolant,
    out: *mut f64,
    cap: usize,
) -> CcStatus {
    guard(|| unsafe {
        let pp = handle(h)?.cubic.to_ppform();
        let flat: Vec<f64> = pp.coefs.iter().flatten().copied().collect();
        write_slice(out, cap, &flat)
    })
}

/// Fourth-order compact derivatives at the nodes, written to `out[0..len]`.
/// `method` must be `CC_METHOD_COMPACT4` or `CC_METHOD_COMPACT_C`.
///
/// # Safety
/// `x`, `y` must point to `len` doubles and `out` to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_compact_derivatives(
    x: *const f64,
    y: *const f64,
    len: usize,
    method: i32,
    out: *mut f64,
) -> CcStatus {
    guard(|| {
        let edges = match method_code(method)? {
            CcMethod::Compact4 => EdgeScheme::Compact4,
            CcMethod::CompactC => EdgeScheme::CompactC,
            _ => {
                set_last_error("compact derivatives take COMPACT4 or COMPACT_C");
                return Err(CcStatus::InvalidScheme);
            }
        };
        let (x, y) = unsafe { (input(x, len)?, input(y, len)?) };
        let mesh = Mesh::from_nodes(x.to_vec()).map_err(fail)?;
        let d = compact_cubic::compact_first_derivatives(&mesh, y, edges).map_err(fail)?;
        unsafe { write_slice(out, len, &d.slopes) }
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cc_status_message(status: CcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        CcStatus::Ok => b"ok\0",
        CcStatus::NullPointer => b"null pointer argument\0",
        CcStatus::TooFewNodes => b"too few nodes for the method\0",
        CcStatus::NonMonotone => b"nodes are not strictly monotone\0",
        CcStatus::LengthMismatch => b"length mismatch\0",
        CcStatus::NonFinite => b"non-finite input\0",
        CcStatus::InvalidScheme => b"scheme not valid for this operation\0",
        CcStatus::NonUniform => b"method requires a uniform mesh\0",
        CcStatus::Singular => b"singular system\0",
        CcStatus::OutOfDomain => b"argument outside the interpolation interval\0",
        CcStatus::BufferTooSmall => b"output buffer too small\0",
        CcStatus::InvalidArgument => b"invalid argument\0",
        CcStatus::Panic => b"internal panic\0",
        CcStatus::Other => b"error\0",
    };
    s.as_ptr().cast()
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
