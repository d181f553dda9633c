//! C ABI over `funcfield`.
//!
//! Every fallible function returns an [`FfStatus`] and writes its result
//! through an out-pointer. On failure, [`ff_last_error`] describes the error
//! for the calling thread. Handles and strings returned by this library are
//! owned by the caller and released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use funcfield::divisor;
use funcfield::elliptic::{self, Curve, ECPoint};
use funcfield::field::{format_rational, parse_rational, Field};
use funcfield::lab;
use funcfield::{analytic, parse_ratfun, ArithOp, Error, Point, RatFun, SquareSemantics};
use serde_json::{json, Value};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Mismatched fields or a non-prime characteristic.
    Field = 4,
    DivisionByZero = 5,
    /// Input outside an operation's domain.
    Domain = 6,
    /// Singular curve, point off the curve, torsion, or a fiber inconsistency.
    Curve = 7,
    /// Work needed exceeds the supplied limit.
    Budget = 8,
    /// Internal failure; the library state is unaffected.
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfArithOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// Opaque rational function over Q or F_p.
pub struct FfRatFun(RatFun);

/// Opaque Weierstrass curve `y^2 = x^3 + A x + B` over Q(z).
pub struct FfCurve(Curve);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> FfStatus {
    match err {
        Error::Parse { .. } => FfStatus::Parse,
        Error::FieldMismatch(..) | Error::NotPrime(_) => FfStatus::Field,
        Error::DivisionByZero => FfStatus::DivisionByZero,
        Error::Domain(_) | Error::Inseparable { .. } | Error::Invalid(_) => FfStatus::Domain,
        Error::OffCurve
        | Error::SingularCurve
        | Error::Torsion(_)
        | Error::NotMinimal
        | Error::InconsistentValuations { .. }
        | Error::NotRationalSurface(_) => FfStatus::Curve,
        Error::Budget { .. } => FfStatus::Budget,
    }
}

struct Failure(FfStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// Runs `body`, records any error, and converts panics to [`FfStatus::Panic`].
fn guard(body: impl FnOnce() -> Outcome<()>) -> FfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FfStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(FfStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FfStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Outcome<()> {
    let c = CString::new(text)
        .map_err(|_| Failure(FfStatus::Panic, "interior nul in output".into()))?;
    if out.is_null() {
        return Err(null());
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn point_json(p: &ECPoint) -> Value {
    match p {
        ECPoint::Identity => Value::String("O".into()),
        ECPoint::Affine { x, y } => json!({"x": x.to_string(), "y": y.to_string()}),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` over Q (`characteristic` 0) or F_p.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_parse(
    text: *const c_char,
    characteristic: u64,
    out: *mut *mut FfRatFun,
) -> FfStatus {
    guard(|| {
        let field = Field::from_characteristic(characteristic)?;
        let f = parse_ratfun(read_str(text)?, field)?;
        write_handle(out, FfRatFun(f))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `f` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_free(f: *mut FfRatFun) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text form, re-parseable by [`ff_ratfun_parse`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_to_string(
    f: *const FfRatFun,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| write_string(out, deref(f)?.0.to_string()))
}

/// `a op b` as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_arith(
    op: FfArithOp,
    a: *const FfRatFun,
    b: *const FfRatFun,
    out: *mut *mut FfRatFun,
) -> FfStatus {
    guard(|| {
        let op = match op {
            FfArithOp::Add => ArithOp::Add,
            FfArithOp::Sub => ArithOp::Sub,
            FfArithOp::Mul => ArithOp::Mul,
            FfArithOp::Div => ArithOp::Div,
        };
        let r = RatFun::arith(op, &deref(a)?.0, &deref(b)?.0)?;
        write_handle(out, FfRatFun(r))
    })
}

/// Derivative in z as a new handle.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_derivative(
    f: *const FfRatFun,
    out: *mut *mut FfRatFun,
) -> FfStatus {
    guard(|| write_handle(out, FfRatFun(deref(f)?.0.derivative())))
}

/// Degree of `f` as a map P^1 -> P^1.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_map_degree(f: *const FfRatFun, out: *mut u64) -> FfStatus {
    guard(|| write(out, deref(f)?.0.map_degree() as u64))
}

/// `deg(numerator) - deg(denominator)`; fails for zero.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_deg_star(f: *const FfRatFun, out: *mut i64) -> FfStatus {
    guard(|| write(out, deref(f)?.0.deg_star()?))
}

/// Order of vanishing at `at`, which is `"inf"` or an exact rational.
///
/// # Safety
/// `f` must be a live handle; `at` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_valuation(
    f: *const FfRatFun,
    at: *const c_char,
    out: *mut i64,
) -> FfStatus {
    guard(|| {
        let f = &deref(f)?.0;
        let at = read_str(at)?.trim();
        let point = if at == "inf" {
            Point::Infinity
        } else {
            Point::Finite(f.field().element(parse_rational(at)?)?)
        };
        write(out, f.valuation_at(&point)?)
    })
}

/// Whether `f` is a square, over the constants (`geometric` false) or over
/// their algebraic closure (`geometric` true).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_is_square(
    f: *const FfRatFun,
    geometric: bool,
    out: *mut bool,
) -> FfStatus {
    guard(|| {
        let semantics = if geometric {
            SquareSemantics::Geometric
        } else {
            SquareSemantics::BaseField
        };
        write(out, deref(f)?.0.is_square(semantics)?.is_square)
    })
}

/// Whether `f = g'` for some rational function `g`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_is_derivative(f: *const FfRatFun, out: *mut bool) -> FfStatus {
    guard(|| write(out, lab::is_derivative(&deref(f)?.0)?.is_derivative))
}

/// Pole divisor as a JSON array of `{"place", "mult"}` entries.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_ratfun_pole_divisor_json(
    f: *const FfRatFun,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| {
        let d = divisor::pole_divisor(&deref(f)?.0)?;
        let text = serde_json::to_string(&d.to_entries()).expect("serializable");
        write_string(out, text)
    })
}

/// Curve with coefficients `a`, `b` given as rational functions over Q.
///
/// # Safety
/// `a`, `b` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_new(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut FfCurve,
) -> FfStatus {
    guard(|| {
        let q = Field::Rational;
        let curve = Curve::new(
            parse_ratfun(read_str(a)?, q)?,
            parse_ratfun(read_str(b)?, q)?,
        )?;
        write_handle(out, FfCurve(curve))
    })
}

/// The curve `y^2 = x^3 + z x + 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_default(out: *mut *mut FfCurve) -> FfStatus {
    guard(|| write_handle(out, FfCurve(Curve::default_curve())))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `c` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_free(c: *mut FfCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `n * (x, y)` as JSON: `{"x": ..., "y": ...}`, or `"O"` for the identity.
///
/// # Safety
/// `c` must be a live handle; `x`, `y` nul-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_multiply_json(
    c: *const FfCurve,
    x: *const c_char,
    y: *const c_char,
    n: i64,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| {
        let q = Field::Rational;
        let curve = &deref(c)?.0;
        let p = ECPoint::affine(
            parse_ratfun(read_str(x)?, q)?,
            parse_ratfun(read_str(y)?, q)?,
        );
        if !curve.on_curve(&p) {
            return Err(Error::OffCurve.into());
        }
        write_string(out, point_json(&curve.multiply(n, &p)?).to_string())
    })
}

/// Bad fibers as a JSON array of `{"place", "count", "v_c4", "v_c6",
/// "v_delta", "type"}` objects.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_fibers_json(
    c: *const FfCurve,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| {
        let survey = elliptic::bad_fibers(&deref(c)?.0)?;
        write_string(
            out,
            serde_json::to_string(&survey.fibers).expect("serializable"),
        )
    })
}

/// Mordell-Weil rank from the Shioda-Tate formula.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_curve_rank(c: *const FfCurve, out: *mut u32) -> FfStatus {
    guard(|| write(out, elliptic::bad_fibers(&deref(c)?.0)?.rank()?))
}

/// Exact value of the transcendental entire function at the rational `a`,
/// summing at most `limit` series terms.
///
/// # Safety
/// `a` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_eval_f(
    a: *const c_char,
    limit: u64,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| {
        let a = parse_rational(read_str(a)?)?;
        let value = analytic::eval_exact_with_limit(&a, limit)?;
        write_string(out, format_rational(&value))
    })
}
