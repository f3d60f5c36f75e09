//! C ABI over the `dirorbit` kernel, map, orbit and oracle layers.
//!
//! Every fallible function returns a [`DirorbitStatus`] and writes results
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`dirorbit_last_error_message`]. Maps, orbits and error series
//! are opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dirorbit::float_kernel::{self, ArithOp};
use dirorbit::maps::{MapSpec, ParamRounding};
use dirorbit::oracle::{self, ErrorSeries};
use dirorbit::orbit::{self, InitialCondition, OrbitRecord, Scheme};
use dirorbit::{decimal, Error, RoundingMode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitStatus {
    Ok = 0,
    Overflow = 1,
    Invalid = 2,
    DivByZero = 3,
    ResidualUnderflow = 4,
    ParseError = 5,
    NonfiniteOrbit = 6,
    CapExceeded = 7,
    LengthMismatch = 8,
    ConfigError = 9,
    NullPointer = 10,
    OutOfRange = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitRounding {
    Nearest = 0,
    TowardNegInf = 1,
    TowardPosInf = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitScheme {
    Nearest = 0,
    Lemma1 = 1,
}

/// How the text passed to `dirorbit_orbit_run` is read.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitStart {
    /// decimal numeral or `p/q`
    Value = 0,
    /// `1/d` for a decimal numeral `d`
    Reciprocal = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirorbitParamRounding {
    Stored = 0,
    Directed = 1,
}

/// Opaque map handle.
pub struct DirorbitMap(MapSpec);

/// Opaque pseudo-orbit handle.
pub struct DirorbitOrbit(OrbitRecord);

/// Opaque error-series handle.
pub struct DirorbitSeries(ErrorSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DirorbitStatus {
    match e {
        Error::Overflow => DirorbitStatus::Overflow,
        Error::Invalid => DirorbitStatus::Invalid,
        Error::DivByZero => DirorbitStatus::DivByZero,
        Error::ResidualUnderflow => DirorbitStatus::ResidualUnderflow,
        Error::Parse(_) => DirorbitStatus::ParseError,
        Error::NonfiniteOrbit { .. } => DirorbitStatus::NonfiniteOrbit,
        Error::CapExceeded { .. } => DirorbitStatus::CapExceeded,
        Error::LengthMismatch { .. } => DirorbitStatus::LengthMismatch,
        Error::Config(_) => DirorbitStatus::ConfigError,
    }
}

/// Failure raised inside the shim itself.
struct Fail(DirorbitStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DirorbitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DirorbitStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            DirorbitStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(DirorbitStatus::NullPointer, format!("{what} is null"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(DirorbitStatus::ParseError, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null("handle"))
}

/// Copies `s` plus a NUL terminator into `buf` of `len` bytes.
unsafe fn copy_out(s: &str, buf: *mut c_char, len: usize) -> Result<(), Fail> {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len < s.len() + 1 {
        return Err(Fail(
            DirorbitStatus::BufferTooSmall,
            format!("need {} bytes", s.len() + 1),
        ));
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

fn mode(m: DirorbitRounding) -> RoundingMode {
    match m {
        DirorbitRounding::Nearest => RoundingMode::Nearest,
        DirorbitRounding::TowardNegInf => RoundingMode::TowardNegInf,
        DirorbitRounding::TowardPosInf => RoundingMode::TowardPosInf,
    }
}

fn arith(op: DirorbitOp) -> ArithOp {
    match op {
        DirorbitOp::Add => ArithOp::Add,
        DirorbitOp::Sub => ArithOp::Sub,
        DirorbitOp::Mul => ArithOp::Mul,
        DirorbitOp::Div => ArithOp::Div,
    }
}

/// Message for the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dirorbit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Stable lowercase name of a status code.
#[no_mangle]
pub extern "C" fn dirorbit_status_name(status: DirorbitStatus) -> *const c_char {
    let s: &'static CStr = match status {
        DirorbitStatus::Ok => c"ok",
        DirorbitStatus::Overflow => c"overflow",
        DirorbitStatus::Invalid => c"invalid",
        DirorbitStatus::DivByZero => c"div_by_zero",
        DirorbitStatus::ResidualUnderflow => c"residual_underflow",
        DirorbitStatus::ParseError => c"parse_error",
        DirorbitStatus::NonfiniteOrbit => c"nonfinite_orbit",
        DirorbitStatus::CapExceeded => c"cap_exceeded",
        DirorbitStatus::LengthMismatch => c"length_mismatch",
        DirorbitStatus::ConfigError => c"config_error",
        DirorbitStatus::NullPointer => c"null_pointer",
        DirorbitStatus::OutOfRange => c"out_of_range",
        DirorbitStatus::BufferTooSmall => c"buffer_too_small",
        DirorbitStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// `a op b` correctly rounded in `rounding`.
///
/// # Safety
/// `out` must be valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_dir_op(
    op: DirorbitOp,
    a: f64,
    b: f64,
    rounding: DirorbitRounding,
    out: *mut f64,
) -> DirorbitStatus {
    guard(|| put(out, arith(op).apply(a, b, mode(rounding))?))
}

/// # Safety
/// `primary` and `residual` must be valid for writing one double each.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_two_sum(
    a: f64,
    b: f64,
    primary: *mut f64,
    residual: *mut f64,
) -> DirorbitStatus {
    guard(|| {
        let p = float_kernel::two_sum(a, b)?;
        put(primary, p.primary)?;
        put(residual, p.residual)
    })
}

/// # Safety
/// `primary` and `residual` must be valid for writing one double each.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_two_product(
    a: f64,
    b: f64,
    primary: *mut f64,
    residual: *mut f64,
) -> DirorbitStatus {
    guard(|| {
        let p = float_kernel::two_product(a, b)?;
        put(primary, p.primary)?;
        put(residual, p.residual)
    })
}

#[no_mangle]
pub extern "C" fn dirorbit_next_up(x: f64) -> f64 {
    float_kernel::next_up(x)
}

#[no_mangle]
pub extern "C" fn dirorbit_next_down(x: f64) -> f64 {
    float_kernel::next_down(x)
}

/// # Safety
/// `out` must be valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_average2(a: f64, b: f64, out: *mut f64) -> DirorbitStatus {
    guard(|| put(out, float_kernel::average2(a, b)?))
}

/// Writes 16 lowercase hex digits and a NUL; `len` must be at least 17.
///
/// # Safety
/// `buf` must be valid for writing `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_to_hex(x: f64, buf: *mut c_char, len: usize) -> DirorbitStatus {
    guard(|| copy_out(&float_kernel::to_hex(x), buf, len))
}

/// # Safety
/// `hex` must be a NUL-terminated string; `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_from_hex(hex: *const c_char, out: *mut f64) -> DirorbitStatus {
    guard(|| put(out, float_kernel::from_hex(text(hex)?)?))
}

/// # Safety
/// `numeral` must be a NUL-terminated string; `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_parse_decimal(
    numeral: *const c_char,
    rounding: DirorbitRounding,
    out: *mut f64,
) -> DirorbitStatus {
    guard(|| put(out, decimal::parse_decimal(text(numeral)?, mode(rounding))?))
}

/// Creates a logistic map with decimal parameter `r`.
///
/// # Safety
/// `r` must be a NUL-terminated string; `out` valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_map_new_logistic(
    r: *const c_char,
    param: DirorbitParamRounding,
    out: *mut *mut DirorbitMap,
) -> DirorbitStatus {
    guard(|| {
        let p = match param {
            DirorbitParamRounding::Stored => ParamRounding::Stored,
            DirorbitParamRounding::Directed => ParamRounding::Directed,
        };
        let map = MapSpec::logistic(text(r)?)?.with_param_rounding(p);
        put(out, Box::into_raw(Box::new(DirorbitMap(map))))
    })
}

/// # Safety
/// `map` must be null or a handle from `dirorbit_map_new_logistic` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_map_free(map: *mut DirorbitMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// One map step with every operation rounded in `rounding`.
///
/// # Safety
/// `map` must be a live handle; `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_map_eval(
    map: *const DirorbitMap,
    x: f64,
    rounding: DirorbitRounding,
    out: *mut f64,
) -> DirorbitStatus {
    guard(|| put(out, handle(map)?.0.eval_directed(x, mode(rounding))?))
}

/// Runs `n` steps of `scheme` from the start described by `start`/`x0`.
///
/// # Safety
/// `map` must be a live handle, `x0` a NUL-terminated string and `out`
/// valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_orbit_run(
    map: *const DirorbitMap,
    start: DirorbitStart,
    x0: *const c_char,
    scheme: DirorbitScheme,
    n: usize,
    out: *mut *mut DirorbitOrbit,
) -> DirorbitStatus {
    guard(|| {
        let map = &handle(map)?.0;
        let x0 = match start {
            DirorbitStart::Value => text(x0)?.parse::<InitialCondition>()?,
            DirorbitStart::Reciprocal => InitialCondition::reciprocal(text(x0)?)?,
        };
        let scheme = match scheme {
            DirorbitScheme::Nearest => Scheme::Nearest,
            DirorbitScheme::Lemma1 => Scheme::Lemma1,
        };
        let record = orbit::run(scheme, map, &x0, n)?;
        put(out, Box::into_raw(Box::new(DirorbitOrbit(record))))
    })
}

/// # Safety
/// `orbit` must be null or a handle from `dirorbit_orbit_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_orbit_free(orbit: *mut DirorbitOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Number of stored values (`n + 1`); 0 for a null handle.
///
/// # Safety
/// `orbit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_orbit_len(orbit: *const DirorbitOrbit) -> usize {
    orbit.as_ref().map_or(0, |o| o.0.values.len())
}

/// # Safety
/// `orbit` must be a live handle; `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_orbit_value(
    orbit: *const DirorbitOrbit,
    index: usize,
    out: *mut f64,
) -> DirorbitStatus {
    guard(|| {
        let o = &handle(orbit)?.0;
        let v = o.values.get(index).ok_or_else(|| {
            Fail(
                DirorbitStatus::OutOfRange,
                format!("index {index} of {}", o.values.len()),
            )
        })?;
        put(out, v.to_f64())
    })
}

/// Sets `found` to 1 and fills `onset`/`value` if the orbit ends in a run
/// of at least `window` identical values, else sets `found` to 0.
///
/// # Safety
/// `orbit` must be a live handle; out-pointers valid for writing.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_orbit_fixed_point(
    orbit: *const DirorbitOrbit,
    window: usize,
    found: *mut c_int,
    onset: *mut usize,
    value: *mut f64,
) -> DirorbitStatus {
    guard(|| {
        let o = &handle(orbit)?.0;
        if window < 2 {
            return Err(Fail(
                DirorbitStatus::ConfigError,
                "window must be at least 2".into(),
            ));
        }
        match orbit::detect_fixed_point(o, window) {
            Some((v, i)) => {
                put(found, 1)?;
                put(onset, i)?;
                put(value, v.to_f64())
            }
            None => put(found, 0),
        }
    })
}

/// Error series of `orbit` against its exact orbit; `cap` bounds the step
/// count (0 means the default of 64).
///
/// # Safety
/// `orbit` must be a live handle; `out` valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_error_series(
    orbit: *const DirorbitOrbit,
    cap: usize,
    out: *mut *mut DirorbitSeries,
) -> DirorbitStatus {
    guard(|| {
        let o = &handle(orbit)?.0;
        let cap = if cap == 0 { oracle::DEFAULT_CAP } else { cap };
        let series = oracle::error_series(o, &oracle::reference_for(o, cap)?)?;
        put(out, Box::into_raw(Box::new(DirorbitSeries(series))))
    })
}

/// # Safety
/// `series` must be null or a handle from `dirorbit_error_series` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_series_free(series: *mut DirorbitSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_series_len(series: *const DirorbitSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.entries.len())
}

/// `log10` of entry `index`; `-INFINITY` for an exact zero.
///
/// # Safety
/// `series` must be a live handle; `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_series_log10(
    series: *const DirorbitSeries,
    index: usize,
    out: *mut f64,
) -> DirorbitStatus {
    guard(|| {
        let s = &handle(series)?.0;
        if index >= s.entries.len() {
            return Err(Fail(
                DirorbitStatus::OutOfRange,
                format!("index {index} of {}", s.entries.len()),
            ));
        }
        put(out, s.log10(index))
    })
}

/// Entry `index` as six-significant-digit scientific text.
///
/// # Safety
/// `series` must be a live handle; `buf` valid for writing `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dirorbit_series_display(
    series: *const DirorbitSeries,
    index: usize,
    buf: *mut c_char,
    len: usize,
) -> DirorbitStatus {
    guard(|| {
        let s = &handle(series)?.0;
        if index >= s.entries.len() {
            return Err(Fail(
                DirorbitStatus::OutOfRange,
                format!("index {index} of {}", s.entries.len()),
            ));
        }
        copy_out(&s.display(index), buf, len)
    })
}
