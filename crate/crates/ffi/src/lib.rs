//! C ABI over `hecke-core`.
//!
//! Every entry point returns a [`HeckeStatus`]; results come back through
//! out-parameters. Series and reports are opaque handles owned by the caller
//! and released with the matching `_free` function. Strings returned by the
//! library are released with [`hecke_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hecke_core::identities::catalog;
use hecke_core::partitions::{partition_table, PartitionFamily};
use hecke_core::report::{Status, VerificationReport};
use hecke_core::{truncated, Error, HalfExp, Series};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownId = 3,
    InvalidArgument = 4,
    /// Exponent outside the known range of a series.
    OutOfRange = 5,
    /// Coefficient does not fit the requested integer type.
    Overflow = 6,
    /// The core engine reported an error (non-unit, pole, divergence, ...).
    Computation = 7,
    Panic = 8,
}

/// Outcome of a verification.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeOutcome {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// Which side of an identity to expand.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeSide {
    Lhs = 0,
    Rhs = 1,
}

/// Opaque truncated Laurent series in `q^(1/2)`.
pub struct HeckeSeries(Series);

/// Opaque verification report.
pub struct HeckeReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn core_status(e: &Error) -> HeckeStatus {
    match e {
        Error::UnknownId(_) => HeckeStatus::UnknownId,
        Error::InvalidArgument(_) | Error::OracleBound { .. } => HeckeStatus::InvalidArgument,
        Error::TruncationBound { .. } => HeckeStatus::OutOfRange,
        _ => HeckeStatus::Computation,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard<F>(f: F) -> HeckeStatus
where
    F: FnOnce() -> Result<(), (HeckeStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HeckeStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HeckeStatus::Panic
        }
    }
}

fn from_core(e: Error) -> (HeckeStatus, String) {
    (core_status(&e), e.to_string())
}

fn null(what: &str) -> (HeckeStatus, String) {
    (HeckeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HeckeStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HeckeStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    // SAFETY: callers check `out` for null before computing.
    out.write(value);
}

fn positive_order(order: i64) -> Result<HalfExp, (HeckeStatus, String)> {
    if order < 1 {
        return Err((HeckeStatus::InvalidArgument, format!("order must be at least 1, got {order}")));
    }
    Ok(HalfExp::from_q(order))
}

fn into_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hecke_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hecke_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of catalog identities.
#[no_mangle]
pub extern "C" fn hecke_identity_count() -> usize {
    catalog::CATALOG.len()
}

/// Id of catalog entry `index` as a static string, or null when out of range.
#[no_mangle]
pub extern "C" fn hecke_identity_id(index: usize) -> *const c_char {
    static IDS: std::sync::OnceLock<Vec<CString>> = std::sync::OnceLock::new();
    let ids = IDS.get_or_init(|| catalog::CATALOG.iter().map(|e| CString::new(e.id).unwrap()).collect());
    ids.get(index).map_or(ptr::null(), |s| s.as_ptr())
}

/// Verifies a catalog identity below `q^order`.
///
/// # Safety
/// `id` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_verify_identity(id: *const c_char, order: i64, out: *mut *mut HeckeReport) -> HeckeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let id = read_str(id, "id")?;
        let report = catalog::verify_identity(id, positive_order(order)?).map_err(from_core)?;
        write_out(out, Box::into_raw(Box::new(HeckeReport(report))));
        Ok(())
    })
}

/// Checks a truncated theorem at index `m` below `q^order`.
///
/// # Safety
/// `id` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_verify_truncated(
    id: *const c_char,
    m: i64,
    order: i64,
    out: *mut *mut HeckeReport,
) -> HeckeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let id = read_str(id, "id")?;
        if m < 0 {
            return Err((HeckeStatus::InvalidArgument, format!("index must be nonnegative, got {m}")));
        }
        let report = truncated::check_truncated(id, m, positive_order(order)?).map_err(from_core)?;
        write_out(out, Box::into_raw(Box::new(HeckeReport(report))));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hecke_report_outcome(report: *const HeckeReport, out: *mut HeckeOutcome) -> HeckeStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let outcome = match r.0.status {
            Status::Pass => HeckeOutcome::Pass,
            Status::Fail => HeckeOutcome::Fail,
            Status::Skipped => HeckeOutcome::Skipped,
        };
        write_out(out, outcome);
        Ok(())
    })
}

/// First disagreement of a failed report. Coefficients are decimal strings
/// the caller frees.
///
/// # Safety
/// `report` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_report_mismatch(
    report: *const HeckeReport,
    exponent_halves: *mut i64,
    lhs: *mut *mut c_char,
    rhs: *mut *mut c_char,
) -> HeckeStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if exponent_halves.is_null() || lhs.is_null() || rhs.is_null() {
            return Err(null("out"));
        }
        let m = r.0.mismatch.as_ref().ok_or_else(|| (HeckeStatus::InvalidArgument, "report has no mismatch".into()))?;
        write_out(exponent_halves, m.exponent.halves());
        write_out(lhs, into_string(m.lhs.to_string()));
        write_out(rhs, into_string(m.rhs.to_string()));
        Ok(())
    })
}

/// The report as one JSON object; free with [`hecke_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_report_json(report: *const HeckeReport, out: *mut *mut c_char) -> HeckeStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = serde_json::to_string(&r.0.to_json(false)).map_err(|e| (HeckeStatus::Computation, e.to_string()))?;
        write_out(out, into_string(json));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hecke_report_free(report: *mut HeckeReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Expands one side of a catalog identity below `q^order`.
///
/// # Safety
/// `id` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_identity_expand(
    id: *const c_char,
    side: HeckeSide,
    order: i64,
    out: *mut *mut HeckeSeries,
) -> HeckeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let entry = catalog::lookup(read_str(id, "id")?).map_err(from_core)?;
        let order = positive_order(order)?;
        let s = match side {
            HeckeSide::Lhs => (entry.lhs)(order, catalog::DEFAULT_Z),
            HeckeSide::Rhs => entry.rhs.eval(order, catalog::DEFAULT_Z),
        }
        .map_err(from_core)?;
        write_out(out, Box::into_raw(Box::new(HeckeSeries(s.truncated(order)))));
        Ok(())
    })
}

/// Truncation bound in half-units, or `INT64_MAX` for an exact series.
///
/// # Safety
/// `series` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_trunc_halves(series: *const HeckeSeries, out: *mut i64) -> HeckeStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, s.0.trunc().map_or(i64::MAX, HalfExp::halves));
        Ok(())
    })
}

/// Coefficient of `q^(exponent_halves/2)` as an `int64_t`.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_coeff(series: *const HeckeSeries, exponent_halves: i64, out: *mut i64) -> HeckeStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = s.0.coeff(HalfExp(exponent_halves)).map_err(from_core)?;
        let v = i64::try_from(&c).map_err(|_| (HeckeStatus::Overflow, format!("coefficient {c} exceeds int64")))?;
        write_out(out, v);
        Ok(())
    })
}

/// Coefficient as a decimal string; free with [`hecke_string_free`].
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_coeff_string(
    series: *const HeckeSeries,
    exponent_halves: i64,
    out: *mut *mut c_char,
) -> HeckeStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = s.0.coeff(HalfExp(exponent_halves)).map_err(from_core)?;
        write_out(out, into_string(c.to_string()));
        Ok(())
    })
}

/// # Safety
/// `series` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_free(series: *mut HeckeSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Number of partitions of `n` in a family (`"ppe"`, `"pp"` or `"pepod"`),
/// as a decimal string freed with [`hecke_string_free`].
///
/// # Safety
/// `family` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_partition_count(family: *const c_char, n: i64, out: *mut *mut c_char) -> HeckeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(family, "family")?;
        let f: PartitionFamily = name.parse().map_err(from_core)?;
        if n < 0 {
            return Err((HeckeStatus::InvalidArgument, format!("n must be nonnegative, got {n}")));
        }
        let table = partition_table(f, n).map_err(from_core)?;
        write_out(out, into_string(table[n as usize].to_string()));
        Ok(())
    })
}
