//! C ABI for `cbmw`.
//!
//! Objects are opaque handles released with the matching `*_free`. Every
//! fallible call returns a [`CbmwStatus`]; on failure the message is
//! available from [`cbmw_last_error_message`] on the same thread. Strings
//! returned through `char **` outputs are owned by the caller and released
//! with [`cbmw_string_free`]. Rationals cross the boundary as strings `"p/q"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cbmw::admissibility::{
    check_generic_configuration, default_neg_depth, default_truncation, eta_table_from_series,
    generate_instance_with, verify_equivalence, AdmissibilityReport, Checker, EquivalenceConfig,
    GroundRingInstance, RhoChoice,
};
use cbmw::cli::{table_lines, ParamsFile, ReportFile, TableKind};
use cbmw::exact::Rational;
use cbmw::Error;

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbmwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    OutOfRange = 5,
    ExcludedConfiguration = 6,
    QMinusQInvVanishes = 7,
    DivisionByZero = 8,
    Internal = 9,
    Panic = 10,
}

impl From<&Error> for CbmwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => CbmwStatus::Parse,
            Error::InvalidArgument(_) => CbmwStatus::InvalidArgument,
            Error::OutOfRange(_) => CbmwStatus::OutOfRange,
            Error::ExcludedConfiguration(_) => CbmwStatus::ExcludedConfiguration,
            Error::QMinusQInvVanishes => CbmwStatus::QMinusQInvVanishes,
            Error::DivisionByZero(_) => CbmwStatus::DivisionByZero,
            Error::NonUnitConstantTerm | Error::DirectionMismatch | Error::Internal(_) => {
                CbmwStatus::Internal
            }
        }
    }
}

/// Selects one verdict of a report.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbmwVerdict {
    GroundRing = 0,
    Weak = 1,
    WilcoxYu = 2,
    UAdmissible = 3,
}

/// Table selector for [`cbmw_table`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbmwTable {
    Mu = 0,
    Xi = 1,
    Gamma = 2,
    ACoeffs = 3,
}

impl From<CbmwTable> for TableKind {
    fn from(t: CbmwTable) -> Self {
        match t {
            CbmwTable::Mu => TableKind::Mu,
            CbmwTable::Xi => TableKind::Xi,
            CbmwTable::Gamma => TableKind::Gamma,
            CbmwTable::ACoeffs => TableKind::ACoeffs,
        }
    }
}

/// Ground-ring parameters with deltas up to a truncation.
pub struct CbmwInstance(GroundRingInstance);

/// Verdicts of one check.
pub struct CbmwReport {
    report: AdmissibilityReport,
    timing_ms: u64,
}

/// Summary of a randomized equivalence run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CbmwVerifySummary {
    pub samples: usize,
    pub forward_passed: usize,
    pub perturbations: usize,
    pub perturbations_detected: usize,
    pub morphisms_invariant: usize,
    pub symbolic_families: usize,
    pub symbolic_passed: usize,
    /// Nonzero when every check held.
    pub all_passed: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CbmwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

type FfiResult<T> = std::result::Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> CbmwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CbmwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside cbmw");
            CbmwStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CbmwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CbmwStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Failure(CbmwStatus::Internal, "interior NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn optional(n: i64) -> Option<usize> {
    usize::try_from(n).ok()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cbmw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or came from this library.
#[no_mangle]
pub unsafe extern "C" fn cbmw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the u-admissible instance for `u[0..r]` and `q`. `rho_choice` is
/// one of `minus-a0`, `plus-a0`, `q-inv-a0`, `minus-q-a0`, or null for the
/// normalized root. Negative `max_a` or `neg_depth` select the defaults.
///
/// # Safety
/// `u` points to `r` NUL-terminated strings; `q` is a NUL-terminated string;
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_generate(
    r: usize,
    u: *const *const c_char,
    q: *const c_char,
    rho_choice: *const c_char,
    max_a: i64,
    neg_depth: i64,
    out: *mut *mut CbmwInstance,
) -> CbmwStatus {
    guard(|| {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()).into());
        }
        if u.is_null() {
            return Err(null("u"));
        }
        let u = (0..r)
            .map(|i| str_arg(*u.add(i), "u entry").and_then(|s| Ok(s.parse::<Rational>()?)))
            .collect::<FfiResult<Vec<_>>>()?;
        let q: Rational = str_arg(q, "q")?.parse()?;
        if u.iter().any(Rational::is_zero) || q.is_zero() {
            return Err(Error::InvalidArgument("u and q must be nonzero".into()).into());
        }
        let choice = if rho_choice.is_null() {
            RhoChoice::normalized(r)
        } else {
            str_arg(rho_choice, "rho_choice")?.parse()?
        };
        check_generic_configuration(&u, &q)?;
        let n = optional(max_a).unwrap_or_else(|| default_truncation(r));
        let d = optional(neg_depth).unwrap_or_else(|| default_neg_depth(r).min(n));
        let table = eta_table_from_series(r, n)?;
        let instance = generate_instance_with(&table, &u, &q, choice, n, d)?;
        write_out(out, Box::into_raw(Box::new(CbmwInstance(instance))), "out")
    })
}

/// Parses a parameter file (the JSON written by `cbmw gen`).
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_from_json(
    json: *const c_char,
    out: *mut *mut CbmwInstance,
) -> CbmwStatus {
    guard(|| {
        let file = ParamsFile::parse(str_arg(json, "json")?)?;
        let instance = file.to_instance(file.max_a, file.neg_depth)?;
        write_out(out, Box::into_raw(Box::new(CbmwInstance(instance))), "out")
    })
}

/// # Safety
/// `instance` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_to_json(
    instance: *const CbmwInstance,
    out: *mut *mut c_char,
) -> CbmwStatus {
    guard(|| {
        let inst = ref_arg(instance, "instance")?;
        write_string(out, ParamsFile::from_instance(&inst.0).to_json())
    })
}

/// Rank `r`, or 0 for a null handle.
///
/// # Safety
/// `instance` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_rank(instance: *const CbmwInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.0.rank())
}

/// `delta_a` for `-neg_depth <= a <= max_a`.
///
/// # Safety
/// `instance` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_delta(
    instance: *const CbmwInstance,
    a: i64,
    out: *mut *mut c_char,
) -> CbmwStatus {
    guard(|| {
        let inst = ref_arg(instance, "instance")?;
        let value = inst.0.delta(a).ok_or_else(|| {
            Error::OutOfRange(format!(
                "a = {a} is outside -{}..={}",
                inst.0.neg_depth(),
                inst.0.max_a()
            ))
        })?;
        write_string(out, value.to_string())
    })
}

/// Replaces `delta_a` for `0 <= a <= max_a` and recomputes the negative deltas.
///
/// # Safety
/// `instance` is a live handle; `value` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_set_delta(
    instance: *mut CbmwInstance,
    a: usize,
    value: *const c_char,
) -> CbmwStatus {
    guard(|| {
        let value: Rational = str_arg(value, "value")?.parse()?;
        let inst = instance.as_mut().ok_or_else(|| null("instance"))?;
        inst.0 = inst.0.with_delta(a, value)?;
        Ok(())
    })
}

/// # Safety
/// `instance` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cbmw_instance_free(instance: *mut CbmwInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Runs every check up to the instance's own truncation.
///
/// # Safety
/// `instance` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_check(
    instance: *const CbmwInstance,
    out: *mut *mut CbmwReport,
) -> CbmwStatus {
    guard(|| {
        let inst = &ref_arg(instance, "instance")?.0;
        let start = std::time::Instant::now();
        let report = Checker::new(inst.rank(), inst.max_a())?.check(inst)?;
        let timing_ms = start.elapsed().as_millis() as u64;
        write_out(
            out,
            Box::into_raw(Box::new(CbmwReport { report, timing_ms })),
            "out",
        )
    })
}

/// 1 if the verdict passed, 0 if it failed, -1 for a null handle.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cbmw_report_passed(report: *const CbmwReport, which: CbmwVerdict) -> i32 {
    let Some(rep) = report.as_ref() else {
        return -1;
    };
    let flags = rep.report.flags();
    let i = match which {
        CbmwVerdict::GroundRing => 0,
        CbmwVerdict::Weak => 1,
        CbmwVerdict::WilcoxYu => 2,
        CbmwVerdict::UAdmissible => 3,
    };
    i32::from(flags[i])
}

/// 1 if every verdict passed, 0 otherwise, -1 for a null handle.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cbmw_report_all_passed(report: *const CbmwReport) -> i32 {
    report
        .as_ref()
        .map_or(-1, |r| i32::from(r.report.all_passed()))
}

/// The report file written by `cbmw check`.
///
/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_report_to_json(
    report: *const CbmwReport,
    out: *mut *mut c_char,
) -> CbmwStatus {
    guard(|| {
        let rep = ref_arg(report, "report")?;
        write_string(out, ReportFile::new(&rep.report, rep.timing_ms).to_json())
    })
}

/// # Safety
/// `report` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cbmw_report_free(report: *mut CbmwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Newline-separated `name_index = value` lines. Negative `max` selects the
/// default `2r + 8`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_table(
    r: usize,
    what: CbmwTable,
    max: i64,
    out: *mut *mut c_char,
) -> CbmwStatus {
    guard(|| {
        let lines = table_lines(r, what.into(), optional(max))?;
        write_string(out, lines.join("\n"))
    })
}

/// Randomized equivalence run with default truncation and the symbolic
/// suite.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cbmw_verify(
    r: usize,
    samples: usize,
    seed: u64,
    out: *mut CbmwVerifySummary,
) -> CbmwStatus {
    guard(|| {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()).into());
        }
        let report = verify_equivalence(&EquivalenceConfig::new(r, samples, seed))?;
        let summary = CbmwVerifySummary {
            samples: report.samples.len(),
            forward_passed: report.forward_passed(),
            perturbations: report.perturbations(),
            perturbations_detected: report.perturbations_detected(),
            morphisms_invariant: report.morphisms_invariant(),
            symbolic_families: report.symbolic.len(),
            symbolic_passed: report.symbolic.iter().filter(|f| f.passed()).count(),
            all_passed: i32::from(report.all_passed()),
        };
        write_out(out, summary, "out")
    })
}
