//! C ABI for `slitwave`.
//!
//! Every fallible function returns an [`SwStatus`] and writes its result
//! through an out-pointer. On failure the thread-local message returned by
//! [`sw_last_error_message`] describes what went wrong. Scenarios and results
//! are opaque handles allocated by this library and released with the
//! matching `*_free` function. Strings handed out as `char *` are owned by the
//! caller and must be released with [`sw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use slitwave::analytic::{
    classical_displacement, energy_peak_spacing, fringe_visibility, shutter_current_ratio, time_slit_peak_energies,
    time_slit_period, TimeSlitConfig,
};
use slitwave::output::OutputRecord;
use slitwave::scenarios::{builtin, catalog, run_scenario, ScenarioResult, ScenarioSpec};
use slitwave::units::{Energy, Length, Particle, Time};
use slitwave::validate::{run_validation, ValidateOptions};
use slitwave::{specfun, Error};

/// Electron rest energy in eV, for the `mass_ev` arguments.
pub const SW_ELECTRON_MASS_EV: f64 = 510_998.950_0;
const _: () = assert!(SW_ELECTRON_MASS_EV == slitwave::units::ELECTRON_MASS_EV);

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Parameters outside the physical or configured domain.
    InvalidArgument = 3,
    UnknownScenario = 4,
    /// The numerical oracle could not resolve the requested state, or a
    /// feature extraction found nothing to measure.
    Numerical = 5,
    /// Malformed JSON or an I/O failure.
    Parse = 6,
    /// The requested quantity or column does not exist.
    NotFound = 7,
    /// The caller's buffer is shorter than the data.
    BufferTooSmall = 8,
    /// The library panicked. This is a bug.
    Internal = 9,
}

/// Selects a column of a scenario result.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwColumn {
    X = 0,
    Analytic = 1,
    Numeric = 2,
}

/// A scenario description (opaque).
pub struct SwScenario(ScenarioSpec);

/// The outcome of running a scenario (opaque).
pub struct SwResult {
    result: ScenarioResult,
    record: OutputRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: SwStatus,
    message: String,
}

impl Failure {
    fn new(status: SwStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

fn classify(e: &Error) -> SwStatus {
    match e {
        Error::Scenario { source, .. } => classify(source),
        Error::UnknownScenario(_) => SwStatus::UnknownScenario,
        Error::UnderResolved { .. }
        | Error::MomentumWindow { .. }
        | Error::Featureless
        | Error::InsufficientOscillations { .. }
        | Error::Sampling(_) => SwStatus::Numerical,
        Error::Io(_) | Error::Json(_) => SwStatus::Parse,
        _ => SwStatus::InvalidArgument,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(classify(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> SwStatus {
    let failure = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return SwStatus::Ok,
        Ok(Err(failure)) => failure,
        Err(_) => Failure::new(SwStatus::Internal, "internal panic"),
    };
    let text = CString::new(failure.message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    failure.status
}

/// # Safety
/// `p` must be null or valid for writes of `T`.
unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Outcome {
    if p.is_null() {
        return Err(Failure::new(SwStatus::NullPointer, format!("{what} is null")));
    }
    p.write(value);
    Ok(())
}

/// # Safety
/// `p` must be null or a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(SwStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or point to a live `T`.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(SwStatus::NullPointer, format!("{what} is null")))
}

fn owned_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn particle(mass_ev: f64, energy_ev: f64) -> Result<Particle, Failure> {
    Ok(Particle::with_energy(mass_ev, Energy::ev(energy_ev))?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent failed call on this thread, or null if none
/// has failed. The pointer stays valid until the next failing call on the
/// same thread.
#[no_mangle]
pub extern "C" fn sw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Spacing of the energy fringes behind two pulses `delay_fs` apart, in eV.
///
/// # Safety
/// `out_ev` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_energy_peak_spacing(delay_fs: f64, out_ev: *mut f64) -> SwStatus {
    guard(|| {
        let cfg = TimeSlitConfig::symmetric(Time::fs(delay_fs))?;
        write(out_ev, energy_peak_spacing(&cfg).to_ev(), "out_ev")
    })
}

/// Kinetic energy of spectral peak `order` for symmetric pulses, in eV.
///
/// # Safety
/// `out_ev` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_time_slit_peak_energy(
    mass_ev: f64,
    energy_ev: f64,
    delay_fs: f64,
    order: i64,
    out_ev: *mut f64,
) -> SwStatus {
    guard(|| {
        let p = particle(mass_ev, energy_ev)?;
        let cfg = TimeSlitConfig::symmetric(Time::fs(delay_fs))?;
        write(out_ev, time_slit_peak_energies(order, &cfg, &p)?.to_ev(), "out_ev")
    })
}

/// Local oscillation period of the density at `z_nm`, `t_fs`, in fs.
///
/// # Safety
/// `out_fs` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_time_slit_period(
    mass_ev: f64,
    energy_ev: f64,
    delay_fs: f64,
    z_nm: f64,
    t_fs: f64,
    out_fs: *mut f64,
) -> SwStatus {
    guard(|| {
        let p = particle(mass_ev, energy_ev)?;
        let cfg = TimeSlitConfig::symmetric(Time::fs(delay_fs))?;
        write(out_fs, time_slit_period(Length::nm(z_nm), Time::fs(t_fs), &cfg, &p)?.to_fs(), "out_fs")
    })
}

/// Fringe visibility for slit weight `alpha` in [0, 1].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_fringe_visibility(alpha: f64, out: *mut f64) -> SwStatus {
    guard(|| write(out, fringe_visibility(alpha)?, "out"))
}

/// Classical wave-front position after `t_fs`, in nm.
///
/// # Safety
/// `out_nm` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_classical_displacement(mass_ev: f64, energy_ev: f64, t_fs: f64, out_nm: *mut f64) -> SwStatus {
    guard(|| {
        let p = particle(mass_ev, energy_ev)?;
        write(out_nm, classical_displacement(Time::fs(t_fs), &p)?.to_nm(), "out_nm")
    })
}

/// Current behind a shutter opened at `t = 0`, relative to the stationary
/// current, at `z_nm` and `t_fs`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_shutter_current_ratio(
    mass_ev: f64,
    energy_ev: f64,
    z_nm: f64,
    t_fs: f64,
    out: *mut f64,
) -> SwStatus {
    guard(|| {
        let p = particle(mass_ev, energy_ev)?;
        write(out, shutter_current_ratio(Length::nm(z_nm), Time::fs(t_fs), &p)?, "out")
    })
}

/// Faddeeva function `w(re + i im)`.
///
/// # Safety
/// `out_re` and `out_im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_faddeeva(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> SwStatus {
    guard(|| {
        let w = specfun::faddeeva(Complex64::new(re, im))?;
        write(out_re, w.re, "out_re")?;
        write(out_im, w.im, "out_im")
    })
}

/// Fresnel integrals `C(u)` and `S(u)`.
///
/// # Safety
/// `out_c` and `out_s` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_fresnel(u: f64, out_c: *mut f64, out_s: *mut f64) -> SwStatus {
    guard(|| {
        let (c, s) = specfun::fresnel(u)?;
        write(out_c, c, "out_c")?;
        write(out_s, s, "out_s")
    })
}

/// Newline-separated names of the builtin scenarios.
///
/// # Safety
/// `out` must be valid for writes; free the string with [`sw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sw_builtin_names(out: *mut *mut c_char) -> SwStatus {
    guard(|| {
        let names: Vec<String> = catalog().into_iter().map(|s| s.name).collect();
        write(out, owned_string(names.join("\n")), "out")
    })
}

/// Looks up a builtin scenario by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_builtin(name: *const c_char, out: *mut *mut SwScenario) -> SwStatus {
    guard(|| {
        let spec = builtin(read_str(name, "name")?)?;
        write(out, Box::into_raw(Box::new(SwScenario(spec))), "out")
    })
}

/// Parses a scenario from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_from_json(json: *const c_char, out: *mut *mut SwScenario) -> SwStatus {
    guard(|| {
        let spec = ScenarioSpec::from_json(read_str(json, "json")?)?;
        write(out, Box::into_raw(Box::new(SwScenario(spec))), "out")
    })
}

/// Applies one `key=value` override, as accepted by the command line `--set`.
/// The scenario is unchanged when the override is rejected.
///
/// # Safety
/// `scenario` must be a live handle and `assignment` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_set(scenario: *mut SwScenario, assignment: *const c_char) -> SwStatus {
    guard(|| {
        let text = read_str(assignment, "assignment")?;
        let handle = scenario
            .as_mut()
            .ok_or_else(|| Failure::new(SwStatus::NullPointer, "scenario is null"))?;
        handle.0 = handle.0.with_overrides(&[text])?;
        Ok(())
    })
}

/// Serializes a scenario to JSON.
///
/// # Safety
/// `scenario` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_to_json(scenario: *const SwScenario, out: *mut *mut c_char) -> SwStatus {
    guard(|| {
        let spec = deref(scenario, "scenario")?;
        write(out, owned_string(spec.0.to_json()), "out")
    })
}

/// # Safety
/// `scenario` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_free(scenario: *mut SwScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs a scenario. The handle stays owned by the caller.
///
/// # Safety
/// `scenario` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_scenario_run(scenario: *const SwScenario, out: *mut *mut SwResult) -> SwStatus {
    guard(|| {
        let spec = deref(scenario, "scenario")?;
        let result = run_scenario(&spec.0)?;
        let record = OutputRecord::from_result(&result);
        write(out, Box::into_raw(Box::new(SwResult { result, record })), "out")
    })
}

/// Number of rows of the result table.
///
/// # Safety
/// `result` must be a live handle and `out_len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_result_len(result: *const SwResult, out_len: *mut usize) -> SwStatus {
    guard(|| write(out_len, deref(result, "result")?.result.analytic.len(), "out_len"))
}

/// Copies one column into `buffer`, which must hold at least
/// [`sw_result_len`] values. Asking for the numeric column of a run without
/// one yields `SW_STATUS_NOT_FOUND`.
///
/// # Safety
/// `result` must be a live handle and `buffer` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn sw_result_column(
    result: *const SwResult,
    column: SwColumn,
    buffer: *mut f64,
    capacity: usize,
) -> SwStatus {
    guard(|| {
        let r = &deref(result, "result")?.result;
        let values = match column {
            SwColumn::X => &r.analytic.x,
            SwColumn::Analytic => &r.analytic.y,
            SwColumn::Numeric => match &r.numeric {
                Some(n) => &n.y,
                None => return Err(Failure::new(SwStatus::NotFound, "this run has no numeric column")),
            },
        };
        if capacity < values.len() {
            return Err(Failure::new(
                SwStatus::BufferTooSmall,
                format!("column has {} values, buffer holds {capacity}", values.len()),
            ));
        }
        if buffer.is_null() {
            return Err(Failure::new(SwStatus::NullPointer, "buffer is null"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len());
        Ok(())
    })
}

/// Looks up a named derived quantity of the run.
///
/// # Safety
/// `result` must be a live handle, `name` a NUL-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_result_quantity(result: *const SwResult, name: *const c_char, out: *mut f64) -> SwStatus {
    guard(|| {
        let r = deref(result, "result")?;
        let name = read_str(name, "name")?;
        let value = r
            .result
            .quantity(name)
            .ok_or_else(|| Failure::new(SwStatus::NotFound, format!("no quantity `{name}`")))?;
        write(out, value, "out")
    })
}

/// The result as CSV with its metadata header.
///
/// # Safety
/// `result` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_result_to_csv(result: *const SwResult, out: *mut *mut c_char) -> SwStatus {
    guard(|| write(out, owned_string(deref(result, "result")?.record.to_csv()), "out"))
}

/// The result as a JSON document.
///
/// # Safety
/// `result` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_result_to_json(result: *const SwResult, out: *mut *mut c_char) -> SwStatus {
    guard(|| write(out, owned_string(deref(result, "result")?.record.to_json()), "out"))
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_result_free(result: *mut SwResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Runs the self-validation suite. `out_passed` receives whether every check
/// passed; `out_report`, if not null, receives the JSON report. A failing
/// check is not an error: the call still returns `SW_STATUS_OK`.
///
/// # Safety
/// `out_passed` must be valid for writes; `out_report` must be null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn sw_validate(coarse: bool, out_passed: *mut bool, out_report: *mut *mut c_char) -> SwStatus {
    guard(|| {
        if out_passed.is_null() {
            return Err(Failure::new(SwStatus::NullPointer, "out_passed is null"));
        }
        let report = run_validation(ValidateOptions { coarse });
        out_passed.write(report.passed());
        if !out_report.is_null() {
            out_report.write(owned_string(report.to_json()));
        }
        Ok(())
    })
}
