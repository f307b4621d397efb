//! C ABI over `pfrac`.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free` function. Strings returned through `char **out`
//! parameters are NUL-terminated, heap-allocated and must be released with
//! [`pfrac_string_free`]. Every function returns a [`PfracStatus`]; on a
//! non-OK status [`pfrac_last_error`] describes the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pfrac::bell_coeffs::{omega_coeff, BellArgs};
use pfrac::identities::{run_suite, IdentityReport, Suite, SuiteRanges};
use pfrac::pfd_engine::{
    build_family_spec, decompose_family, oracle_decompose, verify_equal, ErratumMode, Family,
    FamilyParams, PfdResult, RationalFunctionSpec,
};
use pfrac::symbolic::tables::{emit_table, TableFormat};
use pfrac::symbolic::TableKind;
use pfrac::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfracStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    Domain = 4,
    DivisionByZero = 5,
    Parse = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfracFamily {
    Theorem = 0,
    Beukers6 = 1,
    Ex7 = 2,
    Ex8 = 3,
    Ex9 = 4,
    Ex10 = 5,
    Theta = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfracErratumMode {
    Corrected = 0,
    Printed = 1,
}

/// Family instance. `lambda` and `mu` apply to the theorem family, `theta`
/// to the theta family and `mode` to beukers6; other fields are ignored.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PfracFamilyParams {
    pub family: PfracFamily,
    pub n: u32,
    pub lambda: u32,
    pub mu: u32,
    pub theta: u32,
    pub mode: PfracErratumMode,
}

/// A rational function `scalar * N(x) / prod (x - r)^e`.
pub struct PfracSpec {
    inner: RationalFunctionSpec,
}

/// A partial-fraction decomposition.
pub struct PfracDecomposition {
    inner: PfdResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(PfracStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => PfracStatus::Domain,
            Error::DivisionByZero => PfracStatus::DivisionByZero,
            Error::Usage(_) => PfracStatus::Usage,
            Error::Parse(_) => PfracStatus::Parse,
            Error::Internal(_) => PfracStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn null(what: &str) -> Failure {
    Failure(PfracStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, catching panics, and turns the outcome into a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PfracStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PfracStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PfracStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PfracStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Failure(PfracStatus::Internal, "interior NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_json<T: serde::Serialize>(v: &T) -> FfiResult<String> {
    serde_json::to_string(v).map_err(|e| Failure(PfracStatus::Internal, e.to_string()))
}

impl From<PfracFamilyParams> for FamilyParams {
    fn from(p: PfracFamilyParams) -> Self {
        let family = match p.family {
            PfracFamily::Theorem => Family::Theorem,
            PfracFamily::Beukers6 => Family::Beukers6,
            PfracFamily::Ex7 => Family::Ex7,
            PfracFamily::Ex8 => Family::Ex8,
            PfracFamily::Ex9 => Family::Ex9,
            PfracFamily::Ex10 => Family::Ex10,
            PfracFamily::Theta => Family::Theta,
        };
        FamilyParams {
            family,
            n: p.n,
            lambda: p.lambda,
            mu: p.mu,
            theta: p.theta,
            mode: p.mode.into(),
        }
    }
}

impl From<PfracErratumMode> for ErratumMode {
    fn from(m: PfracErratumMode) -> Self {
        match m {
            PfracErratumMode::Corrected => ErratumMode::Corrected,
            PfracErratumMode::Printed => ErratumMode::Printed,
        }
    }
}

/// Message for the most recent failed call on this thread, or an empty
/// string. Valid until the next `pfrac_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pfrac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pfrac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a spec from JSON `{"scalar", "numerator", "poles": [{"root", "mult"}]}`.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_spec_from_json(json: *const c_char, out: *mut *mut PfracSpec) -> PfracStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner: RationalFunctionSpec =
            serde_json::from_str(text).map_err(|e| Failure(PfracStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(PfracSpec { inner })), "out")
    })
}

/// Builds the rational function of a family instance.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_spec_family(params: PfracFamilyParams, out: *mut *mut PfracSpec) -> PfracStatus {
    guard(|| {
        let inner = build_family_spec(&params.into())?;
        write_out(out, Box::into_raw(Box::new(PfracSpec { inner })), "out")
    })
}

/// # Safety
/// `spec` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_spec_to_json(spec: *const PfracSpec, out: *mut *mut c_char) -> PfracStatus {
    guard(|| {
        let s = deref(spec, "spec")?;
        write_string(out, to_json(&s.inner)?)
    })
}

/// Evaluates the spec at `x` (a rational string such as `"-3/2"`).
///
/// # Safety
/// `spec` must be a valid handle, `x` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_spec_evaluate(
    spec: *const PfracSpec,
    x: *const c_char,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let s = deref(spec, "spec")?;
        let x: pfrac::Rational = read_str(x, "x")?.parse()?;
        write_string(out, s.inner.evaluate(&x)?.to_string())
    })
}

/// # Safety
/// `spec` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn pfrac_spec_free(spec: *mut PfracSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Closed-form decomposition of a family instance.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decompose_family(
    params: PfracFamilyParams,
    out: *mut *mut PfracDecomposition,
) -> PfracStatus {
    guard(|| {
        let inner = decompose_family(&params.into())?;
        write_out(out, Box::into_raw(Box::new(PfracDecomposition { inner })), "out")
    })
}

/// Decomposition by polynomial division and an exact linear solve.
///
/// # Safety
/// `spec` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decompose_oracle(
    spec: *const PfracSpec,
    out: *mut *mut PfracDecomposition,
) -> PfracStatus {
    guard(|| {
        let s = deref(spec, "spec")?;
        let inner = oracle_decompose(&s.inner)?;
        write_out(out, Box::into_raw(Box::new(PfracDecomposition { inner })), "out")
    })
}

/// JSON `{"polynomial_part": [...], "terms": [{"root", "coeffs"}]}`.
///
/// # Safety
/// `pfd` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decomposition_to_json(
    pfd: *const PfracDecomposition,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let p = deref(pfd, "decomposition")?;
        write_string(out, to_json(&p.inner)?)
    })
}

/// Coefficient of `1/(x - root)^power`, zero when absent.
///
/// # Safety
/// `pfd` must be a valid handle, `root` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decomposition_coefficient(
    pfd: *const PfracDecomposition,
    root: *const c_char,
    power: u32,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let p = deref(pfd, "decomposition")?;
        let root: pfrac::Rational = read_str(root, "root")?.parse()?;
        write_string(out, p.inner.coefficient(&root, power as usize).to_string())
    })
}

/// Field-by-field equality of two decompositions.
///
/// # Safety
/// `a` and `b` must be valid handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decomposition_equal(
    a: *const PfracDecomposition,
    b: *const PfracDecomposition,
    out: *mut bool,
) -> PfracStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        write_out(out, a.inner == b.inner, "out")
    })
}

/// # Safety
/// `pfd` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn pfrac_decomposition_free(pfd: *mut PfracDecomposition) {
    if !pfd.is_null() {
        drop(Box::from_raw(pfd));
    }
}

/// Certifies `spec == pfd`. `equal` receives the verdict; when
/// `certificate_json` is non-null it receives the certificate as JSON.
///
/// # Safety
/// Handles must be valid; `equal` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_verify(
    spec: *const PfracSpec,
    pfd: *const PfracDecomposition,
    equal: *mut bool,
    certificate_json: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let cert = verify_equal(&deref(spec, "spec")?.inner, &deref(pfd, "decomposition")?.inner);
        write_out(equal, cert.is_equal(), "equal")?;
        if !certificate_json.is_null() {
            write_string(certificate_json, to_json(&cert)?)?;
        }
        Ok(())
    })
}

/// `Omega_ell(lambda, mu, -k)` as an exact rational string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_omega_coeff(
    lambda: u32,
    mu: u32,
    n: u32,
    k: u32,
    ell: u32,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let args = BellArgs::new(lambda, mu, n, k, ell)?;
        write_string(out, omega_coeff(&args).to_string())
    })
}

/// Coefficient table; `kind` is `omega`, `varpi` or `omega-small` and
/// `format` is `json` or `latex`.
///
/// # Safety
/// `kind` and `format` must be valid C strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfrac_emit_table(
    kind: *const c_char,
    ell_max: u32,
    format: *const c_char,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let kind: TableKind = read_str(kind, "kind")?.parse()?;
        let format: TableFormat = read_str(format, "format")?.parse()?;
        write_string(out, emit_table(kind, ell_max, format)?)
    })
}

/// Runs an identity suite over `n_min..=n_max` with default ranges for the
/// other parameters. Writes the report list as JSON and whether every
/// report passed.
///
/// # Safety
/// `suite` must be a valid C string; `all_passed` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pfrac_run_suite(
    suite: *const c_char,
    n_min: u32,
    n_max: u32,
    mode: PfracErratumMode,
    all_passed: *mut bool,
    out: *mut *mut c_char,
) -> PfracStatus {
    guard(|| {
        let suite: Suite = read_str(suite, "suite")?.parse()?;
        if n_min > n_max {
            return Err(Failure(PfracStatus::Usage, format!("empty range {n_min}..{n_max}")));
        }
        let mut ranges = SuiteRanges::new(n_min..=n_max);
        ranges.mode = mode.into();
        let reports = run_suite(suite, &ranges)?;
        write_out(all_passed, reports.iter().all(IdentityReport::passed), "all_passed")?;
        write_string(out, to_json(&reports)?)
    })
}
