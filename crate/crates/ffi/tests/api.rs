use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pfrac::bell_coeffs::{omega_coeff, BellArgs};
use pfrac_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pfrac_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pfrac_last_error()).to_str().unwrap().to_owned() }
}

fn theorem(n: u32, lambda: u32, mu: u32) -> PfracFamilyParams {
    PfracFamilyParams {
        family: PfracFamily::Theorem,
        n,
        lambda,
        mu,
        theta: 0,
        mode: PfracErratumMode::Corrected,
    }
}

#[test]
fn family_decomposition_matches_oracle() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(pfrac_spec_family(theorem(2, 2, 0), &mut spec), PfracStatus::Ok);
        let mut closed = ptr::null_mut();
        assert_eq!(pfrac_decompose_family(theorem(2, 2, 0), &mut closed), PfracStatus::Ok);
        let mut oracle = ptr::null_mut();
        assert_eq!(pfrac_decompose_oracle(spec, &mut oracle), PfracStatus::Ok);

        let mut same = false;
        assert_eq!(pfrac_decomposition_equal(closed, oracle, &mut same), PfracStatus::Ok);
        assert!(same);

        let mut equal = false;
        let mut cert = ptr::null_mut();
        assert_eq!(pfrac_verify(spec, closed, &mut equal, &mut cert), PfracStatus::Ok);
        assert!(equal);
        assert!(take(cert).contains("\"verdict\":\"equal\""));

        let root = CString::new("0").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(pfrac_decomposition_coefficient(closed, root.as_ptr(), 1, &mut c), PfracStatus::Ok);
        assert_eq!(take(c), "-3");

        let mut json = ptr::null_mut();
        assert_eq!(pfrac_decomposition_to_json(closed, &mut json), PfracStatus::Ok);
        assert_eq!(
            take(json),
            r#"{"polynomial_part":[],"terms":[{"root":"-2","coeffs":["3","1"]},{"root":"-1","coeffs":["0","4"]},{"root":"0","coeffs":["-3","1"]}]}"#
        );

        pfrac_decomposition_free(closed);
        pfrac_decomposition_free(oracle);
        pfrac_spec_free(spec);
    }
}

#[test]
fn spec_json_and_evaluation() {
    unsafe {
        let json = CString::new(r#"{"scalar":"1","numerator":["1"],"poles":[{"root":"0","mult":1},{"root":"-1","mult":1}]}"#).unwrap();
        let mut spec = ptr::null_mut();
        assert_eq!(pfrac_spec_from_json(json.as_ptr(), &mut spec), PfracStatus::Ok);
        let x = CString::new("1").unwrap();
        let mut v = ptr::null_mut();
        assert_eq!(pfrac_spec_evaluate(spec, x.as_ptr(), &mut v), PfracStatus::Ok);
        assert_eq!(take(v), "1/2");

        let pole = CString::new("-1").unwrap();
        assert_eq!(pfrac_spec_evaluate(spec, pole.as_ptr(), &mut v), PfracStatus::Domain);
        assert!(last_error().contains("pole"));

        let mut back = ptr::null_mut();
        assert_eq!(pfrac_spec_to_json(spec, &mut back), PfracStatus::Ok);
        assert_eq!(
            take(back),
            r#"{"scalar":"1","numerator":["1"],"poles":[{"root":"-1","mult":1},{"root":"0","mult":1}]}"#
        );
        pfrac_spec_free(spec);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        let mut spec = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(pfrac_spec_from_json(bad.as_ptr(), &mut spec), PfracStatus::Parse);
        assert!(!last_error().is_empty());
        assert_eq!(pfrac_spec_from_json(ptr::null(), &mut spec), PfracStatus::NullPointer);

        let mut pfd = ptr::null_mut();
        assert_eq!(pfrac_decompose_family(theorem(1, 1, 2), &mut pfd), PfracStatus::Usage);
        let theta = PfracFamilyParams { family: PfracFamily::Theta, theta: 8, ..theorem(1, 1, 0) };
        assert_eq!(pfrac_decompose_family(theta, &mut pfd), PfracStatus::Usage);

        let mut s = ptr::null_mut();
        assert_eq!(pfrac_omega_coeff(1, 0, 1, 2, 1, &mut s), PfracStatus::Domain);
        assert_eq!(pfrac_omega_coeff(2, 0, 1, 0, 1, &mut s), PfracStatus::Ok);
        let expected = omega_coeff(&BellArgs::new(2, 0, 1, 0, 1).unwrap()).to_string();
        assert_eq!(take(s), expected);
        assert!(last_error().is_empty());

        let kind = CString::new("sigma").unwrap();
        let fmt = CString::new("json").unwrap();
        assert_eq!(pfrac_emit_table(kind.as_ptr(), 2, fmt.as_ptr(), &mut s), PfracStatus::Usage);

        pfrac_spec_free(ptr::null_mut());
        pfrac_decomposition_free(ptr::null_mut());
        pfrac_string_free(ptr::null_mut());
    }
}

#[test]
fn suites_and_tables() {
    unsafe {
        let suite = CString::new("beukers").unwrap();
        let mut passed = false;
        let mut out = ptr::null_mut();
        assert_eq!(
            pfrac_run_suite(suite.as_ptr(), 2, 2, PfracErratumMode::Printed, &mut passed, &mut out),
            PfracStatus::Ok
        );
        assert!(!passed);
        assert!(take(out).contains(r#""computed":"216""#));
        assert_eq!(
            pfrac_run_suite(suite.as_ptr(), 1, 8, PfracErratumMode::Corrected, &mut passed, &mut out),
            PfracStatus::Ok
        );
        assert!(passed);
        take(out);
        assert_eq!(
            pfrac_run_suite(suite.as_ptr(), 3, 1, PfracErratumMode::Corrected, &mut passed, &mut out),
            PfracStatus::Usage
        );

        let kind = CString::new("omega").unwrap();
        let fmt = CString::new("latex").unwrap();
        assert_eq!(pfrac_emit_table(kind.as_ptr(), 2, fmt.as_ptr(), &mut out), PfracStatus::Ok);
        assert!(take(out).starts_with("\\begin{align*}"));
    }
}
