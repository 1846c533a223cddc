use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cbmw_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cbmw_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cbmw_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn generate(u: &[&str], q: &str, choice: Option<&str>) -> (CbmwStatus, *mut CbmwInstance) {
    let owned: Vec<CString> = u.iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let q = CString::new(q).unwrap();
    let choice = choice.map(|c| CString::new(c).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        cbmw_instance_generate(
            u.len(),
            ptrs.as_ptr(),
            q.as_ptr(),
            choice.as_ref().map_or(ptr::null(), |c| c.as_ptr()),
            -1,
            -1,
            &mut out,
        )
    };
    (status, out)
}

#[test]
fn generate_check_and_json_round_trip() {
    let (status, inst) = generate(&["2"], "3", None);
    assert_eq!(status, CbmwStatus::Ok);
    assert_eq!(unsafe { cbmw_instance_rank(inst) }, 1);

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { cbmw_instance_delta(inst, 0, &mut s) },
        CbmwStatus::Ok
    );
    assert_eq!(take(s), "25/16");
    assert_eq!(
        unsafe { cbmw_instance_delta(inst, -2, &mut s) },
        CbmwStatus::Ok
    );
    assert_eq!(take(s), "25/64");
    assert_eq!(
        unsafe { cbmw_instance_delta(inst, 99, &mut s) },
        CbmwStatus::OutOfRange
    );
    assert!(last_error().contains("99"));

    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cbmw_check(inst, &mut report) }, CbmwStatus::Ok);
    assert_eq!(unsafe { cbmw_report_all_passed(report) }, 1);
    assert_eq!(
        unsafe { cbmw_report_passed(report, CbmwVerdict::UAdmissible) },
        1
    );
    assert_eq!(
        unsafe { cbmw_report_to_json(report, &mut s) },
        CbmwStatus::Ok
    );
    assert!(take(s).contains("\"wilcoxYu\": \"pass\""));
    unsafe { cbmw_report_free(report) };

    assert_eq!(
        unsafe { cbmw_instance_to_json(inst, &mut s) },
        CbmwStatus::Ok
    );
    let json = CString::new(take(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { cbmw_instance_from_json(json.as_ptr(), &mut back) },
        CbmwStatus::Ok
    );
    assert_eq!(
        unsafe { cbmw_instance_to_json(back, &mut s) },
        CbmwStatus::Ok
    );
    assert_eq!(take(s), json.to_str().unwrap());
    unsafe {
        cbmw_instance_free(back);
        cbmw_instance_free(inst);
    }
}

#[test]
fn perturbed_delta_fails_the_check() {
    let (_, inst) = generate(&["2", "5/3"], "3/2", Some("minus-q-a0"));
    let value = CString::new("7").unwrap();
    assert_eq!(
        unsafe { cbmw_instance_set_delta(inst, 3, value.as_ptr()) },
        CbmwStatus::Ok
    );
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cbmw_check(inst, &mut report) }, CbmwStatus::Ok);
    assert_eq!(unsafe { cbmw_report_all_passed(report) }, 0);
    assert_eq!(
        unsafe { cbmw_report_passed(report, CbmwVerdict::WilcoxYu) },
        0
    );
    assert_eq!(
        unsafe { cbmw_report_passed(report, CbmwVerdict::UAdmissible) },
        0
    );
    unsafe {
        cbmw_report_free(report);
        cbmw_instance_free(inst);
    }
}

#[test]
fn error_codes() {
    let (status, inst) = generate(&["1/2", "2"], "3", None);
    assert_eq!(status, CbmwStatus::ExcludedConfiguration);
    assert!(inst.is_null());
    assert!(last_error().contains("u1 * u2 = 1"), "{}", last_error());

    assert_eq!(
        generate(&["2"], "1", None).0,
        CbmwStatus::ExcludedConfiguration
    );
    assert_eq!(generate(&["2"], "x", None).0, CbmwStatus::Parse);
    assert_eq!(
        generate(&["2"], "3", Some("q-inv-a0")).0,
        CbmwStatus::InvalidArgument
    );
    assert_eq!(generate(&["0"], "3", None).0, CbmwStatus::InvalidArgument);

    let bad = CString::new("{\"r\": 1}").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cbmw_instance_from_json(bad.as_ptr(), &mut out) },
        CbmwStatus::Parse
    );
    assert_eq!(
        unsafe { cbmw_instance_from_json(ptr::null(), &mut out) },
        CbmwStatus::NullPointer
    );
    assert_eq!(
        unsafe { cbmw_report_passed(ptr::null(), CbmwVerdict::Weak) },
        -1
    );
    unsafe {
        cbmw_instance_free(ptr::null_mut());
        cbmw_report_free(ptr::null_mut());
        cbmw_string_free(ptr::null_mut());
    }
}

#[test]
fn tables() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { cbmw_table(2, CbmwTable::ACoeffs, -1, &mut s) },
        CbmwStatus::Ok
    );
    assert_eq!(take(s), "a_0 = u1*u2\na_1 = -u1 - u2\na_2 = 1");
    assert_eq!(
        unsafe { cbmw_table(1, CbmwTable::Mu, 2, &mut s) },
        CbmwStatus::Ok
    );
    assert_eq!(take(s), "mu_0 = u1\nmu_1 = u1^2 - 1\nmu_2 = u1^3 - u1");
    assert_eq!(
        unsafe { cbmw_table(0, CbmwTable::Xi, 2, &mut s) },
        CbmwStatus::InvalidArgument
    );
}

#[test]
fn verify_summary() {
    let mut summary = CbmwVerifySummary::default();
    assert_eq!(
        unsafe { cbmw_verify(1, 3, 7, &mut summary) },
        CbmwStatus::Ok
    );
    assert_eq!(summary.samples, 3);
    assert_eq!(summary.forward_passed, 3);
    assert_eq!(summary.perturbations, 30);
    assert_eq!(summary.perturbations_detected, 30);
    assert_eq!(summary.morphisms_invariant, 3);
    assert_eq!(summary.symbolic_passed, summary.symbolic_families);
    assert_eq!(summary.all_passed, 1);
}
