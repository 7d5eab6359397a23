use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use superstab::exactalg::json::{matrix_from_json, poly_from_json};
use superstab::exactalg::parse_poly;
use superstab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    ss_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ss_last_error()).to_str().unwrap().to_owned()
}

unsafe fn weight(r: &str, n: u32, sigma: &str, subset: &str) -> *mut SsWeightFunction {
    let mut h = ptr::null_mut();
    let st = ss_weight_new(c(r).as_ptr(), n, c(sigma).as_ptr(), c(subset).as_ptr(), &mut h);
    assert_eq!(st, SsStatus::Ok, "{}", last_error());
    h
}

#[test]
fn weight_handle_lifecycle() {
    unsafe {
        let h = weight("00", 2, "1,2", "1");
        let mut s = ptr::null_mut();
        assert_eq!(ss_weight_to_string(h, &mut s), SsStatus::Ok);
        assert_eq!(take(s), "z2 - t1");

        assert_eq!(ss_weight_to_json(h, &mut s), SsStatus::Ok);
        let v: Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["k"], 1);
        assert_eq!(v["terms"].as_array().unwrap().len(), 1);

        assert_eq!(ss_weight_restrict_json(h, c("2").as_ptr(), &mut s), SsStatus::Ok);
        let p = poly_from_json(&serde_json::from_str(&take(s)).unwrap()).unwrap();
        assert!(p.is_zero());
        ss_weight_free(h);
    }
}

#[test]
fn stab_handle_reports() {
    unsafe {
        let w = weight("01", 4, "id", "2");
        let mut st = ptr::null_mut();
        assert_eq!(ss_stab_new(w, &mut st), SsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(ss_stab_to_json(st, &mut s), SsStatus::Ok);
        let v: Value = serde_json::from_str(&take(s)).unwrap();
        let want = parse_poly("(z3 - z2)*(z4 - z2)*(z2 - z1 + h)*(z3 - z1 + h)*(z4 - z1 + h)*(z4 - z3 + h)").unwrap();
        assert_eq!(poly_from_json(&v["2"]).unwrap(), want);

        let mut ok = false;
        assert_eq!(ss_stab_axioms_json(st, &mut ok, &mut s), SsStatus::Ok);
        assert!(ok);
        let v: Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["A2"]["pass"], true);

        let mut bad = 99;
        assert_eq!(ss_stab_gkm_violations(st, &mut bad), SsStatus::Ok);
        assert_eq!(bad, 0);
        ss_stab_free(st);
        ss_weight_free(w);
    }
}

#[test]
fn matrices_and_yang_baxter() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ss_rmatrix_json(c("11").as_ptr(), SsMatrixKind::Closed, &mut s), SsStatus::Ok);
        let m = matrix_from_json(&serde_json::from_str(&take(s)).unwrap()).unwrap();
        assert_eq!(m.rows(), 4);

        assert_eq!(ss_geometric_r_json(c("10").as_ptr(), 3, c("2,3,1").as_ptr(), 2, &mut s), SsStatus::Ok);
        let g = matrix_from_json(&serde_json::from_str(&take(s)).unwrap()).unwrap();
        assert_eq!(g.rows(), 8);

        for r in ["00", "10", "01", "11"] {
            for yangian in [false, true] {
                let mut holds = false;
                assert_eq!(ss_yang_baxter(c(r).as_ptr(), yangian, &mut holds), SsStatus::Ok);
                assert!(holds, "{r} {yangian}");
            }
        }
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(ss_weight_new(ptr::null(), 2, c("").as_ptr(), c("1").as_ptr(), &mut h), SsStatus::NullArgument);
        assert!(h.is_null());
        assert_eq!(ss_weight_new(c("02").as_ptr(), 2, c("").as_ptr(), c("1").as_ptr(), &mut h), SsStatus::Parse);
        assert!(!last_error().is_empty());
        let bad = [0xffu8, 0];
        assert_eq!(
            ss_weight_new(bad.as_ptr().cast(), 2, c("").as_ptr(), c("1").as_ptr(), &mut h),
            SsStatus::InvalidUtf8
        );
        let mut s = ptr::null_mut();
        assert_eq!(ss_geometric_r_json(c("00").as_ptr(), 4, c("").as_ptr(), 1, &mut s), SsStatus::Guard);
        assert!(last_error().contains("guard"));
        assert_eq!(ss_geometric_r_json(c("00").as_ptr(), 3, c("").as_ptr(), 3, &mut s), SsStatus::Domain);

        let w = weight("00", 3, "", "1");
        assert_eq!(ss_weight_restrict_json(w, c("1,2").as_ptr(), &mut s), SsStatus::Domain);
        assert_eq!(ss_weight_to_string(w, ptr::null_mut()), SsStatus::NullArgument);
        assert_eq!(ss_weight_to_string(w, &mut s), SsStatus::Ok);
        assert!(last_error().is_empty());
        ss_string_free(s);
        ss_weight_free(w);
        ss_weight_free(ptr::null_mut());
        ss_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/superstab.h")).unwrap();
    for sym in ["ss_weight_new", "ss_stab_axioms_json", "ss_string_free", "SS_STATUS_GUARD", "SsWeightFunction"] {
        assert!(header.contains(sym), "{sym}");
    }
    let src = format!("#include \"{}\"\nint main(void) {{ return 0; }}\n", dir.join("include/superstab.h").display());
    let tmp = std::env::temp_dir().join(format!("superstab_header_{}.c", std::process::id()));
    std::fs::write(&tmp, src).unwrap();
    let status = Command::new("cc").args(["-fsyntax-only", "-std=c11"]).arg(&tmp).status();
    let _ = std::fs::remove_file(&tmp);
    if let Ok(status) = status {
        assert!(status.success(), "header does not compile");
    }
}
