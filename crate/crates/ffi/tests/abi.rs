use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hecke_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hecke_last_error()) }.to_str().unwrap().to_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    hecke_string_free(s);
    out
}

#[test]
fn catalog_listing() {
    assert_eq!(hecke_identity_count(), 17);
    let first = unsafe { CStr::from_ptr(hecke_identity_id(0)) };
    assert_eq!(first.to_str().unwrap(), "jacobi-cube");
    assert!(hecke_identity_id(17).is_null());
}

#[test]
fn identity_report_round_trip() {
    let id = CString::new("pentagonal").unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(hecke_verify_identity(id.as_ptr(), 50, &mut report), HeckeStatus::Ok);
        let mut outcome = HeckeOutcome::Fail;
        assert_eq!(hecke_report_outcome(report, &mut outcome), HeckeStatus::Ok);
        assert_eq!(outcome, HeckeOutcome::Pass);
        let mut json = ptr::null_mut();
        assert_eq!(hecke_report_json(report, &mut json), HeckeStatus::Ok);
        assert_eq!(
            take(json),
            r#"{"id":"pentagonal","order":50,"status":"pass","mismatch":null,"elapsed_ms":0}"#
        );
        let (mut e, mut l, mut r) = (0i64, ptr::null_mut(), ptr::null_mut());
        assert_eq!(hecke_report_mismatch(report, &mut e, &mut l, &mut r), HeckeStatus::InvalidArgument);
        hecke_report_free(report);
    }
}

#[test]
fn failing_truncated_report_exposes_mismatch() {
    let id = CString::new("t1-7").unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(hecke_verify_truncated(id.as_ptr(), 0, 10, &mut report), HeckeStatus::Ok);
        let mut outcome = HeckeOutcome::Pass;
        hecke_report_outcome(report, &mut outcome);
        assert_eq!(outcome, HeckeOutcome::Fail);
        let (mut e, mut l, mut r) = (0i64, ptr::null_mut(), ptr::null_mut());
        assert_eq!(hecke_report_mismatch(report, &mut e, &mut l, &mut r), HeckeStatus::Ok);
        assert_eq!((e, take(l), take(r)), (8, "2".to_owned(), "3".to_owned()));
        hecke_report_free(report);
    }
}

#[test]
fn series_coefficients() {
    let id = CString::new("jacobi-cube").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(hecke_identity_expand(id.as_ptr(), HeckeSide::Lhs, 12, &mut s), HeckeStatus::Ok);
        let mut trunc = 0;
        hecke_series_trunc_halves(s, &mut trunc);
        assert_eq!(trunc, 24);
        // (q;q)^3 = 1 - 3q + 5q^3 - 7q^6 + 9q^10 - ...
        let want = [(0, 1), (2, -3), (4, 0), (6, 5), (12, -7), (20, 9), (21, 0)];
        for (e, c) in want {
            let mut v = 99;
            assert_eq!(hecke_series_coeff(s, e, &mut v), HeckeStatus::Ok);
            assert_eq!(v, c, "q^({e}/2)");
        }
        let mut v = 0;
        assert_eq!(hecke_series_coeff(s, 24, &mut v), HeckeStatus::OutOfRange);
        assert!(last_error().contains("truncation bound"));
        let mut text = ptr::null_mut();
        assert_eq!(hecke_series_coeff_string(s, 20, &mut text), HeckeStatus::Ok);
        assert_eq!(take(text), "9");
        hecke_series_free(s);
    }
}

#[test]
fn big_partition_counts_are_strings() {
    let fam = CString::new("pp").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(hecke_partition_count(fam.as_ptr(), 10, &mut out), HeckeStatus::Ok);
        assert_eq!(take(out), "481");
        assert_eq!(hecke_partition_count(fam.as_ptr(), 400, &mut out), HeckeStatus::Ok);
        assert!(take(out).len() > 19);
    }
}

#[test]
fn error_codes() {
    let mut report = ptr::null_mut();
    let nope = CString::new("nope").unwrap();
    let pent = CString::new("pentagonal").unwrap();
    unsafe {
        assert_eq!(hecke_verify_identity(ptr::null(), 10, &mut report), HeckeStatus::NullPointer);
        assert_eq!(hecke_verify_identity(pent.as_ptr(), 10, ptr::null_mut()), HeckeStatus::NullPointer);
        assert_eq!(hecke_verify_identity(nope.as_ptr(), 10, &mut report), HeckeStatus::UnknownId);
        assert!(last_error().contains("nope"));
        assert_eq!(hecke_verify_identity(pent.as_ptr(), 0, &mut report), HeckeStatus::InvalidArgument);
        let bad = [0xffu8, 0];
        assert_eq!(hecke_verify_identity(bad.as_ptr().cast(), 10, &mut report), HeckeStatus::InvalidUtf8);
        assert_eq!(hecke_partition_count(nope.as_ptr(), 3, &mut ptr::null_mut()), HeckeStatus::UnknownId);
        assert_eq!(hecke_verify_identity(pent.as_ptr(), 10, &mut report), HeckeStatus::Ok);
        assert_eq!(last_error(), "");
        hecke_report_free(report);
        hecke_report_free(ptr::null_mut());
        hecke_series_free(ptr::null_mut());
        hecke_string_free(ptr::null_mut());
    }
}

fn profile_dir() -> PathBuf {
    // <target>/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libhecke_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let out_dir = std::env::temp_dir().join(format!("hecke-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let src = out_dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "hecke.h"

int main(void) {
    HeckeReport *r = NULL;
    if (hecke_verify_identity("gauss-a", 40, &r) != HECKE_STATUS_OK) return 10;
    HeckeOutcome o;
    hecke_report_outcome(r, &o);
    hecke_report_free(r);
    if (o != HECKE_OUTCOME_PASS) return 11;
    if (hecke_verify_identity("nope", 40, &r) != HECKE_STATUS_UNKNOWN_ID) return 12;
    if (strstr(hecke_last_error(), "nope") == NULL) return 13;
    char *n = NULL;
    hecke_partition_count("pepod", 3, &n);
    printf("%s\n", n);
    hecke_string_free(n);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "3\n");
    std::fs::remove_dir_all(&out_dir).ok();
}
