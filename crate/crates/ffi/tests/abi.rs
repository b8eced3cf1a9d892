use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use jcm_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(jcm_last_error_message()) }.to_string_lossy().into_owned()
}

fn new_state(alpha: f64, r: f64, n: u32, eps: (f64, f64), dim: usize, k: u32) -> (JcmStatus, *mut JcmState) {
    let mut s = ptr::null_mut();
    let st = unsafe { jcm_state_new(alpha, r, n, eps.0, eps.1, dim, k, &mut s) };
    (st, s)
}

#[test]
fn round_trip_matches_core() {
    let (st, s) = new_state(2.0, 0.1, 1, (0.0, 1.0), 0, 1);
    assert_eq!(st, JcmStatus::Ok);
    let dim = unsafe { jcm_state_dim(s) };
    let mut p = vec![0.0; dim];
    assert_eq!(unsafe { jcm_state_pnd(s, p.as_mut_ptr(), dim) }, JcmStatus::Ok);
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);

    let mut j = ptr::null_mut();
    assert_eq!(unsafe { jcm_evolve(s, 1, 3.0, &mut j) }, JcmStatus::Ok);
    let (mut inv, mut pur, mut q, mut f, mut sq, mut w) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(jcm_inversion(j, &mut inv), JcmStatus::Ok);
        assert_eq!(jcm_purity(j, &mut pur), JcmStatus::Ok);
        assert_eq!(jcm_mandel_q(j, &mut q), JcmStatus::Ok);
        assert_eq!(jcm_squeezing(j, &mut f, &mut sq), JcmStatus::Ok);
        assert_eq!(jcm_wigner(j, 0.0, 0.0, &mut w), JcmStatus::Ok);
    }
    let expect: f64 = p
        .iter()
        .enumerate()
        .map(|(m, pm)| pm * (2.0 * 3.0 * ((m + 1) as f64).sqrt()).cos())
        .sum();
    assert!((inv - expect).abs() < 1e-12);
    assert!(pur > 0.0 && pur <= 1.0 + 1e-12);
    let direct = {
        use jcm_core::{dynamics::*, states::*, wigner::wigner_point};
        let p = SuperpositionParams::new(2.0, 0.1, 1, num_complex::Complex64::new(0.0, 1.0));
        let psi = evolve_field(&field_state_auto(&p, 1).unwrap(), ModelParams::new(1).unwrap(), 3.0).unwrap();
        wigner_point(&psi, 0.0, 0.0)
    };
    assert_eq!(w, direct);
    assert!(f.is_finite() && sq.is_finite() && q.is_finite());
    assert_eq!(last_error(), "");
    unsafe {
        jcm_joint_free(j);
        jcm_state_free(s);
    }
}

#[test]
fn error_codes_and_messages() {
    let (st, s) = new_state(5.0, 0.0, 0, (0.0, 0.0), 20, 1);
    assert_eq!(st, JcmStatus::Truncation);
    assert!(s.is_null());
    assert!(last_error().contains("try dim 40"), "{}", last_error());

    let (st, _) = new_state(0.0, 0.0, 0, (-1.0, 0.0), 0, 1);
    assert_eq!(st, JcmStatus::Degenerate);

    let (st, _) = new_state(f64::NAN, 0.0, 0, (0.0, 0.0), 0, 1);
    assert_eq!(st, JcmStatus::InvalidArgument);

    let (_, s) = new_state(1.0, 0.0, 0, (0.0, 0.0), 0, 1);
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { jcm_evolve(s, 0, 1.0, &mut j) }, JcmStatus::InvalidArgument);
    assert!(j.is_null());
    let mut small = [0.0; 2];
    assert_eq!(unsafe { jcm_state_pnd(s, small.as_mut_ptr(), 2) }, JcmStatus::BufferTooSmall);
    assert_eq!(unsafe { jcm_state_pnd(ptr::null(), small.as_mut_ptr(), 2) }, JcmStatus::NullPointer);
    assert_eq!(unsafe { jcm_inversion(ptr::null(), ptr::null_mut()) }, JcmStatus::NullPointer);
    assert_eq!(unsafe { jcm_state_dim(ptr::null()) }, 0);
    unsafe {
        jcm_state_free(s);
        jcm_state_free(ptr::null_mut());
        jcm_joint_free(ptr::null_mut());
    }
}

#[test]
fn vacuum_mandel_is_reported() {
    let (_, s) = new_state(0.0, 0.0, 0, (0.0, 0.0), 8, 1);
    let mut j = ptr::null_mut();
    unsafe {
        assert_eq!(jcm_evolve(s, 1, 0.0, &mut j), JcmStatus::Ok);
        let mut q = 0.0;
        assert_eq!(jcm_mandel_q(j, &mut q), JcmStatus::Vacuum);
        jcm_joint_free(j);
        jcm_state_free(s);
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let Ok(cc) = which_cc() else { return };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libjcm_ffi.a");
    if !lib.exists() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "jcm.h"
int main(void) {
    JcmState *s = NULL;
    JcmJoint *j = NULL;
    double inv = 0.0;
    if (jcm_state_new(1.5, 0.0, 0, 0.0, 0.0, 0, 1, &s) != JCM_STATUS_OK) return 1;
    if (jcm_evolve(s, 1, 0.0, &j) != JCM_STATUS_OK) return 2;
    if (jcm_inversion(j, &inv) != JCM_STATUS_OK) return 3;
    if (jcm_state_new(5.0, 0.0, 0, 0.0, 0.0, 20, 1, &s) != JCM_STATUS_TRUNCATION) return 4;
    printf("%.6f %s\n", inv, jcm_last_error_message()[0] ? "msg" : "none");
    jcm_joint_free(j);
    jcm_state_free(s);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1.000000 msg");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
