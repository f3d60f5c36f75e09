use std::ffi::{c_char, c_int, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use dirorbit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dirorbit_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn kernel_calls() {
    let (mut lo, mut hi) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            dirorbit_dir_op(
                DirorbitOp::Add,
                0.1,
                0.2,
                DirorbitRounding::TowardNegInf,
                &mut lo
            ),
            DirorbitStatus::Ok
        );
        assert_eq!(
            dirorbit_dir_op(
                DirorbitOp::Add,
                0.1,
                0.2,
                DirorbitRounding::TowardPosInf,
                &mut hi
            ),
            DirorbitStatus::Ok
        );
    }
    assert_eq!(dirorbit_next_up(lo), hi);
    assert_eq!(dirorbit_next_down(hi), lo);

    let (mut p, mut r) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            dirorbit_two_sum(1.0, 2f64.powi(-60), &mut p, &mut r),
            DirorbitStatus::Ok
        );
        assert_eq!((p, r), (1.0, 2f64.powi(-60)));
        assert_eq!(
            dirorbit_two_product(f64::MAX, 2.0, &mut p, &mut r),
            DirorbitStatus::Overflow
        );
        assert_eq!(dirorbit_average2(1.0, 3.0, &mut p), DirorbitStatus::Ok);
    }
    assert_eq!(p, 2.0);
    unsafe {
        assert_eq!(
            dirorbit_dir_op(
                DirorbitOp::Mul,
                1.0,
                f64::NAN,
                DirorbitRounding::Nearest,
                &mut p
            ),
            DirorbitStatus::Invalid
        );
        assert_eq!(
            dirorbit_dir_op(
                DirorbitOp::Mul,
                1.0,
                2.0,
                DirorbitRounding::Nearest,
                ptr::null_mut()
            ),
            DirorbitStatus::NullPointer
        );
    }
    assert!(last_error().contains("null"));
}

#[test]
fn text_conversions() {
    let mut buf = [0 as c_char; 17];
    let mut x = 0.0;
    unsafe {
        assert_eq!(
            dirorbit_to_hex(0.5, buf.as_mut_ptr(), buf.len()),
            DirorbitStatus::Ok
        );
        assert_eq!(
            CStr::from_ptr(buf.as_ptr()).to_str().unwrap(),
            "3fe0000000000000"
        );
        assert_eq!(
            dirorbit_to_hex(0.5, buf.as_mut_ptr(), 16),
            DirorbitStatus::BufferTooSmall
        );
        assert_eq!(
            dirorbit_from_hex(c("3fe7cb7cb7cb7cb8").as_ptr(), &mut x),
            DirorbitStatus::Ok
        );
        assert_eq!(x.to_bits(), 0x3fe7cb7cb7cb7cb8);
        assert_eq!(
            dirorbit_from_hex(c("3fe7").as_ptr(), &mut x),
            DirorbitStatus::ParseError
        );
        assert_eq!(
            dirorbit_parse_decimal(c("0.01").as_ptr(), DirorbitRounding::TowardNegInf, &mut x),
            DirorbitStatus::Ok
        );
        let mut up = 0.0;
        assert_eq!(
            dirorbit_parse_decimal(c("0.01").as_ptr(), DirorbitRounding::TowardPosInf, &mut up),
            DirorbitStatus::Ok
        );
        assert_eq!(dirorbit_next_up(x), up);
        assert_eq!(
            dirorbit_parse_decimal(ptr::null(), DirorbitRounding::Nearest, &mut x),
            DirorbitStatus::NullPointer
        );
        assert_eq!(
            CStr::from_ptr(dirorbit_status_name(DirorbitStatus::CapExceeded))
                .to_str()
                .unwrap(),
            "cap_exceeded"
        );
    }
}

#[test]
fn handles() {
    unsafe {
        let mut map = ptr::null_mut();
        assert_eq!(
            dirorbit_map_new_logistic(c("3.9").as_ptr(), DirorbitParamRounding::Stored, &mut map),
            DirorbitStatus::Ok
        );
        let mut y = 0.0;
        assert_eq!(
            dirorbit_map_eval(
                map,
                f64::from_bits(0x3fd0690690690691),
                DirorbitRounding::Nearest,
                &mut y
            ),
            DirorbitStatus::Ok
        );
        assert_eq!(y.to_bits(), 0x3fe7cb7cb7cb7cb8);

        let mut near = ptr::null_mut();
        assert_eq!(
            dirorbit_orbit_run(
                map,
                DirorbitStart::Reciprocal,
                c("3.9").as_ptr(),
                DirorbitScheme::Nearest,
                10,
                &mut near
            ),
            DirorbitStatus::Ok
        );
        let mut avg = ptr::null_mut();
        assert_eq!(
            dirorbit_orbit_run(
                map,
                DirorbitStart::Reciprocal,
                c("3.9").as_ptr(),
                DirorbitScheme::Lemma1,
                10,
                &mut avg
            ),
            DirorbitStatus::Ok
        );
        assert_eq!(dirorbit_orbit_len(avg), 11);

        let (mut found, mut onset, mut value): (c_int, usize, f64) = (-1, 0, 0.0);
        assert_eq!(
            dirorbit_orbit_fixed_point(avg, 3, &mut found, &mut onset, &mut value),
            DirorbitStatus::Ok
        );
        assert_eq!((found, onset, value.to_bits()), (1, 1, 0x3fe7cb7cb7cb7cb8));
        assert_eq!(
            dirorbit_orbit_fixed_point(near, 3, &mut found, &mut onset, &mut value),
            DirorbitStatus::Ok
        );
        assert_eq!(found, 0);
        assert_eq!(
            dirorbit_orbit_fixed_point(near, 1, &mut found, &mut onset, &mut value),
            DirorbitStatus::ConfigError
        );

        let mut series = ptr::null_mut();
        assert_eq!(
            dirorbit_error_series(avg, 0, &mut series),
            DirorbitStatus::Ok
        );
        assert_eq!(dirorbit_series_len(series), 11);
        let mut buf = [0 as c_char; 32];
        assert_eq!(
            dirorbit_series_display(series, 0, buf.as_mut_ptr(), buf.len()),
            DirorbitStatus::Ok
        );
        assert!(CStr::from_ptr(buf.as_ptr())
            .to_str()
            .unwrap()
            .ends_with("e-17"));
        assert_eq!(
            dirorbit_series_log10(series, 11, &mut y),
            DirorbitStatus::OutOfRange
        );
        assert_eq!(
            dirorbit_error_series(avg, 5, &mut series),
            DirorbitStatus::CapExceeded
        );

        let mut bad = ptr::null_mut();
        assert_eq!(
            dirorbit_orbit_run(
                map,
                DirorbitStart::Value,
                c("0.1").as_ptr(),
                DirorbitScheme::Nearest,
                0,
                &mut bad
            ),
            DirorbitStatus::ConfigError
        );
        assert!(last_error().contains("N must be"));
        assert!(bad.is_null());
        let mut no_map = ptr::null_mut();
        assert_eq!(
            dirorbit_map_new_logistic(c("x").as_ptr(), DirorbitParamRounding::Stored, &mut no_map),
            DirorbitStatus::ParseError
        );
        assert!(no_map.is_null());

        dirorbit_series_free(series);
        dirorbit_orbit_free(near);
        dirorbit_orbit_free(avg);
        dirorbit_map_free(map);
        dirorbit_map_free(ptr::null_mut());
        assert_eq!(dirorbit_orbit_len(ptr::null()), 0);
    }
}

/// target/<profile>, found from the test executable in target/<profile>/deps.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libdirorbit_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dirorbit_smoke");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
