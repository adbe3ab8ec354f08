use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use primlattice_ffi::*;

fn q0() -> *mut PlForm {
    let text = CString::new("1,sqrt(2),sqrt(3)").unwrap();
    let mut form = ptr::null_mut();
    assert_eq!(
        unsafe { pl_form_parse(text.as_ptr(), &mut form) },
        PlStatus::Ok
    );
    form
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 128];
    let n = unsafe { pl_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let s = unsafe { std::ffi::CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned();
    assert_eq!(s.len(), n.min(127));
    s
}

#[test]
fn form_handle_lifecycle() {
    let form = q0();
    let mut d = 0.0;
    let mut k = 0.0;
    let mut l = 0.0;
    let mut v = 0.0;
    unsafe {
        assert_eq!(pl_form_discriminant(form, &mut d), PlStatus::Ok);
        assert_eq!(pl_form_kappa(form, &mut k), PlStatus::Ok);
        assert_eq!(pl_form_lambda1(form, &mut l), PlStatus::Ok);
        assert_eq!(pl_form_eval(form, 1, -1, &mut v), PlStatus::Ok);
        pl_form_free(form);
        pl_form_free(ptr::null_mut());
    }
    assert!((d - (4.0 * 3f64.sqrt() - 2.0)).abs() < 1e-14);
    assert!(0.0 < k && k <= l && l == 1.0);
    assert!((v - (1.0 - 2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
}

#[test]
fn errors_map_to_status_codes() {
    let mut form = ptr::null_mut();
    assert_eq!(
        unsafe { pl_form_new(1.0, 3.0, 1.0, &mut form) },
        PlStatus::Domain
    );
    assert!(form.is_null());
    assert!(last_error().contains("positive definite"));

    let text = CString::new("1,2").unwrap();
    assert_eq!(
        unsafe { pl_form_parse(text.as_ptr(), &mut form) },
        PlStatus::Parse
    );
    assert_eq!(
        unsafe { pl_form_parse(ptr::null(), &mut form) },
        PlStatus::Parse
    );
    assert_eq!(
        unsafe { pl_form_new(1.0, 0.0, 1.0, ptr::null_mut()) },
        PlStatus::NullPointer
    );

    let mut out = 0.0;
    assert_eq!(unsafe { pl_zeta_real(1.0, &mut out) }, PlStatus::Domain);
    assert_eq!(
        unsafe { pl_form_kappa(ptr::null(), &mut out) },
        PlStatus::Domain
    );

    let tiny = unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(pl_form_new(1e-9, 0.0, 1e-9, &mut f), PlStatus::Ok);
        f
    };
    let mut count = PlCount {
        x: 0.0,
        all: 0,
        primitive: 0,
        p: 0.0,
        r: 0.0,
    };
    assert_eq!(
        unsafe { pl_count(tiny, 1e6, 1, &mut count) },
        PlStatus::Resource
    );
    unsafe { pl_form_free(tiny) };

    let mut report = std::mem::MaybeUninit::<PlBoundReport>::uninit();
    let form = q0();
    assert_eq!(
        unsafe { pl_k0_lower_bound(form, 0, 1000.0, report.as_mut_ptr()) },
        PlStatus::Domain
    );
    unsafe { pl_form_free(form) };
}

#[test]
fn error_message_truncates() {
    let mut form = ptr::null_mut();
    unsafe { pl_form_new(-1.0, 0.0, 1.0, &mut form) };
    let mut buf = [1 as c_char; 4];
    let n = unsafe { pl_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 3);
    assert_eq!(buf[3], 0);
    assert_eq!(unsafe { pl_last_error_message(ptr::null_mut(), 0) }, n);
}

#[test]
fn worked_example_through_the_abi() {
    let form = q0();
    let mut count = PlCount {
        x: 0.0,
        all: 0,
        primitive: 0,
        p: 0.0,
        r: 0.0,
    };
    let mut moebius = 0u64;
    let mut mean = 0.0;
    let mut report = std::mem::MaybeUninit::<PlBoundReport>::uninit();
    let report = unsafe {
        assert_eq!(pl_count(form, 1000.0, 0, &mut count), PlStatus::Ok);
        assert_eq!(
            pl_count_primitive_moebius(form, 1000.0, &mut moebius),
            PlStatus::Ok
        );
        assert_eq!(pl_mean_abs_r(form, 2000.0, 2, &mut mean), PlStatus::Ok);
        assert_eq!(
            pl_k0_lower_bound(form, 1, 1000.0, report.as_mut_ptr()),
            PlStatus::Ok
        );
        report.assume_init()
    };
    assert_eq!((count.all, count.primitive), (2833, 1716));
    assert_eq!(moebius, 1716);
    assert!(2000f64.powf(-1.25) * mean > 4e-4);
    assert!((report.f1_abs - 0.422182).abs() <= 1e-5);
    assert!((report.f2_bound - 0.236529).abs() <= 1e-5);
    assert!(report.valid && report.k0_lower > 4e-4);

    let s = PlComplex {
        re: 0.75,
        im: -report.beta0,
    };
    let mut ev = std::mem::MaybeUninit::<PlPotter>::uninit();
    let ev = unsafe {
        assert_eq!(pl_potter(form, s, 1000.0, ev.as_mut_ptr()), PlStatus::Ok);
        ev.assume_init()
    };
    assert!(ev.certified);
    assert_eq!(ev.f1, report.f1);

    let mut fe = PlComplex { re: 0.0, im: 0.0 };
    let mut back = PlComplex { re: 0.0, im: 0.0 };
    let w = PlComplex { re: 0.4, im: 0.1 };
    let s = PlComplex { re: 0.3, im: 4.0 };
    let s_ref = PlComplex { re: 0.7, im: -4.0 };
    unsafe {
        assert_eq!(pl_functional_equation(form, s, w, &mut fe), PlStatus::Ok);
        assert_eq!(
            pl_functional_equation(form, s_ref, fe, &mut back),
            PlStatus::Ok
        );
        pl_form_free(form);
    }
    assert!((back.re - w.re).abs() < 1e-12 && (back.im - w.im).abs() < 1e-12);
}

#[test]
fn special_functions() {
    let mut z = 0.0;
    let mut l = 0.0;
    let mut lg = PlComplex { re: 0.0, im: 0.0 };
    let mut w = PlWeight {
        i1: 0.0,
        i2: 0.0,
        value: 0.0,
    };
    unsafe {
        assert_eq!(pl_zeta_real(2.0, &mut z), PlStatus::Ok);
        assert_eq!(pl_dirichlet_l(1.0, &mut l), PlStatus::Ok);
        assert_eq!(
            pl_log_gamma(PlComplex { re: 5.0, im: 0.0 }, &mut lg),
            PlStatus::Ok
        );
        assert_eq!(pl_weight_constant(&mut w), PlStatus::Ok);
    }
    let pi = std::f64::consts::PI;
    assert!((z - pi * pi / 6.0).abs() < 1e-12);
    assert!((l - pi / 4.0).abs() < 1e-12);
    assert!((lg.re - 24f64.ln()).abs() < 1e-12 && lg.im.abs() < 1e-14);
    assert!(w.value <= 0.33);
}

/// Compiles `tests/c/smoke.c` against the generated header and the static
/// library, then runs it. Skipped when no C compiler is on the path.
#[test]
fn c_program_links_against_the_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libprimlattice_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no cc or no static library at {}", lib.display());
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok 2833 1716"));
}
