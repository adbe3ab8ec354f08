//! C ABI over `primlattice`.
//!
//! Every fallible call returns a [`PlStatus`] and writes its result through an
//! out pointer. On failure the message is kept per thread and can be copied
//! out with [`pl_last_error_message`]. Forms are opaque [`PlForm`] handles
//! released with [`pl_form_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use primlattice::counting::{self, EnumerationOptions};
use primlattice::epstein::{self, PotterContext};
use primlattice::omega;
use primlattice::special;
use primlattice::{Complex64, Error, QuadraticForm};

/// Status codes; the nonzero values 2 to 5 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Domain = 3,
    Resource = 4,
    Verification = 5,
    Panic = 6,
}

/// Opaque handle to a validated positive definite form.
pub struct PlForm {
    inner: QuadraticForm,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for PlComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<PlComplex> for Complex64 {
    fn from(z: PlComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlCount {
    pub x: f64,
    /// Lattice points with `Q <= x`, origin included.
    pub all: u64,
    /// Primitive lattice points with `Q <= x`.
    pub primitive: u64,
    pub p: f64,
    pub r: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlPotter {
    pub s: PlComplex,
    pub z: f64,
    pub f1: PlComplex,
    pub f2_bound: f64,
    /// True only on `Re s = 3/4`, where the bound is proven.
    pub certified: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlBoundReport {
    pub zero_index: usize,
    pub gamma: f64,
    pub beta0: f64,
    pub z: f64,
    pub gamma_ratio: f64,
    pub prefactor: f64,
    pub f1: PlComplex,
    pub f1_abs: f64,
    pub f2_bound: f64,
    pub margin: f64,
    pub k0_lower: f64,
    pub valid: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlWeight {
    pub i1: f64,
    pub i2: f64,
    pub value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> PlStatus {
    match e.exit_code() {
        2 => PlStatus::Parse,
        3 => PlStatus::Domain,
        4 => PlStatus::Resource,
        _ => PlStatus::Verification,
    }
}

/// Runs `f`, stores its value in `out`, and turns errors and panics into status codes.
fn guard<T>(out: *mut T, f: impl FnOnce() -> primlattice::Result<T>) -> PlStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return PlStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            PlStatus::Ok
        }
        Ok(Err(e)) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PlStatus::Panic
        }
    }
}

unsafe fn form_ref<'a>(form: *const PlForm) -> primlattice::Result<&'a QuadraticForm> {
    form.as_ref()
        .map(|f| &f.inner)
        .ok_or_else(|| Error::Domain("form handle is null".into()))
}

fn options(workers: usize) -> EnumerationOptions {
    if workers == 0 {
        EnumerationOptions::default()
    } else {
        EnumerationOptions::with_workers(workers)
    }
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length in bytes
/// without the terminator.
#[no_mangle]
pub unsafe extern "C" fn pl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_form_new(a: f64, b: f64, c: f64, out: *mut *mut PlForm) -> PlStatus {
    guard(out, || {
        let inner = QuadraticForm::new(a, b, c)?;
        Ok(Box::into_raw(Box::new(PlForm { inner })))
    })
}

/// Parses `"a,b,c"`, each coefficient a decimal or `sqrt(k)`.
#[no_mangle]
pub unsafe extern "C" fn pl_form_parse(text: *const c_char, out: *mut *mut PlForm) -> PlStatus {
    guard(out, || {
        if text.is_null() {
            return Err(Error::Parse {
                input: String::new(),
                reason: "null string".into(),
            });
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| Error::Parse {
            input: String::from_utf8_lossy(CStr::from_ptr(text).to_bytes()).into_owned(),
            reason: "not UTF-8".into(),
        })?;
        let inner: QuadraticForm = s.parse()?;
        Ok(Box::into_raw(Box::new(PlForm { inner })))
    })
}

/// Releases a handle from [`pl_form_new`] or [`pl_form_parse`]. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pl_form_free(form: *mut PlForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pl_form_discriminant(form: *const PlForm, out: *mut f64) -> PlStatus {
    guard(out, || Ok(form_ref(form)?.discriminant()))
}

#[no_mangle]
pub unsafe extern "C" fn pl_form_kappa(form: *const PlForm, out: *mut f64) -> PlStatus {
    guard(out, || Ok(form_ref(form)?.kappa()))
}

#[no_mangle]
pub unsafe extern "C" fn pl_form_lambda1(form: *const PlForm, out: *mut f64) -> PlStatus {
    guard(out, || Ok(form_ref(form)?.lambda1()))
}

#[no_mangle]
pub unsafe extern "C" fn pl_form_eval(
    form: *const PlForm,
    m: i64,
    n: i64,
    out: *mut f64,
) -> PlStatus {
    guard(out, || Ok(form_ref(form)?.eval(m, n)))
}

/// `A, B, P, R` at `x`. `workers == 0` picks the machine's parallelism.
#[no_mangle]
pub unsafe extern "C" fn pl_count(
    form: *const PlForm,
    x: f64,
    workers: usize,
    out: *mut PlCount,
) -> PlStatus {
    guard(out, || {
        let list = counting::enumerate_with(form_ref(form)?, x, &options(workers))?;
        let r = list.count(x)?;
        Ok(PlCount {
            x: r.x,
            all: r.all,
            primitive: r.primitive,
            p: r.p,
            r: r.r,
        })
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_count_primitive_moebius(
    form: *const PlForm,
    x: f64,
    out: *mut u64,
) -> PlStatus {
    guard(out, || {
        counting::count_primitive_moebius(form_ref(form)?, x)
    })
}

/// `∫₁^Y |R(x)| dx`.
#[no_mangle]
pub unsafe extern "C" fn pl_mean_abs_r(
    form: *const PlForm,
    y: f64,
    workers: usize,
    out: *mut f64,
) -> PlStatus {
    guard(out, || {
        counting::mean_abs_r_with(form_ref(form)?, y, &options(workers))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_potter(
    form: *const PlForm,
    s: PlComplex,
    z: f64,
    out: *mut PlPotter,
) -> PlStatus {
    guard(out, || {
        let ev = epstein::zeta_q_potter(form_ref(form)?, s.into(), z)?;
        Ok(PlPotter {
            s: ev.s.into(),
            z: ev.z,
            f1: ev.f1.into(),
            f2_bound: ev.f2_bound,
            certified: ev.certified,
        })
    })
}

/// `ζ_Q(s)` from `ζ_Q(1-s)`.
#[no_mangle]
pub unsafe extern "C" fn pl_functional_equation(
    form: *const PlForm,
    s: PlComplex,
    value_at_1_minus_s: PlComplex,
    out: *mut PlComplex,
) -> PlStatus {
    guard(out, || {
        epstein::functional_equation(form_ref(form)?, s.into(), value_at_1_minus_s.into())
            .map(Into::into)
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_k0_lower_bound(
    form: *const PlForm,
    zero_index: usize,
    z: f64,
    out: *mut PlBoundReport,
) -> PlStatus {
    guard(out, || {
        let ctx = PotterContext::new(form_ref(form)?, z)?;
        let r = omega::k0_lower_bound_in(&ctx, special::zeta_zero(zero_index)?)?;
        Ok(PlBoundReport {
            zero_index: r.zero.index,
            gamma: r.zero.gamma,
            beta0: r.zero.beta0,
            z: r.z,
            gamma_ratio: r.gamma_ratio,
            prefactor: r.prefactor,
            f1: r.f1.into(),
            f1_abs: r.f1_abs,
            f2_bound: r.f2_bound,
            margin: r.margin,
            k0_lower: r.k0_lower,
            valid: r.valid,
        })
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_weight_constant(out: *mut PlWeight) -> PlStatus {
    guard(out, || {
        let w = omega::weight_constant_check()?;
        Ok(PlWeight {
            i1: w.i1,
            i2: w.i2,
            value: w.value,
        })
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_zeta_real(s: f64, out: *mut f64) -> PlStatus {
    guard(out, || special::zeta_real(s))
}

/// `L(s, χ₄)` for `s > 0`.
#[no_mangle]
pub unsafe extern "C" fn pl_dirichlet_l(s: f64, out: *mut f64) -> PlStatus {
    guard(out, || special::dirichlet_l(s))
}

/// Principal branch of `log Γ(z)`.
#[no_mangle]
pub unsafe extern "C" fn pl_log_gamma(z: PlComplex, out: *mut PlComplex) -> PlStatus {
    guard(out, || special::log_gamma(z.into()).map(Into::into))
}
