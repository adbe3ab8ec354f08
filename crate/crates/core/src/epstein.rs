//! The Epstein zeta function `ζ_Q(s) = Σ Q(m,n)^{-s}` of a form.
//!
//! For `Re s > -1/4`, `s ≠ 1`, Potter's approximate equation splits
//! `ζ_Q(s) = F1(Z, s) + F2(Z, s)` where
//!
//! ```text
//! F1(Z,s) = Σ_{0<Q<=Z} Q^{-s} + s Z^{-s-1} Σ_{Q<=Z} Q - (1+s) Z^{-s} Σ_{Q<=Z} 1
//!           + (π/√D) s(s+1)/(s-1) Z^{1-s}
//! ```
//!
//! (the last two sums include the origin) and, on `Re s = 3/4`,
//!
//! ```text
//! |F2(Z,s)| <= |s(s+1)| D^{3/4} π^{-3/2} κ_Q^{-5/4} ζ(5/4) L(5/4) / Z.
//! ```
//!
//! The pair `(F1, bound)` is a disc certified to contain `ζ_Q(s)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::counting::{enumerate_with, EnumerationOptions, ValueList};
use crate::error::{Error, Result};
use crate::quadform::QuadraticForm;
use crate::special::{dirichlet_l, log_gamma, zeta_real};

/// Real part at which the `F2` bound constant is proven.
pub const CERTIFIED_RE: f64 = 0.75;

fn is_certified(s: Complex64) -> bool {
    (s.re - CERTIFIED_RE).abs() <= 1e-12
}

/// `x^{-s}` for `x > 0`.
#[inline]
fn pow_neg(ln_x: f64, s: Complex64) -> Complex64 {
    (-s * ln_x).exp()
}

/// Result of one Potter evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotterEvaluation {
    pub s: Complex64,
    pub z: f64,
    pub f1: Complex64,
    /// Upper bound on `|F2(Z, s)|`.
    pub f2_bound: f64,
    /// Whether `f2_bound` is the proven constant (`Re s = 3/4`) rather than
    /// the same formula used as a heuristic.
    pub certified: bool,
}

impl PotterEvaluation {
    pub fn radius(&self) -> f64 {
        self.f2_bound
    }

    pub fn contains(&self, w: Complex64) -> bool {
        (w - self.f1).norm() <= self.f2_bound
    }

    pub fn intersects(&self, other: &PotterEvaluation) -> bool {
        (self.f1 - other.f1).norm() <= self.f2_bound + other.f2_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F2Bound {
    pub value: f64,
    pub certified: bool,
}

/// One enumeration up to `Z`, reusable for any number of `s`.
#[derive(Debug, Clone)]
pub struct PotterContext {
    list: ValueList,
    z: f64,
    value_sum: f64,
    point_count: f64,
    half_main: f64,
    f2_constant: f64,
}

impl PotterContext {
    pub fn new(form: &QuadraticForm, z: f64) -> Result<Self> {
        Self::with_options(form, z, &EnumerationOptions::default())
    }

    pub fn with_options(form: &QuadraticForm, z: f64, opts: &EnumerationOptions) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::Domain(format!(
                "Potter parameter Z must be positive, got {z}"
            )));
        }
        let list = enumerate_with(form, z, opts)?;
        let value_sum = list.value_sum();
        let point_count = (list.point_count() + 1) as f64;
        Ok(Self {
            z,
            value_sum,
            point_count,
            half_main: PI / form.discriminant().sqrt(),
            f2_constant: f2_constant(form)?,
            list,
        })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn form(&self) -> &QuadraticForm {
        self.list.form()
    }

    /// `F1(Z, s)`.
    pub fn f1(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole {
                function: "F1",
                at: "s = 1".into(),
            });
        }
        let mut lattice = Complex64::new(0.0, 0.0);
        for e in self.list.entries() {
            lattice += e.total as f64 * pow_neg(e.value.ln(), s);
        }
        let ln_z = self.z.ln();
        let z_pow = pow_neg(ln_z, s);
        let one = Complex64::new(1.0, 0.0);
        let value_term = s * z_pow / self.z * self.value_sum;
        let count_term = (one + s) * z_pow * self.point_count;
        let main_term = self.half_main * s * (s + 1.0) / (s - 1.0) * z_pow * self.z;
        Ok(lattice + value_term - count_term + main_term)
    }

    pub fn f2_bound(&self, s: Complex64) -> F2Bound {
        F2Bound {
            value: (s * (s + 1.0)).norm() * self.f2_constant / self.z,
            certified: is_certified(s),
        }
    }

    pub fn evaluate(&self, s: Complex64) -> Result<PotterEvaluation> {
        let f1 = self.f1(s)?;
        let b = self.f2_bound(s);
        Ok(PotterEvaluation {
            s,
            z: self.z,
            f1,
            f2_bound: b.value,
            certified: b.certified,
        })
    }
}

/// `D^{3/4} π^{-3/2} κ^{-5/4} ζ(5/4) L(5/4)`.
fn f2_constant(form: &QuadraticForm) -> Result<f64> {
    let d = form.discriminant();
    Ok(d.powf(0.75) / PI.powf(1.5)
        * form.kappa().powf(-1.25)
        * zeta_real(1.25)?
        * dirichlet_l(1.25)?)
}

/// `F1(Z, s)` from a fresh enumeration.
pub fn potter_f1(form: &QuadraticForm, z: f64, s: Complex64) -> Result<Complex64> {
    PotterContext::new(form, z)?.f1(s)
}

/// The closed-form bound on `|F2(Z, s)|`; flagged as heuristic off `Re s = 3/4`.
pub fn potter_f2_bound(form: &QuadraticForm, z: f64, s: Complex64) -> Result<F2Bound> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "Potter parameter Z must be positive, got {z}"
        )));
    }
    Ok(F2Bound {
        value: (s * (s + 1.0)).norm() * f2_constant(form)? / z,
        certified: is_certified(s),
    })
}

/// Potter evaluation of `ζ_Q(s)` on its region of validity.
pub fn zeta_q_potter(form: &QuadraticForm, s: Complex64, z: f64) -> Result<PotterEvaluation> {
    if !(s.re > -0.25) {
        return Err(Error::Domain(format!(
            "the approximate equation needs Re s > -1/4, got s = {s}"
        )));
    }
    PotterContext::new(form, z)?.evaluate(s)
}

/// `ζ_Q(s)` for `Re s > 1` from lattice partial sums.
///
/// The partial sum up to `X` is completed by the smooth tail
/// `-A(X) X^{-s} + (2π/√D) s/(s-1) X^{1-s}`; `X` doubles until two
/// consecutive doublings move the value by less than `tol`. Test oracle
/// only: the stopping rule is heuristic.
pub fn zeta_q_series(form: &QuadraticForm, s: Complex64, tol: f64) -> Result<Complex64> {
    zeta_q_series_with(form, s, tol, &EnumerationOptions::default())
}

pub fn zeta_q_series_with(
    form: &QuadraticForm,
    s: Complex64,
    tol: f64,
    opts: &EnumerationOptions,
) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!(
            "the Dirichlet series needs Re s > 1, got s = {s}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (main_all, _) = form.main_coefficients();
    let mut cap = 64.0 * form.max_ratio();
    let mut previous: Option<Complex64> = None;
    let mut settled = 0;
    loop {
        let list = match enumerate_with(form, cap, opts) {
            Ok(list) => list,
            Err(Error::Budget { .. }) => return Err(Error::NonConvergence { tol, cap }),
            Err(e) => return Err(e),
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for e in list.entries().iter().rev() {
            sum += e.total as f64 * pow_neg(e.value.ln(), s);
        }
        let cap_pow = pow_neg(cap.ln(), s);
        let count = (list.point_count() + 1) as f64;
        let value = sum - count * cap_pow + main_all * s / (s - 1.0) * cap_pow * cap;
        if let Some(prev) = previous {
            if (value - prev).norm() < tol {
                settled += 1;
                if settled == 2 {
                    return Ok(value);
                }
            } else {
                settled = 0;
            }
        }
        previous = Some(value);
        cap *= 2.0;
    }
}

/// `(2π/√D)^{2s-1} Γ(1-s)/Γ(s)`, the factor relating `ζ_Q(s)` to `ζ_Q(1-s)`.
pub fn functional_factor(form: &QuadraticForm, s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta_Q",
            at: "s = 1".into(),
        });
    }
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta_Q",
            at: "1 - s = 1".into(),
        });
    }
    let ln_scale = (2.0 * PI / form.discriminant().sqrt()).ln();
    let one = Complex64::new(1.0, 0.0);
    let exponent = (2.0 * s - 1.0) * ln_scale + log_gamma(one - s)? - log_gamma(s)?;
    Ok(exponent.exp())
}

/// `ζ_Q(s)` from a value of `ζ_Q(1-s)` through the functional equation.
pub fn functional_equation(
    form: &QuadraticForm,
    s: Complex64,
    zq_at_1_minus_s: Complex64,
) -> Result<Complex64> {
    Ok(functional_factor(form, s)? * zq_at_1_minus_s)
}
