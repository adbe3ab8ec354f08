//! Explicit lower bound for
//! `K₀ = liminf_{Y→∞} Y^{-5/4} ∫₁^Y |R(x)| dx`.
//!
//! For a zero `2z₀` of `ζ` with `z₀ = 1/4 + iβ₀`,
//!
//! ```text
//! K₀ >= 6π |(z₀-1)(2z₀-1)/(z₀+2)^7| (2π/√D)^{-1/2} |Γ(1-z₀)|/|Γ(z₀)|
//!       · (|F1(Z, 1-z₀)| - |F2(Z, 1-z₀)|)
//! ```
//!
//! where the last factor is a certified lower bound for `|ζ_Q(1-z₀)|` on
//! `Re s = 3/4`. `ζ_Q(z₀)` itself is never evaluated directly; its size
//! comes through the functional equation.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::epstein::PotterContext;
use crate::error::{Error, Result};
use crate::quadform::QuadraticForm;
use crate::quadrature::{integrate_real_line, integrate_to_infinity};
use crate::special::{log_gamma, zeta_real, zeta_zero, ZetaZero, ZERO_TABLE};

/// Upper bound on the Mellin weight `|w(η)|`.
pub const WEIGHT_BOUND: f64 = 0.33;

/// `K₀` lower bound and the constant in the finite-`Y` inequality for
/// `m² + √2 mn + √3 n²`. Both were derived for that form only and are not
/// available for other forms.
pub const Q0_K0_LOWER: f64 = 4e-4;
pub const Q0_FINITE_Y_SLACK: f64 = 3.62;

/// Quadrature results behind `|w(η)| <= 0.33`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightConstant {
    /// `∫₀^∞ (4+t²)(9+4t²)(1/4+t²) t / (1+t²)^5 dt`, expected `143/32`.
    pub i1: f64,
    /// `∫ dt / (25/16 + (t-β₀)²)` at the first zero's `β₀`, expected `4π/5`.
    pub i2: f64,
    /// The same integral centred at 0.
    pub i2_centered: f64,
    /// `ζ(3)/π^{5/2} · √(2 I₁ I₂)`.
    pub value: f64,
}

pub const I1_CLOSED_FORM: f64 = 143.0 / 32.0;
pub const I2_CLOSED_FORM: f64 = 4.0 * PI / 5.0;

fn weight_i1(t: f64) -> f64 {
    let t2 = t * t;
    let d = 1.0 + t2;
    (4.0 + t2) * (9.0 + 4.0 * t2) * (0.25 + t2) * t / (d * d * d * d * d)
}

/// Evaluates both weight integrals by adaptive quadrature at relative
/// tolerance `rel_tol`, checks them against `143/32` and `4π/5` to `1e-6`,
/// and checks the assembled constant against [`WEIGHT_BOUND`].
pub fn weight_constant_check_with(rel_tol: f64) -> Result<WeightConstant> {
    let beta0 = zeta_zero(1)?.beta0;
    let i1 = integrate_to_infinity(weight_i1, 0.0, 0.0, rel_tol)?.value;
    let lorentz = |beta: f64| move |t: f64| 1.0 / (25.0 / 16.0 + (t - beta) * (t - beta));
    let i2 = integrate_real_line(lorentz(beta0), 0.0, rel_tol)?.value;
    let i2_centered = integrate_real_line(lorentz(0.0), 0.0, rel_tol)?.value;
    let value = zeta_real(3.0)? / PI.powf(2.5) * (2.0 * i1 * i2).sqrt();

    let rel = |x: f64, y: f64| ((x - y) / y).abs();
    for (name, got, want) in [
        ("I1", i1, I1_CLOSED_FORM),
        ("I2", i2, I2_CLOSED_FORM),
        ("I2 (centred)", i2_centered, I2_CLOSED_FORM),
    ] {
        if rel(got, want) > 1e-6 {
            return Err(Error::Verification(format!(
                "{name} = {got} disagrees with closed form {want}"
            )));
        }
    }
    if value > WEIGHT_BOUND {
        return Err(Error::Verification(format!(
            "weight constant {value} exceeds {WEIGHT_BOUND}"
        )));
    }
    Ok(WeightConstant {
        i1,
        i2,
        i2_centered,
        value,
    })
}

pub fn weight_constant_check() -> Result<WeightConstant> {
    weight_constant_check_with(1e-10)
}

/// Every intermediate quantity of the `K₀` bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub form: QuadraticForm,
    pub zero: ZetaZero,
    pub z: f64,
    pub z0: Complex64,
    /// `|Γ(1-z₀)| / |Γ(z₀)|`.
    pub gamma_ratio: f64,
    /// `6π |(z₀-1)(2z₀-1)/(z₀+2)^7| (2π/√D)^{-1/2}`.
    pub prefactor: f64,
    pub f1: Complex64,
    pub f1_abs: f64,
    pub f2_bound: f64,
    /// `|F1| - F2 bound`, a lower bound for `|ζ_Q(1-z₀)|` when positive.
    pub margin: f64,
    pub k0_lower: f64,
    pub valid: bool,
}

impl BoundReport {
    /// Certified lower bound on `|ζ_Q(z₀)|`.
    pub fn zeta_q_z0_lower(&self) -> f64 {
        if !self.valid {
            return 0.0;
        }
        let (main_all, _) = self.form.main_coefficients();
        main_all.powf(-0.5) * self.gamma_ratio * self.margin
    }

    /// Lower bound on `|α₀| = |(z₀-1)(2z₀-1) ζ_Q(z₀) / (z₀+2)^7|`.
    pub fn alpha0_lower(&self) -> f64 {
        self.k0_lower / (6.0 * PI)
    }

    pub fn to_key_value(&self) -> String {
        let (a, b, c) = self.form.coefficients();
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("form", format!("{a},{b},{c}"));
        kv("discriminant", format!("{}", self.form.discriminant()));
        kv("zero_index", self.zero.index.to_string());
        kv("gamma", format!("{}", self.zero.gamma));
        kv("beta0", format!("{}", self.zero.beta0));
        kv("Z", format!("{}", self.z));
        kv("z0", format!("{} + {}i", self.z0.re, self.z0.im));
        kv("gamma_ratio", format!("{}", self.gamma_ratio));
        kv("prefactor", format!("{}", self.prefactor));
        kv("F1", format!("{} + {}i", self.f1.re, self.f1.im));
        kv("F1_abs", format!("{}", self.f1_abs));
        kv("F2_bound", format!("{}", self.f2_bound));
        kv("margin", format!("{}", self.margin));
        kv("zeta_q_z0_lower", format!("{}", self.zeta_q_z0_lower()));
        kv("alpha0_lower", format!("{}", self.alpha0_lower()));
        kv("K0_lower", format!("{}", self.k0_lower));
        kv("valid", self.valid.to_string());
        out
    }

    pub const CSV_HEADER: &'static str =
        "a,b,c,zero_index,beta0,Z,gamma_ratio,prefactor,F1_abs,F2_bound,margin,K0_lower,valid";

    pub fn to_csv_row(&self) -> String {
        let (a, b, c) = self.form.coefficients();
        format!(
            "{a},{b},{c},{},{},{},{},{},{},{},{},{},{}",
            self.zero.index,
            self.zero.beta0,
            self.z,
            self.gamma_ratio,
            self.prefactor,
            self.f1_abs,
            self.f2_bound,
            self.margin,
            self.k0_lower,
            self.valid
        )
    }
}

/// `6π |(z₀-1)(2z₀-1)/(z₀+2)^7| (2π/√D)^{-1/2}`.
pub fn bound_prefactor(form: &QuadraticForm, z0: Complex64) -> f64 {
    let ratio = (z0 - 1.0) * (2.0 * z0 - 1.0) / (z0 + 2.0).powi(7);
    let (main_all, _) = form.main_coefficients();
    6.0 * PI * ratio.norm() * main_all.powf(-0.5)
}

/// `|Γ(1-z₀)| / |Γ(z₀)|`.
pub fn gamma_ratio(z0: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    Ok((log_gamma(one - z0)?.re - log_gamma(z0)?.re).exp())
}

/// The bound through a given zero, reusing an existing enumeration.
pub fn k0_lower_bound_in(ctx: &PotterContext, zero: ZetaZero) -> Result<BoundReport> {
    let form = *ctx.form();
    let z0 = zero.z0();
    let s = Complex64::new(1.0, 0.0) - z0;
    let ev = ctx.evaluate(s)?;
    debug_assert!(ev.certified);
    let gamma_ratio = gamma_ratio(z0)?;
    let prefactor = bound_prefactor(&form, z0);
    let f1_abs = ev.f1.norm();
    let margin = f1_abs - ev.f2_bound;
    let valid = margin > 0.0;
    Ok(BoundReport {
        form,
        zero,
        z: ctx.z(),
        z0,
        gamma_ratio,
        prefactor,
        f1: ev.f1,
        f1_abs,
        f2_bound: ev.f2_bound,
        margin,
        k0_lower: if valid {
            prefactor * gamma_ratio * margin
        } else {
            0.0
        },
        valid,
    })
}

/// The bound through the tabulated zero `zero_index` (1-based).
pub fn k0_lower_bound(form: &QuadraticForm, zero_index: usize, z: f64) -> Result<BoundReport> {
    let zero = zeta_zero(zero_index)?;
    k0_lower_bound_in(&PotterContext::new(form, z)?, zero)
}

/// Tries the tabulated zeros in order and returns the first report with a
/// positive margin.
pub fn k0_search(form: &QuadraticForm, z: f64) -> Result<BoundReport> {
    let ctx = PotterContext::new(form, z)?;
    for index in 1..=ZERO_TABLE.len() {
        let report = k0_lower_bound_in(&ctx, zeta_zero(index)?)?;
        if report.valid {
            return Ok(report);
        }
    }
    Err(Error::Verification(format!(
        "no tabulated zero gives a positive margin at Z = {z}; try a larger Z"
    )))
}

/// Right-hand side of `Y^{-5/4} ∫₁^Y |R| > 4·10⁻⁴ - 3.62 Y^{-5/4}`.
pub fn finite_y_threshold(y: f64) -> f64 {
    Q0_K0_LOWER - Q0_FINITE_Y_SLACK * y.powf(-1.25)
}

/// Checks the finite-`Y` inequality for `Q₀` given `∫₁^Y |R(x)| dx`.
pub fn finite_y_check(form: &QuadraticForm, y: f64, mean_integral: f64) -> Result<bool> {
    if !form.is_q0() {
        return Err(Error::Domain(
            "the finite-Y constant 3.62 is only known for m^2 + sqrt(2) mn + sqrt(3) n^2".into(),
        ));
    }
    if !(y >= 1.0) {
        return Err(Error::Domain(format!("Y must be >= 1, got {y}")));
    }
    Ok(y.powf(-1.25) * mean_integral > finite_y_threshold(y))
}

/// One line of the worked-example reproduction.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub computed: f64,
    pub reference: String,
    pub pass: bool,
}

/// Reruns the worked example (`Q₀`, `Z = 1000`, first zero) and compares
/// every intermediate with the published digits.
pub fn verify_worked_example() -> Result<Vec<CheckLine>> {
    let q0 = QuadraticForm::q0();
    let weight = weight_constant_check()?;
    let report = k0_lower_bound(&q0, 1, 1000.0)?;
    let close = |x: f64, y: f64, tol: f64| (x - y).abs() <= tol;
    Ok(vec![
        CheckLine {
            name: "I1",
            computed: weight.i1,
            reference: "143/32 (rel 1e-6)".into(),
            pass: ((weight.i1 - I1_CLOSED_FORM) / I1_CLOSED_FORM).abs() <= 1e-6,
        },
        CheckLine {
            name: "I2",
            computed: weight.i2,
            reference: "4pi/5 (rel 1e-6)".into(),
            pass: ((weight.i2 - I2_CLOSED_FORM) / I2_CLOSED_FORM).abs() <= 1e-6,
        },
        CheckLine {
            name: "|w| bound",
            computed: weight.value,
            reference: "<= 0.33".into(),
            pass: weight.value <= WEIGHT_BOUND,
        },
        CheckLine {
            name: "beta0",
            computed: report.zero.beta0,
            reference: "7.06736 (+-1e-5)".into(),
            pass: close(report.zero.beta0, 7.06736, 1e-5),
        },
        CheckLine {
            name: "|F1(1000, 1-z0)|",
            computed: report.f1_abs,
            reference: "0.422182 (+-1e-5)".into(),
            pass: close(report.f1_abs, 0.422182, 1e-5),
        },
        CheckLine {
            name: "|F2(1000, 1-z0)| bound",
            computed: report.f2_bound,
            reference: "0.236529 (+-1e-5)".into(),
            pass: close(report.f2_bound, 0.236529, 1e-5),
        },
        CheckLine {
            name: "margin",
            computed: report.margin,
            reference: ">= 0.185653 - 2e-5".into(),
            pass: report.margin >= 0.185653 - 2e-5,
        },
        CheckLine {
            name: "K0 lower bound",
            computed: report.k0_lower,
            reference: "> 4e-4".into(),
            pass: report.valid && report.k0_lower > Q0_K0_LOWER,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bisect_zero;

    #[test]
    fn weight_integrals() {
        let w = weight_constant_check().unwrap();
        assert!((w.i1 - 4.46875).abs() < 1e-8);
        assert!((w.i2 - I2_CLOSED_FORM).abs() < 1e-8);
        assert!((w.i2_centered - I2_CLOSED_FORM).abs() < 1e-8);
        // ζ(3)/π^{5/2}·√(2·143/32·4π/5) from the closed forms
        let expected =
            1.202_056_903_159_594_3 / PI.powf(2.5) * (2.0 * I1_CLOSED_FORM * I2_CLOSED_FORM).sqrt();
        assert!((w.value - expected).abs() < 1e-8);
        assert!((w.value - 0.3257).abs() < 1e-4);
    }

    #[test]
    fn weight_integrals_at_two_tolerances() {
        let coarse = weight_constant_check_with(1e-8).unwrap();
        let fine = weight_constant_check_with(1e-10).unwrap();
        assert!((coarse.value - fine.value).abs() < 1e-7);
    }

    #[test]
    fn worked_example() {
        let r = k0_lower_bound(&QuadraticForm::q0(), 1, 1000.0).unwrap();
        assert!((r.f1_abs - 0.422182).abs() < 1e-5);
        assert!((r.f2_bound - 0.236529).abs() < 1e-5);
        assert!(r.margin >= 0.185653 - 2e-5);
        assert!(r.valid && r.k0_lower > 4e-4);
        assert_eq!(r.z0, Complex64::new(0.25, r.zero.beta0));
        assert!((r.k0_lower - r.prefactor * r.gamma_ratio * r.margin).abs() < 1e-18);
    }

    #[test]
    fn circle_report_is_self_consistent() {
        let r = k0_lower_bound(&QuadraticForm::circle(), 1, 1000.0).unwrap();
        assert_eq!(r.valid, r.margin > 0.0);
        if r.valid {
            assert_eq!(r.k0_lower, r.prefactor * r.gamma_ratio * r.margin);
        } else {
            assert_eq!(r.k0_lower, 0.0);
        }
    }

    #[test]
    fn prefactor_conjugation_invariant() {
        let q = QuadraticForm::q0();
        let z0 = Complex64::new(0.25, 7.067);
        let a = bound_prefactor(&q, z0);
        let b = bound_prefactor(&q, z0.conj());
        assert!((a - b).abs() <= 1e-15 * a);
    }

    #[test]
    fn larger_z_does_not_lose() {
        let q = QuadraticForm::q0();
        let a = k0_lower_bound(&q, 1, 1000.0).unwrap();
        let b = k0_lower_bound(&q, 1, 2000.0).unwrap();
        assert!(a.valid && b.valid);
        assert!((b.f2_bound - a.f2_bound / 2.0).abs() < 1e-15);
        // F1 moves by far less than the halved bound, so the margin improves
        assert!((a.f1_abs - b.f1_abs).abs() < a.f2_bound - b.f2_bound);
        assert!(b.k0_lower >= a.k0_lower - 1e-12);
    }

    #[test]
    fn stable_under_refined_zero() {
        let q = QuadraticForm::q0();
        let table = zeta_zero(1).unwrap();
        let refined = bisect_zero(14.1, 14.2, 1e-12).unwrap();
        let ctx = PotterContext::new(&q, 1000.0).unwrap();
        let a = k0_lower_bound_in(&ctx, table).unwrap();
        let b = k0_lower_bound_in(&ctx, ZetaZero::from_ordinate(1, refined)).unwrap();
        assert!((a.k0_lower - b.k0_lower).abs() < 1e-8);
    }

    #[test]
    fn search_returns_first_valid_zero() {
        let r = k0_search(&QuadraticForm::q0(), 1000.0).unwrap();
        assert_eq!(r.zero.index, 1);
    }

    #[test]
    fn finite_y_examples() {
        let q0 = QuadraticForm::q0();
        assert!(finite_y_threshold(1.0) < 0.0);
        assert!(finite_y_check(&q0, 1.0, 0.0).unwrap());
        // the threshold crosses zero near Y ≈ 1474
        assert!(finite_y_threshold(1000.0) < 0.0);
        assert!(finite_y_threshold(1500.0) > 0.0 && finite_y_threshold(1500.0) < 1e-4);
        assert!(matches!(
            finite_y_check(&QuadraticForm::circle(), 2000.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn report_serialisation() {
        let r = k0_lower_bound(&QuadraticForm::q0(), 1, 1000.0).unwrap();
        let kv = r.to_key_value();
        assert!(kv.contains("zero_index = 1\n"));
        assert!(kv.contains("valid = true\n"));
        let header_cols = BoundReport::CSV_HEADER.split(',').count();
        assert_eq!(r.to_csv_row().split(',').count(), header_cols);
    }

    #[test]
    fn worked_example_lines_pass() {
        let lines = verify_worked_example().unwrap();
        assert_eq!(lines.len(), 8);
        for l in lines {
            assert!(l.pass, "{} = {} ({})", l.name, l.computed, l.reference);
        }
    }
}
