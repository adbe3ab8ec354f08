//! Real positive definite binary quadratic forms `Q(m, n) = a m² + b m n + c n²`.
//!
//! Coefficients are arbitrary binary64 reals. A form is validated once at
//! construction and is immutable afterwards.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    a: f64,
    b: f64,
    c: f64,
    disc: f64,
}

/// Geometric constants derived from a form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormConstants {
    /// Minimum of `Q(u, v) / (u² + v²)` over real nonzero `(u, v)`.
    pub kappa: f64,
    /// Smallest value of `Q` at a nonzero integer point.
    pub lambda1: f64,
    /// Main-term coefficient of the full count, `2π/√D`.
    pub main_all: f64,
    /// Main-term coefficient of the primitive count, `12/(π√D)`.
    pub main_prim: f64,
}

impl QuadraticForm {
    /// Builds the form, rejecting anything that is not positive definite.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Definiteness(format!(
                "coefficients must be finite, got ({a}, {b}, {c})"
            )));
        }
        if a <= 0.0 {
            return Err(Error::Definiteness(format!("need a > 0, got a = {a}")));
        }
        let disc = 4.0 * a * c - b * b;
        if disc <= 0.0 {
            return Err(Error::Definiteness(format!(
                "need D = 4ac - b^2 > 0, got D = {disc}"
            )));
        }
        Ok(Self { a, b, c, disc })
    }

    /// The form `m² + √2 mn + √3 n²` used as the worked example throughout.
    pub fn q0() -> Self {
        Self::new(1.0, 2f64.sqrt(), 3f64.sqrt()).expect("Q0 is positive definite")
    }

    /// The circle form `m² + n²`.
    pub fn circle() -> Self {
        Self::new(1.0, 0.0, 1.0).expect("circle form is positive definite")
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `D = 4ac - b²`.
    pub fn discriminant(&self) -> f64 {
        self.disc
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Bitwise comparison of coefficients against `m² + √2 mn + √3 n²`.
    pub fn is_q0(&self) -> bool {
        let q0 = Self::q0();
        self.a.to_bits() == q0.a.to_bits()
            && self.b.to_bits() == q0.b.to_bits()
            && self.c.to_bits() == q0.c.to_bits()
    }

    /// The form `tQ`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!(
                "scale factor must be positive, got {t}"
            )));
        }
        Self::new(t * self.a, t * self.b, t * self.c)
    }

    /// `Q(m, n)`, evaluated as `a·m² + (b·m)·n + c·n²` in binary64.
    ///
    /// Every membership test `Q(m, n) <= x` in the crate goes through this
    /// expression, so counts are consistent between code paths. The value is
    /// bitwise symmetric under `(m, n) -> (-m, -n)`.
    #[inline]
    pub fn eval(&self, m: i64, n: i64) -> f64 {
        let (mf, nf) = (m as f64, n as f64);
        self.a * (mf * mf) + (self.b * mf) * nf + self.c * (nf * nf)
    }

    /// Real-valued `Q(u, v)`.
    #[inline]
    pub fn eval_real(&self, u: f64, v: f64) -> f64 {
        self.a * u * u + self.b * u * v + self.c * v * v
    }

    /// `κ_Q = min Q(u,v)/(u²+v²)` from the closed form through the two
    /// stationary slopes `τ± = (a - c ± √((a-c)² + b²)) / b`.
    pub fn kappa(&self) -> f64 {
        if self.b == 0.0 {
            return self.a.min(self.c);
        }
        let diff = self.a - self.c;
        let root = diff.hypot(self.b);
        let ratio = |tau: f64| {
            if tau.is_finite() {
                self.eval_real(tau, 1.0) / (tau * tau + 1.0)
            } else {
                self.a
            }
        };
        let tau_plus = (diff + root) / self.b;
        let tau_minus = (diff - root) / self.b;
        ratio(tau_plus).min(ratio(tau_minus))
    }

    /// Largest value of `Q(u,v)/(u²+v²)`, the larger eigenvalue of the Gram
    /// matrix. Only used to size enumeration boxes.
    pub fn max_ratio(&self) -> f64 {
        0.5 * ((self.a + self.c) + (self.a - self.c).hypot(self.b))
    }

    /// `λ₁`: the smallest value of `Q` over nonzero integer points.
    pub fn lambda1(&self) -> f64 {
        let bound = self.a.min(self.c);
        let mut best = bound;
        let n_max = self.max_row(bound);
        for n in -n_max..=n_max {
            if let Some((lo, hi)) = self.row_bounds(bound, n) {
                for m in lo..=hi {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let q = self.eval(m, n);
                    if q <= bound && q < best {
                        best = q;
                    }
                }
            }
        }
        best
    }

    pub fn constants(&self) -> FormConstants {
        let (main_all, main_prim) = self.main_coefficients();
        FormConstants {
            kappa: self.kappa(),
            lambda1: self.lambda1(),
            main_all,
            main_prim,
        }
    }

    /// `(2π/√D, 12/(π√D))`.
    pub fn main_coefficients(&self) -> (f64, f64) {
        let root_d = self.disc.sqrt();
        (2.0 * PI / root_d, 12.0 / (PI * root_d))
    }

    /// Row index bound: every point with `Q <= x` has `|n| <= max_row(x)`,
    /// with one row of slack for rounding.
    pub(crate) fn max_row(&self, x: f64) -> i64 {
        if x < 0.0 {
            return -1;
        }
        (4.0 * self.a * x / self.disc).sqrt().floor() as i64 + 1
    }

    /// Candidate `m` range for row `n`: a superset (by one on each side) of
    /// the real solutions of `a m² + b n m + c n² <= x`. Callers filter
    /// candidates with [`QuadraticForm::eval`].
    pub(crate) fn row_bounds(&self, x: f64, n: i64) -> Option<(i64, i64)> {
        if x < 0.0 {
            return None;
        }
        let nf = n as f64;
        let disc = 4.0 * self.a * x - self.disc * nf * nf;
        // a slightly negative disc can still hide a rounding-level hit
        if disc < -1e-9 * (4.0 * self.a * x).max(1.0) {
            return None;
        }
        let half_width = disc.max(0.0).sqrt() / (2.0 * self.a);
        let center = -self.b * nf / (2.0 * self.a);
        let lo = (center - half_width).floor() as i64 - 1;
        let hi = (center + half_width).ceil() as i64 + 1;
        Some((lo, hi))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

/// Parses one coefficient token: a decimal literal or `sqrt(k)` for a
/// nonnegative integer `k`, optionally preceded by a sign.
pub fn parse_coefficient(token: &str) -> Result<f64> {
    let parse_err = |reason: &str| Error::Parse {
        input: token.to_string(),
        reason: reason.to_string(),
    };
    let t = token.trim();
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1.0, t[1..].trim_start()),
        Some(b'+') => (1.0, t[1..].trim_start()),
        _ => (1.0, t),
    };
    if body.is_empty() {
        return Err(parse_err("empty coefficient"));
    }
    if let Some(rest) = body.strip_prefix("sqrt(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| parse_err("missing closing parenthesis"))?
            .trim();
        let k: u64 = inner
            .parse()
            .map_err(|_| parse_err("sqrt() takes a nonnegative integer"))?;
        return Ok(sign * (k as f64).sqrt());
    }
    if body.starts_with('-') || body.starts_with('+') {
        return Err(parse_err("repeated sign"));
    }
    let v: f64 = body
        .parse()
        .map_err(|_| parse_err("not a number or sqrt(k)"))?;
    if !v.is_finite() {
        return Err(parse_err("coefficient must be finite"));
    }
    Ok(sign * v)
}

impl FromStr for QuadraticForm {
    type Err = Error;

    /// Parses `"a,b,c"`, e.g. `"1,sqrt(2),sqrt(3)"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: format!(
                    "expected three comma separated coefficients, got {}",
                    parts.len()
                ),
            });
        }
        let a = parse_coefficient(parts[0])?;
        let b = parse_coefficient(parts[1])?;
        let c = parse_coefficient(parts[2])?;
        QuadraticForm::new(a, b, c)
    }
}
