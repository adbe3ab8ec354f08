//! Nontrivial zeros `1/2 + iγ` of the Riemann zeta function.
//!
//! Ordinates are tabulated; [`hardy_z`] and [`bisect_zero`] give an
//! independent way to bracket and refine each one.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;

use super::zeta_euler_maclaurin;
use crate::error::{Error, Result};

/// Ordinates of the first twenty zeros on the critical line.
pub const ZERO_TABLE: [f64; 20] = [
    14.134_725_141_734_693_790,
    21.022_039_638_771_554_993,
    25.010_857_580_145_688_763,
    30.424_876_125_859_513_210,
    32.935_061_587_739_189_691,
    37.586_178_158_825_671_257,
    40.918_719_012_147_495_187,
    43.327_073_280_914_999_520,
    48.005_150_881_167_159_728,
    49.773_832_477_672_302_182,
    52.970_321_477_714_460_644,
    56.446_247_697_063_394_804,
    59.347_044_002_602_353_080,
    60.831_778_524_609_809_844,
    65.112_544_048_081_606_661,
    67.079_810_529_494_173_714,
    69.546_401_711_173_979_253,
    72.067_157_674_481_907_583,
    75.704_690_699_083_933_168,
    77.144_840_068_874_805_373,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaZero {
    /// 1-based position in the table.
    pub index: usize,
    /// Ordinate `γ` of the zero `1/2 + iγ`.
    pub gamma: f64,
    /// `γ/2`, so that `2(1/4 + iβ₀)` is the zero.
    pub beta0: f64,
}

impl ZetaZero {
    pub fn from_ordinate(index: usize, gamma: f64) -> Self {
        Self {
            index,
            gamma,
            beta0: 0.5 * gamma,
        }
    }

    /// `z₀ = 1/4 + iβ₀`.
    pub fn z0(&self) -> Complex64 {
        Complex64::new(0.25, self.beta0)
    }
}

pub fn zeta_zero(index: usize) -> Result<ZetaZero> {
    if index == 0 || index > ZERO_TABLE.len() {
        return Err(Error::ZeroIndex {
            index,
            len: ZERO_TABLE.len(),
        });
    }
    Ok(ZetaZero::from_ordinate(index, ZERO_TABLE[index - 1]))
}

/// Riemann–Siegel theta from its asymptotic expansion; the first omitted
/// term is below `1e-13` for `t >= 10`.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let t2 = t * t;
    let series = 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430_080.0 * t * t2 * t2 * t2);
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + series
}

/// Hardy's function `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real valued, with the
/// same sign changes as `ζ` on the critical line. Defined here for `t >= 10`.
pub fn hardy_z(t: f64) -> Result<f64> {
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "hardy_z is implemented for t >= 10, got {t}"
        )));
    }
    let s = Complex64::new(0.5, t);
    let n = (t.ceil() as usize).max(20);
    let (zeta, _) = zeta_euler_maclaurin(s, n, 10);
    let rot = Complex64::from_polar(1.0, riemann_siegel_theta(t));
    Ok((rot * zeta).re)
}

/// Refines a sign change of [`hardy_z`] in `[lo, hi]` by bisection until the
/// bracket is narrower than `width`. Returns the midpoint.
pub fn bisect_zero(mut lo: f64, mut hi: f64, width: f64) -> Result<f64> {
    let mut f_lo = hardy_z(lo)?;
    let f_hi = hardy_z(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Domain(format!(
            "no sign change of Z(t) on [{lo}, {hi}]"
        )));
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = hardy_z(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
