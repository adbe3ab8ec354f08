//! Scalar special functions used by the Epstein zeta and bound pipeline.

mod gamma;
mod zeros;

pub use gamma::log_gamma;
pub use zeros::{bisect_zero, hardy_z, riemann_siegel_theta, zeta_zero, ZetaZero, ZERO_TABLE};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_24`.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler–Maclaurin sum for `ζ(s)` with `n` leading terms and `terms`
/// Bernoulli corrections. Returns the value and the size of the first
/// omitted correction, which bounds the remainder for real `s > 1`.
pub(crate) fn zeta_euler_maclaurin(s: Complex64, n: usize, terms: usize) -> (Complex64, f64) {
    debug_assert!(terms < BERNOULLI_EVEN.len());
    let nf = n as f64;
    let ln_n = nf.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    // small terms first
    for k in (1..n).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;

    // rising factorial s(s+1)...(s+2k-2) / (2k)!, times N^{-s-2k+1}
    let mut factor = s * n_pow / nf / 2.0;
    let mut tail = 0.0;
    for k in 1..=terms + 1 {
        let term = factor * BERNOULLI_EVEN[k - 1];
        if k > terms {
            tail = term.norm();
            break;
        }
        sum += term;
        let kf = k as f64;
        factor *= (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf)
            / (nf * nf * (2.0 * kf + 1.0) * (2.0 * kf + 2.0));
    }
    (sum, tail)
}

/// Riemann zeta function for real `s > 1`, relative error below `1e-12`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "zeta_real needs finite s > 1, got {s}"
        )));
    }
    let z = Complex64::new(s, 0.0);
    let mut n = 16;
    loop {
        let (value, tail) = zeta_euler_maclaurin(z, n, 10);
        if tail <= 1e-13 * value.re || n >= 1 << 16 {
            return Ok(value.re);
        }
        n *= 2;
    }
}

/// `L(s) = Σ_{n>=0} (-1)^n (2n+1)^{-s}`, the L-series of the nontrivial
/// character mod 4, for real `s > 0`.
///
/// Uses the Cohen–Rodriguez Villegas–Zagier acceleration for alternating
/// series of moments; with 48 terms the error is below `2·5.8^{-48}·|a_0|`.
pub fn dirichlet_l(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "dirichlet_l needs finite s > 0, got {s}"
        )));
    }
    Ok(alternating_sum(48, |k| (2.0 * k as f64 + 1.0).powf(-s)))
}

/// `Σ_{k>=0} (-1)^k a_k` for a totally monotone sequence `a_k`.
pub(crate) fn alternating_sum(n: usize, a: impl Fn(usize) -> f64) -> f64 {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        sum += c * a(k);
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}
