//! Complex log-Gamma.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lanczos coefficients for `g = 7`, nine terms. Relative error of the
/// resulting `Γ` is about `1e-15` on `Re z >= 1/2`.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of `log Γ(z)`: analytic on `ℂ` minus `(-∞, 0]`, real
/// on the positive axis.
///
/// On `Re z >= 1/2` the Lanczos rational approximation is used directly;
/// elsewhere the argument is shifted right with `Γ(z) = Γ(z+N) / Π (z+k)`,
/// which keeps the branch continuous off the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!(
            "log_gamma needs a finite argument, got {z}"
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole {
            function: "log_gamma",
            at: format!("{}", z.re),
        });
    }
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = lanczos(z + shift as f64);
    for k in 0..shift {
        acc -= (z + k as f64).ln();
    }
    Ok(acc)
}

fn lanczos(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + series.ln()
}
