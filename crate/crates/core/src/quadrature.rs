//! Globally adaptive Gauss–Kronrod (7, 15) quadrature on finite and
//! infinite intervals.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f` to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    let mut pieces = vec![gk15(&f, a, b)];
    loop {
        let value: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            if pieces.iter().any(|p| {
                !p.value.is_finite() && p.b - p.a <= f64::EPSILON * p.a.abs().max(p.b.abs())
            }) {
                return Err(Error::Verification(format!(
                    "quadrature on [{a}, {b}] hit a non-finite integrand"
                )));
            }
        } else if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Quadrature {
                value,
                error,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Verification(format!(
                "quadrature on [{a}, {b}] stalled at error {error:e} after {MAX_INTERVALS} intervals"
            )));
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one interval");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        pieces.push(gk15(&f, p.a, mid));
        pieces.push(gk15(&f, mid, p.b));
    }
}

/// `∫_a^∞ f` through `t = a + u/(1-u)`.
pub fn integrate_to_infinity(
    f: impl Fn(f64) -> f64,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    let g = |u: f64| {
        let w = 1.0 - u;
        f(a + u / w) / (w * w)
    };
    integrate(g, 0.0, 1.0, abs_tol, rel_tol)
}

/// `∫_{-∞}^{∞} f` through `t = u/(1-u²)`.
pub fn integrate_real_line(
    f: impl Fn(f64) -> f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    let g = |u: f64| {
        let w = 1.0 - u * u;
        f(u / w) * (1.0 + u * u) / (w * w)
    };
    integrate(g, -1.0, 1.0, abs_tol, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x.powi(6) - 3.0 * x, 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((q.value - (128.0 / 7.0 - 6.0)).abs() < 1e-12);
        assert_eq!(q.intervals, 1);
    }

    #[test]
    fn peaked_integrand() {
        let q = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 0.0, 1e-12).unwrap();
        let exact = 2.0 * 100.0 * (100.0f64).atan();
        assert!(((q.value - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn infinite_ranges() {
        let q = integrate_to_infinity(|t| (-t).exp(), 0.0, 0.0, 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-11);
        let q = integrate_real_line(|t| 1.0 / (1.0 + t * t), 0.0, 1e-12).unwrap();
        assert!((q.value - PI).abs() < 1e-11);
    }

    #[test]
    fn stalls_are_reported() {
        assert!(integrate(|x| 1.0 / x.abs(), -1.0, 1.0, 0.0, 1e-12).is_err());
    }
}
