//! Globally adaptive Gauss-Kronrod (7/15) quadrature, with a rational map for
//! semi-infinite ranges. This is the independent check on the closed-form tail
//! integrals.

use crate::error::{Error, Result};

use super::summand::Summand;

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
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Length scale of the semi-infinite map `x = lower + scale (1 - t) / t`.
    pub scale: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_subdivisions: 2000,
            scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

#[derive(Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Segment {
        lo,
        hi,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// Adaptive integration over a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: QuadratureOptions) -> Result<Quadrature> {
    if !(lo.is_finite() && hi.is_finite()) || !(hi > lo) {
        return Err(Error::domain(format!("need a finite interval with lo < hi, got [{lo}, {hi}]")));
    }
    let mut segments = vec![kronrod15(&f, lo, hi)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                subdivisions: segments.len(),
            });
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(Quadrature {
                value,
                error_estimate: error,
                subdivisions: segments.len(),
            });
        }
        if segments.len() >= opts.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                subdivisions: segments.len(),
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        segments.push(kronrod15(&f, s.lo, mid));
        segments.push(kronrod15(&f, mid, s.hi));
    }
}

/// Adaptive integration over `[lower, inf)` via `x = lower + scale (1 - t) / t`, `t in (0, 1]`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    opts: QuadratureOptions,
) -> Result<Quadrature> {
    if !(opts.scale > 0.0) {
        return Err(Error::domain("quadrature scale must be positive"));
    }
    let s = opts.scale;
    let mapped = |t: f64| {
        let x = lower + s * (1.0 - t) / t;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * s / (t * t)
        }
    };
    integrate(mapped, 0.0, 1.0, opts)
}

/// `int_{lower}^inf f` with default accuracy (relative 1e-10).
pub fn quadrature_oracle<F: Fn(f64) -> f64>(f: F, lower: f64) -> Result<Quadrature> {
    integrate_semi_infinite(f, lower, QuadratureOptions::default())
}

/// Relativistic tail integral by quadrature. The `x`-space summand is integrated
/// in the variable `u = sqrt(1 + 2 xi x)`, `dx = u du / xi`, with the semi-infinite
/// map scaled to the decay length `1 / b`.
pub fn rel_tail_by_quadrature(a: f64, b: f64, xi: f64, x0: f64) -> Result<Quadrature> {
    let f = Summand::relativistic(a, b, xi)?;
    let u0 = (1.0 + 2.0 * xi * x0).sqrt();
    let opts = QuadratureOptions {
        scale: 1.0 / b,
        ..QuadratureOptions::default()
    };
    integrate_semi_infinite(
        |u| {
            let x = (u * u - 1.0) / (2.0 * xi);
            f.value(x) * u / xi
        },
        u0,
        opts,
    )
}

/// Non-relativistic tail integral by quadrature directly in `x`.
pub fn nonrel_tail_by_quadrature(a: f64, b_bar: f64, x0: f64) -> Result<Quadrature> {
    let f = Summand::nonrelativistic(a, b_bar)?;
    let opts = QuadratureOptions {
        scale: 1.0 / b_bar,
        ..QuadratureOptions::default()
    };
    integrate_semi_infinite(|x| f.value(x), x0, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::tail::{tail_integral_nonrel, tail_integral_rel};

    #[test]
    fn exponential_tail() {
        let q = quadrature_oracle(|x| (-x).exp(), 1.0).unwrap();
        assert!((q.value - 0.367_879_441_171_442_3).abs() < 1e-12);
        assert!(q.error_estimate <= 1e-10 * q.value);
    }

    #[test]
    fn finite_polynomial() {
        let q = integrate(|x| x * x, 0.0, 3.0, QuadratureOptions::default()).unwrap();
        assert!((q.value - 9.0).abs() < 1e-13);
    }

    #[test]
    fn relativistic_reference() {
        let q = rel_tail_by_quadrature(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!((q.value / 32.081_934_619_767_99 - 1.0).abs() < 1e-10);
        let closed = tail_integral_rel(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!((q.value / closed - 1.0).abs() < 1e-8);
    }

    #[test]
    fn nonrelativistic_reference() {
        let q = nonrel_tail_by_quadrature(0.0, 1.0, 1.0).unwrap();
        assert!((q.value - 3.310_915_0).abs() < 1e-7);
        let q = nonrel_tail_by_quadrature(0.0, 2.0, 3.0).unwrap();
        let closed = tail_integral_nonrel(0.0, 2.0, 3.0).unwrap();
        assert!((q.value / closed - 1.0).abs() < 1e-10);
    }

    #[test]
    fn x_space_integration_agrees() {
        // the same integral without the u substitution
        let f = Summand::relativistic(0.0, 1.0, 1.0).unwrap();
        let q = quadrature_oracle(|x| f.value(x), 1.0).unwrap();
        assert!((q.value / 32.081_934_619_767_99 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let opts = QuadratureOptions {
            max_subdivisions: 3,
            rel_tol: 1e-15,
            ..QuadratureOptions::default()
        };
        match integrate(|x: f64| x.abs().sqrt(), -1.0, 1.3, opts) {
            Err(Error::Quadrature { estimate, subdivisions, .. }) => {
                assert_eq!(subdivisions, 3);
                assert!(estimate.is_finite());
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }
}
