//! The continuous summands `f(x) = x (x + 2) exp(-(a + b sqrt(1 + 2 xi x)))` and
//! `f(x) = x (x + 2) exp(-(a + b_bar x))`, with analytic derivatives.

use crate::error::{Error, Result};

use super::tail::{tail_integral_nonrel, tail_integral_rel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Summand {
    Relativistic { a: f64, b: f64, xi: f64 },
    NonRelativistic { a: f64, b_bar: f64 },
}

impl Summand {
    pub fn relativistic(a: f64, b: f64, xi: f64) -> Result<Self> {
        if !(b > 0.0) || !(xi > 0.0) || !a.is_finite() {
            return Err(Error::domain(format!(
                "relativistic summand needs b > 0, xi > 0 and finite a (a = {a}, b = {b}, xi = {xi})"
            )));
        }
        Ok(Summand::Relativistic { a, b, xi })
    }

    pub fn nonrelativistic(a: f64, b_bar: f64) -> Result<Self> {
        if !(b_bar > 0.0) || !a.is_finite() {
            return Err(Error::domain(format!(
                "non-relativistic summand needs b_bar > 0 and finite a (a = {a}, b_bar = {b_bar})"
            )));
        }
        Ok(Summand::NonRelativistic { a, b_bar })
    }

    /// Exponent `a + b u(x)` of the Boltzmann factor.
    #[inline]
    pub fn exponent(&self, x: f64) -> f64 {
        match *self {
            Summand::Relativistic { a, b, xi } => a + b * (1.0 + 2.0 * xi * x).sqrt(),
            Summand::NonRelativistic { a, b_bar } => a + b_bar * x,
        }
    }

    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        x * (x + 2.0) * (-self.exponent(x)).exp()
    }

    /// `[f, f', f'', f''']` at `x`.
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        let p = x * (x + 2.0);
        let p1 = 2.0 * x + 2.0;
        let p2 = 2.0;
        // derivatives of g = -(exponent)
        let (g1, g2, g3) = match *self {
            Summand::Relativistic { b, xi, .. } => {
                let u = (1.0 + 2.0 * xi * x).sqrt();
                (
                    -b * xi / u,
                    b * xi * xi / u.powi(3),
                    -3.0 * b * xi.powi(3) / u.powi(5),
                )
            }
            Summand::NonRelativistic { b_bar, .. } => (-b_bar, 0.0, 0.0),
        };
        let e = (-self.exponent(x)).exp();
        // (e^g)' = g1 e^g, (e^g)'' = (g2 + g1^2) e^g, (e^g)''' = (g3 + 3 g1 g2 + g1^3) e^g
        let e1 = g1;
        let e2 = g2 + g1 * g1;
        let e3 = g3 + 3.0 * g1 * g2 + g1.powi(3);
        [
            p * e,
            (p1 + p * e1) * e,
            (p2 + 2.0 * p1 * e1 + p * e2) * e,
            (3.0 * p2 * e1 + 3.0 * p1 * e2 + p * e3) * e,
        ]
    }

    /// `f^{(2p-1)}(x)` for `p = 1..=max_order`; only orders up to 2 are available.
    pub fn odd_derivatives(&self, x: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > 2 {
            return Err(Error::domain(format!(
                "analytic derivatives are available through f''' (order 2), requested order {max_order}"
            )));
        }
        let d = self.derivatives(x);
        Ok([d[1], d[3]][..max_order].to_vec())
    }

    /// Whether `f` is non-increasing on `[x, inf)`.
    ///
    /// Both summands are unimodal on `[1, inf)`: `f'/f = 1/x + 1/(x+2) - b xi / u`
    /// (resp. `- b_bar`) changes sign at most once there.
    pub fn decreasing_from(&self, x: f64) -> bool {
        let log_slope = 1.0 / x + 1.0 / (x + 2.0)
            - match *self {
                Summand::Relativistic { b, xi, .. } => b * xi / (1.0 + 2.0 * xi * x).sqrt(),
                Summand::NonRelativistic { b_bar, .. } => b_bar,
            };
        log_slope <= 0.0
    }

    /// Closed-form `int_{x0}^inf f(x) dx`.
    pub fn tail_integral(&self, x0: f64) -> Result<f64> {
        match *self {
            Summand::Relativistic { a, b, xi } => tail_integral_rel(a, b, xi, x0),
            Summand::NonRelativistic { a, b_bar } => tail_integral_nonrel(a, b_bar, x0),
        }
    }

    /// Integral-test bound on `sum_{k > K} f(k)`; infinite while `f` still rises at `K`.
    pub fn tail_bound(&self, k: u64) -> f64 {
        let x = k as f64;
        if !self.decreasing_from(x) {
            return f64::INFINITY;
        }
        self.tail_integral(x).unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonrel_derivatives_by_hand() {
        for (a, bb) in [(0.0, 0.1), (0.3, 1.0), (0.0, 2.5)] {
            let f = Summand::nonrelativistic(a, bb).unwrap();
            let e = (-(a + bb)).exp();
            let d = f.derivatives(1.0);
            assert!((d[0] - 3.0 * e).abs() < 1e-15);
            assert!((d[1] - (4.0 - 3.0 * bb) * e).abs() < 1e-14);
            let f3 = (-3.0 * bb.powi(3) + 12.0 * bb * bb - 6.0 * bb) * e;
            assert!((d[3] - f3).abs() < 1e-13);
        }
    }

    #[test]
    fn nonrel_derivative_zero_slope() {
        // b_bar -> 0 limit of f'(1) = (4 - 3 b_bar) e^{-a}
        let f = Summand::nonrelativistic(0.2, 1e-300).unwrap();
        assert!((f.derivatives(1.0)[1] - 4.0 * (-0.2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn order_limit() {
        let f = Summand::nonrelativistic(0.0, 1.0).unwrap();
        assert_eq!(f.odd_derivatives(1.0, 0).unwrap().len(), 0);
        assert_eq!(f.odd_derivatives(1.0, 2).unwrap().len(), 2);
        assert!(f.odd_derivatives(1.0, 3).is_err());
    }

    #[test]
    fn unimodality_boundary() {
        let f = Summand::nonrelativistic(0.0, 0.1).unwrap();
        let mode = (1..1000).find(|&k| f.decreasing_from(k as f64)).unwrap();
        for k in mode..mode + 200 {
            assert!(f.value(k as f64 + 1.0) <= f.value(k as f64));
        }
        assert!(f.value(mode as f64 - 2.0) < f.value(mode as f64 - 1.0));
        assert!(f.tail_bound(1).is_infinite());
        assert!(f.tail_bound(mode as u64).is_finite());
    }

    #[test]
    fn constructors_validate() {
        assert!(Summand::relativistic(0.0, 0.0, 1.0).is_err());
        assert!(Summand::relativistic(0.0, 1.0, 0.0).is_err());
        assert!(Summand::nonrelativistic(0.0, -1.0).is_err());
        assert!(Summand::nonrelativistic(f64::NAN, 1.0).is_err());
    }
}
