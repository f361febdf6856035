//! Closed-form tail integrals `int_{x0}^inf x (x + 2) e^{-(...)} dx` for both spectra.
//!
//! Relativistic case: with `u = sqrt(1 + 2 xi x)` the integrand becomes
//! `q(u) e^{-b u} / (4 xi^3)` where `q(u) = u^5 + (4 xi - 2) u^3 + (1 - 4 xi) u`,
//! and repeated integration by parts gives
//! `int_{u0}^inf q(u) e^{-b u} du = e^{-b u0} sum_{j=0}^{5} q^{(j)}(u0) / b^{j+1}`.

use crate::error::{Error, Result};

/// `int_{x0}^inf x (x + 2) exp(-(a + b_bar x)) dx`.
pub fn tail_integral_nonrel(a: f64, b_bar: f64, x0: f64) -> Result<f64> {
    if !(b_bar > 0.0) {
        return Err(Error::domain(format!(
            "tail integral diverges for b_bar <= 0 (got {b_bar})"
        )));
    }
    let poly = (x0 * x0 + 2.0 * x0) / b_bar + (2.0 * x0 + 2.0) / (b_bar * b_bar) + 2.0 / b_bar.powi(3);
    Ok((-(a + b_bar * x0)).exp() * poly)
}

/// Coefficients `c_j` of `e^{-(a + b u0)} sum_{j=1}^{6} c_j / b^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelTailCoefficients {
    pub u0: f64,
    /// `c[j - 1]` multiplies `1 / b^j`.
    pub c: [f64; 6],
}

impl RelTailCoefficients {
    /// Coefficients from the substitution, valid for any lower limit `x0`.
    pub fn derived(xi: f64, x0: f64) -> Self {
        let u = (1.0 + 2.0 * xi * x0).sqrt();
        let c3 = 4.0 * xi - 2.0;
        let c1 = 1.0 - 4.0 * xi;
        // q and its derivatives at u0
        let q = [
            u.powi(5) + c3 * u.powi(3) + c1 * u,
            5.0 * u.powi(4) + 3.0 * c3 * u * u + c1,
            20.0 * u.powi(3) + 6.0 * c3 * u,
            60.0 * u * u + 6.0 * c3,
            120.0 * u,
            120.0,
        ];
        let norm = 4.0 * xi.powi(3);
        RelTailCoefficients {
            u0: u,
            c: q.map(|v| v / norm),
        }
    }

    /// The coefficients exactly as printed for `x0 = 1`, including the `1/b^5` term
    /// `3 sqrt(1 + 2 xi) / xi^3` that disagrees with the derivation.
    pub fn printed(xi: f64) -> Self {
        let r = (1.0 + 2.0 * xi).sqrt();
        let xi3 = xi.powi(3);
        RelTailCoefficients {
            u0: r,
            c: [
                3.0 * r / xi,
                (11.0 * xi + 4.0) / (xi * xi),
                r * (16.0 * xi + 2.0) / xi3,
                (36.0 * xi + 12.0) / xi3,
                3.0 * r / xi3,
                30.0 / xi3,
            ],
        }
    }

    pub fn evaluate(&self, a: f64, b: f64) -> f64 {
        // Horner in 1/b
        let inv = 1.0 / b;
        let poly = self.c.iter().rev().fold(0.0, |acc, &c| (acc + c) * inv);
        (-(a + b * self.u0)).exp() * poly
    }
}

/// `int_{x0}^inf x (x + 2) exp(-(a + b sqrt(1 + 2 xi x))) dx`.
pub fn tail_integral_rel(a: f64, b: f64, xi: f64, x0: f64) -> Result<f64> {
    if !(b > 0.0) || !(xi > 0.0) {
        return Err(Error::domain(format!(
            "relativistic tail integral needs b > 0 and xi > 0 (b = {b}, xi = {xi})"
        )));
    }
    Ok(RelTailCoefficients::derived(xi, x0).evaluate(a, b))
}
