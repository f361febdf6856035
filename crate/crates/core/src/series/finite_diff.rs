//! Central finite differences with Richardson extrapolation (Ridders' tableau).
//!
//! Used only to cross-check analytic derivatives.

const SHRINK: f64 = 1.4;
const SHRINK2: f64 = SHRINK * SHRINK;
const TABLEAU: usize = 10;
const SAFE: f64 = 2.0;

/// Extrapolates `estimate(h)` to `h -> 0` for an estimator whose error is a series in `h^2`.
/// Returns the value and an error estimate.
pub fn ridders<D: Fn(f64) -> f64>(estimate: D, h0: f64) -> (f64, f64) {
    let mut a = [[0.0f64; TABLEAU]; TABLEAU];
    let mut h = h0;
    a[0][0] = estimate(h);
    let mut best = a[0][0];
    let mut err = f64::INFINITY;
    for i in 1..TABLEAU {
        h /= SHRINK;
        a[0][i] = estimate(h);
        let mut fac = SHRINK2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK2;
            let e = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= SAFE * err {
            break;
        }
    }
    (best, err)
}

pub fn first_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> (f64, f64) {
    ridders(|h| (f(x + h) - f(x - h)) / (2.0 * h), h0)
}

pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> (f64, f64) {
    ridders(|h| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h), h0)
}

pub fn third_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> (f64, f64) {
    ridders(
        |h| (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h.powi(3)),
        h0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_sin() {
        let x = 0.7f64;
        let (d1, _) = first_derivative(f64::sin, x, 0.1);
        let (d2, _) = second_derivative(f64::sin, x, 0.1);
        let (d3, _) = third_derivative(f64::sin, x, 0.1);
        assert!((d1 - x.cos()).abs() < 1e-11);
        assert!((d2 + x.sin()).abs() < 1e-9);
        assert!((d3 + x.cos()).abs() < 1e-8);
    }
}
