//! Exact Bernoulli numbers from the recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest supported even index.
pub const MAX_INDEX: u32 = 20;

fn binomial(n: u32, k: u32) -> i128 {
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * i128::from(n - i) / i128::from(i + 1))
}

/// `B_0 ..= B_n` with the `B_1 = -1/2` convention.
fn table(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::from_integer(1));
    for m in 1..=n {
        let s = (0..m).fold(Rational::zero(), |acc, j| {
            acc + b[j as usize] * Rational::from_integer(binomial(m + 1, j))
        });
        b.push(-s / Rational::from_integer(i128::from(m) + 1));
    }
    b
}

/// Exact `B_{2p}` for even `two_p` in `2..=20`.
pub fn bernoulli(two_p: u32) -> Result<Rational> {
    if two_p == 0 || two_p % 2 != 0 || two_p > MAX_INDEX {
        return Err(Error::domain(format!(
            "Bernoulli index must be even and in 2..={MAX_INDEX}, got {two_p}"
        )));
    }
    Ok(table(two_p)[two_p as usize])
}

pub fn bernoulli_f64(two_p: u32) -> Result<f64> {
    bernoulli(two_p).map(to_f64)
}

/// Exact `B_{2p} / (2p)!`, the weight of `f^{(2p-1)}` in the Euler-MacLaurin formula.
pub fn em_weight(p: u32) -> Result<Rational> {
    let two_p = 2 * p;
    let b = bernoulli(two_p)?;
    let fact: i128 = (1..=i128::from(two_p)).product();
    Ok(b / Rational::from_integer(fact))
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn low_order_values() {
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli(8).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(10).unwrap(), q(5, 66));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert_eq!(bernoulli(20).unwrap(), q(-174_611, 330));
        assert!((bernoulli_f64(2).unwrap() - 1.0 / 6.0).abs() < 1e-17);
    }

    #[test]
    fn recurrence_holds_exactly() {
        let b = table(MAX_INDEX);
        for m in 1..=MAX_INDEX {
            let s = (0..=m).fold(Rational::zero(), |acc, j| {
                acc + b[j as usize] * Rational::from_integer(binomial(m + 1, j))
            });
            assert!(s.is_zero(), "m = {m}");
        }
        // odd indices above one vanish
        for m in (3..=MAX_INDEX).step_by(2) {
            assert!(b[m as usize].is_zero());
        }
    }

    #[test]
    fn rejects_bad_indices() {
        for i in [0, 1, 3, 7, 22, 100] {
            assert!(bernoulli(i).is_err(), "index {i}");
        }
    }

    #[test]
    fn euler_maclaurin_weights() {
        assert_eq!(em_weight(1).unwrap(), q(1, 12));
        assert_eq!(em_weight(2).unwrap(), q(-1, 720));
        assert_eq!(em_weight(3).unwrap(), q(1, 30_240));
    }
}
