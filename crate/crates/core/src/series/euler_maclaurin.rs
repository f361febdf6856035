use crate::error::{Error, Result};

use super::bernoulli::{em_weight, to_f64, MAX_INDEX};

/// Default expansion order: corrections through `f'''`.
pub const DEFAULT_ORDER: usize = 2;

/// `sum_{k>=1} f(k) ~ f(1)/2 + int_1^inf f - sum_{p=1}^{order} B_{2p}/(2p)! f^{(2p-1)}(1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmExpansion {
    pub order: usize,
    /// `f(1) / 2`
    pub boundary_term: f64,
    pub integral_term: f64,
    /// `-B_{2p}/(2p)! f^{(2p-1)}(1)` for `p = 1..=order`.
    pub correction_terms: Vec<f64>,
    pub value: f64,
}

pub fn euler_maclaurin_sum(
    f1: f64,
    integral_from_1: f64,
    odd_derivs_at_1: &[f64],
    order: usize,
) -> Result<EmExpansion> {
    if odd_derivs_at_1.len() < order {
        return Err(Error::domain(format!(
            "order {order} needs {order} odd derivatives, got {}",
            odd_derivs_at_1.len()
        )));
    }
    if 2 * order > MAX_INDEX as usize {
        return Err(Error::domain(format!(
            "Euler-MacLaurin order {order} exceeds the available Bernoulli numbers"
        )));
    }
    let correction_terms = odd_derivs_at_1[..order]
        .iter()
        .enumerate()
        .map(|(i, &d)| em_weight(i as u32 + 1).map(|w| -to_f64(w) * d))
        .collect::<Result<Vec<_>>>()?;
    let boundary_term = 0.5 * f1;
    let value = correction_terms
        .iter()
        .fold(boundary_term + integral_from_1, |acc, &t| acc + t);
    Ok(EmExpansion {
        order,
        boundary_term,
        integral_term: integral_from_1,
        correction_terms,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::summand::Summand;

    const E_INV: f64 = 0.367_879_441_171_442_3;

    #[test]
    fn exponential_series() {
        let em = euler_maclaurin_sum(E_INV, E_INV, &[-E_INV, -E_INV], 2).unwrap();
        assert!((em.value - 0.581_964_838_186_49).abs() < 1e-13);
        let exact = 1.0 / (std::f64::consts::E - 1.0);
        assert!((em.value - exact).abs() < 1.3e-5);
        assert_eq!(em.correction_terms.len(), 2);
        assert!((em.correction_terms[0] - E_INV / 12.0).abs() < 1e-17);
    }

    #[test]
    fn higher_orders_converge_for_exponential() {
        // every odd derivative of e^{-x} at 1 is -e^{-1}
        let exact = 1.0 / (std::f64::consts::E - 1.0);
        let derivs = vec![-E_INV; 6];
        let mut prev = f64::INFINITY;
        for order in 1..=5 {
            let em = euler_maclaurin_sum(E_INV, E_INV, &derivs, order).unwrap();
            let err = (em.value - exact).abs();
            assert!(err < prev, "order {order}");
            prev = err;
        }
        assert!(prev < 1e-9);
    }

    #[test]
    fn order_zero_is_boundary_plus_integral() {
        let em = euler_maclaurin_sum(2.0, 5.0, &[], 0).unwrap();
        assert_eq!(em.value, 6.0);
        assert!(em.correction_terms.is_empty());
    }

    #[test]
    fn value_is_left_to_right_sum() {
        let em = euler_maclaurin_sum(0.3, 1.7, &[0.11, -0.05], 2).unwrap();
        let manual = em.boundary_term + em.integral_term + em.correction_terms[0] + em.correction_terms[1];
        assert_eq!(em.value, manual);
    }

    #[test]
    fn missing_derivatives() {
        assert!(euler_maclaurin_sum(1.0, 1.0, &[0.1], 2).is_err());
        assert!(euler_maclaurin_sum(1.0, 1.0, &[0.0; 11], 11).is_err());
    }

    #[test]
    fn nonrel_bracket_at_small_b_bar() {
        let bb = 0.1f64;
        let f = Summand::nonrelativistic(0.0, bb).unwrap();
        let d = f.derivatives(1.0);
        let em = euler_maclaurin_sum(d[0], f.tail_integral(1.0).unwrap(), &[d[1], d[3]], 2).unwrap();
        let bracket = 7.0 / 6.0 + 30.0 + 400.0 + 2000.0 + 29.0 / 1200.0 + 1.0 / 6000.0 - 1.0 / 240_000.0;
        assert!((em.value - bracket * (-bb).exp()).abs() < 1e-11 * em.value);
        assert!((em.value - 2199.83).abs() < 0.01);
    }
}
