//! One-particle partition function by four routes, and N-particle scaling.
//!
//! Every route works in log space. The sum-based routes factor the ground-level
//! Boltzmann factor out of the series, so the summed quantity is
//! `sum_k k (k + 2) exp(-beta (E_k - E_1))` regardless of temperature and field,
//! and `ln Z = log_scale + ln(sum)` with `log_scale = -beta E_1`.

use crate::error::{Error, Result};
use crate::model::{ModelParams, Regime, ReducedState};
use crate::series::{
    direct_sum, euler_maclaurin_sum, EmExpansion, RelTailCoefficients, Summand, SumResult,
    DEFAULT_K_MAX, DEFAULT_ORDER, DEFAULT_REL_TOL,
};

/// Upper edge of the high-temperature window for `a` and `b` (resp. `b_bar`).
pub const HIGH_T_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    EulerMaclaurin,
    HighT,
    ExactClosedForm,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::EulerMaclaurin => "em",
            Method::HighT => "high-t",
            Method::ExactClosedForm => "exact-nr",
        }
    }
}

/// Whether the state lies in the window where the leading high-temperature term is trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    Ok,
    OutsideHighTWindow,
}

impl Validity {
    pub fn label(self) -> &'static str {
        match self {
            Validity::Ok => "ok",
            Validity::OutsideHighTWindow => "outside-high-t",
        }
    }
}

/// Which closed form supplies the relativistic integral term of the Euler-MacLaurin route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailForm {
    #[default]
    Derived,
    /// Printed coefficients, `1/b^5` term `3 sqrt(1 + 2 xi) / xi^3` included. Comparison only.
    Printed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostics {
    Sum(SumResult),
    EulerMaclaurin(EmExpansion),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    /// `ln Z_1`; authoritative.
    pub log_value: f64,
    /// `Z_1`; may overflow to infinity.
    pub value: f64,
    pub method: Method,
    /// Diagnostics are expressed for the scaled series, i.e. in units of `exp(log_scale)`.
    pub diagnostics: Option<Diagnostics>,
    pub log_scale: f64,
    pub validity: Validity,
}

impl PartitionResult {
    fn new(log_value: f64, method: Method, diagnostics: Option<Diagnostics>, log_scale: f64, validity: Validity) -> Self {
        PartitionResult {
            log_value,
            value: log_value.exp(),
            method,
            diagnostics,
            log_scale,
            validity,
        }
    }

    pub fn sum(&self) -> Option<&SumResult> {
        match &self.diagnostics {
            Some(Diagnostics::Sum(s)) => Some(s),
            _ => None,
        }
    }

    pub fn expansion(&self) -> Option<&EmExpansion> {
        match &self.diagnostics {
            Some(Diagnostics::EulerMaclaurin(e)) => Some(e),
            _ => None,
        }
    }
}

/// Tuning shared by the routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteOptions {
    pub rel_tol: f64,
    pub k_max: u64,
    pub em_order: usize,
    pub tail_form: TailForm,
}

impl Default for RouteOptions {
    fn default() -> Self {
        RouteOptions {
            rel_tol: DEFAULT_REL_TOL,
            k_max: DEFAULT_K_MAX,
            em_order: DEFAULT_ORDER,
            tail_form: TailForm::Derived,
        }
    }
}

pub fn high_t_validity(params: &ModelParams, state: &ReducedState) -> Validity {
    let thermal = match params.regime() {
        Regime::Relativistic => state.b,
        Regime::NonRelativistic => state.b_bar,
    };
    if state.a > HIGH_T_THRESHOLD || thermal > HIGH_T_THRESHOLD {
        Validity::OutsideHighTWindow
    } else {
        Validity::Ok
    }
}

/// Field-free ground-level exponent `beta (E_1 - mu B)`.
pub(crate) fn ground_exponent(params: &ModelParams, state: &ReducedState) -> f64 {
    match params.regime() {
        Regime::Relativistic => state.b * (1.0 + 2.0 * params.xi()).sqrt(),
        Regime::NonRelativistic => state.b_bar,
    }
}

/// Summand with the ground-level factor divided out, so that its value at `k = 1` is 3.
pub(crate) fn scaled_summand(params: &ModelParams, state: &ReducedState) -> Result<Summand> {
    let shift = -ground_exponent(params, state);
    match params.regime() {
        Regime::Relativistic => Summand::relativistic(shift, state.b, params.xi()),
        Regime::NonRelativistic => Summand::nonrelativistic(shift, state.b_bar),
    }
}

/// Certified truncated sum with the integral-test tail as the stopping rule.
pub fn z_direct(params: &ModelParams, state: &ReducedState, rel_tol: f64) -> Result<PartitionResult> {
    z_direct_with(params, state, rel_tol, DEFAULT_K_MAX)
}

pub fn z_direct_with(params: &ModelParams, state: &ReducedState, rel_tol: f64, k_max: u64) -> Result<PartitionResult> {
    let g = scaled_summand(params, state)?;
    let sum = direct_sum(|k| g.value(k as f64), |k| g.tail_bound(k), rel_tol, k_max)?;
    let log_scale = -(state.a + ground_exponent(params, state));
    Ok(PartitionResult::new(
        log_scale + sum.value.ln(),
        Method::Direct,
        Some(Diagnostics::Sum(sum)),
        log_scale,
        Validity::Ok,
    ))
}

/// `Z = e^{-a} x (3 - x) / (1 - x)^3` with `x = e^{-b_bar}`, from
/// `sum k x^k = x / (1 - x)^2` and `sum k^2 x^k = x (1 + x) / (1 - x)^3`.
pub fn z_exact_nonrel(params: &ModelParams, state: &ReducedState) -> Result<PartitionResult> {
    if params.regime() != Regime::NonRelativistic {
        return Err(Error::domain("the geometric closed form exists only for the non-relativistic spectrum"));
    }
    if !(state.b_bar > 0.0) {
        return Err(Error::domain(format!("closed form needs x = e^-b_bar < 1, got b_bar = {}", state.b_bar)));
    }
    let one_minus_x = -(-state.b_bar).exp_m1();
    let log_value = -state.a - state.b_bar + (3.0 - state.x).ln() - 3.0 * one_minus_x.ln();
    Ok(PartitionResult::new(log_value, Method::ExactClosedForm, None, 0.0, Validity::Ok))
}

/// Euler-MacLaurin expansion through `f'''` with the derived tail integral.
pub fn z_euler_maclaurin(params: &ModelParams, state: &ReducedState, order: usize) -> Result<PartitionResult> {
    z_euler_maclaurin_with(params, state, order, TailForm::Derived)
}

pub fn z_euler_maclaurin_with(
    params: &ModelParams,
    state: &ReducedState,
    order: usize,
    tail_form: TailForm,
) -> Result<PartitionResult> {
    let g = scaled_summand(params, state)?;
    let derivs = g.odd_derivatives(1.0, order)?;
    let integral = match (tail_form, g) {
        (TailForm::Printed, Summand::Relativistic { a, b, xi }) => RelTailCoefficients::printed(xi).evaluate(a, b),
        _ => g.tail_integral(1.0)?,
    };
    let expansion = euler_maclaurin_sum(g.value(1.0), integral, &derivs, order)?;
    if !(expansion.value > 0.0) {
        return Err(Error::NonPositiveExpansion(expansion.value));
    }
    let log_scale = -(state.a + ground_exponent(params, state));
    Ok(PartitionResult::new(
        log_scale + expansion.value.ln(),
        Method::EulerMaclaurin,
        Some(Diagnostics::EulerMaclaurin(expansion)),
        log_scale,
        Validity::Ok,
    ))
}

/// Leading high-temperature term: `30 / (b^6 xi^3)` or `2 / b_bar^3`.
///
/// Like the closed forms it comes from, this drops the `e^{-a}` field factor.
pub fn z_high_t(params: &ModelParams, state: &ReducedState) -> PartitionResult {
    let log_value = match params.regime() {
        Regime::Relativistic => 30f64.ln() - 6.0 * state.b.ln() - 3.0 * params.xi().ln(),
        Regime::NonRelativistic => 2f64.ln() - 3.0 * state.b_bar.ln(),
    };
    PartitionResult::new(log_value, Method::HighT, None, 0.0, high_t_validity(params, state))
}

/// `ln Z_N = N ln Z_1` (Maxwell-Boltzmann counting, no `1/N!`).
pub fn log_z_n(single: &PartitionResult, n: u64) -> f64 {
    n as f64 * single.log_value
}

/// Dispatches to the requested route.
pub fn evaluate(method: Method, params: &ModelParams, state: &ReducedState, opts: &RouteOptions) -> Result<PartitionResult> {
    match method {
        Method::Direct => z_direct_with(params, state, opts.rel_tol, opts.k_max),
        Method::EulerMaclaurin => z_euler_maclaurin_with(params, state, opts.em_order, opts.tail_form),
        Method::HighT => Ok(z_high_t(params, state)),
        Method::ExactClosedForm => z_exact_nonrel(params, state),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::reduced_state;
    use crate::series::tail_integral_rel;

    fn nonrel(mu_b: f64) -> ModelParams {
        ModelParams::builder()
            .regime(Regime::NonRelativistic)
            .xi(1.0)
            .mu_b(mu_b)
            .build()
            .unwrap()
    }

    /// state with given a and b_bar for xi_bar = 1 in natural units
    fn nonrel_state(a: f64, b_bar: f64) -> (ModelParams, ReducedState) {
        let p = nonrel(a / b_bar);
        let s = reduced_state(&p, 1.0 / b_bar).unwrap();
        (p, s)
    }

    #[test]
    fn direct_nonrel_reference() {
        let (p, s) = nonrel_state(0.0, 1.0);
        let z = z_direct(&p, &s, 1e-12).unwrap();
        // x (3 - x) / (1 - x)^3 at x = 1/e, evaluated to 30 digits
        assert!((z.value / 3.833_641_955_540_572 - 1.0).abs() < 1e-12);
        assert!((z.log_value - 1.343_815_253_601_346).abs() < 1e-12);
        let sum = z.sum().unwrap();
        assert!(sum.tail_bound <= 1e-12 * sum.value);
    }

    #[test]
    fn field_shift_ln2_halves() {
        let ln2 = std::f64::consts::LN_2;
        let (p0, s0) = nonrel_state(0.0, 1.0);
        let (p1, s1) = nonrel_state(ln2, 1.0);
        assert!((s1.a - ln2).abs() < 1e-15);
        let z0 = z_direct(&p0, &s0, 1e-12).unwrap();
        let z1 = z_direct(&p1, &s1, 1e-12).unwrap();
        assert!((z1.value / z0.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn direct_rel_integral_sandwich() {
        let p = ModelParams::natural(Regime::Relativistic, 1.0).unwrap();
        let s = reduced_state(&p, 1.0).unwrap();
        let z = z_direct(&p, &s, 1e-12).unwrap();
        let integral = tail_integral_rel(0.0, 1.0, 1.0, 1.0).unwrap();
        let f1 = 3.0 * (-(3f64.sqrt())).exp();
        assert!(z.value > integral);
        assert!(z.value < integral + f1);
    }

    #[test]
    fn exact_closed_form_values() {
        let (p, s) = nonrel_state(0.0, std::f64::consts::LN_2);
        assert!((z_exact_nonrel(&p, &s).unwrap().value - 10.0).abs() < 1e-13);
        let (p, s) = nonrel_state(0.0, 0.1);
        let z = z_exact_nonrel(&p, &s).unwrap();
        assert!((z.value - 2199.832_583_961_305).abs() < 1e-9);
        let d = z_direct(&p, &s, 1e-12).unwrap();
        assert!((d.value / z.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_ground_state_dominance() {
        let (p, s) = nonrel_state(0.2, 40.0);
        let z = z_exact_nonrel(&p, &s).unwrap();
        let ground = 3.0 * (-(0.2f64 + 40.0)).exp();
        assert!((z.value / ground - 1.0).abs() < 1e-13);
        // log form survives where x underflows
        let (p, s) = nonrel_state(0.0, 2000.0);
        assert_eq!(s.x, 0.0);
        let z = z_exact_nonrel(&p, &s).unwrap();
        assert!((z.log_value - (3f64.ln() - 2000.0)).abs() < 1e-12);
        let d = z_direct(&p, &s, 1e-12).unwrap();
        assert!((d.log_value - z.log_value).abs() < 1e-12);
    }

    #[test]
    fn exact_rejects_relativistic() {
        let p = ModelParams::natural(Regime::Relativistic, 1.0).unwrap();
        let s = reduced_state(&p, 1.0).unwrap();
        assert!(z_exact_nonrel(&p, &s).is_err());
    }

    #[test]
    fn euler_maclaurin_nonrel() {
        let (p, s) = nonrel_state(0.0, 0.1);
        let em = z_euler_maclaurin(&p, &s, 2).unwrap();
        let exact = z_exact_nonrel(&p, &s).unwrap();
        assert!((em.value - 2199.83).abs() < 0.01);
        assert!((em.value / exact.value - 1.0).abs() < 1e-5);

        let (p, s) = nonrel_state(0.0, 1.0);
        let em = z_euler_maclaurin(&p, &s, 2).unwrap();
        let bracket = 7.0 / 6.0 + 3.0 + 4.0 + 2.0 + 29.0 / 120.0 + 1.0 / 60.0 - 1.0 / 240.0;
        assert!((em.value - bracket * (-1f64).exp()).abs() < 1e-14);
        assert!((em.value - 3.833_610_343).abs() < 1e-9);
    }

    #[test]
    fn euler_maclaurin_rel_high_t() {
        let p = ModelParams::natural(Regime::Relativistic, 1.0).unwrap();
        let s = reduced_state(&p, 10.0).unwrap();
        let em = z_euler_maclaurin(&p, &s, 2).unwrap();
        let d = z_direct(&p, &s, 1e-12).unwrap();
        assert!((em.value / d.value - 1.0).abs() < 1e-3);
    }

    #[test]
    fn euler_maclaurin_breaks_down_at_low_t() {
        let p = ModelParams::natural(Regime::NonRelativistic, 1.0).unwrap();
        let s = reduced_state(&p, 0.05).unwrap();
        assert!(matches!(z_euler_maclaurin(&p, &s, 2), Err(Error::NonPositiveExpansion(_))));
        assert!(z_euler_maclaurin(&p, &s, 3).is_err());
    }

    #[test]
    fn high_t_values() {
        let p = ModelParams::natural(Regime::Relativistic, 1.0).unwrap();
        let s = reduced_state(&p, 10.0).unwrap();
        let z = z_high_t(&p, &s);
        assert!((z.value / 3.0e7 - 1.0).abs() < 1e-12);
        assert_eq!(z.validity, Validity::Ok);
        let s = reduced_state(&p, 2.0).unwrap();
        assert_eq!(z_high_t(&p, &s).validity, Validity::OutsideHighTWindow);

        let (p, s) = nonrel_state(0.0, 0.1);
        let z = z_high_t(&p, &s);
        assert!((z.value - 2000.0).abs() < 1e-9);
        let gap_01 = 1.0 - z.value / z_exact_nonrel(&p, &s).unwrap().value;
        let (p, s) = nonrel_state(0.0, 0.01);
        let z = z_high_t(&p, &s);
        assert!((z.value / 2.0e6 - 1.0).abs() < 1e-12);
        let gap_001 = 1.0 - z.value / z_exact_nonrel(&p, &s).unwrap().value;
        let shrink = gap_01 / gap_001;
        assert!(shrink > 8.0 && shrink < 12.0, "shrink {shrink}");
    }

    #[test]
    fn n_particle_scaling() {
        let (p, s) = nonrel_state(0.0, 0.1);
        let z = z_high_t(&p, &s);
        assert_eq!(log_z_n(&z, 1), z.log_value);
        assert!((log_z_n(&z, 10) - 76.009_024_595_420_82).abs() < 1e-9);
        assert!(log_z_n(&z, 10_000_000_000_000_000_000).is_finite());
    }
}
