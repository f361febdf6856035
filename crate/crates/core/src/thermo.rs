//! Free energy, mean energy, entropy and heat capacity per particle.
//!
//! The series route takes `U` and `C_V` from moment sums over the same
//! certified truncation as the partition function, not from numerical
//! differentiation of `ln Z`. Field dependence is kept out of the sums entirely:
//! with `dE_k = E_k - E_1` and `E_1 - mu B` the field-free ground energy,
//!
//! ```text
//! ln Z = L0 - beta mu B,   L0 = -beta (E_1 - mu B) + ln sum_k w_k
//! U    = mu B + (E_1 - mu B) + <dE>
//! S    = k_B (L0 + beta (U - mu B))
//! C_V  = k_B beta^2 (<dE^2> - <dE>^2)
//! ```
//!
//! so `S` and `C_V` are bit-identical for every field strength.

use crate::error::{Error, Result};
use crate::model::{reduced_state, ModelParams, Regime, ReducedState};
use crate::partition::{
    self, high_t_validity, scaled_summand, z_direct_with, z_euler_maclaurin_with, Method, RouteOptions, TailForm,
    Validity,
};
use crate::series::CompensatedSum;

/// Relative step in `beta` for the finite-difference routes.
pub const BETA_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoQuantities {
    /// One-particle `ln Z_1`.
    pub log_z: f64,
    pub free_energy: f64,
    pub mean_energy: f64,
    pub entropy: f64,
    pub heat_capacity: f64,
    pub t: f64,
    pub method: Method,
    pub validity: Validity,
}

impl ThermoQuantities {
    /// `|U - F - T S|` relative to the largest of the three terms.
    pub fn identity_residual(&self) -> f64 {
        let ts = self.t * self.entropy;
        let scale = self.mean_energy.abs().max(self.free_energy.abs()).max(ts.abs());
        if scale == 0.0 {
            return 0.0;
        }
        (self.mean_energy - self.free_energy - ts).abs() / scale
    }
}

/// Dimensionless quantities per particle.
///
/// Relativistic: energies in units of `m0c2`. Non-relativistic: energies stay
/// in absolute units. Entropy and heat capacity are always in units of `k_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedQuantities {
    pub regime: Regime,
    pub tau: f64,
    pub free_energy: f64,
    pub mean_energy: f64,
    pub entropy: f64,
    pub heat_capacity: f64,
}

impl ReducedQuantities {
    /// Energy scale of the thermal term: `tau` (relativistic) or `k_B T` (non-relativistic).
    pub fn identity_residual(&self, thermal_energy: f64) -> f64 {
        let ts = thermal_energy * self.entropy;
        let scale = self.mean_energy.abs().max(self.free_energy.abs()).max(ts.abs());
        if scale == 0.0 {
            return 0.0;
        }
        (self.mean_energy - self.free_energy - ts).abs() / scale
    }
}

struct Moments {
    log_z0: f64,
    /// `<E> - mu B`
    excitation: f64,
    variance: f64,
}

fn moments_to_quantities(params: &ModelParams, state: &ReducedState, m: Moments, method: Method) -> ThermoQuantities {
    let k_b = params.units().k_b();
    let mu_b = params.mu_b();
    ThermoQuantities {
        log_z: m.log_z0 - state.a,
        free_energy: mu_b - k_b * state.t * m.log_z0,
        mean_energy: mu_b + m.excitation,
        entropy: k_b * (m.log_z0 + state.beta * m.excitation),
        heat_capacity: k_b * state.beta * state.beta * m.variance,
        t: state.t,
        method,
        validity: Validity::Ok,
    }
}

/// Quantities from moment sums over the certified direct-sum truncation.
pub fn thermo_from_series(params: &ModelParams, t: f64, rel_tol: f64) -> Result<ThermoQuantities> {
    thermo_from_series_with(params, t, rel_tol, crate::series::DEFAULT_K_MAX)
}

pub fn thermo_from_series_with(params: &ModelParams, t: f64, rel_tol: f64, k_max: u64) -> Result<ThermoQuantities> {
    let state = reduced_state(params, t)?;
    let z = z_direct_with(params, &state, rel_tol, k_max)?;
    let k_last = z.sum().map(|s| s.truncation_index).unwrap_or(1);
    let g = scaled_summand(params, &state)?;

    let (ground, gap): (f64, Box<dyn Fn(f64) -> f64>) = match params.regime() {
        Regime::Relativistic => {
            let m = params.m0c2();
            let xi = params.xi();
            let u1 = (1.0 + 2.0 * xi).sqrt();
            (m * u1, Box::new(move |k| m * ((1.0 + 2.0 * xi * k).sqrt() - u1)))
        }
        Regime::NonRelativistic => {
            let xb = params.xi_bar();
            (xb, Box::new(move |k| xb * (k - 1.0)))
        }
    };

    let (mut s0, mut s1, mut s2) = (CompensatedSum::default(), CompensatedSum::default(), CompensatedSum::default());
    for k in 1..=k_last {
        let x = k as f64;
        let w = g.value(x);
        let d = gap(x);
        s0.add(w);
        s1.add(w * d);
        s2.add(w * d * d);
    }
    let norm = s0.total();
    let mean_gap = s1.total() / norm;
    let variance = (s2.total() / norm - mean_gap * mean_gap).max(0.0);
    let m = Moments {
        log_z0: -partition::ground_exponent(params, &state) + norm.ln(),
        excitation: ground + mean_gap,
        variance,
    };
    Ok(moments_to_quantities(params, &state, m, Method::Direct))
}

/// Closed-form non-relativistic quantities from `ln Z = -a + ln x + ln(3 - x) - 3 ln(1 - x)`.
pub fn thermo_exact_nonrel(params: &ModelParams, t: f64) -> Result<ThermoQuantities> {
    if params.regime() != Regime::NonRelativistic {
        return Err(Error::domain("the geometric closed form exists only for the non-relativistic spectrum"));
    }
    let state = reduced_state(params, t)?;
    let x = state.x;
    let one_minus_x = -(-state.b_bar).exp_m1();
    let xb = params.xi_bar();
    // U - mu B = xi_bar h(x), C_V = k_B b_bar^2 x h'(x)
    let h = 1.0 - x / (3.0 - x) + 3.0 * x / one_minus_x;
    let dh = 3.0 / (one_minus_x * one_minus_x) - 3.0 / ((3.0 - x) * (3.0 - x));
    let m = Moments {
        log_z0: -state.b_bar + (3.0 - x).ln() - 3.0 * one_minus_x.ln(),
        excitation: xb * h,
        variance: xb * xb * x * dh,
    };
    Ok(moments_to_quantities(params, &state, m, Method::ExactClosedForm))
}

/// Quantities from central differences of `ln Z(beta)` with step `BETA_STEP * beta`.
pub fn thermo_by_beta_differences<L>(params: &ModelParams, t: f64, log_z: L, method: Method) -> Result<ThermoQuantities>
where
    L: Fn(&ReducedState) -> Result<f64>,
{
    let k_b = params.units().k_b();
    let state = reduced_state(params, t)?;
    let beta = state.beta;
    let h = BETA_STEP * beta;
    let at = |b: f64| reduced_state(params, 1.0 / (k_b * b)).and_then(|s| log_z(&s));
    let l0 = log_z(&state)?;
    let lp = at(beta + h)?;
    let lm = at(beta - h)?;
    let u = -(lp - lm) / (2.0 * h);
    let curvature = (lp - 2.0 * l0 + lm) / (h * h);
    Ok(ThermoQuantities {
        log_z: l0,
        free_energy: -k_b * t * l0,
        mean_energy: u,
        entropy: k_b * (l0 + beta * u),
        heat_capacity: k_b * beta * beta * curvature,
        t,
        method,
        validity: Validity::Ok,
    })
}

pub fn thermo_euler_maclaurin(params: &ModelParams, t: f64, order: usize, tail_form: TailForm) -> Result<ThermoQuantities> {
    thermo_by_beta_differences(
        params,
        t,
        |s| z_euler_maclaurin_with(params, s, order, tail_form).map(|z| z.log_value),
        Method::EulerMaclaurin,
    )
}

/// Validation-only: `U` and `C_V` by differentiating the direct-sum `ln Z` in `beta`.
pub fn thermo_direct_fd_check(params: &ModelParams, t: f64, rel_tol: f64) -> Result<ThermoQuantities> {
    thermo_by_beta_differences(
        params,
        t,
        |s| z_direct_with(params, s, rel_tol, crate::series::DEFAULT_K_MAX).map(|z| z.log_value),
        Method::Direct,
    )
}

/// Leading-order high-temperature closed forms; independent of the magnetic field.
///
/// Relativistic: `U = 6 k_B T`, `C_V = 6 k_B`, `S = k_B (6 + ln(30 tau^6 / xi^3))`.
/// Non-relativistic: `U = 3 k_B T`, `C_V = 3 k_B`, `S = k_B (3 + ln(2 (k_B T / xi_bar)^3))`.
pub fn thermo_high_t(params: &ModelParams, t: f64) -> Result<ThermoQuantities> {
    let state = reduced_state(params, t)?;
    let k_b = params.units().k_b();
    let log_z = partition::z_high_t(params, &state).log_value;
    let dof = match params.regime() {
        Regime::Relativistic => 6.0,
        Regime::NonRelativistic => 3.0,
    };
    let kt = k_b * t;
    Ok(ThermoQuantities {
        log_z,
        free_energy: -kt * log_z,
        mean_energy: dof * kt,
        entropy: k_b * (dof + log_z),
        heat_capacity: dof * k_b,
        t,
        method: Method::HighT,
        validity: high_t_validity(params, &state),
    })
}

/// Dispatches to the route for `method`.
pub fn thermo(params: &ModelParams, t: f64, method: Method, opts: &RouteOptions) -> Result<ThermoQuantities> {
    let mut q = match method {
        Method::Direct => thermo_from_series_with(params, t, opts.rel_tol, opts.k_max)?,
        Method::EulerMaclaurin => thermo_euler_maclaurin(params, t, opts.em_order, opts.tail_form)?,
        Method::HighT => thermo_high_t(params, t)?,
        Method::ExactClosedForm => thermo_exact_nonrel(params, t)?,
    };
    if method != Method::HighT {
        q.validity = Validity::Ok;
    }
    Ok(q)
}

pub fn reduce(q: &ThermoQuantities, params: &ModelParams) -> ReducedQuantities {
    let k_b = params.units().k_b();
    let energy_scale = match params.regime() {
        Regime::Relativistic => params.m0c2(),
        Regime::NonRelativistic => 1.0,
    };
    ReducedQuantities {
        regime: params.regime(),
        tau: params.units().temperature_to_natural(q.t, params.m0c2()),
        free_energy: q.free_energy / energy_scale,
        mean_energy: q.mean_energy / energy_scale,
        entropy: q.entropy / k_b,
        heat_capacity: q.heat_capacity / k_b,
    }
}

/// Relativistic over non-relativistic heat capacity from the series route,
/// at matched `xi_bar = xi m0c2`.
pub fn dulong_petit_ratio(params: &ModelParams, t: f64, rel_tol: f64) -> Result<f64> {
    let rel = thermo_from_series(&params.with_regime(Regime::Relativistic), t, rel_tol)?;
    let nonrel = thermo_from_series(&params.with_regime(Regime::NonRelativistic), t, rel_tol)?;
    Ok(rel.heat_capacity / nonrel.heat_capacity)
}

/// The same ratio from the high-temperature closed forms.
pub fn dulong_petit_ratio_high_t(params: &ModelParams, t: f64) -> Result<f64> {
    let rel = thermo_high_t(&params.with_regime(Regime::Relativistic), t)?;
    let nonrel = thermo_high_t(&params.with_regime(Regime::NonRelativistic), t)?;
    Ok(rel.heat_capacity / nonrel.heat_capacity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::UnitsSystem;

    fn nat(regime: Regime, xi: f64, mu_b: f64) -> ModelParams {
        ModelParams::builder().regime(regime).xi(xi).mu_b(mu_b).build().unwrap()
    }

    #[test]
    fn nonrel_plateau() {
        let p = nat(Regime::NonRelativistic, 1.0, 0.0);
        let q = thermo_from_series(&p, 100.0, 1e-12).unwrap();
        assert!((q.heat_capacity - 3.0).abs() < 0.03, "{}", q.heat_capacity);
        let e = thermo_exact_nonrel(&p, 100.0).unwrap();
        assert!((q.heat_capacity / e.heat_capacity - 1.0).abs() < 1e-8);
        assert!((q.mean_energy / e.mean_energy - 1.0).abs() < 1e-10);
        assert!((q.entropy / e.entropy - 1.0).abs() < 1e-10);
    }

    #[test]
    fn series_matches_exact_nonrel_across_temperatures() {
        let p = nat(Regime::NonRelativistic, 2.0, 0.3);
        for t in [0.05, 0.3, 1.0, 7.0, 40.0] {
            let q = thermo_from_series(&p, t, 1e-12).unwrap();
            let e = thermo_exact_nonrel(&p, t).unwrap();
            for (a, b) in [
                (q.free_energy, e.free_energy),
                (q.mean_energy, e.mean_energy),
                (q.entropy, e.entropy),
            ] {
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "t={t}: {a} vs {b}");
            }
            assert!((q.heat_capacity - e.heat_capacity).abs() <= 1e-8 * e.heat_capacity.max(1e-3));
        }
    }

    #[test]
    fn field_shift_moves_only_mean_energy() {
        for regime in [Regime::Relativistic, Regime::NonRelativistic] {
            let q0 = thermo_from_series(&nat(regime, 1.0, 0.0), 2.0, 1e-12).unwrap();
            let q1 = thermo_from_series(&nat(regime, 1.0, 0.75), 2.0, 1e-12).unwrap();
            assert_eq!(q0.entropy, q1.entropy);
            assert_eq!(q0.heat_capacity, q1.heat_capacity);
            assert_eq!(q1.mean_energy - 0.75, q0.mean_energy);
        }
    }

    #[test]
    fn relativistic_plateau() {
        let p = nat(Regime::Relativistic, 1.0, 0.0);
        let q = thermo_from_series(&p, 50.0, 1e-12).unwrap();
        let r = reduce(&q, &p);
        assert!((r.heat_capacity - 6.0).abs() < 0.3);
    }

    #[test]
    fn high_t_closed_forms() {
        let p = nat(Regime::Relativistic, 1.0, 0.0);
        let q = thermo_high_t(&p, 2.0).unwrap();
        let r = reduce(&q, &p);
        assert!((r.mean_energy - 12.0).abs() < 1e-14);
        assert!((r.entropy - (6.0 + 1920f64.ln())).abs() < 1e-13);
        assert!((r.entropy - 13.560_1).abs() < 1e-4);
        assert!((r.free_energy + 2.0 * 1920f64.ln()).abs() < 1e-13);
        assert!((r.free_energy + 15.120_2).abs() < 1e-4);
        assert!(r.identity_residual(r.tau) < 1e-12);
        assert_eq!(r.heat_capacity, 6.0);
        assert_eq!(q.validity, Validity::OutsideHighTWindow);

        let pn = nat(Regime::NonRelativistic, 3.0, 0.0);
        for t in [0.01, 1.0, 1e3] {
            assert_eq!(thermo_high_t(&pn, t).unwrap().heat_capacity, 3.0);
        }
    }

    #[test]
    fn high_t_ignores_field() {
        for regime in [Regime::Relativistic, Regime::NonRelativistic] {
            let a = thermo_high_t(&nat(regime, 5.0, 0.0), 0.7).unwrap();
            let b = thermo_high_t(&nat(regime, 5.0, 3.0), 0.7).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn euler_maclaurin_route_close_to_series_at_high_t() {
        let p = nat(Regime::Relativistic, 1.0, 0.0);
        let em = thermo_euler_maclaurin(&p, 20.0, 2, TailForm::Derived).unwrap();
        let d = thermo_from_series(&p, 20.0, 1e-12).unwrap();
        assert!((em.mean_energy / d.mean_energy - 1.0).abs() < 1e-4);
        assert!((em.heat_capacity - d.heat_capacity).abs() < 1e-2);
        assert!(em.identity_residual() < 1e-12);
    }

    #[test]
    fn fd_cross_check_agrees_with_moments() {
        let p = nat(Regime::Relativistic, 2.0, 0.1);
        let fd = thermo_direct_fd_check(&p, 1.5, 1e-14).unwrap();
        let m = thermo_from_series(&p, 1.5, 1e-14).unwrap();
        assert!((fd.mean_energy / m.mean_energy - 1.0).abs() < 1e-6);
        assert!((fd.heat_capacity / m.heat_capacity - 1.0).abs() < 1e-3);
    }

    #[test]
    fn identity_holds_for_every_route() {
        let opts = RouteOptions::default();
        for regime in [Regime::Relativistic, Regime::NonRelativistic] {
            let p = nat(regime, 5.0, 0.2);
            for t in [0.05, 0.5, 2.0, 15.0] {
                let mut methods = vec![Method::Direct, Method::HighT];
                if regime == Regime::NonRelativistic {
                    methods.push(Method::ExactClosedForm);
                }
                for m in methods {
                    let q = thermo(&p, t, m, &opts).unwrap();
                    assert!(q.identity_residual() < 1e-9, "{regime:?} {m:?} t={t}");
                    assert!(q.heat_capacity >= 0.0);
                }
            }
        }
    }

    #[test]
    fn dulong_petit() {
        let p = nat(Regime::Relativistic, 1.0, 0.0);
        assert_eq!(dulong_petit_ratio_high_t(&p, 0.3).unwrap(), 2.0);
        let r50 = dulong_petit_ratio(&p, 50.0, 1e-12).unwrap();
        assert!((r50 - 2.0).abs() < 0.1);
    }

    #[test]
    fn reduction_in_si() {
        let m = crate::model::ELECTRON_REST_ENERGY_SI;
        let p = ModelParams::builder().units(UnitsSystem::si()).m0c2(m).xi(1.0).build().unwrap();
        let t0 = p.characteristic_temperature();
        let q = thermo_high_t(&p, t0).unwrap();
        let r = reduce(&q, &p);
        assert!((r.tau - 1.0).abs() < 1e-14);
        assert!((r.mean_energy - 6.0).abs() < 1e-13);
        assert!((r.heat_capacity - 6.0).abs() < 1e-13);
        let natural = thermo_high_t(&nat(Regime::Relativistic, 1.0, 0.0), 1.0).unwrap();
        assert!((r.entropy - natural.entropy).abs() < 1e-13);
    }

    #[test]
    fn natural_reduction_is_identity_on_energies() {
        let p = nat(Regime::Relativistic, 1.0, 0.0);
        let q = thermo_high_t(&p, 2.0).unwrap();
        let r = reduce(&q, &p);
        assert_eq!(q.mean_energy, r.mean_energy);
        assert_eq!(q.free_energy, r.free_energy);
    }
}
