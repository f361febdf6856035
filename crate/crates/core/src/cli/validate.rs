//! `validate`: self-checks of every route against closed forms, quadrature and
//! finite differences. Prints one PASS/FAIL line per check.

use super::config::PartialOptions;
use super::figure::{figure_csv, figure_rows, FigureId, FigureRow};
use super::sweep::{audit_identity, sweep_csv};
use super::CliError;
use crate::model::{reduced_state, ModelParams, Regime};
use crate::partition::{self, Method, RouteOptions};
use crate::series::bernoulli::bernoulli;
use crate::series::quadrature::{nonrel_tail_by_quadrature, rel_tail_by_quadrature};
use crate::series::{em_derivatives, finite_diff, summand_for, RelTailCoefficients};
use crate::thermo;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidateOptions {
    /// Use the tail coefficients exactly as printed instead of the derived ones.
    pub paper_literal: bool,
    /// Scale the derived tail coefficient of `1/b^(j+1)` by `1 + 1e-3`; a
    /// self-test that the quadrature comparison notices small errors.
    pub perturb_coefficient: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn params(regime: Regime, xi: f64, mu_b: f64) -> crate::Result<ModelParams> {
    ModelParams::builder().regime(regime).xi(xi).mu_b(mu_b).build()
}

fn rel_err(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn guarded(name: &'static str, f: impl FnOnce() -> crate::Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::new(name, false, format!("numerical error: {e}")))
}

fn tail_coefficients(xi: f64, x0: f64, opts: &ValidateOptions) -> RelTailCoefficients {
    let mut c = if opts.paper_literal && x0 == 1.0 {
        RelTailCoefficients::printed(xi)
    } else {
        RelTailCoefficients::derived(xi, x0)
    };
    if let Some(j) = opts.perturb_coefficient {
        if j < c.c.len() {
            c.c[j] *= 1.0 + 1e-3;
        }
    }
    c
}

fn check_bernoulli() -> Check {
    guarded("bernoulli-numbers", || {
        let expected = [(2, 1, 6), (4, -1, 30), (6, 1, 42), (8, -1, 30), (10, 5, 66), (20, -174611, 330)];
        let ok = expected
            .iter()
            .all(|&(n, p, q)| bernoulli(n).map(|b| *b.numer() * q == p * *b.denom()).unwrap_or(false));
        Ok(Check::new("bernoulli-numbers", ok, "B_2..B_20 exact".into()))
    })
}

fn check_nonrel_direct_vs_exact() -> Check {
    guarded("nonrel-direct-vs-exact", || {
        let mut worst: f64 = 0.0;
        for a in [0.0, 0.25, 1.0] {
            for b_bar in [0.01, 0.1, 1.0, 5.0, 10.0] {
                // mu B = a kT with kT = 1 / b_bar
                let p = params(Regime::NonRelativistic, 1.0, a / b_bar)?;
                let s = reduced_state(&p, 1.0 / b_bar)?;
                let d = partition::z_direct(&p, &s, 1e-12)?;
                let e = partition::z_exact_nonrel(&p, &s)?;
                worst = worst.max((d.log_value - e.log_value).exp_m1().abs());
            }
        }
        Ok(Check::new("nonrel-direct-vs-exact", worst <= 1e-10, format!("max relative deviation {worst:.3e} (limit 1e-10)")))
    })
}

/// Polynomial part `f(1)/2 - sum B_{2p}/(2p)! f^{(2p-1)}(1)` of the scaled
/// non-relativistic expansion, recovered as a cubic in `b_bar` from four nodes.
pub fn em_bracket_cubic() -> crate::Result<[f64; 4]> {
    let nodes = [1.0, 2.0, 3.0, 4.0];
    let mut vals = [0.0; 4];
    for (v, &bb) in vals.iter_mut().zip(&nodes) {
        let p = params(Regime::NonRelativistic, 1.0, 0.0)?;
        let s = reduced_state(&p, 1.0 / bb)?;
        let z = partition::z_euler_maclaurin(&p, &s, 2)?;
        let e = z.expansion().expect("expansion diagnostics");
        *v = e.boundary_term + e.correction_terms.iter().sum::<f64>();
    }
    // Newton divided differences on unit-spaced nodes, then expand to monomials.
    let d1 = [vals[1] - vals[0], vals[2] - vals[1], vals[3] - vals[2]];
    let d2 = [(d1[1] - d1[0]) / 2.0, (d1[2] - d1[1]) / 2.0];
    let d3 = (d2[1] - d2[0]) / 3.0;
    // p(x) = v0 + d1 (x-1) + d2 (x-1)(x-2) + d3 (x-1)(x-2)(x-3)
    let (c0, c1, c2) = (vals[0], d1[0], d2[0]);
    Ok([
        c0 - c1 + 2.0 * c2 - 6.0 * d3,
        c1 - 3.0 * c2 + 11.0 * d3,
        c2 - 6.0 * d3,
        d3,
    ])
}

pub const EM_BRACKET: [f64; 4] = [7.0 / 6.0, 29.0 / 120.0, 1.0 / 60.0, -1.0 / 240.0];

fn check_em_bracket() -> Check {
    guarded("em-bracket-coefficients", || {
        let c = em_bracket_cubic()?;
        let worst = c.iter().zip(EM_BRACKET).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        Ok(Check::new(
            "em-bracket-coefficients",
            worst <= 1e-13,
            format!("7/6, 29/120, 1/60, -1/240 reproduced to {worst:.1e}"),
        ))
    })
}

fn check_em_vs_exact() -> Check {
    guarded("em-vs-exact", || {
        let p = params(Regime::NonRelativistic, 1.0, 0.0)?;
        let s = reduced_state(&p, 10.0)?;
        let em = partition::z_euler_maclaurin(&p, &s, 2)?;
        let ex = partition::z_exact_nonrel(&p, &s)?;
        let dev = (em.log_value - ex.log_value).exp_m1().abs();
        Ok(Check::new(
            "em-vs-exact",
            dev <= 1e-5,
            format!("b_bar = 0.1: EM {:.10} vs exact {:.10} (relative {dev:.2e}, limit 1e-5)", em.value, ex.value),
        ))
    })
}

fn check_rel_tail(opts: &ValidateOptions) -> Check {
    guarded("rel-tail-vs-quadrature", || {
        let mut worst: f64 = 0.0;
        for a in [0.0, 0.1] {
            for b in [0.1, 1.0, 5.0] {
                for xi in [1.0, 5.0, 10.0, 15.0] {
                    for x0 in [1.0, 2.0] {
                        let closed = tail_coefficients(xi, x0, opts).evaluate(a, b);
                        let q = rel_tail_by_quadrature(a, b, xi, x0)?;
                        worst = worst.max(rel_err(closed, q.value));
                    }
                }
            }
        }
        Ok(Check::new("rel-tail-vs-quadrature", worst <= 1e-8, format!("max relative deviation {worst:.3e} (limit 1e-8)")))
    })
}

fn check_nonrel_tail() -> Check {
    guarded("nonrel-tail-vs-quadrature", || {
        let mut worst: f64 = 0.0;
        for a in [0.0, 0.1] {
            for b_bar in [0.1, 1.0, 5.0] {
                for x0 in [1.0, 2.0, 3.0] {
                    let closed = crate::series::tail_integral_nonrel(a, b_bar, x0)?;
                    worst = worst.max(rel_err(closed, nonrel_tail_by_quadrature(a, b_bar, x0)?.value));
                }
            }
        }
        Ok(Check::new("nonrel-tail-vs-quadrature", worst <= 1e-8, format!("max relative deviation {worst:.3e} (limit 1e-8)")))
    })
}

/// States which form of the `1/b^5` tail coefficient is in use and why.
fn check_b5_coefficient(opts: &ValidateOptions) -> Check {
    guarded("tail-b5-coefficient", || {
        let derived = RelTailCoefficients::derived(1.0, 1.0);
        let printed = RelTailCoefficients::printed(1.0);
        let q = rel_tail_by_quadrature(0.0, 1.0, 1.0, 1.0)?.value;
        let d = derived.evaluate(0.0, 1.0);
        let p = printed.evaluate(0.0, 1.0);
        let others_match = [0.5, 1.0, 5.0, 10.0, 15.0].iter().all(|&xi| {
                let (d, p) = (RelTailCoefficients::derived(xi, 1.0), RelTailCoefficients::printed(xi));
                [0, 1, 2, 3, 5].iter().all(|&j| rel_err(d.c[j], p.c[j]) <= 1e-14)
            });
        let in_use = if opts.paper_literal { "printed (literal mode)" } else { "derived" };
        let adjudicated = rel_err(d, q) <= 1e-8 && rel_err(p, q) > 1e-2 && others_match;
        Ok(Check::new(
            "tail-b5-coefficient",
            adjudicated,
            format!(
                "1/b^5 coefficient is 30 sqrt(1+2 xi)/xi^3, not 3 sqrt(1+2 xi)/xi^3; at a=0, b=1, xi=1 \
                 quadrature {q:.10}, derived {d:.10}, printed {p:.10} ({:.1}% off); other five coefficients agree; using {in_use}",
                100.0 * rel_err(p, q)
            ),
        ))
    })
}

fn check_em_derivatives() -> Check {
    guarded("em-derivatives-vs-fd", || {
        let mut worst: f64 = 0.0;
        for regime in [Regime::Relativistic, Regime::NonRelativistic] {
            for b in [0.1, 1.0, 5.0] {
                for xi in [1.0, 5.0, 15.0] {
                    let p = params(regime, xi, 0.1 / b)?;
                    let s = reduced_state(&p, 1.0 / b)?;
                    let f = summand_for(&p, &s)?;
                    let d = em_derivatives(&p, &s, 2)?;
                    let (fd1, _) = finite_diff::first_derivative(|x| f.value(x), 1.0, 0.05);
                    let (fd3, _) = finite_diff::third_derivative(|x| f.value(x), 1.0, 0.05);
                    for (an, fd) in [(d[0], fd1), (d[1], fd3)] {
                        worst = worst.max((an - fd).abs() / an.abs().max(1.0));
                    }
                }
            }
        }
        Ok(Check::new("em-derivatives-vs-fd", worst <= 1e-7, format!("max deviation {worst:.2e} (limit 1e-7)")))
    })
}

fn check_integral_sandwich() -> Check {
    guarded("integral-test-sandwich", || {
        let cases = [
            crate::series::Summand::nonrelativistic(0.0, 2.0)?,
            crate::series::Summand::relativistic(0.0, 5.0, 1.0)?,
        ];
        let mut ok = true;
        for f in cases {
            for k in 1..=50u64 {
                // both summands are negligible far beyond k + 2000
                let tail: f64 = (k + 1..=k + 2000).map(|j| f.value(j as f64)).sum();
                let upper = f.tail_integral(k as f64)?;
                let lower = f.tail_integral(k as f64 + 1.0)?;
                // sum_{j>k} f(j) lies between int_{k+1} f and int_k f
                ok &= tail <= upper * (1.0 + 1e-12) && tail >= lower * (1.0 - 1e-12);
            }
        }
        Ok(Check::new("integral-test-sandwich", ok, "tails of K = 1..50 bracketed by the tail integrals".into()))
    })
}

fn check_heat_capacity_limit() -> Check {
    guarded("rel-heat-capacity-limit", || {
        let p = params(Regime::Relativistic, 1.0, 0.0)?;
        let c50 = thermo::thermo_from_series(&p, 50.0, 1e-12)?.heat_capacity;
        let c100 = thermo::thermo_from_series(&p, 100.0, 1e-12)?.heat_capacity;
        let ok = (5.7..=6.3).contains(&c50) && (c100 - 6.0).abs() < (c50 - 6.0).abs();
        Ok(Check::new("rel-heat-capacity-limit", ok, format!("C_V(tau=50) = {c50:.6}, C_V(tau=100) = {c100:.6}, limit 6")))
    })
}

fn check_dulong_petit() -> Check {
    guarded("dulong-petit-ratio", || {
        let p = params(Regime::Relativistic, 1.0, 0.0)?;
        let closed = thermo::dulong_petit_ratio_high_t(&p, 50.0)?;
        let series = thermo::dulong_petit_ratio(&p, 50.0, 1e-12)?;
        let ok = closed == 2.0 && (1.9..=2.1).contains(&series);
        Ok(Check::new("dulong-petit-ratio", ok, format!("closed form {closed}, series at tau=50 {series:.6}")))
    })
}

fn check_field_independence() -> Check {
    guarded("field-independence", || {
        let opts = RouteOptions::default();
        let mut ok = true;
        for regime in [Regime::Relativistic, Regime::NonRelativistic] {
            let base = thermo::thermo(&params(regime, 2.0, 0.0)?, 1.5, Method::Direct, &opts)?;
            let base_ht = thermo::thermo_high_t(&params(regime, 2.0, 0.0)?, 1.5)?;
            for mu_b in [1.0, 5.0] {
                let p = params(regime, 2.0, 0.0)?.with_b_field(mu_b)?;
                let q = thermo::thermo(&p, 1.5, Method::Direct, &opts)?;
                ok &= q.entropy == base.entropy && q.heat_capacity == base.heat_capacity;
                ok &= (q.mean_energy - mu_b - base.mean_energy).abs() <= 1e-12 * q.mean_energy.abs();
                let ht = thermo::thermo_high_t(&p, 1.5)?;
                ok &= ht.entropy == base_ht.entropy && ht.mean_energy == base_ht.mean_energy;
            }
        }
        Ok(Check::new("field-independence", ok, "S and C_V unchanged, U shifted by mu B for B in {0, 1, 5}".into()))
    })
}

fn figure_config() -> Result<super::SweepConfig, CliError> {
    PartialOptions::default().resolve()
}

fn by_xi(rows: &[FigureRow], quantity: &str) -> Vec<(f64, Vec<(f64, f64)>)> {
    let mut out: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for r in rows.iter().filter(|r| r.quantity == quantity) {
        match out.last_mut() {
            Some((xi, pts)) if *xi == r.xi => pts.push((r.tau, r.value)),
            _ => out.push((r.xi, vec![(r.tau, r.value)])),
        }
    }
    out
}

fn check_figures() -> Check {
    let run = || -> Result<(bool, String), CliError> {
        let cfg = figure_config()?;
        let step = (cfg.tau_max - cfg.tau_min) / (cfg.points - 1) as f64;
        let fig4 = figure_rows(FigureId::Fig4, &cfg)?;
        let linear = fig4.iter().all(|r| {
            let slope = if r.regime == Regime::Relativistic { 6.0 } else { 3.0 };
            r.value == slope * r.tau
        });
        let f = by_xi(&figure_rows(FigureId::Fig1, &cfg)?, "F_bar");
        let s = by_xi(&figure_rows(FigureId::Fig2, &cfg)?, "S_bar");
        let mut ordered = true;
        let mut offset: f64 = 0.0;
        for w in s.windows(2) {
            let ((x1, c1), (x2, c2)) = (&w[0], &w[1]);
            for (p, q) in c1.iter().zip(c2) {
                ordered &= q.1 < p.1;
                offset = offset.max((p.1 - q.1 - 3.0 * (x2 / x1).ln()).abs());
            }
        }
        for w in f.windows(2) {
            ordered &= w[0].1.iter().zip(&w[1].1).all(|(p, q)| q.1 > p.1);
        }
        let mut peak_ok = true;
        for (xi, curve) in &f {
            let star = (xi.powi(3) / (30.0 * 6f64.exp())).powf(1.0 / 6.0);
            let (tau_max, _) = curve.iter().cloned().fold((f64::NAN, f64::NEG_INFINITY), |m, p| if p.1 > m.1 { p } else { m });
            peak_ok &= (tau_max - star).abs() <= step;
        }
        let ok = linear && ordered && offset <= 1e-12 && peak_ok;
        Ok((
            ok,
            format!(
                "U = 6 tau and 3 tau: {linear}; xi ordering: {ordered}; entropy offset error {offset:.1e}; free-energy peaks on grid: {peak_ok}"
            ),
        ))
    };
    match run() {
        Ok((ok, detail)) => Check::new("figure-properties", ok, detail),
        Err(e) => Check::new("figure-properties", false, e.to_string()),
    }
}

fn check_identity_audit() -> Check {
    let run = || -> Result<(bool, String), CliError> {
        let mut worst: f64 = 0.0;
        let mut rows = 0;
        for (regime, method, tau_min, tau_max) in [
            (Regime::Relativistic, Method::HighT, 0.01, 2.0),
            (Regime::Relativistic, Method::Direct, 0.01, 2.0),
            (Regime::NonRelativistic, Method::ExactClosedForm, 0.01, 2.0),
            (Regime::NonRelativistic, Method::Direct, 0.01, 2.0),
            (Regime::NonRelativistic, Method::EulerMaclaurin, 5.0, 50.0),
            (Regime::Relativistic, Method::EulerMaclaurin, 5.0, 50.0),
        ] {
            let cfg = PartialOptions {
                regime: Some(regime),
                methods: vec![method],
                points: Some(20),
                tau_min: Some(tau_min),
                tau_max: Some(tau_max),
                ..PartialOptions::default()
            }
            .resolve()?;
            let residuals = audit_identity(&sweep_csv(&cfg)?).map_err(CliError::Usage)?;
            rows += residuals.len();
            worst = residuals.into_iter().fold(worst, f64::max);
        }
        Ok((worst <= 1e-9, format!("{rows} rows, max |U - F - tau S| relative {worst:.2e} (limit 1e-9)")))
    };
    match run() {
        Ok((ok, detail)) => Check::new("identity-audit", ok, detail),
        Err(e) => Check::new("identity-audit", false, e.to_string()),
    }
}

fn check_determinism() -> Check {
    let run = || -> Result<bool, CliError> {
        let cfg = figure_config()?;
        let a = figure_csv(FigureId::Fig2, &figure_rows(FigureId::Fig2, &cfg)?);
        let b = figure_csv(FigureId::Fig2, &figure_rows(FigureId::Fig2, &cfg)?);
        Ok(a == b)
    };
    match run() {
        Ok(ok) => Check::new("deterministic-output", ok, "two fig2 renderings byte-identical".into()),
        Err(e) => Check::new("deterministic-output", false, e.to_string()),
    }
}

pub fn run_checks(opts: &ValidateOptions) -> Vec<Check> {
    vec![
        check_bernoulli(),
        check_nonrel_direct_vs_exact(),
        check_em_bracket(),
        check_em_vs_exact(),
        check_rel_tail(opts),
        check_nonrel_tail(),
        check_b5_coefficient(opts),
        check_em_derivatives(),
        check_integral_sandwich(),
        check_heat_capacity_limit(),
        check_dulong_petit(),
        check_field_independence(),
        check_figures(),
        check_identity_audit(),
        check_determinism(),
    ]
}

/// The report text, or `CliError::Validation` carrying it on stdout via the caller.
pub fn report(checks: &[Check]) -> String {
    let mut s: String = checks.iter().map(|c| c.line() + "\n").collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
    s
}

pub fn failures(checks: &[Check]) -> usize {
    checks.iter().filter(|c| !c.passed).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_check_detects_perturbation() {
        assert!(check_rel_tail(&ValidateOptions::default()).passed);
        for j in 0..6 {
            let opts = ValidateOptions { perturb_coefficient: Some(j), ..Default::default() };
            assert!(!check_rel_tail(&opts).passed, "coefficient {j}");
        }
        let literal = ValidateOptions { paper_literal: true, ..Default::default() };
        assert!(!check_rel_tail(&literal).passed);
        assert!(check_b5_coefficient(&literal).passed);
    }

    #[test]
    fn bracket_cubic() {
        let c = em_bracket_cubic().unwrap();
        for (x, y) in c.iter().zip(EM_BRACKET) {
            assert!((x - y).abs() <= 1e-13, "{x} vs {y}");
        }
    }

    #[test]
    fn cheap_checks_pass() {
        for c in [check_bernoulli(), check_nonrel_direct_vs_exact(), check_em_vs_exact(), check_nonrel_tail(),
            check_em_derivatives(), check_integral_sandwich(), check_field_independence(), check_figures(),
            check_identity_audit(), check_determinism()]
        {
            assert!(c.passed, "{}", c.line());
        }
    }

    #[test]
    fn report_format() {
        let checks = vec![Check::new("a", true, "ok".into()), Check::new("b", false, "bad".into())];
        assert_eq!(report(&checks), "PASS a: ok\nFAIL b: bad\n1 of 2 checks passed\n");
        assert_eq!(failures(&checks), 1);
    }
}
