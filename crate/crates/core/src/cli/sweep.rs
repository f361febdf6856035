//! `sweep`: thermodynamic quantities over a `(xi, tau)` grid.

use super::config::SweepConfig;
use super::format::{fmt_num, CsvTable};
use super::CliError;
use crate::grid;
use crate::model::{ModelParams, Regime};
use crate::partition::{Method, RouteOptions, Validity};
use crate::thermo::{reduce, thermo, ReducedQuantities};

pub const SWEEP_HEADER: [&str; 11] = [
    "regime", "method", "tau", "xi", "mu_b", "ln_z", "F_bar", "U_bar", "S_bar", "Cv_bar", "validity_flag",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub xi: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResult {
    pub point: GridPoint,
    /// `N ln Z_1`
    pub ln_z: f64,
    pub reduced: ReducedQuantities,
    pub validity: Validity,
}

/// Grid points ordered by `xi`, then `tau`, both ascending.
pub fn grid_points(cfg: &SweepConfig) -> Vec<GridPoint> {
    let taus = cfg.taus();
    cfg.sorted_xi()
        .into_iter()
        .flat_map(|xi| taus.iter().map(move |&tau| GridPoint { xi, tau }))
        .collect()
}

pub fn params_for(regime: Regime, xi: f64, mu_b: f64, n: u64) -> crate::Result<ModelParams> {
    ModelParams::builder()
        .regime(regime)
        .xi(xi)
        .mu_b(mu_b)
        .n_particles(n)
        .build()
}

/// One grid point; natural units, so the temperature argument is `tau` itself.
pub fn evaluate_point(
    cfg: &SweepConfig,
    method: Method,
    opts: &RouteOptions,
    p: GridPoint,
) -> crate::Result<PointResult> {
    let params = params_for(cfg.regime, p.xi, cfg.mu_b, cfg.n_particles)?;
    let q = thermo(&params, p.tau, method, opts)?;
    Ok(PointResult {
        point: p,
        ln_z: cfg.n_particles as f64 * q.log_z,
        reduced: reduce(&q, &params),
        validity: q.validity,
    })
}

pub fn evaluate_grid(cfg: &SweepConfig, method: Method) -> Result<Vec<PointResult>, CliError> {
    let opts = cfg.route_options();
    let points = grid_points(cfg);
    grid::map_points(&points, |&p| evaluate_point(cfg, method, &opts, p))
        .into_iter()
        .collect::<crate::Result<Vec<_>>>()
        .map_err(CliError::from)
}

fn single_method(cfg: &SweepConfig) -> Result<Method, CliError> {
    match cfg.methods.as_slice() {
        [m] => Ok(*m),
        _ => Err(CliError::usage("sweep takes exactly one --method (use compare for several)")),
    }
}

pub fn sweep_csv(cfg: &SweepConfig) -> Result<String, CliError> {
    let method = single_method(cfg)?;
    let rows = evaluate_grid(cfg, method)?;
    let mut table = CsvTable::new(&SWEEP_HEADER);
    let label = cfg.method_label(method);
    for r in rows {
        table.push_row(vec![
            cfg.regime.label().to_string(),
            label.to_string(),
            fmt_num(r.point.tau),
            fmt_num(r.point.xi),
            fmt_num(cfg.mu_b),
            fmt_num(r.ln_z),
            fmt_num(r.reduced.free_energy),
            fmt_num(r.reduced.mean_energy),
            fmt_num(r.reduced.entropy),
            fmt_num(r.reduced.heat_capacity),
            r.validity.label().to_string(),
        ]);
    }
    Ok(table.into_string())
}

/// Writes to `cfg.out` when set, otherwise returns the CSV for stdout.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Option<String>, CliError> {
    let csv = sweep_csv(cfg)?;
    match &cfg.out {
        Some(path) => {
            super::write_file(path, &csv)?;
            Ok(None)
        }
        None => Ok(Some(csv)),
    }
}

/// `|U - F - tau S| / max(|U|, |F|, |tau S|)` for each data row of a sweep CSV.
pub fn audit_identity(csv: &str) -> Result<Vec<f64>, String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().ok_or("empty output")?.split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).ok_or(format!("no column {name}"));
    let (it, iu, ifr, is) = (col("tau")?, col("U_bar")?, col("F_bar")?, col("S_bar")?);
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            let num = |i: usize| f.get(i).and_then(|s| s.parse::<f64>().ok()).ok_or(format!("bad row: {line}"));
            let (tau, u, fr, s) = (num(it)?, num(iu)?, num(ifr)?, num(is)?);
            let ts = tau * s;
            let scale = u.abs().max(fr.abs()).max(ts.abs());
            Ok(if scale == 0.0 { 0.0 } else { (u - fr - ts).abs() / scale })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::PartialOptions;

    fn cfg(regime: Regime, method: Method) -> SweepConfig {
        PartialOptions {
            regime: Some(regime),
            methods: vec![method],
            points: Some(5),
            tau_min: Some(0.2),
            tau_max: Some(2.0),
            xi: vec![5.0, 1.0],
            ..PartialOptions::default()
        }
        .resolve()
        .unwrap()
    }

    #[test]
    fn rows_sorted_and_complete() {
        let csv = sweep_csv(&cfg(Regime::Relativistic, Method::HighT)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER.join(","));
        assert_eq!(lines.len(), 11);
        assert!(lines[1].starts_with("rel,high-t,0.2,1,0,"));
        assert!(lines[6].starts_with("rel,high-t,0.2,5,0,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn identity_on_every_route() {
        for (regime, method, tau_min) in [
            (Regime::Relativistic, Method::Direct, 0.2),
            (Regime::Relativistic, Method::HighT, 0.2),
            (Regime::NonRelativistic, Method::ExactClosedForm, 0.2),
            (Regime::NonRelativistic, Method::Direct, 0.2),
            // the expansion needs b_bar of order one or less
            (Regime::NonRelativistic, Method::EulerMaclaurin, 5.0),
            (Regime::Relativistic, Method::EulerMaclaurin, 5.0),
        ] {
            let mut c = cfg(regime, method);
            c.tau_min = tau_min;
            c.tau_max = 10.0 * tau_min;
            let csv = sweep_csv(&c).unwrap();
            for r in audit_identity(&csv).unwrap() {
                assert!(r <= 1e-9, "{regime:?} {method:?}: {r}");
            }
        }
    }

    #[test]
    fn rejects_several_methods() {
        let mut c = cfg(Regime::Relativistic, Method::HighT);
        c.methods.push(Method::Direct);
        assert!(matches!(sweep_csv(&c), Err(CliError::Usage(_))));
    }
}
