//! `compare`: several routes side by side on the same grid, with pairwise
//! relative deviations of the partition function.

use super::config::SweepConfig;
use super::format::{fmt_num, rounded, CsvTable};
use super::sweep::{evaluate_grid, PointResult};
use super::CliError;

/// Column labels per method; repeated methods get a `_2`, `_3`, ... suffix.
pub fn method_labels(cfg: &SweepConfig) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for &m in &cfg.methods {
        let base = cfg.method_label(m);
        let mut label = base.to_string();
        let mut n = 1;
        while out.contains(&label) {
            n += 1;
            label = format!("{base}_{n}");
        }
        out.push(label);
    }
    out
}

pub fn header(labels: &[String]) -> Vec<String> {
    let mut h: Vec<String> = ["regime", "tau", "xi", "mu_b"].iter().map(|s| s.to_string()).collect();
    for l in labels {
        for q in ["ln_z", "F_bar", "U_bar", "S_bar", "Cv_bar", "validity"] {
            h.push(format!("{q}_{l}"));
        }
    }
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            h.push(format!("dev_{}_vs_{}", labels[i], labels[j]));
        }
    }
    h
}

/// `|Z_i / Z_j - 1|`, evaluated from the printed `ln_z` values so the column
/// can be reproduced from the file alone.
pub fn deviation(ln_zi: f64, ln_zj: f64) -> f64 {
    (rounded(ln_zi) - rounded(ln_zj)).exp_m1().abs()
}

pub fn compare_csv(cfg: &SweepConfig) -> Result<String, CliError> {
    if cfg.methods.len() < 2 {
        return Err(CliError::usage("compare needs at least two --method values"));
    }
    let labels = method_labels(cfg);
    let per_method: Vec<Vec<PointResult>> =
        cfg.methods.iter().map(|&m| evaluate_grid(cfg, m)).collect::<Result<_, _>>()?;
    let mut table = CsvTable::new(&header(&labels));
    for (k, first) in per_method[0].iter().enumerate() {
        let mut row = vec![
            cfg.regime.label().to_string(),
            fmt_num(first.point.tau),
            fmt_num(first.point.xi),
            fmt_num(cfg.mu_b),
        ];
        for results in &per_method {
            let r = &results[k];
            row.extend([
                fmt_num(r.ln_z),
                fmt_num(r.reduced.free_energy),
                fmt_num(r.reduced.mean_energy),
                fmt_num(r.reduced.entropy),
                fmt_num(r.reduced.heat_capacity),
                r.validity.label().to_string(),
            ]);
        }
        for i in 0..per_method.len() {
            for j in i + 1..per_method.len() {
                row.push(fmt_num(deviation(per_method[i][k].ln_z, per_method[j][k].ln_z)));
            }
        }
        table.push_row(row);
    }
    Ok(table.into_string())
}

pub fn run_compare(cfg: &SweepConfig) -> Result<Option<String>, CliError> {
    let csv = compare_csv(cfg)?;
    match &cfg.out {
        Some(path) => {
            super::write_file(path, &csv)?;
            Ok(None)
        }
        None => Ok(Some(csv)),
    }
}
