//! `figure`: curve data (and optionally SVG) for the standard plots.

use std::path::{Path, PathBuf};

use super::config::SweepConfig;
use super::format::{fmt_num, CsvTable};
use super::svg::{self, Series};
use super::sweep::{evaluate_point, GridPoint};
use super::CliError;
use crate::grid;
use crate::model::Regime;
use crate::partition::Method;
use crate::thermo::ReducedQuantities;

pub const FIGURE_HEADER: [&str; 6] = ["figure", "quantity", "regime", "xi", "tau", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Relativistic free energy.
    Fig1,
    /// Relativistic entropy.
    Fig2,
    /// Non-relativistic free energy.
    Fig3a,
    /// Non-relativistic entropy.
    Fig3b,
    /// Mean energy in both regimes.
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    FreeEnergy,
    Entropy,
    MeanEnergy,
}

impl Quantity {
    fn of(self, q: &ReducedQuantities) -> f64 {
        match self {
            Quantity::FreeEnergy => q.free_energy,
            Quantity::Entropy => q.entropy,
            Quantity::MeanEnergy => q.mean_energy,
        }
    }

    /// Column label: upper case for the relativistic curves, lower case otherwise.
    pub fn label(self, regime: Regime) -> &'static str {
        match (self, regime) {
            (Quantity::FreeEnergy, Regime::Relativistic) => "F_bar",
            (Quantity::Entropy, Regime::Relativistic) => "S_bar",
            (Quantity::MeanEnergy, Regime::Relativistic) => "U_bar",
            (Quantity::FreeEnergy, Regime::NonRelativistic) => "f_bar",
            (Quantity::Entropy, Regime::NonRelativistic) => "s_bar",
            (Quantity::MeanEnergy, Regime::NonRelativistic) => "u_bar",
        }
    }
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4];

    pub fn parse(s: &str) -> Result<Vec<FigureId>, CliError> {
        Ok(match s {
            "fig1" => vec![FigureId::Fig1],
            "fig2" => vec![FigureId::Fig2],
            "fig3a" => vec![FigureId::Fig3a],
            "fig3b" => vec![FigureId::Fig3b],
            "fig3" => vec![FigureId::Fig3a, FigureId::Fig3b],
            "fig4" => vec![FigureId::Fig4],
            "all" => FigureId::ALL.to_vec(),
            other => {
                return Err(CliError::usage(format!(
                    "unknown figure '{other}' (expected fig1, fig2, fig3a, fig3b, fig3, fig4 or all)"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4 => "fig4",
        }
    }

    /// The curves drawn, in output order.
    pub fn curves(self) -> &'static [(Quantity, Regime)] {
        match self {
            FigureId::Fig1 => &[(Quantity::FreeEnergy, Regime::Relativistic)],
            FigureId::Fig2 => &[(Quantity::Entropy, Regime::Relativistic)],
            FigureId::Fig3a => &[(Quantity::FreeEnergy, Regime::NonRelativistic)],
            FigureId::Fig3b => &[(Quantity::Entropy, Regime::NonRelativistic)],
            FigureId::Fig4 => &[
                (Quantity::MeanEnergy, Regime::Relativistic),
                (Quantity::MeanEnergy, Regime::NonRelativistic),
            ],
        }
    }

    fn title(self) -> &'static str {
        match self {
            FigureId::Fig1 => "Free energy, relativistic",
            FigureId::Fig2 => "Entropy, relativistic",
            FigureId::Fig3a => "Free energy, non-relativistic",
            FigureId::Fig3b => "Entropy, non-relativistic",
            FigureId::Fig4 => "Mean energy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub quantity: &'static str,
    pub regime: Regime,
    pub xi: f64,
    pub tau: f64,
    pub value: f64,
}

fn method_of(cfg: &SweepConfig, regime: Regime) -> Result<Method, CliError> {
    let m = match cfg.methods.as_slice() {
        [m] => *m,
        _ => return Err(CliError::usage("figure takes exactly one --method")),
    };
    if m == Method::ExactClosedForm && regime == Regime::Relativistic {
        return Err(CliError::usage("exact-nr cannot draw relativistic curves"));
    }
    Ok(m)
}

/// Rows ordered by curve, then `xi` and `tau` ascending. `cfg.regime` is ignored:
/// each figure fixes its own.
pub fn figure_rows(id: FigureId, cfg: &SweepConfig) -> Result<Vec<FigureRow>, CliError> {
    let xis = cfg.sorted_xi();
    let taus = cfg.taus();
    let mut rows = Vec::new();
    for &(quantity, regime) in id.curves() {
        let method = method_of(cfg, regime)?;
        let sub = SweepConfig { regime, ..cfg.clone() };
        let opts = sub.route_options();
        let points: Vec<GridPoint> = xis
            .iter()
            .flat_map(|&xi| taus.iter().map(move |&tau| GridPoint { xi, tau }))
            .collect();
        let results = grid::map_points(&points, |&p| evaluate_point(&sub, method, &opts, p))
            .into_iter()
            .collect::<crate::Result<Vec<_>>>()?;
        rows.extend(results.into_iter().map(|r| FigureRow {
            quantity: quantity.label(regime),
            regime,
            xi: r.point.xi,
            tau: r.point.tau,
            value: quantity.of(&r.reduced),
        }));
    }
    Ok(rows)
}

pub fn figure_csv(id: FigureId, rows: &[FigureRow]) -> String {
    let mut table = CsvTable::new(&FIGURE_HEADER);
    for r in rows {
        table.push_row(vec![
            id.name().to_string(),
            r.quantity.to_string(),
            r.regime.label().to_string(),
            fmt_num(r.xi),
            fmt_num(r.tau),
            fmt_num(r.value),
        ]);
    }
    table.into_string()
}

pub fn figure_svg(id: FigureId, rows: &[FigureRow]) -> String {
    let mut series: Vec<Series> = Vec::new();
    for r in rows {
        let label = format!("{} xi={}", r.quantity, fmt_num(r.xi));
        match series.last_mut() {
            Some(s) if s.label == label => s.points.push((r.tau, r.value)),
            _ => series.push(Series { label, points: vec![(r.tau, r.value)] }),
        }
    }
    let y_label = match id {
        FigureId::Fig4 => "mean energy",
        FigureId::Fig1 | FigureId::Fig3a => "free energy",
        FigureId::Fig2 | FigureId::Fig3b => "entropy",
    };
    svg::render(id.title(), "tau", y_label, &series)
}

/// Writes `<id>.csv` (and `<id>.svg` with `cfg.svg`) into `cfg.out`, default `.`.
pub fn run_figures(ids: &[FigureId], cfg: &SweepConfig) -> Result<Vec<PathBuf>, CliError> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
    let mut written = Vec::new();
    for &id in ids {
        let rows = figure_rows(id, cfg)?;
        let csv_path = file_in(&dir, id, "csv");
        super::write_file(&csv_path, &figure_csv(id, &rows))?;
        written.push(csv_path);
        if cfg.svg {
            let svg_path = file_in(&dir, id, "svg");
            super::write_file(&svg_path, &figure_svg(id, &rows))?;
            written.push(svg_path);
        }
    }
    Ok(written)
}

fn file_in(dir: &Path, id: FigureId, ext: &str) -> PathBuf {
    dir.join(format!("{}.{ext}", id.name()))
}
