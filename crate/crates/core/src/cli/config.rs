//! Sweep configuration: command-line values layered over an optional
//! `key = value` file. Keys are the long flag names without the leading dashes.

use std::path::PathBuf;

use super::CliError;
use crate::grid;
use crate::model::Regime;
use crate::partition::{Method, RouteOptions, TailForm};

pub const DEFAULT_TAU_MIN: f64 = 0.01;
pub const DEFAULT_TAU_MAX: f64 = 2.0;
pub const DEFAULT_POINTS: usize = 200;
pub const DEFAULT_XI: [f64; 4] = [1.0, 5.0, 10.0, 15.0];

pub fn parse_regime(s: &str) -> Result<Regime, CliError> {
    match s {
        "rel" | "relativistic" => Ok(Regime::Relativistic),
        "nonrel" | "non-relativistic" => Ok(Regime::NonRelativistic),
        other => Err(CliError::usage(format!("unknown regime '{other}' (expected rel or nonrel)"))),
    }
}

pub fn parse_method(s: &str) -> Result<Method, CliError> {
    match s {
        "direct" => Ok(Method::Direct),
        "em" | "euler-maclaurin" => Ok(Method::EulerMaclaurin),
        "high-t" => Ok(Method::HighT),
        "exact-nr" => Ok(Method::ExactClosedForm),
        other => Err(CliError::usage(format!(
            "unknown method '{other}' (expected direct, em, high-t or exact-nr)"
        ))),
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{key}: '{v}' is not a number")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(CliError::usage(format!("{key}: '{other}' is not a boolean"))),
    }
}

/// Every setting optional; `None` (or an empty list) means "not given here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialOptions {
    pub regime: Option<Regime>,
    pub methods: Vec<Method>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub points: Option<usize>,
    pub log_spacing: Option<bool>,
    pub xi: Vec<f64>,
    pub mu_b: Option<f64>,
    pub n_particles: Option<u64>,
    pub rel_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub svg: Option<bool>,
    pub paper_literal: Option<bool>,
}

impl PartialOptions {
    /// Parses a config file: one `key = value` per line, `#` starts a comment.
    /// List-valued keys (`xi`, `method`) accept comma-separated values and may repeat.
    pub fn from_config_text(text: &str) -> Result<Self, CliError> {
        let mut o = PartialOptions::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", lineno + 1)))?;
            let key = key.trim().trim_start_matches("--");
            let value = value.trim();
            match key {
                "regime" => o.regime = Some(parse_regime(value)?),
                "method" => {
                    for m in value.split(',') {
                        o.methods.push(parse_method(m.trim())?);
                    }
                }
                "tau-min" => o.tau_min = Some(parse_f64(key, value)?),
                "tau-max" => o.tau_max = Some(parse_f64(key, value)?),
                "points" => {
                    o.points = Some(
                        value
                            .parse()
                            .map_err(|_| CliError::usage(format!("points: '{value}' is not a count")))?,
                    )
                }
                "spacing" => o.log_spacing = Some(parse_spacing(value)?),
                "xi" => {
                    for x in value.split(',') {
                        o.xi.push(parse_f64(key, x)?);
                    }
                }
                "mu-b" => o.mu_b = Some(parse_f64(key, value)?),
                "n-particles" => {
                    o.n_particles = Some(
                        value
                            .parse()
                            .map_err(|_| CliError::usage(format!("n-particles: '{value}' is not a count")))?,
                    )
                }
                "rel-tol" => o.rel_tol = Some(parse_f64(key, value)?),
                "out" => o.out = Some(PathBuf::from(value)),
                "svg" => o.svg = Some(parse_bool(key, value)?),
                "paper-literal" => o.paper_literal = Some(parse_bool(key, value)?),
                other => return Err(CliError::usage(format!("config line {}: unknown key '{other}'", lineno + 1))),
            }
        }
        Ok(o)
    }

    /// Fills anything unset in `self` from `fallback`.
    pub fn or(self, fallback: PartialOptions) -> PartialOptions {
        PartialOptions {
            regime: self.regime.or(fallback.regime),
            methods: if self.methods.is_empty() { fallback.methods } else { self.methods },
            tau_min: self.tau_min.or(fallback.tau_min),
            tau_max: self.tau_max.or(fallback.tau_max),
            points: self.points.or(fallback.points),
            log_spacing: self.log_spacing.or(fallback.log_spacing),
            xi: if self.xi.is_empty() { fallback.xi } else { self.xi },
            mu_b: self.mu_b.or(fallback.mu_b),
            n_particles: self.n_particles.or(fallback.n_particles),
            rel_tol: self.rel_tol.or(fallback.rel_tol),
            out: self.out.or(fallback.out),
            svg: self.svg.or(fallback.svg),
            paper_literal: self.paper_literal.or(fallback.paper_literal),
        }
    }

    /// Resolves defaults and validates.
    pub fn resolve(self) -> Result<SweepConfig, CliError> {
        let cfg = SweepConfig {
            regime: self.regime.unwrap_or(Regime::Relativistic),
            methods: if self.methods.is_empty() { vec![Method::HighT] } else { self.methods },
            tau_min: self.tau_min.unwrap_or(DEFAULT_TAU_MIN),
            tau_max: self.tau_max.unwrap_or(DEFAULT_TAU_MAX),
            points: self.points.unwrap_or(DEFAULT_POINTS),
            log_spacing: self.log_spacing.unwrap_or(false),
            xi: if self.xi.is_empty() { DEFAULT_XI.to_vec() } else { self.xi },
            mu_b: self.mu_b.unwrap_or(0.0),
            n_particles: self.n_particles.unwrap_or(1),
            rel_tol: self.rel_tol.unwrap_or(crate::series::DEFAULT_REL_TOL),
            out: self.out,
            svg: self.svg.unwrap_or(false),
            paper_literal: self.paper_literal.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn parse_spacing(s: &str) -> Result<bool, CliError> {
    match s {
        "linear" | "lin" => Ok(false),
        "log" => Ok(true),
        other => Err(CliError::usage(format!("unknown spacing '{other}' (expected linear or log)"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub regime: Regime,
    pub methods: Vec<Method>,
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub log_spacing: bool,
    pub xi: Vec<f64>,
    pub mu_b: f64,
    pub n_particles: u64,
    pub rel_tol: f64,
    pub out: Option<PathBuf>,
    pub svg: bool,
    pub paper_literal: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.points < 2 {
            return Err(CliError::usage(format!("need at least 2 grid points, got {}", self.points)));
        }
        if !(self.tau_min > 0.0 && self.tau_min.is_finite() && self.tau_max.is_finite()) {
            return Err(CliError::usage("tau range must be positive and finite"));
        }
        if !(self.tau_min < self.tau_max) {
            return Err(CliError::usage(format!(
                "tau-min ({}) must be below tau-max ({})",
                self.tau_min, self.tau_max
            )));
        }
        if self.xi.is_empty() {
            return Err(CliError::usage("at least one xi value is required"));
        }
        if let Some(bad) = self.xi.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(CliError::usage(format!("xi values must be positive, got {bad}")));
        }
        if !(self.mu_b >= 0.0 && self.mu_b.is_finite()) {
            return Err(CliError::usage(format!("mu-b must be non-negative, got {}", self.mu_b)));
        }
        if self.n_particles == 0 {
            return Err(CliError::usage("n-particles must be at least 1"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(CliError::usage("rel-tol must be positive"));
        }
        if self.regime == Regime::Relativistic && self.methods.contains(&Method::ExactClosedForm) {
            return Err(CliError::usage("exact-nr is only available with --regime nonrel"));
        }
        Ok(())
    }

    pub fn taus(&self) -> Vec<f64> {
        grid::spaced(self.tau_min, self.tau_max, self.points, self.log_spacing)
    }

    /// `xi` values in ascending order.
    pub fn sorted_xi(&self) -> Vec<f64> {
        let mut xi = self.xi.clone();
        xi.sort_by(f64::total_cmp);
        xi
    }

    pub fn route_options(&self) -> RouteOptions {
        RouteOptions {
            rel_tol: self.rel_tol,
            tail_form: if self.paper_literal { TailForm::Printed } else { TailForm::Derived },
            ..RouteOptions::default()
        }
    }

    /// Column label of a method under this configuration.
    pub fn method_label(&self, m: Method) -> &'static str {
        if m == Method::EulerMaclaurin && self.paper_literal && self.regime == Regime::Relativistic {
            "em-literal"
        } else {
            m.label()
        }
    }
}
