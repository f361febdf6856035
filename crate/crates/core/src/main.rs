use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use dirac_thermo::cli::config::{parse_method, parse_regime, parse_spacing};
use dirac_thermo::cli::figure::{run_figures, FigureId};
use dirac_thermo::cli::validate::{failures, report, run_checks, ValidateOptions};
use dirac_thermo::cli::{compare, sweep, CliError, PartialOptions, SweepConfig};
use dirac_thermo::model::Regime;
use dirac_thermo::partition::Method;

#[derive(Debug, Parser)]
#[command(name = "dirac-thermo", version, about = "Thermodynamics of neutral Dirac particles in an electromagnetic field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate ln Z, F, U, S and C_V over a (xi, tau) grid.
    Sweep(CommonArgs),
    /// Write curve data for fig1, fig2, fig3a, fig3b, fig4 (or fig3, all) into --out.
    Figure {
        id: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate several methods on the same grid and report their deviations.
    Compare(CommonArgs),
    /// Run the built-in numerical self-checks.
    Validate {
        /// Check the variant tail coefficients (3 instead of 30 on the 1/b^5 term).
        #[arg(long)]
        paper_literal: bool,
        #[arg(long, hide = true)]
        perturb_tail_coefficient: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// rel or nonrel.
    #[arg(long, value_parser = regime_arg)]
    regime: Option<Regime>,
    /// direct, em, high-t or exact-nr; repeat for compare.
    #[arg(long, value_parser = method_arg)]
    method: Vec<Method>,
    #[arg(long, allow_negative_numbers = true)]
    tau_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tau_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// linear or log.
    #[arg(long, value_parser = spacing_arg)]
    spacing: Option<bool>,
    /// Field coupling; repeatable.
    #[arg(long, allow_negative_numbers = true)]
    xi: Vec<f64>,
    /// Zeeman shift mu*B in units of the rest energy.
    #[arg(long, allow_negative_numbers = true)]
    mu_b: Option<f64>,
    #[arg(long)]
    n_particles: Option<u64>,
    /// Relative tolerance of the certified direct sum.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Output file (sweep, compare) or directory (figure).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG plots (figure).
    #[arg(long)]
    svg: bool,
    /// Use the variant 1/b^5 tail coefficient in the em route.
    #[arg(long)]
    paper_literal: bool,
    /// key = value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn regime_arg(s: &str) -> Result<Regime, String> {
    parse_regime(s).map_err(|e| e.to_string())
}

fn method_arg(s: &str) -> Result<Method, String> {
    parse_method(s).map_err(|e| e.to_string())
}

fn spacing_arg(s: &str) -> Result<bool, String> {
    parse_spacing(s).map_err(|e| e.to_string())
}

impl CommonArgs {
    fn resolve(self) -> Result<SweepConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
                PartialOptions::from_config_text(&text)?
            }
            None => PartialOptions::default(),
        };
        let flags = PartialOptions {
            regime: self.regime,
            methods: self.method,
            tau_min: self.tau_min,
            tau_max: self.tau_max,
            points: self.points,
            log_spacing: self.spacing,
            xi: self.xi,
            mu_b: self.mu_b,
            n_particles: self.n_particles,
            rel_tol: self.rel_tol,
            out: self.out,
            svg: self.svg.then_some(true),
            paper_literal: self.paper_literal.then_some(true),
        };
        flags.or(file).resolve()
    }
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(common) => {
            if let Some(csv) = sweep::run_sweep(&common.resolve()?)? {
                print(&csv)?;
            }
        }
        Command::Compare(common) => {
            if let Some(csv) = compare::run_compare(&common.resolve()?)? {
                print(&csv)?;
            }
        }
        Command::Figure { id, common } => {
            let ids = FigureId::parse(&id)?;
            for path in run_figures(&ids, &common.resolve()?)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Validate { paper_literal, perturb_tail_coefficient } => {
            let checks = run_checks(&ValidateOptions {
                paper_literal,
                perturb_coefficient: perturb_tail_coefficient,
            });
            print(&report(&checks))?;
            let failed = failures(&checks);
            if failed > 0 {
                return Err(CliError::Validation(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
