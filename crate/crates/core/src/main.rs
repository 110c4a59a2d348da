use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cesaro::error::Result;
use cesaro::experiments::{
    self, ExperimentReport, ProfileSpec, ReportFormat, RunConfig, ScalarSeries, DEFAULT_NS,
};
use cesaro::hadamard::{DEFAULT_SEED, DEFAULT_TOL};
use cesaro::series::ProfileKind;

#[derive(Parser)]
#[command(
    name = "cesaro",
    version,
    about = "Summability-operator norm experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SessionArgs {
    /// Session file that experiment commands write and `report` reads.
    #[arg(long, default_value = "cesaro-session.json")]
    session: PathBuf,
    /// Merge into an existing session instead of replacing it.
    #[arg(long)]
    append: bool,
    /// Record wall-clock time per row (makes reports non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, value_enum, default_value_t = ProfileArg::Riesz)]
    profile: ProfileArg,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Riesz,
    Cesaro,
    Fejer,
    PartialSum,
}

impl ProfileArgs {
    fn spec(&self) -> ProfileSpec {
        let kind = match self.profile {
            ProfileArg::Riesz => ProfileKind::Riesz,
            ProfileArg::Cesaro => ProfileKind::Cesaro,
            ProfileArg::Fejer => ProfileKind::Fejer,
            ProfileArg::PartialSum => ProfileKind::PartialSum,
        };
        ProfileSpec {
            kind,
            alpha: self.alpha,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Riesz-mean norms for alpha > 1/2 against alpha²/(2 alpha - 1).
    SweepAlpha {
        #[arg(long, value_delimiter = ',', default_values_t = [0.6, 0.75, 1.0])]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_NS)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Riesz-mean norms at alpha = 1/2 against (1/8) ln((n+1)/2).
    Growth {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_NS)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Restricted multiplier norms on the local Dirichlet space against ‖T_h‖.
    Equality {
        #[arg(long)]
        n: usize,
        #[arg(long = "Ns", value_delimiter = ',', required = true)]
        max_degrees: Vec<usize>,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Writes the polynomial attaining the restricted multiplier norm.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        max_degree: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Cesàro versus Riesz means of a scalar series.
    Equivalence {
        #[arg(long, default_value = "inv-square")]
        series: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_NS)]
        ns: Vec<usize>,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Writes the session report as CSV or JSON.
    Report {
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "cesaro-session.json")]
        session: PathBuf,
    },
}

fn seed_from_env() -> u64 {
    let Ok(raw) = std::env::var("SEED") else {
        return DEFAULT_SEED;
    };
    let raw = raw.trim();
    let parsed = match raw.strip_prefix("0x").or_else(|| raw.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => raw.parse(),
    };
    parsed.unwrap_or_else(|_| {
        eprintln!("warning: ignoring unparsable SEED={raw}");
        DEFAULT_SEED
    })
}

fn config(tol: f64, session: &SessionArgs) -> RunConfig {
    RunConfig {
        seed: seed_from_env(),
        tol,
        timing: session.timing,
        ..RunConfig::default()
    }
}

fn save(report: ExperimentReport, session: &SessionArgs) -> Result<ExperimentReport> {
    let report = if session.append && session.session.exists() {
        let mut existing = ExperimentReport::read_json(&session.session)?;
        existing.merge(report);
        existing
    } else {
        report
    };
    report.write(ReportFormat::Json, &session.session)?;
    Ok(report)
}

fn summarize(report: &ExperimentReport) {
    for check in &report.checks {
        let tag = if check.pass { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", check.name, check.detail);
    }
    for note in &report.metadata.notes {
        println!("note: {note}");
    }
}

fn run(cli: Cli) -> Result<bool> {
    let report = match cli.command {
        Command::SweepAlpha {
            alphas,
            ns,
            tol,
            session,
        } => save(
            experiments::sweep_alpha(&alphas, &ns, &config(tol, &session))?,
            &session,
        )?,
        Command::Growth { ns, tol, session } => {
            save(experiments::growth(&ns, &config(tol, &session))?, &session)?
        }
        Command::Equality {
            n,
            max_degrees,
            profile,
            session,
        } => {
            let cfg = config(DEFAULT_TOL, &session);
            save(
                experiments::equality(&profile.spec(), n, &max_degrees, &cfg)?,
                &session,
            )?
        }
        Command::Witness {
            n,
            max_degree,
            out,
            profile,
            session,
        } => {
            let cfg = config(DEFAULT_TOL, &session);
            let (report, f) = experiments::witness(&profile.spec(), n, max_degree, &cfg)?;
            experiments::write_witness(&f, &out)?;
            println!("maximizer written to {}", out.display());
            save(report, &session)?
        }
        Command::Equivalence {
            series,
            alpha,
            ns,
            session,
        } => {
            let series: ScalarSeries = series.parse()?;
            let cfg = config(DEFAULT_TOL, &session);
            save(
                experiments::equivalence(series, alpha, &ns, &cfg)?,
                &session,
            )?
        }
        Command::Report {
            format,
            out,
            session,
        } => {
            let report = ExperimentReport::read_json(&session)?;
            let format = match format {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Json => ReportFormat::Json,
            };
            report.write(format, &out)?;
            println!("{} rows written to {}", report.rows.len(), out.display());
            report
        }
    };
    summarize(&report);
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
