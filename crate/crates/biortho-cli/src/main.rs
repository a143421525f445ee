//! Command-line entry point: runs verification campaigns and writes
//! machine-readable JSON reports.
//!
//! Exit codes: 0 when every asserted identity passed, 1 when any assertion
//! failed, 2 on configuration or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use biortho_cli::campaigns::{run_all, run_campaign};
use biortho_cli::config::{RunConfig, SystemChoice, WeightChoice};
use biortho_cli::report::{CliError, Report};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "biortho",
    about = "Verification campaigns for Fourier analysis and convolutions \
             generated by biorthogonal Riesz bases on L2(0,1)",
    version
)]
struct Cli {
    /// JSON config file; command-line flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// System to run on: "h-exponential" or "ionkin".
    #[arg(long, global = true)]
    system: Option<String>,

    /// Parameter h of the exponential system; omit to run the campaign's
    /// pinned sweep.
    #[arg(long, global = true)]
    h: Option<f64>,

    /// Truncation order.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Quadrature panels.
    #[arg(long, global = true)]
    panels: Option<usize>,

    /// Gauss-Legendre points per panel.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Random trials / probe pairs per case.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Seed for all randomized probes.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Gram residual tolerance enforced at system construction.
    #[arg(long = "tol-biortho", global = true)]
    tol_biortho: Option<f64>,

    /// Pole guard radius for the resolvent.
    #[arg(long = "eps-spec", global = true)]
    eps_spec: Option<f64>,

    /// Output directory for JSON reports (default: env BIORTHO_OUT, else
    /// stdout).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Weight norm for the sequence spaces: "intersection" or "sup".
    #[arg(long = "weight-norm", global = true)]
    weight_norm: Option<String>,

    /// Also write CSV / raw-value artifacts next to the reports.
    #[arg(long = "emit-csv", global = true)]
    emit_csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Gram-matrix residuals of the built-in systems.
    VerifyBiortho,
    /// Frame bounds from random band-limited probes.
    FrameBounds,
    /// Plancherel/Parseval identities and the conjugate duality.
    Plancherel,
    /// Convolution theorem, commutativity and associativity.
    ConvTheorem,
    /// Spectral vs. integral form of the exponential-system convolution.
    ConvAgree,
    /// Resolvent via convolution with the spectral kernel.
    Resolvent,
    /// Operator-convolution intertwining, including the Ionkin operator.
    Intertwine,
    /// Hausdorff-Young ratios at the endpoint exponents.
    HausdorffYoung,
    /// Bilinear duality pairing against its Hölder bound.
    Duality,
    /// Coefficient relations of the Ionkin five-integral convolution.
    IonkinHats,
    /// Coefficient-decay diagnostics and spectrum summability.
    Decay,
    /// Every campaign, aggregated.
    All,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::VerifyBiortho => "verify-biortho",
            Command::FrameBounds => "frame-bounds",
            Command::Plancherel => "plancherel",
            Command::ConvTheorem => "conv-theorem",
            Command::ConvAgree => "conv-agree",
            Command::Resolvent => "resolvent",
            Command::Intertwine => "intertwine",
            Command::HausdorffYoung => "hausdorff-young",
            Command::Duality => "duality",
            Command::IonkinHats => "ionkin-hats",
            Command::Decay => "decay",
            Command::All => "all",
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            RunConfig::from_json(&text).map_err(CliError::Config)?
        }
        None => RunConfig::default(),
    };
    if let Some(system) = &cli.system {
        cfg.system = SystemChoice::parse(system).map_err(CliError::Config)?;
    }
    if cli.h.is_some() {
        cfg.h = cli.h;
    }
    if cli.n.is_some() {
        cfg.n = cli.n;
    }
    if let Some(panels) = cli.panels {
        cfg.panels = panels;
    }
    if let Some(points) = cli.points {
        cfg.points = points;
    }
    if cli.trials.is_some() {
        cfg.trials = cli.trials;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = cli.tol_biortho {
        cfg.tol_biortho = tol;
    }
    if let Some(eps) = cli.eps_spec {
        cfg.eps_spec = eps;
    }
    if let Some(weight) = &cli.weight_norm {
        cfg.weight_norm = WeightChoice::parse(weight).map_err(CliError::Config)?;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    } else if cfg.out.is_none() {
        cfg.out = std::env::var_os("BIORTHO_OUT").map(PathBuf::from);
    }
    cfg.emit_csv |= cli.emit_csv;
    cfg.validate().map_err(CliError::Config)?;
    Ok(cfg)
}

fn emit(report: &Report, cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(dir) => {
            let path = report.write_to(dir)?;
            eprintln!(
                "{}: {} -> {}",
                report.subcommand,
                if report.pass { "pass" } else { "FAIL" },
                path.display()
            );
        }
        None => print!("{}", report.to_json()),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = build_config(cli)?;
    match cli.command {
        Command::All => {
            let (reports, aggregate) = run_all(&cfg)?;
            for report in &reports {
                emit(report, &cfg)?;
            }
            emit(&aggregate, &cfg)?;
            Ok(aggregate.pass)
        }
        command => {
            let report = run_campaign(command.name(), &cfg)?;
            emit(&report, &cfg)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
