//! Verification campaigns behind the CLI subcommands.
//!
//! Every campaign is a pure function from a [`RunConfig`] to a [`Report`];
//! randomness is seeded from the config, so identical configs reproduce
//! identical metrics. Pass thresholds are pinned constants, not knobs.

mod convolution;
mod decay;
mod lp;
mod plancherel;
mod spectral;
mod verify;

pub use convolution::{conv_agree, conv_theorem, ionkin_hats};
pub use decay::decay;
pub use lp::{duality, hausdorff_young};
pub use plancherel::plancherel;
pub use spectral::{intertwine, resolvent};
pub use verify::{frame_bounds, verify_biortho};

use std::sync::Arc;

use biortho::hilbert::{GridRef, QuadratureGrid};
use biortho::systems::{
    make_h_exponential_with_tol, make_ionkin_with_tol, BiorthogonalSystem,
};
use serde_json::json;

use crate::config::{RunConfig, SystemChoice};
use crate::report::{CliError, Report};

pub(crate) fn build_grid(cfg: &RunConfig) -> Result<GridRef<f64>, CliError> {
    Ok(Arc::new(QuadratureGrid::gauss_legendre(cfg.panels, cfg.points)?))
}

pub(crate) fn build_h_system(
    cfg: &RunConfig,
    grid: &GridRef<f64>,
    h: f64,
    n: usize,
) -> Result<BiorthogonalSystem<f64>, CliError> {
    Ok(make_h_exponential_with_tol(h, n, grid, cfg.tol_biortho)?)
}

pub(crate) fn build_ionkin_system(
    cfg: &RunConfig,
    grid: &GridRef<f64>,
    n: usize,
) -> Result<BiorthogonalSystem<f64>, CliError> {
    Ok(make_ionkin_with_tol(n, grid, cfg.tol_biortho)?)
}

/// All known subcommand names, in the order `all` runs them.
pub const CAMPAIGN_NAMES: &[&str] = &[
    "verify-biortho",
    "frame-bounds",
    "plancherel",
    "conv-theorem",
    "conv-agree",
    "resolvent",
    "intertwine",
    "hausdorff-young",
    "duality",
    "ionkin-hats",
    "decay",
];

/// Dispatch one campaign by subcommand name.
pub fn run_campaign(name: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    match name {
        "verify-biortho" => verify_biortho(cfg),
        "frame-bounds" => frame_bounds(cfg),
        "plancherel" => plancherel(cfg),
        "conv-theorem" => conv_theorem(cfg),
        "conv-agree" => conv_agree(cfg),
        "resolvent" => resolvent(cfg),
        "intertwine" => intertwine(cfg),
        "hausdorff-young" => hausdorff_young(cfg),
        "duality" => duality(cfg),
        "ionkin-hats" => ionkin_hats(cfg),
        "decay" => decay(cfg),
        other => Err(CliError::Config(format!("unknown subcommand {other:?}"))),
    }
}

/// Run every campaign; criteria that involve both built-in systems get a
/// second pass on the Ionkin system. Returns the individual reports plus an
/// aggregate whose pass flag is the conjunction.
pub fn run_all(cfg: &RunConfig) -> Result<(Vec<Report>, Report), CliError> {
    let both_systems = ["verify-biortho", "plancherel", "conv-theorem", "hausdorff-young"];
    let mut reports = Vec::new();
    for &name in CAMPAIGN_NAMES {
        let mut report = run_campaign(name, cfg)?;
        report.subcommand = name.to_string();
        reports.push(report);
        if both_systems.contains(&name) && cfg.system != SystemChoice::Ionkin {
            let ionkin_cfg = RunConfig { system: SystemChoice::Ionkin, ..cfg.clone() };
            let mut report = run_campaign(name, &ionkin_cfg)?;
            report.subcommand = format!("{name}-ionkin");
            reports.push(report);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let summary = json!({
        "campaigns": reports
            .iter()
            .map(|r| json!({"subcommand": r.subcommand, "pass": r.pass}))
            .collect::<Vec<_>>(),
    });
    let aggregate = Report::new("all", cfg, pass, summary);
    Ok((reports, aggregate))
}
