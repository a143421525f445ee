//! Biorthogonality verification and frame-bound estimation campaigns.

use biortho::systems::{estimate_frame_bounds, verify_biorthogonality};
use serde_json::{json, Value};

use crate::config::{RunConfig, SystemChoice};
use crate::report::{system_json, system_values_json, CliError, Report};

use super::{build_grid, build_h_system, build_ionkin_system};

/// Gram residual gate for the exponential system at the pinned resolution.
const H_EXP_GATE: f64 = 1e-10;
/// Gram residual gate for the Ionkin system.
const IONKIN_GATE: f64 = 1e-9;
const H_SWEEP: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

pub fn verify_biortho(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;
    let mut last_values: Option<Value> = None;

    match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            for h in cfg.h_sweep(&H_SWEEP) {
                let sys = build_h_system(cfg, &grid, h, n)?;
                let report = verify_biorthogonality(&sys);
                let ok = report.max_residual() < H_EXP_GATE;
                pass &= ok;
                if !ok {
                    witnesses.push(json!({"h": h, "max-residual": report.max_residual()}));
                }
                cases.push(json!({
                    "system": system_json(&sys, Some(h)),
                    "gate": H_EXP_GATE,
                    "max-off-diagonal": report.max_off_diagonal,
                    "max-diagonal-deviation": report.max_diagonal_deviation,
                    "max-residual": report.max_residual(),
                    "pass": ok,
                }));
                if cfg.emit_csv {
                    last_values = Some(system_values_json(&sys));
                }
            }
        }
        SystemChoice::Ionkin => {
            let n = cfg.n_or(8);
            let sys = build_ionkin_system(cfg, &grid, n)?;
            let report = verify_biorthogonality(&sys);
            let ok = report.max_residual() < IONKIN_GATE;
            pass &= ok;
            if !ok {
                witnesses.push(json!({"system": "ionkin", "max-residual": report.max_residual()}));
            }
            cases.push(json!({
                "system": system_json(&sys, None),
                "gate": IONKIN_GATE,
                "max-off-diagonal": report.max_off_diagonal,
                "max-diagonal-deviation": report.max_diagonal_deviation,
                "max-residual": report.max_residual(),
                "pass": ok,
            }));
            if cfg.emit_csv {
                last_values = Some(system_values_json(&sys));
            }
        }
    }

    let mut metrics = json!({"cases": cases});
    if let Some(values) = last_values {
        metrics["system-values"] = values;
    }
    Ok(Report::with_witnesses("verify-biortho", cfg, pass, metrics, Value::Array(witnesses)))
}

/// Slack against the analytic multiplier bounds.
const FRAME_EPS: f64 = 1e-6;
/// Tight tolerance for the orthonormal case.
const FRAME_UNIT_EPS: f64 = 1e-10;

pub fn frame_bounds(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let trials = cfg.trials_or(100);
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;

    match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            for h in cfg.h_sweep(&[1.0, 2.0]) {
                let sys = build_h_system(cfg, &grid, h, n)?;
                let fb = estimate_frame_bounds(&sys, trials, cfg.seed)?;
                // For band-limited g, Σ|(g,v_ξ)|² = ‖g h^{-x}‖² and the
                // pointwise multiplier pins it between min(1, h^{-2}) and
                // max(1, h^{-2}); mirrored with h^{2x} on the u side.
                let v_floor = (1.0f64).min(h.powi(-2));
                let v_ceil = (1.0f64).max(h.powi(-2));
                let u_floor = (1.0f64).min(h * h);
                let u_ceil = (1.0f64).max(h * h);
                let eps = if (h - 1.0).abs() < f64::EPSILON { FRAME_UNIT_EPS } else { FRAME_EPS };
                let ok = fb.v_lower.powi(2) >= v_floor - eps
                    && fb.v_upper.powi(2) <= v_ceil + eps
                    && fb.u_lower.powi(2) >= u_floor - eps
                    && fb.u_upper.powi(2) <= u_ceil + eps
                    && fb.v_lower <= fb.v_upper
                    && fb.u_lower <= fb.u_upper;
                pass &= ok;
                if !ok {
                    witnesses.push(json!({"h": h, "bounds": frame_json(&fb)}));
                }
                cases.push(json!({
                    "h": h,
                    "trials": trials,
                    "bounds": frame_json(&fb),
                    "analytic": {
                        "v-squared": [v_floor, v_ceil],
                        "u-squared": [u_floor, u_ceil],
                        "slack": eps,
                    },
                    "pass": ok,
                }));
            }
        }
        SystemChoice::Ionkin => {
            let n = cfg.n_or(8);
            let sys = build_ionkin_system(cfg, &grid, n)?;
            let fb = estimate_frame_bounds(&sys, trials, cfg.seed)?;
            let ok = fb.v_lower > 0.0 && fb.v_lower <= fb.v_upper && fb.u_lower <= fb.u_upper;
            pass &= ok;
            cases.push(json!({
                "system": "ionkin",
                "trials": trials,
                "bounds": frame_json(&fb),
                "pass": ok,
            }));
        }
    }

    Ok(Report::with_witnesses(
        "frame-bounds",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}

fn frame_json(fb: &biortho::systems::FrameBounds<f64>) -> Value {
    json!({
        "v-lower": fb.v_lower,
        "v-upper": fb.v_upper,
        "u-lower": fb.u_lower,
        "u-upper": fb.u_upper,
        "v-lower-squared": fb.v_lower * fb.v_lower,
        "v-upper-squared": fb.v_upper * fb.v_upper,
        "u-lower-squared": fb.u_lower * fb.u_lower,
        "u-upper-squared": fb.u_upper * fb.u_upper,
    })
}
