//! Hausdorff-Young and duality-pairing campaigns.

use biortho::lp::{duality_pairing_report, hausdorff_young_report};
use biortho::probe;
use biortho::systems::estimate_frame_bounds;
use serde_json::{json, Value};

use crate::config::{RunConfig, SystemChoice};
use crate::report::{system_json, CliError, Report};

use super::{build_grid, build_h_system, build_ionkin_system};

const ENDPOINT_GATE: f64 = 1e-9;

pub fn hausdorff_young(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let inputs = cfg.trials_or(100);
    let weight_norm = cfg.weight_norm.to_core();
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;

    let systems: Vec<(Option<f64>, biortho::System64)> = match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            // The orthonormal case carries its own p = 2 assertion, so it is
            // always part of the sweep.
            let mut sweep = cfg.h_sweep(&[0.5, 2.0]);
            if !sweep.contains(&1.0) {
                sweep.push(1.0);
            }
            sweep
                .into_iter()
                .map(|h| Ok((Some(h), build_h_system(cfg, &grid, h, n)?)))
                .collect::<Result<_, CliError>>()?
        }
        SystemChoice::Ionkin => {
            vec![(None, build_ionkin_system(cfg, &grid, cfg.n_or(8))?)]
        }
    };

    for (h, sys) in systems {
        let frame_upper = estimate_frame_bounds(&sys, 50, cfg.seed)?.v_upper;
        let mut rng = probe::seeded_rng(cfg.seed);
        let mut p1_analysis = 0.0f64;
        let mut p1_synthesis = 0.0f64;
        let mut p2_analysis_dev = 0.0f64;
        let mut p2_synthesis_dev = 0.0f64;
        let mut p2_max_ratio = 0.0f64;
        let mut mid_analysis = 0.0f64;
        let mut mid_synthesis = 0.0f64;
        let mut endpoint_ok = true;
        for _ in 0..inputs {
            let (_, f) = probe::random_band_limited(&sys, &mut rng)?;
            let r1 = hausdorff_young_report(&sys, &f, 1.0, weight_norm, Some(frame_upper))?;
            p1_analysis = p1_analysis.max(r1.analysis_ratio);
            p1_synthesis = p1_synthesis.max(r1.synthesis_ratio);
            endpoint_ok &= r1.endpoint_bound_satisfied.unwrap_or(false);

            let r2 = hausdorff_young_report(&sys, &f, 2.0, weight_norm, Some(frame_upper))?;
            p2_analysis_dev = p2_analysis_dev.max((r2.analysis_ratio - 1.0).abs());
            p2_synthesis_dev = p2_synthesis_dev.max((r2.synthesis_ratio - 1.0).abs());
            p2_max_ratio = p2_max_ratio.max(r2.analysis_ratio);
            if sys.is_orthonormal() {
                endpoint_ok &= r2.endpoint_bound_satisfied.unwrap_or(false);
            }

            // Interpolation regime: reported, no explicit constant to gate.
            let r15 = hausdorff_young_report(&sys, &f, 1.5, weight_norm, Some(frame_upper))?;
            mid_analysis = mid_analysis.max(r15.analysis_ratio);
            mid_synthesis = mid_synthesis.max(r15.synthesis_ratio);
        }
        let p1_ok = p1_analysis <= 1.0 + ENDPOINT_GATE && p1_synthesis <= 1.0 + ENDPOINT_GATE;
        let p2_ok = !sys.is_orthonormal()
            || (p2_analysis_dev <= ENDPOINT_GATE && p2_synthesis_dev <= ENDPOINT_GATE);
        let ok = p1_ok && p2_ok && endpoint_ok;
        pass &= ok;
        if !ok {
            witnesses.push(json!({
                "h": h,
                "p1-analysis": p1_analysis,
                "p1-synthesis": p1_synthesis,
            }));
        }
        cases.push(json!({
            "system": system_json(&sys, h),
            "inputs": inputs,
            "endpoint-gate": ENDPOINT_GATE,
            "p-1": {
                "max-analysis-ratio": p1_analysis,
                "max-synthesis-ratio": p1_synthesis,
                "pass": p1_ok,
            },
            "p-2": {
                "max-analysis-deviation": p2_analysis_dev,
                "max-synthesis-deviation": p2_synthesis_dev,
                "max-analysis-ratio": p2_max_ratio,
                "frame-upper": frame_upper,
                "orthonormal": sys.is_orthonormal(),
                "pass": p2_ok,
            },
            "p-1.5": {
                "max-analysis-ratio": mid_analysis,
                "max-synthesis-ratio": mid_synthesis,
            },
            "pass": ok,
        }));
    }

    Ok(Report::with_witnesses(
        "hausdorff-young",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}

const DUALITY_H_SWEEP: [f64; 3] = [0.5, 1.0, 2.0];
const DUALITY_P_SET: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

pub fn duality(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let pairs = cfg.trials_or(200);
    let weight_norm = cfg.weight_norm.to_core();
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;

    let systems: Vec<(Option<f64>, biortho::System64)> = match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            cfg.h_sweep(&DUALITY_H_SWEEP)
                .into_iter()
                .map(|h| Ok((Some(h), build_h_system(cfg, &grid, h, n)?)))
                .collect::<Result<_, CliError>>()?
        }
        SystemChoice::Ionkin => {
            vec![(None, build_ionkin_system(cfg, &grid, cfg.n_or(8))?)]
        }
    };

    for (h, sys) in systems {
        for p in DUALITY_P_SET {
            let mut rng = probe::seeded_rng(cfg.seed);
            let mut violations = 0usize;
            let mut max_ratio = 0.0f64;
            for trial in 0..pairs {
                let s1 = probe::random_sequence::<f64>(sys.index_set(), &mut rng);
                let s2 = probe::random_sequence::<f64>(sys.index_set(), &mut rng);
                let report = duality_pairing_report(&sys, &s1, &s2, p, weight_norm)?;
                max_ratio = max_ratio.max(report.ratio);
                if !report.within_bound {
                    violations += 1;
                    if witnesses.len() < 8 {
                        witnesses.push(json!({
                            "h": h,
                            "p": p,
                            "trial": trial,
                            "ratio": report.ratio,
                        }));
                    }
                }
            }
            let ok = violations == 0;
            pass &= ok;
            cases.push(json!({
                "h": h,
                "p": p,
                "q": biortho::lp::conjugate_exponent(p)?,
                "pairs": pairs,
                "violations": violations,
                "max-ratio": max_ratio,
                "pass": ok,
            }));
        }
    }

    Ok(Report::with_witnesses(
        "duality",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}
