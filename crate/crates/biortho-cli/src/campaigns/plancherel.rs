//! Plancherel/Parseval verification campaign.

use biortho::probe;
use biortho::C64;
use serde_json::{json, Value};

use crate::config::{RunConfig, SystemChoice};
use crate::report::{system_json, CliError, Report};

use super::{build_grid, build_h_system, build_ionkin_system};

const RESIDUAL_GATE: f64 = 1e-9;
const ORTHONORMAL_GATE: f64 = 1e-12;
const IMAG_GATE: f64 = 1e-12;
const DUALITY_GATE: f64 = 1e-10;

pub fn plancherel(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let pairs = cfg.trials_or(50);
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;

    let systems: Vec<(Option<f64>, biortho::System64)> = match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            cfg.h_sweep(&[1.0, 2.0])
                .into_iter()
                .map(|h| Ok((Some(h), build_h_system(cfg, &grid, h, n)?)))
                .collect::<Result<_, CliError>>()?
        }
        SystemChoice::Ionkin => {
            vec![(None, build_ionkin_system(cfg, &grid, cfg.n_or(8))?)]
        }
    };

    for (h, sys) in systems {
        let mut rng = probe::seeded_rng(cfg.seed);
        let mut max_residual = 0.0f64;
        let mut max_imag = 0.0f64;
        let mut max_norm_defect = 0.0f64;
        let mut max_duality = 0.0f64;
        for _ in 0..pairs {
            let (_, f) = probe::random_band_limited(&sys, &mut rng)?;
            let (_, g) = probe::random_band_limited(&sys, &mut rng)?;
            max_residual = max_residual.max(sys.plancherel_residual(&f, &g)?);
            max_duality = max_duality.max(sys.conjugate_duality_residual(&f, &g)?);

            // Norm form: ‖f‖² = Σ f̂(ξ) conj(f̂_*(ξ)), real and nonnegative.
            let f_hat = sys.analyze_u(&f)?;
            let f_star = sys.analyze_v(&f)?;
            let mixed = f_hat
                .values()
                .iter()
                .zip(f_star.values())
                .fold(C64::new(0.0, 0.0), |acc, (&a, &b)| acc + a * b.conj());
            max_imag = max_imag.max(mixed.im.abs());
            max_norm_defect = max_norm_defect.max((mixed.re.max(0.0).sqrt() - f.h_norm()).abs());

            // The l²_U quadratic form stays real-nonnegative on raw input too.
            let raw = probe::random_sequence::<f64>(sys.index_set(), &mut rng);
            let quad = sys.l2u_inner(&raw, &raw)?;
            max_imag = max_imag.max(quad.im.abs() / (1.0 + quad.re.abs()));
        }
        let gate = if sys.is_orthonormal() { ORTHONORMAL_GATE } else { RESIDUAL_GATE };
        let ok = max_residual < gate
            && max_imag < IMAG_GATE
            && max_norm_defect < RESIDUAL_GATE
            && max_duality < DUALITY_GATE;
        pass &= ok;
        if !ok {
            witnesses.push(json!({
                "h": h,
                "max-residual": max_residual,
                "max-imaginary": max_imag,
                "max-duality": max_duality,
            }));
        }
        cases.push(json!({
            "system": system_json(&sys, h),
            "pairs": pairs,
            "residual-gate": gate,
            "max-plancherel-residual": max_residual,
            "max-imaginary-part": max_imag,
            "max-norm-form-defect": max_norm_defect,
            "max-conjugate-duality-residual": max_duality,
            "pass": ok,
        }));
    }

    Ok(Report::with_witnesses(
        "plancherel",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}
