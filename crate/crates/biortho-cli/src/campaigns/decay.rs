//! Coefficient-decay diagnostics campaign.

use biortho::fourier::{CoefficientSequence, SideTag};
use biortho::hilbert::GridFunction;
use biortho::spectral::{decay_order, make_h_spectrum};
use biortho::C64;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{
    coefficients_json, spectrum_json, system_json, write_coefficients_csv, CliError, Report,
};

use super::{build_grid, build_h_system};

const K_MAX: usize = 6;
/// Expected fitted exponent for `h^x · x` (coefficients `~ 1/(2πj)`).
const MILD_EXPONENT: f64 = 1.0;
const MILD_SLACK: f64 = 0.2;
/// Floor on the fitted exponent of the entire periodic factor.
const SMOOTH_EXPONENT_FLOOR: f64 = 6.0;
/// Exponent of the synthetic polynomially growing sequence.
const GROWTH_EXPONENT: f64 = -2.0;
const GROWTH_SLACK: f64 = 0.1;

pub fn decay(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let n = cfg.n_or(16);
    let h = cfg.h.unwrap_or(2.0);
    let sys = build_h_system(cfg, &grid, h, n)?;
    let spectrum = make_h_spectrum(h, n)?;
    let tau = 2.0 * std::f64::consts::PI;

    let mut diagnostics = Vec::new();
    let mut pass = true;

    // Single basis mode: indicator coefficients, no fit possible.
    let indicator = sys.u_by_index((n as i64) / 2).expect("index in range").clone();
    let report = decay_order(&sys, &spectrum, &indicator, K_MAX)?;
    let ok = report.fitted_exponent.is_none()
        && report.sup_products.iter().all(|s| s.is_finite());
    pass &= ok;
    diagnostics.push(decay_json("basis-indicator", &report, ok));

    // Mildly smooth: h^x · x has the classical coefficients of x.
    let mild = GridFunction::from_real_fn(&grid, |x| h.powf(x) * x)?;
    let report = decay_order(&sys, &spectrum, &mild, K_MAX)?;
    let alpha = report.fitted_exponent.unwrap_or(f64::NAN);
    let ok = (alpha - MILD_EXPONENT).abs() <= MILD_SLACK;
    pass &= ok;
    let mild_coeffs = sys.analyze_u(&mild)?;
    let mut mild_json = decay_json("sawtooth-factor", &report, ok);
    mild_json["coefficients"] = coefficients_json(&mild_coeffs);
    diagnostics.push(mild_json);

    // Entire periodic factor: super-polynomial decay.
    let smooth = GridFunction::from_real_fn(&grid, |x| h.powf(x) * (tau * x).sin().exp())?;
    let report = decay_order(&sys, &spectrum, &smooth, K_MAX)?;
    let alpha = report.fitted_exponent.unwrap_or(f64::NAN);
    let ok = alpha > SMOOTH_EXPONENT_FLOOR && report.class_membership.iter().all(|&m| m);
    pass &= ok;
    diagnostics.push(decay_json("entire-periodic-factor", &report, ok));

    // Polynomial growth: the regression reports a negative exponent, which is
    // how distribution-order diagnostics surface.
    let growing = CoefficientSequence::new(
        sys.index_set().clone(),
        spectrum
            .values()
            .iter()
            .enumerate()
            .map(|(k, lam)| {
                let magnitude = (1.0 + lam.norm()).powf(-GROWTH_EXPONENT);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                C64::new(sign * magnitude, 0.0)
            })
            .collect(),
        SideTag::Raw,
    )?;
    let synthesized = sys.synthesize_u(&growing)?;
    let report = decay_order(&sys, &spectrum, &synthesized, K_MAX)?;
    let alpha = report.fitted_exponent.unwrap_or(f64::NAN);
    let ok = (alpha - GROWTH_EXPONENT).abs() <= GROWTH_SLACK;
    pass &= ok;
    diagnostics.push(decay_json("polynomial-growth", &report, ok));

    // Summability of the spectrum itself.
    let summability = spectrum.summability_report();
    let summability_ok = summability.order == Some(2);
    pass &= summability_ok;

    if cfg.emit_csv {
        if let Some(dir) = &cfg.out {
            std::fs::create_dir_all(dir)?;
            write_coefficients_csv(&dir.join("decay-sawtooth-coefficients.csv"), &mild_coeffs)?;
        }
    }

    let metrics = json!({
        "system": system_json(&sys, Some(h)),
        "spectrum": spectrum_json(&spectrum),
        "k-max": K_MAX,
        "diagnostics": diagnostics,
        "summability": {
            "order": summability.order,
            "relative-increments": summability.relative_increments,
            "expected-order": 2,
            "pass": summability_ok,
        },
    });
    Ok(Report::new("decay", cfg, pass, metrics))
}

fn decay_json(name: &str, report: &biortho::spectral::DecayReport<f64>, pass: bool) -> Value {
    json!({
        "input": name,
        "sup-products": report.sup_products,
        "fitted-exponent": report.fitted_exponent,
        "class-membership": report.class_membership,
        "points-used": report.points_used,
        "pass": pass,
    })
}
