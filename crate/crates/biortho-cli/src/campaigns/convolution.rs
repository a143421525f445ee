//! Convolution-theorem, integral-agreement and Ionkin-relation campaigns.

use biortho::convolution::{conv_u_integral_h, ionkin_hat_check, uniqueness_probe, SmoothFn};
use biortho::hilbert::GridFunction;
use biortho::probe;
use serde_json::{json, Value};

use crate::config::{RunConfig, SystemChoice};
use crate::report::{system_json, write_grid_function_csv, CliError, Report};

use super::{build_grid, build_h_system, build_ionkin_system};

const THEOREM_GATE: f64 = 1e-9;

pub fn conv_theorem(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let pairs = cfg.trials_or(100);
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;

    let systems: Vec<(Option<f64>, biortho::System64)> = match cfg.system {
        SystemChoice::HExponential => {
            let n = cfg.n_or(16);
            cfg.h_sweep(&[0.5, 2.0])
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
        let mut max_coeff = 0.0f64;
        let mut max_comm = 0.0f64;
        let mut max_assoc = 0.0f64;
        let mut max_v_side = 0.0f64;
        for _ in 0..pairs {
            let (_, f) = probe::random_band_limited(&sys, &mut rng)?;
            let (_, g) = probe::random_band_limited(&sys, &mut rng)?;
            max_coeff = max_coeff.max(sys.convolution_theorem_residual(&f, &g)?);
            let fg = sys.conv_u(&f, &g)?;
            let gf = sys.conv_u(&g, &f)?;
            max_comm = max_comm.max((&fg - &gf).h_norm());

            // V side of the theorem.
            let conv_v = sys.conv_v(&f, &g)?;
            let lhs = sys.analyze_v(&conv_v)?;
            let rhs = sys.analyze_v(&f)?.pointwise_mul(&sys.analyze_v(&g)?)?;
            max_v_side = max_v_side.max(lhs.max_abs_diff(&rhs)?);
        }
        // Associativity on a smaller batch: each check costs three convolutions.
        let mut rng = probe::seeded_rng(cfg.seed ^ 0x5eed);
        for _ in 0..(pairs / 4).max(5) {
            let (_, f) = probe::random_band_limited(&sys, &mut rng)?;
            let (_, g) = probe::random_band_limited(&sys, &mut rng)?;
            let (_, w) = probe::random_band_limited(&sys, &mut rng)?;
            let left = sys.conv_u(&sys.conv_u(&f, &g)?, &w)?;
            let right = sys.conv_u(&f, &sys.conv_u(&g, &w)?)?;
            max_assoc = max_assoc.max((&left - &right).h_norm());
        }
        // Uniqueness clause: the convolution itself passes the randomized
        // probe and the pointwise product is refuted with a witness.
        let self_probe = uniqueness_probe(&sys, |f, g| sys.conv_u(f, g), 5, cfg.seed, 1e-9)?;
        let product_probe = uniqueness_probe(
            &sys,
            |f, g| {
                let values =
                    f.values().iter().zip(g.values()).map(|(&a, &b)| a * b).collect();
                GridFunction::new(f.grid().clone(), values)
            },
            5,
            cfg.seed,
            1e-6,
        )?;
        let uniqueness_ok = self_probe.consistent && !product_probe.consistent;

        let ok = max_coeff < THEOREM_GATE
            && max_comm < THEOREM_GATE
            && max_assoc < THEOREM_GATE
            && max_v_side < THEOREM_GATE
            && uniqueness_ok;
        pass &= ok;
        if !ok {
            witnesses.push(json!({"h": h, "max-coefficient-residual": max_coeff}));
        }
        cases.push(json!({
            "system": system_json(&sys, h),
            "pairs": pairs,
            "gate": THEOREM_GATE,
            "max-coefficient-residual": max_coeff,
            "max-commutativity-residual": max_comm,
            "max-associativity-residual": max_assoc,
            "max-v-side-residual": max_v_side,
            "uniqueness": {
                "self-probe-consistent": self_probe.consistent,
                "self-probe-max-deviation": self_probe.max_coefficient_deviation,
                "pointwise-product-refuted": !product_probe.consistent,
                "pointwise-product-witness-trial":
                    product_probe.witness.map(|w| w.trial),
                "pass": uniqueness_ok,
            },
            "pass": ok,
        }));
    }

    Ok(Report::with_witnesses(
        "conv-theorem",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}

const AGREE_GATE: f64 = 1e-6;
const AGREE_SWEEP: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

pub fn conv_agree(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let n = cfg.n_or(16);
    let pairs = cfg.trials_or(50);
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;
    let mut worst: Option<(f64, GridFunction<f64>, GridFunction<f64>)> = None;

    for h in cfg.h_sweep(&AGREE_SWEEP) {
        let sys = build_h_system(cfg, &grid, h, n)?;
        let mut rng = probe::seeded_rng(cfg.seed);
        let mut max_dev = 0.0f64;
        for trial in 0..pairs {
            let (fa, f) = probe::random_band_limited(&sys, &mut rng)?;
            let (ga, g) = probe::random_band_limited(&sys, &mut rng)?;
            let spectral = sys.conv_u(&f, &g)?;
            let integral = conv_u_integral_h(
                h,
                &SmoothFn::band_limited_u(&sys, &fa)?,
                &SmoothFn::band_limited_u(&sys, &ga)?,
            )?;
            let dev = (&spectral - &integral).h_norm();
            if dev > max_dev {
                max_dev = dev;
                worst = Some((h, spectral.clone(), integral.clone()));
            }
            if dev >= AGREE_GATE {
                witnesses.push(json!({"h": h, "trial": trial, "deviation": dev}));
            }
        }
        let ok = max_dev < AGREE_GATE;
        pass &= ok;
        cases.push(json!({
            "h": h,
            "n": n,
            "pairs": pairs,
            "gate": AGREE_GATE,
            "max-h-norm-deviation": max_dev,
            "pass": ok,
        }));
    }

    if cfg.emit_csv {
        if let (Some(dir), Some((_, spectral, integral))) = (&cfg.out, &worst) {
            std::fs::create_dir_all(dir)?;
            write_grid_function_csv(&dir.join("conv-agree-spectral.csv"), spectral)?;
            write_grid_function_csv(&dir.join("conv-agree-integral.csv"), integral)?;
        }
    }

    Ok(Report::with_witnesses(
        "conv-agree",
        cfg,
        pass,
        json!({"cases": cases}),
        Value::Array(witnesses),
    ))
}

/// Gate on the coefficient relations in their commonly printed unit-scale
/// form. The five-integral formula does not satisfy these (see the report's
/// finding fields); the gate is asserted as stated and is expected to fail.
const HATS_PRINTED_GATE: f64 = 1e-8;
/// Gate on the rescaled relation family the formula does satisfy.
const HATS_SCALED_GATE: f64 = 1e-8;

pub fn ionkin_hats(cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = build_grid(cfg)?;
    let n = cfg.n_or(8);
    let sys = build_ionkin_system(cfg, &grid, n)?;
    let tau = 2.0 * std::f64::consts::PI;

    let mut inputs: Vec<(String, GridFunction<f64>, GridFunction<f64>)> = vec![
        (
            "(x, x)".into(),
            GridFunction::from_real_fn(&grid, |x| x)?,
            GridFunction::from_real_fn(&grid, |x| x)?,
        ),
        (
            "(x, sin)".into(),
            GridFunction::from_real_fn(&grid, |x| x)?,
            GridFunction::from_real_fn(&grid, |x| (tau * x).sin())?,
        ),
        (
            "(x cos, x cos)".into(),
            GridFunction::from_real_fn(&grid, |x| x * (tau * x).cos())?,
            GridFunction::from_real_fn(&grid, |x| x * (tau * x).cos())?,
        ),
        (
            "(sin, x cos)".into(),
            GridFunction::from_real_fn(&grid, |x| (tau * x).sin())?,
            GridFunction::from_real_fn(&grid, |x| x * (tau * x).cos())?,
        ),
        (
            "(mixture-1, mixture-2)".into(),
            GridFunction::from_real_fn(&grid, |x| {
                0.7 * x + 0.3 * (tau * x).sin() - 1.1 * x * (tau * x).cos()
                    + 0.2 * x * (3.0 * tau * x).cos()
            })?,
            GridFunction::from_real_fn(&grid, |x| {
                -0.2 * x + 1.3 * (2.0 * tau * x).sin() + 0.8 * x * (tau * x).cos()
            })?,
        ),
    ];
    let mut rng = probe::seeded_rng(cfg.seed);
    for k in 0..2 {
        let (_, f) = probe::random_band_limited(&sys, &mut rng)?;
        let (_, g) = probe::random_band_limited(&sys, &mut rng)?;
        // The Ionkin families are real; random spans are complex, which the
        // relations cover just as well.
        inputs.push((format!("(random-{k}a, random-{k}b)"), f, g));
    }

    let mut per_pair = Vec::new();
    let mut max_zero = 0.0f64;
    let mut max_even = 0.0f64;
    let mut max_scaled = 0.0f64;
    let mut odd_even_mid = 0.0f64;
    let mut odd_odd_mid = 0.0f64;
    let mut odd_no_mid = 0.0f64;
    let mut zero_ratios = Vec::new();

    for (name, f, g) in &inputs {
        let report =
            ionkin_hat_check(&sys, &SmoothFn::from_samples(f), &SmoothFn::from_samples(g))?;
        max_zero = max_zero.max(report.index_zero_residual);
        max_even = max_even.max(report.max_even_residual);
        max_scaled = max_scaled.max(report.scaled_relations_residual);
        odd_even_mid = odd_even_mid.max(report.odd_with_even_middle);
        odd_odd_mid = odd_odd_mid.max(report.odd_with_odd_middle);
        odd_no_mid = odd_no_mid.max(report.odd_without_middle);
        if let Some(ratio) = report.index_zero_ratio {
            zero_ratios.push(json!({"pair": name, "re": ratio.re, "im": ratio.im}));
        }
        per_pair.push(json!({
            "pair": name,
            "index-zero-residual": report.index_zero_residual,
            "max-even-residual": report.max_even_residual,
            "odd-with-even-middle": report.odd_with_even_middle,
            "odd-with-odd-middle": report.odd_with_odd_middle,
            "odd-without-middle": report.odd_without_middle,
            "scaled-relations-residual": report.scaled_relations_residual,
        }));
    }

    let printed_pass = max_zero < HATS_PRINTED_GATE && max_even < HATS_PRINTED_GATE;
    let scaled_pass = max_scaled < HATS_SCALED_GATE;
    let odd_variants = [
        ("even-even middle term", odd_even_mid),
        ("odd-odd middle term", odd_odd_mid),
        ("no middle term", odd_no_mid),
    ];
    let odd_finding = match odd_variants
        .iter()
        .find(|(_, residual)| *residual < HATS_PRINTED_GATE)
    {
        Some((name, _)) => format!("odd relation matches the {name} variant at unit scale"),
        None => {
            let best = odd_variants
                .iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("three variants");
            format!(
                "no odd variant matches at unit scale (best: {} with residual {:.3e}); \
                 at quarter scale the no-middle-term variant holds",
                best.0, best.1
            )
        }
    };

    let finding = if scaled_pass && !printed_pass {
        "the five-integral convolution satisfies w(0) = 1/2 f(0)g(0), \
         w(2k) = 1/4 f(2k)g(2k), w(2k-1) = 1/4 (f(2k-1)g(2k) + f(2k)g(2k-1)); \
         equivalently the unit-scale product relations hold for transforms \
         against the unnormalized duals (1, (1-x)sin(2pi k x), cos(2pi k x))"
    } else if printed_pass {
        "the unit-scale product relations hold as printed"
    } else {
        "neither the unit-scale nor the rescaled relations hold"
    };

    let metrics = json!({
        "system": system_json(&sys, None),
        "printed-relations": {
            "gate": HATS_PRINTED_GATE,
            "max-index-zero-residual": max_zero,
            "max-even-residual": max_even,
            "pass": printed_pass,
        },
        "scaled-relations": {
            "gate": HATS_SCALED_GATE,
            "max-residual": max_scaled,
            "pass": scaled_pass,
        },
        "odd-variants": {
            "with-even-middle": odd_even_mid,
            "with-odd-middle": odd_odd_mid,
            "without-middle": odd_no_mid,
            "finding": odd_finding,
        },
        "index-zero-ratios": zero_ratios,
        "finding": finding,
        "pairs": per_pair,
    });

    // The campaign's pass gate is the relation set in its printed unit-scale
    // form; the verified rescaled law is reported alongside.
    Ok(Report::new("ionkin-hats", cfg, printed_pass, metrics))
}
