//! Machine-readable campaign reports and CSV emission.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use biortho::fourier::CoefficientSequence;
use biortho::hilbert::GridFunction;
use biortho::systems::BiorthogonalSystem;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Campaign failure: either the underlying math errored or I/O failed.
#[derive(Debug)]
pub enum CliError {
    Core(biortho::Error),
    Config(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<biortho::Error> for CliError {
    fn from(e: biortho::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// One campaign's outcome. Serializes with sorted keys, so a fixed config and
/// seed reproduce the document byte for byte apart from `timestamp`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub config: RunConfig,
    /// Seconds since the epoch; the only field allowed to differ between
    /// identical runs.
    pub timestamp: u64,
    pub pass: bool,
    pub metrics: Value,
    pub witnesses: Value,
}

impl Report {
    pub fn new(subcommand: &str, config: &RunConfig, pass: bool, metrics: Value) -> Self {
        Self::with_witnesses(subcommand, config, pass, metrics, Value::Array(vec![]))
    }

    pub fn with_witnesses(
        subcommand: &str,
        config: &RunConfig,
        pass: bool,
        metrics: Value,
        witnesses: Value,
    ) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            config: config.clone(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            pass,
            metrics,
            witnesses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The document with the timestamp blanked, for determinism comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut clone = self.clone();
        clone.timestamp = 0;
        serde_json::to_string_pretty(&clone).expect("report serializes") + "\n"
    }

    pub fn write_to(&self, dir: &Path) -> Result<PathBuf, CliError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.subcommand));
        fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

/// JSON echo of a system: identity, parameters, grid spec.
pub fn system_json(sys: &BiorthogonalSystem<f64>, h: Option<f64>) -> Value {
    let grid = sys.grid();
    json!({
        "system-id": sys.system_id(),
        "h": h,
        "n": (sys.len() - 1) / 2,
        "size": sys.len(),
        "ordering": sys.index_set().ordering().id(),
        "grid": {
            "rule-id": grid.rule_id(),
            "panels": grid.panels(),
            "points": grid.points_per_panel(),
            "nodes": grid.len(),
        },
        "sup-u-norm": sys.sup_u_norm(),
        "sup-v-norm": sys.sup_v_norm(),
        "gram-residual": sys.gram_residual(),
    })
}

/// Raw sampled family values of a system, for the optional value dump.
pub fn system_values_json(sys: &BiorthogonalSystem<f64>) -> Value {
    let dump = |family: &[GridFunction<f64>]| -> Value {
        Value::Array(
            sys.index_set()
                .indices()
                .iter()
                .zip(family)
                .map(|(&j, f)| {
                    json!({
                        "index": j,
                        "re": f.values().iter().map(|c| c.re).collect::<Vec<_>>(),
                        "im": f.values().iter().map(|c| c.im).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    };
    json!({
        "system-id": sys.system_id(),
        "nodes": sys.grid().nodes(),
        "u": dump(sys.u_family()),
        "v": dump(sys.v_family()),
    })
}

/// Coefficient sequence as `(index, re, im)` triples.
pub fn coefficients_json(coeffs: &CoefficientSequence<f64>) -> Value {
    Value::Array(
        coeffs
            .index_set()
            .indices()
            .iter()
            .zip(coeffs.values())
            .map(|(&j, c)| json!({"index": j, "re": c.re, "im": c.im}))
            .collect(),
    )
}

/// Spectrum echo: `(index, re λ, im λ)` triples.
pub fn spectrum_json(spectrum: &biortho::spectral::Spectrum<f64>) -> Value {
    Value::Array(
        spectrum
            .index_set()
            .indices()
            .iter()
            .zip(spectrum.values())
            .map(|(&j, lam)| json!({"index": j, "re": lam.re, "im": lam.im}))
            .collect(),
    )
}

/// Write a grid function as `x,re,im` CSV with round-trip-safe precision.
pub fn write_grid_function_csv(path: &Path, f: &GridFunction<f64>) -> Result<(), CliError> {
    let mut text = String::from("x,re,im\n");
    for (&x, v) in f.grid().nodes().iter().zip(f.values()) {
        text.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", x, v.re, v.im));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Write a coefficient sequence as `index,re,im` CSV.
pub fn write_coefficients_csv(
    path: &Path,
    coeffs: &CoefficientSequence<f64>,
) -> Result<(), CliError> {
    let mut text = String::from("index,re,im\n");
    for (&j, c) in coeffs.index_set().indices().iter().zip(coeffs.values()) {
        text.push_str(&format!("{},{:.16e},{:.16e}\n", j, c.re, c.im));
    }
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_json_strips_only_the_timestamp() {
        let cfg = RunConfig::default();
        let mut a = Report::new("demo", &cfg, true, json!({"metric": 1.5}));
        let mut b = Report::new("demo", &cfg, true, json!({"metric": 1.5}));
        a.timestamp = 11;
        b.timestamp = 22;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.deterministic_json(), b.deterministic_json());
    }
}
