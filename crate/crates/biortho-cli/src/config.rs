//! Run configuration: JSON file plus command-line overrides.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Which built-in system a campaign runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SystemChoice {
    #[default]
    HExponential,
    Ionkin,
}

impl SystemChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "h-exponential" | "h-exp" | "h" => Ok(SystemChoice::HExponential),
            "ionkin" => Ok(SystemChoice::Ionkin),
            other => Err(format!(
                "unknown system {other:?}; expected \"h-exponential\" or \"ionkin\""
            )),
        }
    }
}

/// Weight choice for the sequence-space norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum WeightChoice {
    #[default]
    Intersection,
    Sup,
}

impl WeightChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "intersection" => Ok(WeightChoice::Intersection),
            "sup" => Ok(WeightChoice::Sup),
            other => Err(format!(
                "unknown weight norm {other:?}; expected \"intersection\" or \"sup\""
            )),
        }
    }

    pub fn to_core(self) -> biortho::lp::WeightNorm {
        match self {
            WeightChoice::Intersection => biortho::lp::WeightNorm::Intersection,
            WeightChoice::Sup => biortho::lp::WeightNorm::Sup,
        }
    }
}

/// Full campaign configuration.
///
/// Optional fields (`h`, `n`, `trials`) fall back to per-campaign defaults,
/// which for sweep campaigns means the pinned sweep over several `h` values
/// rather than a single one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemChoice,
    pub h: Option<f64>,
    pub n: Option<usize>,
    pub panels: usize,
    pub points: usize,
    pub tol_biortho: f64,
    pub eps_spec: f64,
    pub trials: Option<usize>,
    pub seed: u64,
    pub weight_norm: WeightChoice,
    pub out: Option<PathBuf>,
    pub emit_csv: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            system: SystemChoice::default(),
            h: None,
            n: None,
            panels: 64,
            points: 8,
            tol_biortho: 1e-9,
            eps_spec: 1e-8,
            trials: None,
            seed: 7001,
            weight_norm: WeightChoice::default(),
            out: None,
            emit_csv: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.panels == 0 || self.points == 0 {
            return Err("panels and points must be positive".into());
        }
        if self.tol_biortho.is_nan() || self.tol_biortho <= 0.0 {
            return Err(format!("tol-biortho must be positive, got {}", self.tol_biortho));
        }
        if self.eps_spec.is_nan() || self.eps_spec <= 0.0 {
            return Err(format!("eps-spec must be positive, got {}", self.eps_spec));
        }
        if let Some(h) = self.h {
            if !h.is_finite() || h <= 0.0 {
                return Err(format!("h must be positive and finite, got {h}"));
            }
        }
        if self.trials == Some(0) {
            return Err("trials must be at least 1".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The `h` sweep a campaign runs: the configured value if given, else the
    /// supplied default sweep.
    pub fn h_sweep(&self, default: &[f64]) -> Vec<f64> {
        match self.h {
            Some(h) => vec![h],
            None => default.to_vec(),
        }
    }

    pub fn n_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}
