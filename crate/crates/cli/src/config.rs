//! Parameter files: JSON documents naming a class, exact `α`, `β`, `σ` and
//! optional quadrature settings.

use std::path::Path;

use meixner::combinat::GaussRational;
use meixner::measures::QuadConfig;
use meixner::sheffer::{Class, MeixnerParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable holding the default parameter file path.
pub const PARAMS_ENV: &str = "MEIXNER_PARAMS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSection {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub class: String,
    /// `[re, im]` as `"p/q"` strings.
    pub alpha: [String; 2],
    pub beta: [String; 2],
    pub sigma: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad: Option<QuadSection>,
}

/// A real rational literal `p` or `p/q` with `q > 0`.
fn rational(field: &str, s: &str) -> Result<GaussRational, CliError> {
    let bad = |why: &str| CliError::Input(format!("{field}: {why}: {s:?}"));
    let t = s.trim();
    let ok_shape = match t.split_once('/') {
        Some((p, q)) => {
            let p = p.strip_prefix('-').unwrap_or(p);
            !p.is_empty()
                && p.chars().all(|c| c.is_ascii_digit())
                && !q.is_empty()
                && q.chars().all(|c| c.is_ascii_digit())
                && !q.trim_start_matches('0').is_empty()
        }
        None => {
            let p = t.strip_prefix('-').unwrap_or(t);
            !p.is_empty() && p.chars().all(|c| c.is_ascii_digit())
        }
    };
    if !ok_shape {
        return Err(bad("expected an exact rational \"p/q\" with q > 0"));
    }
    t.parse().map_err(|_| bad("not a rational"))
}

fn complex(field: &str, pair: &[String; 2]) -> Result<GaussRational, CliError> {
    let re = rational(&format!("{field}[0]"), &pair[0])?;
    let im = rational(&format!("{field}[1]"), &pair[1])?;
    Ok(&re + &(&GaussRational::i() * &im))
}

fn pair(z: &GaussRational) -> [String; 2] {
    [z.re().to_string(), z.im().to_string()]
}

impl ParamFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("parameter file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_params(params: &MeixnerParams) -> Self {
        Self {
            class: params.class().to_string(),
            alpha: pair(params.alpha()),
            beta: pair(params.beta()),
            sigma: params.sigma().re().to_string(),
            quad: None,
        }
    }

    pub fn params(&self) -> Result<MeixnerParams, CliError> {
        let class: Class = self.class.parse().map_err(|e| CliError::Input(format!("class: {e}")))?;
        let alpha = complex("alpha", &self.alpha)?;
        let beta = complex("beta", &self.beta)?;
        let sigma = rational("sigma", &self.sigma)?;
        MeixnerParams::new(alpha, beta, sigma, class).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn quad(&self) -> Result<QuadConfig, CliError> {
        let cfg = match &self.quad {
            None => QuadConfig::default(),
            Some(q) => QuadConfig { rel_tol: q.rel_tol, abs_tol: q.abs_tol, max_nodes: q.max_nodes },
        };
        cfg.validate().map_err(|e| CliError::Input(format!("quad: {e}")))?;
        Ok(cfg)
    }
}

/// Named reference parameter sets.
pub fn preset(name: &str) -> Result<MeixnerParams, CliError> {
    let class: Class = name.parse().map_err(|e| CliError::Input(format!("preset: {e}")))?;
    Ok(MeixnerParams::reference(class))
}
