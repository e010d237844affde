use std::path::{Path, PathBuf};

use modelsel_core::heuristics::HeuristicConfig;
use modelsel_core::transition::TransitionPolicy;
use serde::Deserialize;

use crate::args::{PolicyArgs, ThresholdArgs};
use crate::error::CliError;

pub const CONFIG_ENV: &str = "MODELSEL_CONFIG";

/// Contents of a `--config` file. Both sections are optional.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub heuristics: HeuristicConfig,
    pub transition: TransitionPolicy,
}

impl FileConfig {
    /// Loads `explicit`, else the file named by `$MODELSEL_CONFIG`, else
    /// defaults.
    pub fn load(explicit: Option<&Path>) -> Result<(FileConfig, Option<PathBuf>), CliError> {
        let path = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        };
        let Some(path) = path else {
            return Ok((FileConfig::default(), None));
        };
        let text = crate::read_text(&path)?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| CliError::syntax(&path, e))?
        } else {
            toml::from_str(&text).map_err(|e| CliError::syntax(&path, e))?
        };
        Ok((parsed, Some(path)))
    }
}

pub fn apply_thresholds(mut cfg: HeuristicConfig, t: &ThresholdArgs) -> HeuristicConfig {
    let set = |slot: &mut usize, v: Option<usize>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut cfg.min_size_requirement, t.min_size_requirement);
    set(&mut cfg.large_dataset_threshold, t.large_dataset_threshold);
    set(&mut cfg.svm_row_limit, t.svm_row_limit);
    set(
        &mut cfg.cheatsheet_100k_boundary,
        t.cheatsheet_100k_boundary,
    );
    set(&mut cfg.cheatsheet_10k_boundary, t.cheatsheet_10k_boundary);
    if t.max_features_allowed.is_some() {
        cfg.max_features_allowed = t.max_features_allowed;
    }
    cfg
}

pub fn apply_policy(
    mut policy: TransitionPolicy,
    p: &PolicyArgs,
) -> Result<TransitionPolicy, CliError> {
    for spec in &p.thresholds {
        let (metric, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Domain(format!("threshold `{spec}` is not METRIC=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("threshold `{spec}` has a non-numeric value")))?;
        policy.satisfaction.insert(metric.trim().to_string(), value);
    }
    if let Some(v) = p.overfit_cv_std {
        policy.overfit_cv_std = v;
    }
    if let Some(v) = p.overfit_gap {
        policy.overfit_gap = v;
    }
    if p.max_steps.is_some() {
        policy.max_steps = p.max_steps;
    }
    if p.use_cv_mean {
        policy.score_source = modelsel_core::transition::ScoreSource::CvMean;
    }
    Ok(policy)
}
