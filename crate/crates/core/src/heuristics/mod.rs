//! Model-selection heuristics.
//!
//! Two engines turn a [`DatasetProfile`] into a ranked [`Recommendation`]:
//!
//! * [`recommend_gpt`]: filters the catalog by problem type and inclusion
//!   rules, then orders by complexity and interpretability.
//! * [`recommend_cheatsheet`]: walks the estimator-selection flowchart by
//!   problem type and sample count.
//!
//! Both record every decision in an [`ExplanationTrace`].

mod catalog;
mod cheatsheet;
mod compare;
mod gpt;
mod metrics;
mod prompt;
mod trace;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profiler::{classify_problem, DatasetProfile, ProblemType, ProfileError};

pub use catalog::{builtin_catalog, ModelCandidate, ModelCatalog, ModelFamily, ALGORITHM_OPTIONS};
pub use cheatsheet::recommend_cheatsheet;
pub use compare::{canonical_names, compare, Comparison};
pub use gpt::{recommend_gpt, recommend_gpt_with};
pub use metrics::{select_metrics, Metric, MetricSet};
pub use prompt::{generate_prompt, PROMPT_INSTRUCTIONS};
pub use trace::{explain, Explanation, ExplanationTrace, TraceEntry, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    Gpt,
    #[serde(rename = "cheatsheet")]
    CheatSheet,
}

impl Heuristic {
    pub fn parse(name: &str) -> Option<Heuristic> {
        match name.to_ascii_lowercase().as_str() {
            "gpt" => Some(Heuristic::Gpt),
            "cheatsheet" | "cheat-sheet" => Some(Heuristic::CheatSheet),
            _ => None,
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::Gpt => "gpt",
            Heuristic::CheatSheet => "cheatsheet",
        })
    }
}

/// What the user knows or wants beyond the data itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Requirements {
    pub nonlinear_suspected: bool,
    pub limited_resources: bool,
    pub interpretability_required: bool,
    pub multicollinearity_suspected: bool,
    /// Selects the sparse-regression branch of the cheat-sheet.
    pub few_important_features: bool,
    /// Overrides the problem type inferred from the target.
    pub requested_problem: Option<ProblemType>,
    /// Recorded in the trace; no rule reads them.
    pub ethical_flags: BTreeSet<String>,
    pub objective: String,
}

/// Thresholds the rules compare against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeuristicConfig {
    pub min_size_requirement: usize,
    /// `None` means unlimited.
    pub max_features_allowed: Option<usize>,
    pub large_dataset_threshold: usize,
    pub svm_row_limit: usize,
    /// Cheat-sheet sample-count split for classification and regression
    /// (branch taken when `n_rows` is strictly below it).
    pub cheatsheet_100k_boundary: usize,
    /// Cheat-sheet sample-count split for clustering and dimensionality
    /// reduction.
    pub cheatsheet_10k_boundary: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            min_size_requirement: 50,
            max_features_allowed: None,
            large_dataset_threshold: 50_000,
            svm_row_limit: 10_000,
            cheatsheet_100k_boundary: 100_000,
            cheatsheet_10k_boundary: 10_000,
        }
    }
}

impl HeuristicConfig {
    pub fn check(&self) -> Result<(), HeuristicError> {
        let fields = [
            ("min_size_requirement", self.min_size_requirement),
            (
                "max_features_allowed",
                self.max_features_allowed.unwrap_or(1),
            ),
            ("large_dataset_threshold", self.large_dataset_threshold),
            ("svm_row_limit", self.svm_row_limit),
            ("cheatsheet_100k_boundary", self.cheatsheet_100k_boundary),
            ("cheatsheet_10k_boundary", self.cheatsheet_10k_boundary),
        ];
        match fields.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(HeuristicError::InvalidConfig(format!("{name} must be > 0"))),
            None => Ok(()),
        }
    }
}

/// One step of the suggested evaluation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionNote {
    pub step: usize,
    pub model: String,
    pub rule_id: String,
    pub note: String,
    /// Whether the step belongs to the default transition plan.
    pub in_plan: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub heuristic: Heuristic,
    pub problem_type: ProblemType,
    pub ranked: Vec<String>,
    pub metric_set: MetricSet,
    /// The ranked models a selection session walks through, in order.
    pub transition_plan: Vec<String>,
    pub transition_notes: Vec<TransitionNote>,
    pub trace: ExplanationTrace,
}

impl Recommendation {
    /// Checks the invariants of a recommendation read from disk.
    pub fn check(&self) -> Result<(), HeuristicError> {
        let bad = |msg: String| Err(HeuristicError::InvalidRecommendation(msg));
        if self.ranked.is_empty() {
            return bad("ranked list is empty".into());
        }
        let mut seen = HashSet::new();
        for name in &self.ranked {
            if !seen.insert(name.as_str()) {
                return bad(format!("`{name}` is ranked twice"));
            }
            match builtin_catalog().get(name) {
                None => return bad(format!("`{name}` is not in the catalog")),
                Some(m) if !m.supports(self.problem_type) => {
                    return bad(format!("`{name}` does not support {}", self.problem_type))
                }
                _ => {}
            }
            if !self.trace.mentions(name) {
                return bad(format!("trace has no entry for `{name}`"));
            }
        }
        if !self.metric_set.metrics.contains(&self.metric_set.primary) {
            return bad("primary metric is not in the metric set".into());
        }
        if self.transition_plan.is_empty() {
            return bad("transition plan is empty".into());
        }
        let mut rest = self.ranked.iter();
        for step in &self.transition_plan {
            if !rest.any(|r| r == step) {
                return bad(format!("plan step `{step}` is not in ranked order"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum HeuristicError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("no candidate survives the filters for {problem_type}: {}", filters.join("; "))]
    EmptyCandidates {
        problem_type: ProblemType,
        filters: Vec<String>,
    },
    #[error("get more data: {n_rows} rows is below the minimum of {min}")]
    GetMoreData { n_rows: usize, min: usize },
    #[error("invalid heuristic configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid recommendation: {0}")]
    InvalidRecommendation(String),
}

fn resolve_problem(
    profile: &DatasetProfile,
    reqs: &Requirements,
    trace: &mut ExplanationTrace,
) -> Result<ProblemType, HeuristicError> {
    let (pt, why) = match reqs.requested_problem {
        Some(pt) => (pt, "requested explicitly".to_string()),
        None => {
            let pt = classify_problem(profile)?;
            let why = match (&profile.target, profile.target_type) {
                (Some(t), Some(ty)) => format!("target `{t}` is {ty}"),
                _ => "no target column".to_string(),
            };
            (pt, why)
        }
    };
    trace.push(
        "problem_type",
        Verdict::Fired,
        "dataset",
        format!("{pt}: {why}"),
    );
    Ok(pt)
}
