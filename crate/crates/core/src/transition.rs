//! Iterative model selection: observe a metric report for the current
//! model, then stop, advance to the next planned model, or escalate to a
//! more overfitting-robust one.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heuristics::{builtin_catalog, HeuristicError, Metric, Recommendation};

/// Evaluation results for one trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub model: String,
    /// Best hyperparameters; values are strings or numbers.
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    /// Test-set metrics keyed by metric id.
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cv_mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cv_scores: Option<Vec<f64>>,
    pub test_score: f64,
}

impl MetricReport {
    pub fn check(&self) -> Result<(), TransitionError> {
        let bad = |msg: String| Err(TransitionError::InvalidReport(msg));
        if let Some(k) = self.metrics.keys().find(|k| Metric::from_id(k).is_none()) {
            return bad(format!("unknown metric `{k}`"));
        }
        if let Some((k, v)) = self.metrics.iter().find(|(_, v)| !v.is_finite()) {
            return bad(format!("metric `{k}` is not finite ({v})"));
        }
        if let Some(cv) = self.cv_mean.filter(|v| !v.is_finite()) {
            return bad(format!("cv_mean is not finite ({cv})"));
        }
        if !self.test_score.is_finite() {
            return bad(format!("test_score is not finite ({})", self.test_score));
        }
        match &self.cv_scores {
            Some(s) if s.is_empty() => bad("cv_scores is empty".into()),
            Some(s) if s.iter().any(|v| !v.is_finite()) => {
                bad("cv_scores has a non-finite value".into())
            }
            _ => Ok(()),
        }
    }
}

/// Which number decides whether a model performs well enough.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreSource {
    /// The primary metric from the report's test-set metrics.
    #[default]
    TestMetric,
    /// The report's cross-validation mean.
    CvMean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransitionPolicy {
    /// Satisfaction threshold per primary metric id. A primary metric
    /// without a threshold is never satisfied.
    pub satisfaction: BTreeMap<String, f64>,
    /// Population standard deviation of fold scores above which a model
    /// counts as overfitting.
    pub overfit_cv_std: f64,
    /// `cv_mean - test_score` above which a model counts as overfitting.
    pub overfit_gap: f64,
    /// Observations before the session stops; `None` means the plan length.
    pub max_steps: Option<usize>,
    pub score_source: ScoreSource,
}

impl Default for TransitionPolicy {
    fn default() -> Self {
        TransitionPolicy {
            satisfaction: [("roc_auc", 0.85), ("accuracy", 0.80), ("r2", 0.60)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            overfit_cv_std: 0.05,
            overfit_gap: 0.10,
            max_steps: None,
            score_source: ScoreSource::TestMetric,
        }
    }
}

impl TransitionPolicy {
    pub fn with_threshold(mut self, metric: Metric, value: f64) -> Self {
        self.satisfaction.insert(metric.id().to_string(), value);
        self
    }

    pub fn check(&self) -> Result<(), TransitionError> {
        let bad = |msg: String| Err(TransitionError::InvalidPolicy(msg));
        for (id, &t) in &self.satisfaction {
            let Some(metric) = Metric::from_id(id) else {
                return bad(format!("unknown metric `{id}`"));
            };
            if !t.is_finite() || !metric.valid_range().contains(&t) {
                return bad(format!("threshold {t} is outside the range of `{id}`"));
            }
        }
        if !(self.overfit_cv_std > 0.0 && self.overfit_cv_std.is_finite()) {
            return bad("overfit_cv_std must be > 0".into());
        }
        if !(self.overfit_gap > 0.0 && self.overfit_gap.is_finite()) {
            return bad("overfit_gap must be > 0".into());
        }
        if self.max_steps == Some(0) {
            return bad("max_steps must be > 0".into());
        }
        Ok(())
    }

    fn is_satisfied(&self, metric: Metric, value: f64) -> Option<f64> {
        let t = *self.satisfaction.get(metric.id())?;
        let ok = if metric.higher_is_better() {
            value >= t
        } else {
            value <= t
        };
        ok.then_some(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Satisfied,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdvanceReason {
    Underperformed,
    /// Overfitting was detected but no later model is more robust.
    OverfittingNoRobustAlternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EscalateReason {
    OverfittingDetected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestModel {
    pub model: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransitionDecision {
    Stop {
        reason: StopReason,
        best_so_far: Option<BestModel>,
        rationale: String,
    },
    Advance {
        next: String,
        reason: AdvanceReason,
        rationale: String,
    },
    Escalate {
        next: String,
        reason: EscalateReason,
        rationale: String,
    },
}

impl TransitionDecision {
    pub fn rationale(&self) -> &str {
        match self {
            TransitionDecision::Stop { rationale, .. }
            | TransitionDecision::Advance { rationale, .. }
            | TransitionDecision::Escalate { rationale, .. } => rationale,
        }
    }

    pub fn is_stop(&self) -> bool {
        matches!(self, TransitionDecision::Stop { .. })
    }
}

/// `Stop(Satisfied)`, `Advance(RandomForestClassifier)`, ...
impl fmt::Display for TransitionDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionDecision::Stop { reason, .. } => write!(f, "Stop({reason:?})"),
            TransitionDecision::Advance { next, .. } => write!(f, "Advance({next})"),
            TransitionDecision::Escalate { next, .. } => write!(f, "Escalate({next})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub report: MetricReport,
    pub decision: TransitionDecision,
}

/// A selection session. Each observation returns a new state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionState {
    pub recommendation: Recommendation,
    pub policy: TransitionPolicy,
    /// Index into the recommendation's transition plan.
    pub cursor: usize,
    pub history: Vec<HistoryEntry>,
    pub best_so_far: Option<BestModel>,
    pub finished: bool,
}

#[derive(Debug, Error)]
pub enum TransitionError {
    #[error(transparent)]
    Recommendation(#[from] HeuristicError),
    #[error("report is for `{found}` but the session expects `{expected}`")]
    WrongModel { expected: String, found: String },
    #[error("session already stopped")]
    Finished,
    #[error("report for `{model}` has no `{metric}` value")]
    MissingMetric { model: String, metric: String },
    #[error("invalid metric report: {0}")]
    InvalidReport(String),
    #[error("invalid transition policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid session state: {0}")]
    InvalidState(String),
}

pub fn init_session(
    recommendation: Recommendation,
    policy: TransitionPolicy,
) -> Result<SelectionState, TransitionError> {
    recommendation.check()?;
    policy.check()?;
    Ok(SelectionState {
        recommendation,
        policy,
        cursor: 0,
        history: Vec::new(),
        best_so_far: None,
        finished: false,
    })
}

/// True when fold scores spread more than `overfit_cv_std` (population
/// standard deviation) or the CV mean beats the test score by more than
/// `overfit_gap`.
pub fn detect_overfitting(report: &MetricReport, policy: &TransitionPolicy) -> bool {
    overfitting_signal(report, policy).is_some()
}

fn overfitting_signal(report: &MetricReport, policy: &TransitionPolicy) -> Option<String> {
    if let Some(scores) = report.cv_scores.as_deref().filter(|s| !s.is_empty()) {
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let std = (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n).sqrt();
        if std > policy.overfit_cv_std {
            return Some(format!(
                "cv std {std:.4} > overfit_cv_std {}",
                policy.overfit_cv_std
            ));
        }
    }
    let cv = report.cv_mean?;
    let gap = cv - report.test_score;
    (gap > policy.overfit_gap).then(|| {
        format!(
            "cv_mean - test_score = {gap:.4} > overfit_gap {}",
            policy.overfit_gap
        )
    })
}

impl SelectionState {
    pub fn plan(&self) -> &[String] {
        &self.recommendation.transition_plan
    }

    /// The model the next report must be for, unless the session stopped.
    pub fn current(&self) -> Option<&str> {
        (!self.finished)
            .then(|| self.plan().get(self.cursor).map(String::as_str))
            .flatten()
    }

    pub fn primary(&self) -> Metric {
        self.recommendation.metric_set.primary
    }

    fn max_steps(&self) -> usize {
        self.policy.max_steps.unwrap_or(self.plan().len())
    }

    /// Checks the invariants of a state read from disk.
    pub fn check(&self) -> Result<(), TransitionError> {
        self.recommendation.check()?;
        self.policy.check()?;
        let bad = |msg: &str| Err(TransitionError::InvalidState(msg.to_string()));
        if self.cursor >= self.plan().len() {
            return bad("cursor is past the end of the plan");
        }
        let stops = self.history.iter().filter(|h| h.decision.is_stop()).count();
        let last_stops = self.history.last().is_some_and(|h| h.decision.is_stop());
        if stops > 1 || (stops == 1 && !last_stops) || last_stops != self.finished {
            return bad("history and finished flag disagree");
        }
        Ok(())
    }

    /// Feeds the report for the current model and decides what to do next.
    pub fn observe(
        &self,
        report: MetricReport,
    ) -> Result<(SelectionState, TransitionDecision), TransitionError> {
        let Some(current) = self.current() else {
            return Err(TransitionError::Finished);
        };
        if report.model != current {
            return Err(TransitionError::WrongModel {
                expected: current.to_string(),
                found: report.model,
            });
        }
        report.check()?;
        let primary = self.primary();
        let value = match self.policy.score_source {
            ScoreSource::TestMetric => report.metrics.get(primary.id()).copied(),
            ScoreSource::CvMean => report.cv_mean,
        }
        .ok_or_else(|| TransitionError::MissingMetric {
            model: report.model.clone(),
            metric: match self.policy.score_source {
                ScoreSource::TestMetric => primary.id().to_string(),
                ScoreSource::CvMean => "cv_mean".to_string(),
            },
        })?;

        let mut next = self.clone();
        let improves = match &self.best_so_far {
            None => true,
            Some(b) if primary.higher_is_better() => value > b.value,
            Some(b) => value < b.value,
        };
        if improves {
            next.best_so_far = Some(BestModel {
                model: report.model.clone(),
                value,
            });
        }

        let overfit = overfitting_signal(&report, &self.policy);
        let score = format!("{primary} {value:.4}");
        let observed = self.history.len() + 1;
        let last = self.cursor + 1 >= self.plan().len() || observed >= self.max_steps();

        let decision = match (self.policy.is_satisfied(primary, value), &overfit) {
            (Some(t), None) => TransitionDecision::Stop {
                reason: StopReason::Satisfied,
                best_so_far: next.best_so_far.clone(),
                rationale: format!("[satisfaction] {score} meets threshold {t}"),
            },
            _ if last => TransitionDecision::Stop {
                reason: StopReason::Exhausted,
                best_so_far: next.best_so_far.clone(),
                rationale: match &overfit {
                    Some(why) => format!(
                        "[exhausted] {current} overfits ({why}) and no planned model remains"
                    ),
                    None => {
                        format!("[exhausted] {score} below target and no planned model remains")
                    }
                },
            },
            (_, Some(why)) => {
                let robustness = |name: &str| {
                    builtin_catalog()
                        .get(name)
                        .map_or(0, |m| m.overfitting_robustness)
                };
                let here = robustness(current);
                let target = (self.cursor + 1..self.plan().len())
                    .find(|&i| robustness(&self.plan()[i]) > here);
                match target {
                    Some(i) => {
                        next.cursor = i;
                        TransitionDecision::Escalate {
                            next: self.plan()[i].clone(),
                            reason: EscalateReason::OverfittingDetected,
                            rationale: format!(
                                "[overfitting] {current} overfits ({why}); escalate to a model with higher overfitting robustness (regularization or tuning of {current} also applies)"
                            ),
                        }
                    }
                    None => {
                        next.cursor = self.cursor + 1;
                        TransitionDecision::Advance {
                            next: self.plan()[next.cursor].clone(),
                            reason: AdvanceReason::OverfittingNoRobustAlternative,
                            rationale: format!(
                                "[overfitting] {current} overfits ({why}); no later model is more robust, advance in plan order"
                            ),
                        }
                    }
                }
            }
            (None, None) => {
                next.cursor = self.cursor + 1;
                let why = match self.policy.satisfaction.get(primary.id()) {
                    Some(t) => format!("{score} misses threshold {t}"),
                    None => format!("no satisfaction threshold for {primary}"),
                };
                TransitionDecision::Advance {
                    next: self.plan()[next.cursor].clone(),
                    reason: AdvanceReason::Underperformed,
                    rationale: format!("[underperformance] {why}; move to the next planned model"),
                }
            }
        };
        next.finished = decision.is_stop();
        next.history.push(HistoryEntry {
            report,
            decision: decision.clone(),
        });
        Ok((next, decision))
    }
}

/// Runs `reports` through a fresh session, stopping at the first error.
pub fn replay(
    recommendation: Recommendation,
    policy: TransitionPolicy,
    reports: impl IntoIterator<Item = MetricReport>,
) -> Result<(SelectionState, Vec<TransitionDecision>), TransitionError> {
    let mut state = init_session(recommendation, policy)?;
    let mut decisions = Vec::new();
    for report in reports {
        let (s, d) = state.observe(report)?;
        state = s;
        decisions.push(d);
    }
    Ok((state, decisions))
}
