use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::profiler::ProblemType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Accuracy,
    Precision,
    Recall,
    F1,
    RocAuc,
    Rmse,
    Mae,
    R2,
    Silhouette,
    DaviesBouldin,
    CalinskiHarabasz,
    ReconstructionError,
    ExplainedVarianceRatio,
}

impl Metric {
    pub const ALL: [Metric; 13] = [
        Metric::Accuracy,
        Metric::Precision,
        Metric::Recall,
        Metric::F1,
        Metric::RocAuc,
        Metric::Rmse,
        Metric::Mae,
        Metric::R2,
        Metric::Silhouette,
        Metric::DaviesBouldin,
        Metric::CalinskiHarabasz,
        Metric::ReconstructionError,
        Metric::ExplainedVarianceRatio,
    ];

    /// Key used in metric reports and policies.
    pub fn id(self) -> &'static str {
        match self {
            Metric::Accuracy => "accuracy",
            Metric::Precision => "precision",
            Metric::Recall => "recall",
            Metric::F1 => "f1",
            Metric::RocAuc => "roc_auc",
            Metric::Rmse => "rmse",
            Metric::Mae => "mae",
            Metric::R2 => "r2",
            Metric::Silhouette => "silhouette",
            Metric::DaviesBouldin => "davies_bouldin",
            Metric::CalinskiHarabasz => "calinski_harabasz",
            Metric::ReconstructionError => "reconstruction_error",
            Metric::ExplainedVarianceRatio => "explained_variance_ratio",
        }
    }

    /// Conventional display name.
    pub fn label(self) -> &'static str {
        match self {
            Metric::Accuracy => "Accuracy",
            Metric::Precision => "Precision",
            Metric::Recall => "Recall",
            Metric::F1 => "F1Score",
            Metric::RocAuc => "AUC-ROC",
            Metric::Rmse => "RMSE",
            Metric::Mae => "MAE",
            Metric::R2 => "R²",
            Metric::Silhouette => "SilhouetteScore",
            Metric::DaviesBouldin => "DaviesBouldinIndex",
            Metric::CalinskiHarabasz => "CalinskiHarabaszIndex",
            Metric::ReconstructionError => "ReconstructionError",
            Metric::ExplainedVarianceRatio => "ExplainedVarianceRatio",
        }
    }

    pub fn from_id(id: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.id() == id)
    }

    /// Whether larger values mean a better model.
    pub fn higher_is_better(self) -> bool {
        !matches!(
            self,
            Metric::Rmse | Metric::Mae | Metric::DaviesBouldin | Metric::ReconstructionError
        )
    }

    /// Values a threshold on this metric may take.
    pub fn valid_range(self) -> RangeInclusive<f64> {
        match self {
            Metric::Accuracy
            | Metric::Precision
            | Metric::Recall
            | Metric::F1
            | Metric::RocAuc
            | Metric::ExplainedVarianceRatio => 0.0..=1.0,
            Metric::R2 => f64::NEG_INFINITY..=1.0,
            Metric::Silhouette => -1.0..=1.0,
            Metric::Rmse
            | Metric::Mae
            | Metric::DaviesBouldin
            | Metric::CalinskiHarabasz
            | Metric::ReconstructionError => 0.0..=f64::INFINITY,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSet {
    pub metrics: Vec<Metric>,
    pub primary: Metric,
}

impl MetricSet {
    pub fn labels(&self) -> Vec<&'static str> {
        self.metrics.iter().map(|m| m.label()).collect()
    }
}

/// Evaluation metrics for a problem type, with the one transitions are
/// judged on.
pub fn select_metrics(pt: ProblemType) -> MetricSet {
    use Metric::*;
    let classification = vec![Accuracy, Precision, Recall, F1, RocAuc];
    match pt {
        ProblemType::BinaryClassification => MetricSet {
            metrics: classification,
            primary: RocAuc,
        },
        ProblemType::MulticlassClassification => MetricSet {
            metrics: classification,
            primary: Accuracy,
        },
        ProblemType::Regression => MetricSet {
            metrics: vec![Rmse, Mae, R2],
            primary: R2,
        },
        ProblemType::Clustering => MetricSet {
            metrics: vec![Silhouette, DaviesBouldin, CalinskiHarabasz],
            primary: Silhouette,
        },
        ProblemType::DimensionalityReduction => MetricSet {
            metrics: vec![ReconstructionError, ExplainedVarianceRatio],
            primary: ExplainedVarianceRatio,
        },
    }
}
