use super::{
    builtin_catalog, select_metrics, ExplanationTrace, Heuristic, HeuristicConfig, HeuristicError,
    Recommendation, Requirements, TransitionNote, Verdict,
};
use crate::profiler::{classify_problem, DatasetProfile, ProblemType};

/// A leaf path of the flowchart: each model with the model it is the
/// fallback for.
struct Branch {
    rule_id: &'static str,
    path: &'static [(&'static str, Option<&'static str>)],
}

const CLASSIFICATION_SMALL: Branch = Branch {
    rule_id: "cheatsheet_classification_small",
    path: &[
        ("LinearSVC", None),
        ("KNeighborsClassifier", Some("LinearSVC")),
        ("SVC", Some("KNeighborsClassifier")),
        ("EnsembleClassifiers", Some("KNeighborsClassifier")),
    ],
};

const CLASSIFICATION_LARGE: Branch = Branch {
    rule_id: "cheatsheet_classification_large",
    path: &[
        ("SGDClassifier", None),
        ("KernelApproximation", Some("SGDClassifier")),
    ],
};

const REGRESSION_SMALL: Branch = Branch {
    rule_id: "cheatsheet_regression_small",
    path: &[
        ("Ridge", None),
        ("SVR_linear", None),
        ("SVR_rbf", Some("SVR_linear")),
        ("EnsembleRegressors", Some("SVR_linear")),
    ],
};

const REGRESSION_SPARSE: Branch = Branch {
    rule_id: "cheatsheet_regression_sparse",
    path: &[("Lasso", None), ("ElasticNet", None)],
};

const REGRESSION_LARGE: Branch = Branch {
    rule_id: "cheatsheet_regression_large",
    path: &[("SGDRegressor", None)],
};

const CLUSTERING_SMALL: Branch = Branch {
    rule_id: "cheatsheet_clustering_small",
    path: &[
        ("KMeans", None),
        ("SpectralClustering", Some("KMeans")),
        ("GaussianMixture", Some("KMeans")),
    ],
};

const CLUSTERING_LARGE: Branch = Branch {
    rule_id: "cheatsheet_clustering_large",
    path: &[("MiniBatchKMeans", None)],
};

const REDUCTION_SMALL: Branch = Branch {
    rule_id: "cheatsheet_reduction_small",
    path: &[
        ("PCA", None),
        ("Isomap", Some("PCA")),
        ("SpectralEmbedding", Some("PCA")),
        ("LocallyLinearEmbedding", Some("Isomap")),
    ],
};

const REDUCTION_LARGE: Branch = Branch {
    rule_id: "cheatsheet_reduction_large",
    path: &[("PCA", None), ("KernelApproximation", Some("PCA"))],
};

/// Walks the estimator-selection flowchart.
///
/// Only the problem type, the row count, the configuration and the
/// `requested_problem` / `few_important_features` requirements are read.
pub fn recommend_cheatsheet(
    profile: &DatasetProfile,
    reqs: &Requirements,
    cfg: &HeuristicConfig,
) -> Result<Recommendation, HeuristicError> {
    cfg.check()?;
    let n = profile.n_rows;
    if n < cfg.min_size_requirement {
        return Err(HeuristicError::GetMoreData {
            n_rows: n,
            min: cfg.min_size_requirement,
        });
    }
    let mut trace = ExplanationTrace::default();
    trace.push(
        "cheatsheet_sample_count",
        Verdict::Fired,
        "dataset",
        format!("{n} samples >= {}", cfg.min_size_requirement),
    );
    let pt = match reqs.requested_problem {
        Some(pt) => pt,
        None => classify_problem(profile)?,
    };
    trace.push("problem_type", Verdict::Fired, "dataset", pt.to_string());

    let split = |boundary: usize| {
        let below = n < boundary;
        let why = if below {
            format!("{n} samples < {boundary}")
        } else {
            format!("{n} samples >= {boundary}")
        };
        (below, why)
    };
    let (branch, why) = match pt {
        ProblemType::BinaryClassification | ProblemType::MulticlassClassification => {
            let (below, why) = split(cfg.cheatsheet_100k_boundary);
            let b = if below {
                CLASSIFICATION_SMALL
            } else {
                CLASSIFICATION_LARGE
            };
            (b, why)
        }
        ProblemType::Regression => {
            let (below, why) = split(cfg.cheatsheet_100k_boundary);
            match (below, reqs.few_important_features) {
                (false, _) => (REGRESSION_LARGE, why),
                (true, true) => (
                    REGRESSION_SPARSE,
                    format!("{why}; few features should be important"),
                ),
                (true, false) => (REGRESSION_SMALL, format!("{why}; many features may matter")),
            }
        }
        ProblemType::Clustering => {
            let (below, why) = split(cfg.cheatsheet_10k_boundary);
            let b = if below {
                CLUSTERING_SMALL
            } else {
                CLUSTERING_LARGE
            };
            (b, format!("{why}; number of categories known"))
        }
        ProblemType::DimensionalityReduction => {
            let (below, why) = split(cfg.cheatsheet_10k_boundary);
            let b = if below {
                REDUCTION_SMALL
            } else {
                REDUCTION_LARGE
            };
            (b, why)
        }
    };
    trace.push(branch.rule_id, Verdict::Fired, "dataset", why);

    let mut notes = Vec::new();
    for (i, &(model, after)) in branch.path.iter().enumerate() {
        let note = match after {
            None if i == 0 => format!("Try {model} first."),
            None => format!("Also try {model} at the same node."),
            Some(prev) => format!("If {prev} is not working, try {model}."),
        };
        trace.push(branch.rule_id, Verdict::Fired, model, note.clone());
        trace.push(
            "cheatsheet_path_order",
            Verdict::OrderedBy,
            model,
            format!("rank {}: position along the flowchart path", i + 1),
        );
        notes.push(TransitionNote {
            step: i,
            model: model.to_string(),
            rule_id: branch.rule_id.to_string(),
            note,
            in_plan: true,
        });
    }
    let ranked: Vec<String> = branch.path.iter().map(|(m, _)| m.to_string()).collect();
    for m in builtin_catalog().for_problem(pt) {
        if !ranked.contains(&m.name) {
            trace.push(
                "cheatsheet_off_path",
                Verdict::FilteredOut,
                &m.name,
                format!("not on the {} path", branch.rule_id),
            );
        }
    }

    Ok(Recommendation {
        heuristic: Heuristic::CheatSheet,
        problem_type: pt,
        transition_plan: ranked.clone(),
        ranked,
        metric_set: select_metrics(pt),
        transition_notes: notes,
        trace,
    })
}
