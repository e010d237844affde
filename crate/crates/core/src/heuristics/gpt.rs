use std::cmp::Reverse;

use super::{
    builtin_catalog, resolve_problem, select_metrics, ExplanationTrace, Heuristic, HeuristicConfig,
    HeuristicError, ModelCandidate, ModelCatalog, ModelFamily, Recommendation, Requirements,
    TransitionNote, Verdict,
};
use crate::profiler::{DatasetProfile, ProblemType};

pub(crate) mod rule {
    pub const DATASET_SIZE: &str = "dataset_size";
    pub const FEATURE_LIMIT: &str = "feature_limit";
    pub const DATA_QUALITY: &str = "data_quality";
    pub const ETHICAL_FLAGS: &str = "ethical_flags";
    pub const INTERPRETABILITY: &str = "interpretability_required";
    pub const CANDIDATE_POOL: &str = "gpt_candidate_pool";
    pub const DECISION_TREE: &str = "decision_tree_nonlinear";
    pub const NN_LARGE_DATA: &str = "neural_network_large_data";
    pub const NN_RESOURCES: &str = "neural_network_resources";
    pub const SVM_ROWS: &str = "svm_row_limit";
    pub const SVM_RESOURCES: &str = "svm_limited_resources";
    pub const REGULARIZED: &str = "regularized_regression_retained";
    pub const ORDER_SIMPLE_FIRST: &str = "order_simple_first";
    pub const ORDER_COMPLEX_FIRST: &str = "order_complex_regressors_first";
    pub const INITIAL_MODEL: &str = "initial_model";
    pub const ADVANCE: &str = "advance_on_underperformance";
    pub const SVM_NONLINEAR_ONLY: &str = "svm_nonlinear_only";
}

/// Ranks catalog models with the rules distilled from the GPT answers.
pub fn recommend_gpt(
    profile: &DatasetProfile,
    reqs: &Requirements,
    cfg: &HeuristicConfig,
) -> Result<Recommendation, HeuristicError> {
    recommend_gpt_with(builtin_catalog(), profile, reqs, cfg)
}

/// [`recommend_gpt`] over an explicit catalog.
pub fn recommend_gpt_with(
    catalog: &ModelCatalog,
    profile: &DatasetProfile,
    reqs: &Requirements,
    cfg: &HeuristicConfig,
) -> Result<Recommendation, HeuristicError> {
    cfg.check()?;
    let mut trace = ExplanationTrace::default();
    let pt = resolve_problem(profile, reqs, &mut trace)?;
    annotate(profile, reqs, cfg, &mut trace);

    let mut kept: Vec<&ModelCandidate> = Vec::new();
    let mut filters = Vec::new();
    for m in catalog.for_problem(pt) {
        if !m.gpt_pool {
            trace.push(
                rule::CANDIDATE_POOL,
                Verdict::FilteredOut,
                &m.name,
                "not among the GPT-derived candidates",
            );
            continue;
        }
        match include(m, pt, profile.n_rows, reqs, cfg, &mut trace) {
            Ok(()) => kept.push(m),
            Err(why) => filters.push(format!("{}: {why}", m.name)),
        }
    }
    if kept.is_empty() {
        return Err(HeuristicError::EmptyCandidates {
            problem_type: pt,
            filters,
        });
    }

    let complex_first = pt == ProblemType::Regression && reqs.nonlinear_suspected;
    kept.sort_by_key(|m| {
        (
            complex_first && m.family != ModelFamily::Ensemble,
            m.complexity,
            Reverse(m.interpretability),
            catalog.position(&m.name),
        )
    });
    for (i, m) in kept.iter().enumerate() {
        if complex_first && m.family == ModelFamily::Ensemble {
            trace.push(
                rule::ORDER_COMPLEX_FIRST,
                Verdict::OrderedBy,
                &m.name,
                format!(
                    "rank {}: complex regressor placed first because non-linear relationships are suspected (complexity {})",
                    i + 1,
                    m.complexity
                ),
            );
        } else {
            trace.push(
                rule::ORDER_SIMPLE_FIRST,
                Verdict::OrderedBy,
                &m.name,
                format!(
                    "rank {}: complexity {}, interpretability {}",
                    i + 1,
                    m.complexity,
                    m.interpretability
                ),
            );
        }
    }

    let (transition_plan, transition_notes) = plan(&kept, reqs, complex_first);
    Ok(Recommendation {
        heuristic: Heuristic::Gpt,
        problem_type: pt,
        ranked: kept.iter().map(|m| m.name.clone()).collect(),
        metric_set: select_metrics(pt),
        transition_plan,
        transition_notes,
        trace,
    })
}

/// Dataset and requirement observations that do not change the ranking.
fn annotate(
    profile: &DatasetProfile,
    reqs: &Requirements,
    cfg: &HeuristicConfig,
    trace: &mut ExplanationTrace,
) {
    let n = profile.n_rows;
    let size = if n >= cfg.min_size_requirement {
        format!(
            "{n} rows >= min_size_requirement {}",
            cfg.min_size_requirement
        )
    } else {
        format!(
            "{n} rows < min_size_requirement {}; results may be unreliable",
            cfg.min_size_requirement
        )
    };
    trace.push(rule::DATASET_SIZE, Verdict::Fired, "dataset", size);

    let features = profile.n_columns - usize::from(profile.target.is_some());
    let limit = match cfg.max_features_allowed {
        Some(max) if features > max => format!("{features} features > max_features_allowed {max}"),
        Some(max) => format!("{features} features <= max_features_allowed {max}"),
        None => format!("{features} features, no limit configured"),
    };
    trace.push(rule::FEATURE_LIMIT, Verdict::Fired, "dataset", limit);

    let q = &profile.quality;
    let mut issues = Vec::new();
    if q.missing_data {
        issues.push(format!(
            "missing values (worst column {:.1}%)",
            q.missing_worst_fraction * 100.0
        ));
    }
    if q.outliers {
        issues.push(format!("outliers in {}", q.outlier_columns.join(", ")));
    }
    if q.unbalanced {
        issues.push(format!(
            "unbalanced target (minority ratio {:.3})",
            q.minority_ratio.unwrap_or(0.0)
        ));
    }
    if !issues.is_empty() {
        trace.push(
            rule::DATA_QUALITY,
            Verdict::Fired,
            "dataset",
            format!("preprocess before training: {}", issues.join("; ")),
        );
    }

    if !reqs.ethical_flags.is_empty() {
        let flags: Vec<&str> = reqs.ethical_flags.iter().map(String::as_str).collect();
        trace.push(
            rule::ETHICAL_FLAGS,
            Verdict::Fired,
            "requirements",
            format!("recorded, not used for ranking: {}", flags.join(", ")),
        );
    }
    if reqs.interpretability_required {
        trace.push(
            rule::INTERPRETABILITY,
            Verdict::Fired,
            "requirements",
            "interpretable models are ranked first by the ordering rule",
        );
    }
}

/// Inclusion rules for one pool candidate. Every decision is traced.
fn include(
    m: &ModelCandidate,
    pt: ProblemType,
    n_rows: usize,
    reqs: &Requirements,
    cfg: &HeuristicConfig,
    trace: &mut ExplanationTrace,
) -> Result<(), String> {
    let mut check = |rule: &str, ok: bool, pass: String, fail: String| {
        if ok {
            trace.push(rule, Verdict::Fired, &m.name, pass);
            Ok(())
        } else {
            trace.push(rule, Verdict::FilteredOut, &m.name, fail.clone());
            Err(fail)
        }
    };
    match m.family {
        ModelFamily::Tree => check(
            rule::DECISION_TREE,
            reqs.nonlinear_suspected,
            "non-linear relationships suspected".into(),
            "non-linear relationships not suspected".into(),
        ),
        ModelFamily::Neural => {
            let large = n_rows >= cfg.large_dataset_threshold;
            check(
                rule::NN_LARGE_DATA,
                reqs.nonlinear_suspected && large,
                format!(
                    "non-linear relationships suspected and n_rows >= large_dataset_threshold ({n_rows} >= {})",
                    cfg.large_dataset_threshold
                ),
                if !reqs.nonlinear_suspected {
                    "non-linear relationships not suspected".into()
                } else {
                    format!(
                        "n_rows < large_dataset_threshold ({n_rows} < {})",
                        cfg.large_dataset_threshold
                    )
                },
            )?;
            check(
                rule::NN_RESOURCES,
                !reqs.limited_resources,
                "computational resources not limited".into(),
                "computational resources are limited".into(),
            )
        }
        ModelFamily::Kernel => {
            check(
                rule::SVM_ROWS,
                n_rows <= cfg.svm_row_limit,
                format!(
                    "n_rows <= svm_row_limit ({n_rows} <= {})",
                    cfg.svm_row_limit
                ),
                format!("n_rows > svm_row_limit ({n_rows} > {})", cfg.svm_row_limit),
            )?;
            check(
                rule::SVM_RESOURCES,
                !reqs.limited_resources,
                "computational resources not limited".into(),
                "computational resources are limited".into(),
            )
        }
        ModelFamily::Linear if pt == ProblemType::Regression && m.overfitting_robustness >= 2 => {
            let why = if reqs.multicollinearity_suspected {
                "regularization counters the suspected multicollinearity"
            } else {
                "regularized regression is always kept"
            };
            check(rule::REGULARIZED, true, why.into(), String::new())
        }
        _ => check(
            rule::CANDIDATE_POOL,
            true,
            format!("baseline candidate for {pt}"),
            String::new(),
        ),
    }
}

/// Kernel methods are only a fallback for suspected non-linearity.
fn conditional(m: &ModelCandidate, reqs: &Requirements) -> bool {
    m.family == ModelFamily::Kernel && !reqs.nonlinear_suspected
}

fn plan(
    ranked: &[&ModelCandidate],
    reqs: &Requirements,
    complex_first: bool,
) -> (Vec<String>, Vec<TransitionNote>) {
    let mut steps = Vec::new();
    let mut notes = Vec::new();
    let mut prev: Option<&ModelCandidate> = None;
    for (i, m) in ranked.iter().enumerate() {
        let name = m.name.clone();
        let (rule_id, note, in_plan) = if conditional(m, reqs) && prev.is_some() {
            (
                rule::SVM_NONLINEAR_ONLY,
                format!(
                    "Consider {name} only if non-linear relationships are strongly suspected and resources allow."
                ),
                false,
            )
        } else if let Some(p) = prev {
            let peers: Vec<&str> = ranked[i..]
                .iter()
                .take_while(|r| r.family == m.family && m.family == ModelFamily::Ensemble)
                .map(|r| r.name.as_str())
                .collect();
            let mut note = if peers.len() > 1 && p.family != ModelFamily::Ensemble {
                format!(
                    "If {} underperforms, consider {}; {name} is tried first.",
                    p.name,
                    peers.join(" or ")
                )
            } else {
                format!("If {} underperforms, move to {name}.", p.name)
            };
            if m.overfitting_robustness > p.overfitting_robustness {
                note.push_str(&format!(" Escalation target when {} overfits.", p.name));
            }
            (rule::ADVANCE, note, true)
        } else {
            let note = if complex_first {
                format!(
                    "Start with {name}, a complex regressor suited to non-linear relationships."
                )
            } else {
                format!("Start with {name} as the simplest, most interpretable baseline.")
            };
            (rule::INITIAL_MODEL, note, true)
        };
        if in_plan {
            steps.push(name.clone());
            prev = Some(m);
        }
        notes.push(TransitionNote {
            step: i,
            model: name,
            rule_id: rule_id.to_string(),
            note,
            in_plan,
        });
    }
    (steps, notes)
}
