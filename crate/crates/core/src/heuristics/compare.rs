use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Recommendation;
use crate::profiler::ProblemType;

/// Both heuristics side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub gpt: Recommendation,
    pub cheatsheet: Recommendation,
    /// Names ranked by both, after folding SVM spellings together.
    pub overlap: BTreeSet<String>,
    /// Like `overlap`, with ensemble groups expanded to their members.
    pub overlap_expanded: BTreeSet<String>,
}

/// Maps a ranked name to the catalog names it stands for.
pub fn canonical_names(name: &str, pt: ProblemType, expand_ensembles: bool) -> Vec<String> {
    let names = |ns: &[&str]| ns.iter().map(|n| n.to_string()).collect();
    let regression = pt == ProblemType::Regression;
    match name {
        "SVM" if regression => names(&["SVR"]),
        "SVM" => names(&["SVC"]),
        "SVR" | "SVR_linear" | "SVR_rbf" => names(&["SVR"]),
        "EnsembleClassifiers" if expand_ensembles => {
            names(&["RandomForestClassifier", "GradientBoostingClassifier"])
        }
        "EnsembleRegressors" if expand_ensembles => {
            names(&["RandomForestRegressor", "GradientBoostingRegressor"])
        }
        "RidgeRegression" => names(&["Ridge"]),
        "LassoRegression" => names(&["Lasso"]),
        other => names(&[other]),
    }
}

fn normalized(rec: &Recommendation, expand: bool) -> BTreeSet<String> {
    rec.ranked
        .iter()
        .flat_map(|n| canonical_names(n, rec.problem_type, expand))
        .collect()
}

pub fn compare(gpt: Recommendation, cheatsheet: Recommendation) -> Comparison {
    let overlap = normalized(&gpt, false)
        .intersection(&normalized(&cheatsheet, false))
        .cloned()
        .collect();
    let overlap_expanded = normalized(&gpt, true)
        .intersection(&normalized(&cheatsheet, true))
        .cloned()
        .collect();
    Comparison {
        gpt,
        cheatsheet,
        overlap,
        overlap_expanded,
    }
}
