use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::profiler::ProblemType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    Linear,
    Probabilistic,
    Tree,
    Ensemble,
    Kernel,
    Neighbors,
    Neural,
    Clustering,
    Projection,
}

/// One selectable algorithm and the qualitative attributes the rules read.
///
/// Ordinals: `complexity` 1 (simplest) to 6, `interpretability` and
/// `overfitting_robustness` 1 (low) to 3 (high), `cost` 1 to 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCandidate {
    pub name: String,
    pub problem_types: Vec<ProblemType>,
    pub family: ModelFamily,
    pub complexity: u8,
    pub interpretability: u8,
    pub handles_mixed_types: bool,
    pub overfitting_robustness: u8,
    pub nonlinear_capable: bool,
    pub cost: u8,
    /// Part of the candidate pool the GPT-derived engine ranks from.
    pub gpt_pool: bool,
}

impl ModelCandidate {
    pub fn supports(&self, pt: ProblemType) -> bool {
        self.problem_types.contains(&pt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCatalog {
    models: Vec<ModelCandidate>,
}

impl ModelCatalog {
    /// Builds a catalog from explicit entries. Names must be unique.
    pub fn new(models: Vec<ModelCandidate>) -> Option<ModelCatalog> {
        let mut names = std::collections::HashSet::new();
        models
            .iter()
            .all(|m| names.insert(m.name.as_str()))
            .then_some(ModelCatalog { models })
    }

    pub fn get(&self, name: &str) -> Option<&ModelCandidate> {
        self.models.iter().find(|m| m.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ModelCandidate> {
        self.models.iter()
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Catalog position, used as the final ordering tie-break.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.models.iter().position(|m| m.name == name)
    }

    pub fn for_problem(&self, pt: ProblemType) -> impl Iterator<Item = &ModelCandidate> {
        self.models.iter().filter(move |m| m.supports(pt))
    }
}

const CLS: &[ProblemType] = &[
    ProblemType::BinaryClassification,
    ProblemType::MulticlassClassification,
];
const REG: &[ProblemType] = &[ProblemType::Regression];
const CLS_REG: &[ProblemType] = &[
    ProblemType::BinaryClassification,
    ProblemType::MulticlassClassification,
    ProblemType::Regression,
];
const CLU: &[ProblemType] = &[ProblemType::Clustering];
const DR: &[ProblemType] = &[ProblemType::DimensionalityReduction];
const CLS_DR: &[ProblemType] = &[
    ProblemType::BinaryClassification,
    ProblemType::MulticlassClassification,
    ProblemType::DimensionalityReduction,
];

type Row = (&'static str, &'static [ProblemType], ModelFamily, u8, u8, bool, u8, bool, u8, bool);

#[rustfmt::skip]
const TABLE: &[Row] = {
    use ModelFamily::*;
    &[
        // name                        problems  family         cx int mixed rob nonlin cost gpt
        ("LogisticRegression",          CLS,     Linear,        1, 3, false, 2, false, 1, true),
        ("DecisionTreeClassifier",      CLS,     Tree,          2, 3, true,  1, true,  1, true),
        ("RandomForestClassifier",      CLS,     Ensemble,      3, 1, true,  3, true,  2, true),
        ("GradientBoostingClassifier",  CLS,     Ensemble,      4, 1, true,  1, true,  2, true),
        ("SVC",                         CLS,     Kernel,        5, 1, false, 2, true,  3, true),
        ("NeuralNetwork",               CLS_REG, Neural,        6, 1, false, 1, true,  3, true),
        ("LinearRegression",            REG,     Linear,        1, 3, false, 1, false, 1, true),
        ("Ridge",                       REG,     Linear,        2, 3, false, 2, false, 1, true),
        ("Lasso",                       REG,     Linear,        2, 3, false, 2, false, 1, true),
        ("RandomForestRegressor",       REG,     Ensemble,      3, 1, true,  3, true,  2, true),
        ("GradientBoostingRegressor",   REG,     Ensemble,      4, 1, true,  1, true,  2, true),
        ("SVR",                         REG,     Kernel,        5, 1, false, 2, true,  3, true),
        ("KMeans",                      CLU,     Clustering,    1, 2, false, 2, false, 1, true),
        ("HierarchicalClustering",      CLU,     Clustering,    2, 3, false, 2, true,  2, true),
        ("GaussianMixture",             CLU,     Clustering,    3, 2, false, 2, true,  2, true),
        ("DBSCAN",                      CLU,     Clustering,    3, 2, false, 2, true,  2, true),
        ("MeanShift",                   CLU,     Clustering,    4, 2, false, 2, true,  3, true),
        ("PCA",                         DR,      Projection,    1, 2, false, 2, false, 1, true),
        ("LDA",                         DR,      Projection,    2, 2, false, 2, false, 1, true),
        ("QDA",                         DR,      Projection,    3, 2, false, 1, true,  1, true),
        ("TSNE",                        DR,      Projection,    5, 1, false, 2, true,  3, true),
        ("Autoencoder",                 DR,      Neural,        6, 1, false, 1, true,  3, true),
        // Named option sets the GPT-derived rules never rank.
        ("NaiveBayes",                  CLS,     Probabilistic, 1, 2, false, 2, false, 1, false),
        ("PolynomialRegression",        REG,     Linear,        2, 3, false, 1, true,  1, false),
        ("ElasticNet",                  REG,     Linear,        2, 3, false, 2, false, 1, false),
        // Cheat-sheet vocabulary.
        ("LinearSVC",                   CLS,     Kernel,        5, 1, false, 2, false, 2, false),
        ("KNeighborsClassifier",        CLS,     Neighbors,     5, 2, false, 2, true,  2, false),
        ("EnsembleClassifiers",         CLS,     Ensemble,      4, 1, true,  3, true,  2, false),
        ("SGDClassifier",               CLS,     Linear,        1, 2, false, 2, false, 1, false),
        ("KernelApproximation",         CLS_DR,  Kernel,        3, 1, false, 2, true,  2, false),
        ("SVR_linear",                  REG,     Kernel,        5, 1, false, 2, false, 3, false),
        ("SVR_rbf",                     REG,     Kernel,        5, 1, false, 2, true,  3, false),
        ("EnsembleRegressors",          REG,     Ensemble,      4, 1, true,  3, true,  2, false),
        ("SGDRegressor",                REG,     Linear,        1, 2, false, 2, false, 1, false),
        ("SpectralClustering",          CLU,     Clustering,    4, 1, false, 2, true,  3, false),
        ("MiniBatchKMeans",             CLU,     Clustering,    1, 2, false, 2, false, 1, false),
        ("Isomap",                      DR,      Projection,    4, 1, false, 2, true,  2, false),
        ("SpectralEmbedding",           DR,      Projection,    4, 1, false, 2, true,  2, false),
        ("LocallyLinearEmbedding",      DR,      Projection,    4, 1, false, 2, true,  2, false),
    ]
};

/// Generic algorithm options per problem family and the catalog entries
/// that realize them.
pub const ALGORITHM_OPTIONS: &[(&str, &[(&str, &str)])] = &[
    (
        "classification",
        &[
            ("DecisionTree", "DecisionTreeClassifier"),
            ("NaiveBayes", "NaiveBayes"),
            ("NeuralNetwork", "NeuralNetwork"),
            ("SVM", "SVC"),
            ("K-Nearest Neighbors", "KNeighborsClassifier"),
            ("Logistic Regression", "LogisticRegression"),
            ("EnsembleMethods", "EnsembleClassifiers"),
            ("DeepLearningModels", "NeuralNetwork"),
        ],
    ),
    (
        "regression",
        &[
            ("LinearRegression", "LinearRegression"),
            ("PolynomialRegression", "PolynomialRegression"),
            ("RidgeRegression", "Ridge"),
            ("LassoRegression", "Lasso"),
            ("ElasticNet", "ElasticNet"),
            ("EnsembleMethods", "EnsembleRegressors"),
            ("DeepLearningModels", "NeuralNetwork"),
        ],
    ),
    (
        "clustering",
        &[
            ("K-Means", "KMeans"),
            ("Hierarchical Clustering", "HierarchicalClustering"),
            ("DBSCAN", "DBSCAN"),
            ("Gaussian Mixture Models", "GaussianMixture"),
            ("Mean Shift", "MeanShift"),
        ],
    ),
    (
        "dimensionality_reduction",
        &[
            ("PCA", "PCA"),
            ("t-SNE", "TSNE"),
            ("LDA", "LDA"),
            ("QDA", "QDA"),
            ("Autoencoders", "Autoencoder"),
        ],
    ),
];

/// The fixed model catalog.
pub fn builtin_catalog() -> &'static ModelCatalog {
    static CATALOG: OnceLock<ModelCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| ModelCatalog {
        models: TABLE
            .iter()
            .map(
                |&(name, pts, family, cx, int, mixed, rob, nonlin, cost, gpt)| ModelCandidate {
                    name: name.to_string(),
                    problem_types: pts.to_vec(),
                    family,
                    complexity: cx,
                    interpretability: int,
                    handles_mixed_types: mixed,
                    overfitting_robustness: rob,
                    nonlinear_capable: nonlin,
                    cost,
                    gpt_pool: gpt,
                },
            )
            .collect(),
    })
}
