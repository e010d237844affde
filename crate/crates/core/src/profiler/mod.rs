//! Dataset ingestion and profiling.
//!
//! [`load_table`] reads CSV into a column-major [`DataTable`];
//! [`profile_dataset`] reduces it to the facts the heuristics consume: size,
//! column types, target type and data-quality flags.

mod infer;
mod profile;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use infer::{categorical_cutoff, infer_column_type};
pub use profile::{
    classify_problem, profile_dataset, DatasetProfile, QualityFlags, IMBALANCE_THRESHOLD,
};
pub use table::{load_table, Cell, DataTable, LoadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnType {
    Numerical,
    BinaryCategorical,
    Categorical,
    Text,
    /// Never inferred from CSV.
    TimeSeries,
    /// Never inferred from CSV.
    Image,
}

impl ColumnType {
    pub fn is_categorical(self) -> bool {
        matches!(
            self,
            ColumnType::BinaryCategorical | ColumnType::Categorical
        )
    }
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnType::Numerical => "numerical",
            ColumnType::BinaryCategorical => "binary categorical",
            ColumnType::Categorical => "categorical",
            ColumnType::Text => "text",
            ColumnType::TimeSeries => "time series",
            ColumnType::Image => "image",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemType {
    BinaryClassification,
    MulticlassClassification,
    Regression,
    Clustering,
    /// Only ever requested explicitly, never inferred.
    DimensionalityReduction,
}

impl ProblemType {
    pub const ALL: [ProblemType; 5] = [
        ProblemType::BinaryClassification,
        ProblemType::MulticlassClassification,
        ProblemType::Regression,
        ProblemType::Clustering,
        ProblemType::DimensionalityReduction,
    ];

    pub fn is_classification(self) -> bool {
        matches!(
            self,
            ProblemType::BinaryClassification | ProblemType::MulticlassClassification
        )
    }
}

impl fmt::Display for ProblemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemType::BinaryClassification => "binary classification",
            ProblemType::MulticlassClassification => "multiclass classification",
            ProblemType::Regression => "regression",
            ProblemType::Clustering => "clustering",
            ProblemType::DimensionalityReduction => "dimensionality reduction",
        })
    }
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("empty input")]
    Empty,
    #[error("record {record} has {found} fields, expected {expected}")]
    Ragged {
        record: u64,
        expected: u64,
        found: u64,
    },
    #[error("record {record} is not valid UTF-8")]
    Utf8 { record: u64 },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("column `{0}` has no non-null values")]
    AllNull(String),
    #[error("unknown target column `{0}`")]
    UnknownTarget(String),
    #[error("target column `{column}` is {column_type}; it cannot be a prediction target")]
    UnsupportedTarget {
        column: String,
        column_type: ColumnType,
    },
    #[error("inconsistent profile: {0}")]
    InvalidProfile(String),
}
