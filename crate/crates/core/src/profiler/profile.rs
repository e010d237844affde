use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{infer_column_type, Cell, ColumnType, DataTable, ProblemType, ProfileError};

/// A categorical target is unbalanced when its rarest class falls below
/// this share of the labelled rows.
pub const IMBALANCE_THRESHOLD: f64 = 0.40;

const TUKEY_K: f64 = 1.5;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QualityFlags {
    pub missing_data: bool,
    /// Largest per-column null fraction.
    pub missing_worst_fraction: f64,
    pub outliers: bool,
    pub outlier_columns: Vec<String>,
    /// No observable definition; always false.
    pub noise: bool,
    pub unbalanced: bool,
    /// Share of the rarest target class; absent for non-categorical targets.
    pub minority_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetProfile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    pub n_rows: usize,
    pub n_columns: usize,
    pub column_types: IndexMap<String, ColumnType>,
    pub target: Option<String>,
    pub target_type: Option<ColumnType>,
    pub quality: QualityFlags,
}

impl DatasetProfile {
    pub fn with_dataset(mut self, name: impl Into<String>) -> Self {
        self.dataset = Some(name.into());
        self
    }

    /// Checks the cross-field invariants of a profile read from disk.
    pub fn check(&self) -> Result<(), ProfileError> {
        let bad = |msg: String| Err(ProfileError::InvalidProfile(msg));
        if self.n_columns != self.column_types.len() {
            return bad(format!(
                "n_columns is {} but {} column types are listed",
                self.n_columns,
                self.column_types.len()
            ));
        }
        match (&self.target, self.target_type) {
            (Some(t), Some(ty)) => match self.column_types.get(t) {
                None => return bad(format!("target `{t}` is not a declared column")),
                Some(&declared) if declared != ty => {
                    return bad(format!(
                        "target_type {ty} disagrees with column type {declared}"
                    ))
                }
                _ => {}
            },
            (None, None) => {}
            _ => return bad("target and target_type must be given together".into()),
        }
        let q = &self.quality;
        if !(0.0..=1.0).contains(&q.missing_worst_fraction) {
            return bad("missing_worst_fraction must lie in [0, 1]".into());
        }
        if q.missing_data != (q.missing_worst_fraction > 0.0) {
            return bad("missing_data must hold exactly when missing_worst_fraction > 0".into());
        }
        if q.outliers == q.outlier_columns.is_empty() {
            return bad("outliers must hold exactly when outlier_columns is non-empty".into());
        }
        let categorical_target = self.target_type.is_some_and(ColumnType::is_categorical);
        if q.unbalanced && !categorical_target {
            return bad("only a categorical target can be unbalanced".into());
        }
        if let Some(r) = q.minority_ratio {
            if !(r > 0.0 && r <= 0.5) {
                return bad(format!("minority_ratio {r} outside (0, 0.5]"));
            }
        }
        Ok(())
    }
}

/// Quantile by linear interpolation between closest ranks; `sorted` is
/// non-empty and ascending.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn has_outliers(cells: &[Cell]) -> bool {
    let mut xs: Vec<f64> = cells.iter().filter_map(Cell::as_number).collect();
    if xs.len() < 4 {
        return false;
    }
    xs.sort_by(f64::total_cmp);
    let q1 = quantile(&xs, 0.25);
    let q3 = quantile(&xs, 0.75);
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - TUKEY_K * iqr, q3 + TUKEY_K * iqr);
    xs.first().is_some_and(|&x| x < lo) || xs.last().is_some_and(|&x| x > hi)
}

fn minority_ratio(cells: &[Cell]) -> Option<f64> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for key in cells.iter().filter_map(Cell::key) {
        *counts.entry(key).or_default() += 1;
    }
    if counts.len() < 2 {
        return None;
    }
    let total: usize = counts.values().sum();
    let min = counts.values().copied().min()?;
    Some(min as f64 / total as f64)
}

/// Profiles a table. All statistics are order-free, so the result does not
/// depend on row order.
pub fn profile_dataset(
    table: &DataTable,
    target: Option<&str>,
) -> Result<DatasetProfile, ProfileError> {
    if let Some(t) = target {
        if table.column(t).is_none() {
            return Err(ProfileError::UnknownTarget(t.to_string()));
        }
    }

    let n_rows = table.n_rows();
    let mut column_types = IndexMap::new();
    let mut worst_nulls = 0usize;
    let mut outlier_columns = Vec::new();
    for (name, cells) in table.iter_columns() {
        let ty = infer_column_type(cells).map_err(|e| match e {
            ProfileError::AllNull(_) => ProfileError::AllNull(name.to_string()),
            other => other,
        })?;
        worst_nulls = worst_nulls.max(cells.iter().filter(|c| c.is_null()).count());
        if ty == ColumnType::Numerical && has_outliers(cells) {
            outlier_columns.push(name.to_string());
        }
        column_types.insert(name.to_string(), ty);
    }

    let target_type = target.map(|t| column_types[t]);
    let minority = match (target, target_type) {
        (Some(t), Some(ty)) if ty.is_categorical() => minority_ratio(table.column(t).unwrap()),
        _ => None,
    };
    let missing_worst_fraction = if n_rows == 0 {
        0.0
    } else {
        worst_nulls as f64 / n_rows as f64
    };

    Ok(DatasetProfile {
        dataset: None,
        n_rows,
        n_columns: table.n_columns(),
        column_types,
        target: target.map(str::to_string),
        target_type,
        quality: QualityFlags {
            missing_data: missing_worst_fraction > 0.0,
            missing_worst_fraction,
            outliers: !outlier_columns.is_empty(),
            outlier_columns,
            noise: false,
            unbalanced: minority.is_some_and(|r| r < IMBALANCE_THRESHOLD),
            minority_ratio: minority,
        },
    })
}

/// Infers the learning problem from the target column.
pub fn classify_problem(profile: &DatasetProfile) -> Result<ProblemType, ProfileError> {
    let (Some(target), Some(ty)) = (&profile.target, profile.target_type) else {
        return Ok(ProblemType::Clustering);
    };
    match ty {
        ColumnType::BinaryCategorical => Ok(ProblemType::BinaryClassification),
        ColumnType::Categorical => Ok(ProblemType::MulticlassClassification),
        ColumnType::Numerical => Ok(ProblemType::Regression),
        other => Err(ProfileError::UnsupportedTarget {
            column: target.clone(),
            column_type: other,
        }),
    }
}
