use std::collections::HashSet;

use super::{Cell, ColumnType, ProfileError};

/// Most distinct non-numeric values a column may hold and still count as
/// categorical: `max(20, 5% of rows)`.
pub fn categorical_cutoff(n_rows: usize) -> usize {
    20.max(n_rows / 20)
}

/// Types one column from its cells alone.
///
/// Any column with exactly two distinct non-null values is binary
/// categorical, whatever its encoding. Otherwise all-numeric columns are
/// numerical, and text columns are categorical up to
/// [`categorical_cutoff`] distinct values, free text beyond it.
pub fn infer_column_type(values: &[Cell]) -> Result<ColumnType, ProfileError> {
    let present: Vec<&Cell> = values.iter().filter(|c| !c.is_null()).collect();
    if present.is_empty() {
        return Err(ProfileError::AllNull(String::new()));
    }

    if present.iter().all(|c| matches!(c, Cell::Number(_))) {
        let distinct: HashSet<u64> = present
            .iter()
            .filter_map(|c| c.as_number())
            .map(f64::to_bits)
            .collect();
        return Ok(if distinct.len() == 2 {
            ColumnType::BinaryCategorical
        } else {
            ColumnType::Numerical
        });
    }

    let distinct: HashSet<String> = present.iter().filter_map(|c| c.key()).collect();
    Ok(match distinct.len() {
        2 => ColumnType::BinaryCategorical,
        n if n <= categorical_cutoff(values.len()) => ColumnType::Categorical,
        _ => ColumnType::Text,
    })
}
