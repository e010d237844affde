use std::collections::HashSet;

use super::ProfileError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Number(f64),
    Text(String),
}

impl Cell {
    /// Empty fields and `NA` / `NaN` / `null` (any case) are null; finite
    /// numbers are numbers; everything else stays text.
    pub fn parse(field: &str) -> Cell {
        let trimmed = field.trim();
        if trimmed.is_empty()
            || ["na", "nan", "null"]
                .iter()
                .any(|m| trimmed.eq_ignore_ascii_case(m))
        {
            return Cell::Null;
        }
        match trimmed.parse::<f64>() {
            Ok(x) if x.is_finite() => Cell::Number(if x == 0.0 { 0.0 } else { x }),
            _ => Cell::Text(field.to_string()),
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Cell::Null)
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number(x) => Some(*x),
            _ => None,
        }
    }

    /// Canonical text used to compare values across cells.
    pub(crate) fn key(&self) -> Option<String> {
        match self {
            Cell::Null => None,
            Cell::Number(x) => Some(x.to_string()),
            Cell::Text(s) => Some(s.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub header: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            header: true,
        }
    }
}

/// Column-major table. Every column holds exactly `n_rows` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct DataTable {
    columns: Vec<String>,
    cells: Vec<Vec<Cell>>,
    n_rows: usize,
}

impl DataTable {
    pub fn new(columns: Vec<String>, cells: Vec<Vec<Cell>>) -> Result<Self, ProfileError> {
        let mut seen = HashSet::new();
        for c in &columns {
            if !seen.insert(c.as_str()) {
                return Err(ProfileError::DuplicateColumn(c.clone()));
            }
        }
        assert_eq!(columns.len(), cells.len(), "one cell list per column");
        let n_rows = cells.first().map_or(0, Vec::len);
        assert!(
            cells.iter().all(|c| c.len() == n_rows),
            "columns must have equal length"
        );
        Ok(DataTable {
            columns,
            cells,
            n_rows,
        })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, name: &str) -> Option<&[Cell]> {
        self.columns
            .iter()
            .position(|c| c == name)
            .map(|i| self.cells[i].as_slice())
    }

    pub fn iter_columns(&self) -> impl Iterator<Item = (&str, &[Cell])> {
        self.columns
            .iter()
            .map(String::as_str)
            .zip(self.cells.iter().map(Vec::as_slice))
    }

    /// Reorders rows; `order` must be a permutation of `0..n_rows`.
    pub fn permute_rows(&self, order: &[usize]) -> DataTable {
        assert_eq!(order.len(), self.n_rows);
        DataTable {
            columns: self.columns.clone(),
            cells: self
                .cells
                .iter()
                .map(|col| order.iter().map(|&i| col[i].clone()).collect())
                .collect(),
            n_rows: self.n_rows,
        }
    }
}

/// Reads RFC 4180 CSV. Without a header, columns are named `col_0`, `col_1`, ...
pub fn load_table(bytes: &[u8], options: LoadOptions) -> Result<DataTable, ProfileError> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Err(ProfileError::Empty);
    }
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .flexible(false)
        .from_reader(bytes);

    let mut columns: Option<Vec<String>> = None;
    let mut cells: Vec<Vec<Cell>> = Vec::new();
    for (i, record) in reader.byte_records().enumerate() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths {
                expected_len, len, ..
            } => ProfileError::Ragged {
                record: i as u64 + 1,
                expected: *expected_len,
                found: *len,
            },
            _ => ProfileError::Csv(e),
        })?;
        let fields = record
            .iter()
            .map(|f| {
                std::str::from_utf8(f).map_err(|_| ProfileError::Utf8 {
                    record: i as u64 + 1,
                })
            })
            .collect::<Result<Vec<&str>, _>>()?;

        if columns.is_none() {
            let names = if options.header {
                fields.iter().map(|f| f.trim().to_string()).collect()
            } else {
                (0..fields.len()).map(|k| format!("col_{k}")).collect()
            };
            cells = vec![Vec::new(); fields.len()];
            columns = Some(names);
            if options.header {
                continue;
            }
        }
        for (col, field) in cells.iter_mut().zip(&fields) {
            col.push(Cell::parse(field));
        }
    }
    DataTable::new(columns.ok_or(ProfileError::Empty)?, cells)
}
