use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Column reference: by header name, or by zero-based position for
/// headerless files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Name(String),
    Index(usize),
}

/// How to read a labeled CSV file.
#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub label_column: Column,
    pub ignored_columns: Vec<Column>,
    pub delimiter: u8,
    pub has_header: bool,
}

impl DatasetSpec {
    pub fn new(path: impl Into<PathBuf>, label_column: &str) -> Self {
        Self {
            path: path.into(),
            label_column: Column::Name(label_column.to_string()),
            ignored_columns: Vec::new(),
            delimiter: b',',
            has_header: true,
        }
    }

    /// UCI `wdbc.data` layout: id, diagnosis, 30 numeric features, no header.
    pub fn bcw(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            label_column: Column::Index(1),
            ignored_columns: vec![Column::Index(0)],
            delimiter: b',',
            has_header: false,
        }
    }
}

/// Load a CSV file into a dataset. Labels are mapped to indices in order
/// of first appearance; feature column order follows the file.
pub fn load_csv<S: Scalar>(spec: &DatasetSpec) -> Result<LabeledDataset<S>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(spec.has_header)
        .delimiter(spec.delimiter)
        .flexible(false)
        .from_path(&spec.path)?;

    let header: Option<Vec<String>> = if spec.has_header {
        Some(reader.headers()?.iter().map(str::to_string).collect())
    } else {
        None
    };

    let resolve = |col: &Column| -> Result<usize> {
        match col {
            Column::Index(i) => Ok(*i),
            Column::Name(name) => match &header {
                Some(h) => h.iter().position(|c| c == name).ok_or_else(|| {
                    Error::InvalidInput(format!("column '{name}' not found in header"))
                }),
                None => Err(Error::InvalidInput(format!(
                    "column '{name}' referenced by name but the file has no header"
                ))),
            },
        }
    };

    let label_idx = resolve(&spec.label_column)?;
    let mut ignored: Vec<usize> = spec
        .ignored_columns
        .iter()
        .map(resolve)
        .collect::<Result<_>>()?;
    if ignored.contains(&label_idx) {
        return Err(Error::InvalidInput(
            "label column is also listed as ignored".into(),
        ));
    }
    ignored.sort_unstable();

    let mut feature_names: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut class_names: Vec<String> = Vec::new();

    let header_offset = usize::from(spec.has_header);
    for (rec_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = rec_idx + 1 + header_offset;

        let feature_cols: Vec<usize> = (0..record.len())
            .filter(|i| *i != label_idx && !ignored.contains(i))
            .collect();

        if feature_names.is_none() {
            feature_names = Some(match &header {
                Some(h) => feature_cols.iter().map(|&i| h[i].clone()).collect(),
                None => (1..=feature_cols.len()).map(|i| format!("f{i}")).collect(),
            });
        }

        let label_cell = record.get(label_idx).ok_or_else(|| Error::Parse {
            row: row_no,
            col: label_idx + 1,
            msg: "missing label column".into(),
        })?;
        let label = match class_names.iter().position(|c| c == label_cell) {
            Some(i) => i,
            None => {
                class_names.push(label_cell.to_string());
                class_names.len() - 1
            }
        };
        labels.push(label);

        let mut row = Vec::with_capacity(feature_cols.len());
        for &i in &feature_cols {
            let cell = record.get(i).unwrap_or("");
            if cell.trim().is_empty() {
                return Err(Error::Parse {
                    row: row_no,
                    col: i + 1,
                    msg: "missing value".into(),
                });
            }
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: row_no,
                col: i + 1,
                msg: format!("cannot parse '{cell}' as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: row_no,
                    col: i + 1,
                    msg: format!("non-finite value '{cell}'"),
                });
            }
            row.push(S::from_f64_lossy(value));
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no data rows in {}",
            spec.path.display()
        )));
    }

    LabeledDataset::new(
        Matrix::from_rows(rows)?,
        labels,
        class_names,
        feature_names.unwrap_or_default(),
    )
}

/// Load the Breast Cancer Wisconsin (Diagnostic) file in the UCI layout.
pub fn load_bcw<S: Scalar>(path: &Path) -> Result<LabeledDataset<S>> {
    load_csv(&DatasetSpec::bcw(path))
}

/// Load an unlabeled numeric CSV: every column is a feature.
pub fn load_features_csv<S: Scalar>(
    path: &Path,
    has_header: bool,
    delimiter: u8,
) -> Result<(Matrix<S>, Vec<String>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .delimiter(delimiter)
        .flexible(false)
        .from_path(path)?;
    let mut names: Vec<String> = if has_header {
        reader.headers()?.iter().map(str::to_string).collect()
    } else {
        Vec::new()
    };
    let header_offset = usize::from(has_header);
    let mut rows = Vec::new();
    for (rec_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = rec_idx + 1 + header_offset;
        if names.is_empty() {
            names = (1..=record.len()).map(|i| format!("f{i}")).collect();
        }
        let mut row = Vec::with_capacity(record.len());
        for (i, cell) in record.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: row_no,
                col: i + 1,
                msg: format!("cannot parse '{cell}' as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: row_no,
                    col: i + 1,
                    msg: format!("non-finite value '{cell}'"),
                });
            }
            row.push(S::from_f64_lossy(value));
        }
        rows.push(row);
    }
    Ok((Matrix::from_rows(rows)?, names))
}

/// Stratified fold assignment: per-sample fold indices with per-class
/// counts differing by at most one across folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub assignments: Vec<usize>,
}

impl FoldPlan {
    /// Sample indices for (train, test) of the given fold.
    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (i, &f) in self.assignments.iter().enumerate() {
            if f == fold {
                test.push(i);
            } else {
                train.push(i);
            }
        }
        (train, test)
    }
}

/// Deterministic stratified k-fold assignment. Within each class the
/// samples are shuffled and dealt round-robin; the dealing offset carries
/// over between classes so overall fold sizes stay balanced.
pub fn stratified_folds(
    labels: &[usize],
    class_names: &[String],
    k: usize,
    seed: u64,
) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let n_classes = class_names.len();
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &label) in labels.iter().enumerate() {
        by_class[label].push(i);
    }
    for (c, members) in by_class.iter().enumerate() {
        if members.len() < k {
            return Err(Error::ClassTooSmall {
                class: class_names[c].clone(),
                count: members.len(),
                k,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments = vec![0usize; labels.len()];
    let mut offset = 0usize;
    for members in &mut by_class {
        members.shuffle(&mut rng);
        for (j, &i) in members.iter().enumerate() {
            assignments[i] = (offset + j) % k;
        }
        offset = (offset + members.len()) % k;
    }
    Ok(FoldPlan {
        k,
        seed,
        assignments,
    })
}

/// Deterministic stratified hold-out split.
pub fn split_train_test<S: Scalar>(
    dataset: &LabeledDataset<S>,
    test_fraction: f64,
    seed: u64,
) -> Result<(LabeledDataset<S>, LabeledDataset<S>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Parameter(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); dataset.n_classes()];
    for (i, &label) in dataset.labels.iter().enumerate() {
        by_class[label].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for members in &mut by_class {
        members.shuffle(&mut rng);
        let n_test = (members.len() as f64 * test_fraction).round() as usize;
        test_idx.extend_from_slice(&members[..n_test]);
        train_idx.extend_from_slice(&members[n_test..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    Ok((dataset.select(&train_idx), dataset.select(&test_idx)))
}
