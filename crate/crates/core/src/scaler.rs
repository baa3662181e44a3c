use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Per-feature min/max fitted on training data.
///
/// `transform` maps each value to `(x - min) / (max - min)`. Columns that
/// were constant in the training data map to 0.0; values outside the
/// training range are not clipped and may fall outside [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerParams<S> {
    pub mins: Vec<S>,
    pub maxs: Vec<S>,
}

impl<S: Scalar> ScalerParams<S> {
    pub fn n_features(&self) -> usize {
        self.mins.len()
    }

    /// Indices of training columns with max == min.
    pub fn constant_columns(&self) -> Vec<usize> {
        self.mins
            .iter()
            .zip(&self.maxs)
            .enumerate()
            .filter(|(_, (lo, hi))| lo == hi)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.mins.len() != self.maxs.len() {
            return Err(Error::InvalidInput(
                "scaler mins/maxs length mismatch".into(),
            ));
        }
        for (i, (lo, hi)) in self.mins.iter().zip(&self.maxs).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::InvalidInput(format!(
                    "scaler column {i}: min {lo} > max {hi} or non-finite"
                )));
            }
        }
        Ok(())
    }

    pub fn transform_row_into(&self, row: &[S], out: &mut [S]) -> Result<()> {
        if row.len() != self.mins.len() {
            return Err(Error::ShapeMismatch {
                expected: self.mins.len(),
                got: row.len(),
            });
        }
        for (i, &x) in row.iter().enumerate() {
            let range = self.maxs[i] - self.mins[i];
            out[i] = if range == S::zero() {
                S::zero()
            } else {
                (x - self.mins[i]) / range
            };
        }
        Ok(())
    }

    pub fn transform_row(&self, row: &[S]) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); row.len()];
        self.transform_row_into(row, &mut out)?;
        Ok(out)
    }

    pub fn transform(&self, features: &Matrix<S>) -> Result<Matrix<S>> {
        if features.n_cols() != self.mins.len() {
            return Err(Error::ShapeMismatch {
                expected: self.mins.len(),
                got: features.n_cols(),
            });
        }
        let mut out = Matrix::zeros(features.n_rows(), features.n_cols());
        for i in 0..features.n_rows() {
            let row = features.row(i).to_vec();
            self.transform_row_into(&row, out.row_mut(i))?;
        }
        Ok(out)
    }
}

/// Column-wise minima/maxima of the training matrix.
pub fn fit_scaler<S: Scalar>(train_features: &Matrix<S>) -> Result<ScalerParams<S>> {
    if train_features.is_empty() || train_features.n_cols() == 0 {
        return Err(Error::InvalidInput(
            "cannot fit scaler on an empty matrix".into(),
        ));
    }
    if !train_features.all_finite() {
        return Err(Error::InvalidInput(
            "cannot fit scaler: non-finite values".into(),
        ));
    }
    let d = train_features.n_cols();
    let mut mins = train_features.row(0).to_vec();
    let mut maxs = mins.clone();
    for row in train_features.rows_iter().skip(1) {
        for i in 0..d {
            if row[i] < mins[i] {
                mins[i] = row[i];
            }
            if row[i] > maxs[i] {
                maxs[i] = row[i];
            }
        }
    }
    Ok(ScalerParams { mins, maxs })
}
