use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Feature matrix with class labels and schema metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<S> {
    pub features: Matrix<S>,
    pub labels: Vec<usize>,
    pub class_names: Vec<String>,
    pub feature_names: Vec<String>,
}

impl<S: Scalar> LabeledDataset<S> {
    pub fn new(
        features: Matrix<S>,
        labels: Vec<usize>,
        class_names: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if features.n_rows() != labels.len() {
            return Err(Error::InvalidInput(format!(
                "{} feature rows but {} labels",
                features.n_rows(),
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::InvalidInput(format!(
                "label index {} out of range for {} classes",
                bad,
                class_names.len()
            )));
        }
        if !features.all_finite() {
            return Err(Error::InvalidInput(
                "features contain NaN or infinite values".into(),
            ));
        }
        if features.n_cols() != feature_names.len() {
            return Err(Error::InvalidInput(format!(
                "{} feature columns but {} feature names",
                features.n_cols(),
                feature_names.len()
            )));
        }
        let unique: HashSet<&String> = class_names.iter().collect();
        if unique.len() != class_names.len() {
            return Err(Error::InvalidInput("class names are not unique".into()));
        }
        let unique: HashSet<&String> = feature_names.iter().collect();
        if unique.len() != feature_names.len() {
            return Err(Error::InvalidInput("feature names are not unique".into()));
        }
        Ok(Self {
            features,
            labels,
            class_names,
            feature_names,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.n_cols()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Subset with the given sample indices, keeping the full class list.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            features: self.features.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            class_names: self.class_names.clone(),
            feature_names: self.feature_names.clone(),
        }
    }
}
