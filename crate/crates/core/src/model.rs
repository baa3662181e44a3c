use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::scaler::{fit_scaler, ScalerParams};

/// Distance measure behind the energy function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    L1,
    L2,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Metric::L1),
            "l2" => Ok(Metric::L2),
            other => Err(Error::Parameter(format!("unknown metric '{other}'"))),
        }
    }
}

/// Per-class posterior; entries sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<S> {
    pub probs: Vec<S>,
    pub class_names: Vec<String>,
}

impl<S: Scalar> ProbabilityVector<S> {
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.probs.iter().enumerate().skip(1) {
            if *p > self.probs[best] {
                best = i;
            }
        }
        best
    }
}

/// Fitted classifier: per-class centroids in scaled feature space,
/// a temperature kT, the distance metric, and the embedded scaler.
///
/// Immutable once fitted; all prediction methods are pure and safe to
/// call concurrently.
#[derive(Debug, Clone, PartialEq)]
pub struct BoltzmannModel<S> {
    centroids: Matrix<S>,
    class_names: Vec<String>,
    kt: S,
    metric: Metric,
    scaler: ScalerParams<S>,
    feature_names: Vec<String>,
    constant_columns: Vec<usize>,
}

impl<S: Scalar> BoltzmannModel<S> {
    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn n_features(&self) -> usize {
        self.centroids.n_cols()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn centroids(&self) -> &Matrix<S> {
        &self.centroids
    }

    pub fn kt(&self) -> S {
        self.kt
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn scaler(&self) -> &ScalerParams<S> {
        &self.scaler
    }

    /// Training columns that were constant (carry no class signal).
    pub fn constant_columns(&self) -> &[usize] {
        &self.constant_columns
    }

    /// Same centroids and scaler under a different temperature.
    pub fn with_kt(&self, kt: S) -> Result<Self> {
        check_kt(kt)?;
        let mut m = self.clone();
        m.kt = kt;
        Ok(m)
    }

    /// Energy of each class for an already-scaled input vector.
    pub fn energy(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.n_features() {
            return Err(Error::ShapeMismatch {
                expected: self.n_features(),
                got: x.len(),
            });
        }
        let energies = self
            .centroids
            .rows_iter()
            .map(|mu| match self.metric {
                Metric::L1 => x
                    .iter()
                    .zip(mu)
                    .fold(S::zero(), |acc, (&a, &b)| acc + (a - b).abs()),
                Metric::L2 => x
                    .iter()
                    .zip(mu)
                    .fold(S::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
                    .sqrt(),
            })
            .collect();
        Ok(energies)
    }

    /// Boltzmann class probabilities for an already-scaled input vector.
    ///
    /// Computed as exp(-(E_c - E_min)/kT) normalized; the shift keeps the
    /// exponentials in range for arbitrarily large energies or small kT.
    pub fn predict_proba(&self, x: &[S]) -> Result<ProbabilityVector<S>> {
        let energies = self.energy(x)?;
        let probs = boltzmann_probabilities(&energies, self.kt);
        Ok(ProbabilityVector {
            probs,
            class_names: self.class_names.clone(),
        })
    }

    /// Index of the most probable class; ties go to the lowest index.
    pub fn predict(&self, x: &[S]) -> Result<usize> {
        let energies = self.energy(x)?;
        let mut best = 0;
        for (i, e) in energies.iter().enumerate().skip(1) {
            if *e < energies[best] {
                best = i;
            }
        }
        Ok(best)
    }

    /// Row-wise prediction over a matrix. When `apply_scaler` is set the
    /// rows are scaled with the embedded scaler first; otherwise they are
    /// assumed to be scaled already.
    pub fn predict_batch(
        &self,
        features: &Matrix<S>,
        apply_scaler: bool,
    ) -> Result<(Vec<usize>, Matrix<S>)> {
        if features.n_cols() != self.n_features() && features.n_rows() > 0 {
            return Err(Error::ShapeMismatch {
                expected: self.n_features(),
                got: features.n_cols(),
            });
        }
        let mut labels = Vec::with_capacity(features.n_rows());
        let mut probs = Matrix::zeros(features.n_rows(), self.n_classes());
        let mut scaled = vec![S::zero(); self.n_features()];
        for i in 0..features.n_rows() {
            let row = features.row(i).to_vec();
            let x: &[S] = if apply_scaler {
                self.scaler.transform_row_into(&row, &mut scaled)?;
                &scaled
            } else {
                &row
            };
            let pv = self.predict_proba(x)?;
            labels.push(pv.argmax());
            probs.row_mut(i).copy_from_slice(&pv.probs);
        }
        Ok((labels, probs))
    }
}

fn check_kt<S: Scalar>(kt: S) -> Result<()> {
    if !(kt > S::zero() && kt.is_finite()) {
        return Err(Error::Parameter(format!("kT must be positive, got {kt}")));
    }
    Ok(())
}

/// Stabilized softmax over negative energies: shifts by the minimum energy
/// before exponentiating, which leaves the result unchanged exactly.
pub fn boltzmann_probabilities<S: Scalar>(energies: &[S], kt: S) -> Vec<S> {
    let min_e = energies
        .iter()
        .copied()
        .fold(S::infinity(), |a, b| if b < a { b } else { a });
    let mut probs: Vec<S> = energies
        .iter()
        .map(|&e| (-(e - min_e) / kt).exp())
        .collect();
    let total = probs.iter().fold(S::zero(), |a, &b| a + b);
    for p in &mut probs {
        *p = *p / total;
    }
    probs
}

/// Fit a Boltzmann classifier: MinMax scaler on the full training matrix,
/// then one centroid per class as the mean of that class's scaled rows.
pub fn fit<S: Scalar>(
    dataset: &LabeledDataset<S>,
    kt: S,
    metric: Metric,
) -> Result<BoltzmannModel<S>> {
    check_kt(kt)?;
    let scaler = fit_scaler(&dataset.features)?;
    let scaled = scaler.transform(&dataset.features)?;

    let n_classes = dataset.n_classes();
    let d = dataset.n_features();
    let mut centroids = Matrix::zeros(n_classes, d);
    let mut counts = vec![0usize; n_classes];
    for (row, &label) in scaled.rows_iter().zip(&dataset.labels) {
        counts[label] += 1;
        let acc = centroids.row_mut(label);
        for i in 0..d {
            acc[i] = acc[i] + row[i];
        }
    }
    for (c, &count) in counts.iter().enumerate() {
        if count == 0 {
            return Err(Error::EmptyClass(dataset.class_names[c].clone()));
        }
        let inv = S::one() / S::from_usize(count).unwrap();
        for v in centroids.row_mut(c) {
            *v = *v * inv;
        }
    }

    let constant_columns = scaler.constant_columns();
    Ok(BoltzmannModel {
        centroids,
        class_names: dataset.class_names.clone(),
        kt,
        metric,
        scaler,
        feature_names: dataset.feature_names.clone(),
        constant_columns,
    })
}

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile<S> {
    format_version: u32,
    class_names: Vec<String>,
    feature_names: Vec<String>,
    /// Row-major, one row per class.
    centroids: Vec<S>,
    #[serde(rename = "kT")]
    kt: S,
    metric: Metric,
    scaler: ScalerParams<S>,
    #[serde(default)]
    constant_columns: Vec<usize>,
}

impl<S: Scalar + Serialize + for<'de> Deserialize<'de>> BoltzmannModel<S> {
    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            class_names: self.class_names.clone(),
            feature_names: self.feature_names.clone(),
            centroids: self.centroids.as_slice().to_vec(),
            kt: self.kt,
            metric: self.metric,
            scaler: self.scaler.clone(),
            constant_columns: self.constant_columns.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile<S> = serde_json::from_str(text)?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::FormatVersion(file.format_version));
        }
        check_kt(file.kt)?;
        file.scaler.validate()?;
        let n_classes = file.class_names.len();
        if n_classes == 0 {
            return Err(Error::InvalidInput("model has no classes".into()));
        }
        let d = file.feature_names.len();
        let centroids = Matrix::from_flat(file.centroids, n_classes, d)?;
        if !centroids.all_finite() {
            return Err(Error::InvalidInput("centroids contain non-finite values".into()));
        }
        if file.scaler.n_features() != d {
            return Err(Error::InvalidInput(
                "scaler length does not match feature count".into(),
            ));
        }
        Ok(Self {
            centroids,
            class_names: file.class_names,
            kt: file.kt,
            metric: file.metric,
            scaler: file.scaler,
            feature_names: file.feature_names,
            constant_columns: file.constant_columns,
        })
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
