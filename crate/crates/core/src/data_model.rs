//! Unit-level experiment data: the frame every estimator consumes, plus the
//! metric declaration (count or ratio) and frame validation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::math;

/// One experimental unit as ingested. `treatment` is kept as a raw float so
/// that validation, not parsing, rejects non-binary assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub covariates: Vec<f64>,
    pub treatment: f64,
    pub y: f64,
    pub z: Option<f64>,
}

/// Metric kind: a per-unit mean (count) or a ratio of two per-unit sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Count,
    Ratio,
}

/// Declares which outcome columns the analysis reads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub kind: MetricKind,
    pub numerator: String,
    /// Present exactly when `kind` is `Ratio`.
    pub denominator: Option<String>,
}

impl MetricSpec {
    pub fn count(numerator: impl Into<String>) -> Self {
        MetricSpec {
            kind: MetricKind::Count,
            numerator: numerator.into(),
            denominator: None,
        }
    }

    pub fn ratio(numerator: impl Into<String>, denominator: impl Into<String>) -> Self {
        MetricSpec {
            kind: MetricKind::Ratio,
            numerator: numerator.into(),
            denominator: Some(denominator.into()),
        }
    }

    pub fn is_consistent(&self) -> bool {
        match self.kind {
            MetricKind::Count => self.denominator.is_none(),
            MetricKind::Ratio => self.denominator.is_some(),
        }
    }
}

/// A single validation failure, tagged with the offending unit where one
/// exists.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameViolation {
    #[error("unit {index}: treatment must be exactly 0 or 1, got {value}")]
    NonBinaryTreatment { index: usize, value: f64 },
    #[error("unit {index}: column {column} holds a non-finite value")]
    NonFiniteValue { index: usize, column: String },
    #[error("unit {index}: expected {expected} covariates, got {got}")]
    RaggedCovariates {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("group {group} has {count} units; every group needs at least 2")]
    DegenerateGroup { group: &'static str, count: usize },
    #[error("frame mixes units with and without a denominator outcome")]
    InconsistentDenominator,
    #[error("frame is empty")]
    Empty,
}

/// Immutable, validated, column-oriented experiment data.
///
/// Construction goes through [`validate_frame`]; afterwards the frame is
/// read-only, so shared references can be handed to any number of workers.
#[derive(Debug, Clone)]
pub struct ExperimentFrame {
    n: usize,
    dim: usize,
    /// Row-major `n x dim` covariate block.
    covariates: Vec<f64>,
    treatment: Vec<bool>,
    y: Vec<f64>,
    z: Option<Vec<f64>>,
    n_treated: usize,
    n_control: usize,
}

/// Checks every `Unit` and frame invariant, collecting all violations rather
/// than stopping at the first. On success the data is frozen into a frame.
pub fn validate_frame(units: &[Unit]) -> Result<ExperimentFrame, Vec<FrameViolation>> {
    let mut violations = Vec::new();
    if units.is_empty() {
        return Err(vec![FrameViolation::Empty]);
    }
    let dim = units[0].covariates.len();
    let has_z = units[0].z.is_some();
    let mut n_treated = 0usize;
    let mut n_control = 0usize;

    for (index, unit) in units.iter().enumerate() {
        if unit.treatment == 1.0 {
            n_treated += 1;
        } else if unit.treatment == 0.0 {
            n_control += 1;
        } else {
            violations.push(FrameViolation::NonBinaryTreatment {
                index,
                value: unit.treatment,
            });
        }
        if unit.covariates.len() != dim {
            violations.push(FrameViolation::RaggedCovariates {
                index,
                expected: dim,
                got: unit.covariates.len(),
            });
        }
        if !unit.y.is_finite() {
            violations.push(FrameViolation::NonFiniteValue {
                index,
                column: "y".to_string(),
            });
        }
        match unit.z {
            Some(z) if !z.is_finite() => violations.push(FrameViolation::NonFiniteValue {
                index,
                column: "z".to_string(),
            }),
            Some(_) => {}
            None if has_z => violations.push(FrameViolation::InconsistentDenominator),
            None => {}
        }
        if unit.z.is_some() != has_z {
            // Covered above for missing-z; flag the mirror case once.
            if unit.z.is_some() && !has_z && !violations.contains(&FrameViolation::InconsistentDenominator) {
                violations.push(FrameViolation::InconsistentDenominator);
            }
        }
        for (c, v) in unit.covariates.iter().enumerate() {
            if !v.is_finite() {
                violations.push(FrameViolation::NonFiniteValue {
                    index,
                    column: format!("x{}", c + 1),
                });
            }
        }
    }
    if n_treated < 2 {
        violations.push(FrameViolation::DegenerateGroup {
            group: "treated",
            count: n_treated,
        });
    }
    if n_control < 2 {
        violations.push(FrameViolation::DegenerateGroup {
            group: "control",
            count: n_control,
        });
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let n = units.len();
    let mut covariates = Vec::with_capacity(n * dim);
    let mut treatment = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let mut z = if has_z { Some(Vec::with_capacity(n)) } else { None };
    for unit in units {
        covariates.extend_from_slice(&unit.covariates);
        treatment.push(unit.treatment == 1.0);
        y.push(unit.y);
        if let (Some(zs), Some(v)) = (z.as_mut(), unit.z) {
            zs.push(v);
        }
    }
    Ok(ExperimentFrame {
        n,
        dim,
        covariates,
        treatment,
        y,
        z,
        n_treated,
        n_control,
    })
}

impl ExperimentFrame {
    /// Assemble a frame directly from validated columns. Used by the
    /// simulation generator, which produces clean columns by construction;
    /// the same invariants are enforced.
    pub fn from_columns(
        covariates: Vec<f64>,
        dim: usize,
        treatment: Vec<bool>,
        y: Vec<f64>,
        z: Option<Vec<f64>>,
    ) -> Result<Self, Vec<FrameViolation>> {
        let n = treatment.len();
        let mut violations = Vec::new();
        if n == 0 {
            return Err(vec![FrameViolation::Empty]);
        }
        if covariates.len() != n * dim || y.len() != n || z.as_ref().is_some_and(|z| z.len() != n) {
            return Err(vec![FrameViolation::RaggedCovariates {
                index: 0,
                expected: n * dim,
                got: covariates.len(),
            }]);
        }
        for (i, v) in y.iter().enumerate() {
            if !v.is_finite() {
                violations.push(FrameViolation::NonFiniteValue {
                    index: i,
                    column: "y".into(),
                });
            }
        }
        if let Some(zs) = &z {
            for (i, v) in zs.iter().enumerate() {
                if !v.is_finite() {
                    violations.push(FrameViolation::NonFiniteValue {
                        index: i,
                        column: "z".into(),
                    });
                }
            }
        }
        if covariates.iter().any(|v| !v.is_finite()) {
            violations.push(FrameViolation::NonFiniteValue {
                index: 0,
                column: "x".into(),
            });
        }
        let n_treated = treatment.iter().filter(|&&t| t).count();
        let n_control = n - n_treated;
        if n_treated < 2 {
            violations.push(FrameViolation::DegenerateGroup {
                group: "treated",
                count: n_treated,
            });
        }
        if n_control < 2 {
            violations.push(FrameViolation::DegenerateGroup {
                group: "control",
                count: n_control,
            });
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(ExperimentFrame {
            n,
            dim,
            covariates,
            treatment,
            y,
            z,
            n_treated,
            n_control,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covariate_dim(&self) -> usize {
        self.dim
    }

    pub fn n_treated(&self) -> usize {
        self.n_treated
    }

    pub fn n_control(&self) -> usize {
        self.n_control
    }

    pub fn treatment(&self) -> &[bool] {
        &self.treatment
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn z(&self) -> Option<&[f64]> {
        self.z.as_deref()
    }

    pub fn has_z(&self) -> bool {
        self.z.is_some()
    }

    #[inline]
    pub fn covariate_row(&self, i: usize) -> &[f64] {
        &self.covariates[i * self.dim..(i + 1) * self.dim]
    }

    /// One covariate as a column vector (0-based index).
    pub fn covariate_column(&self, j: usize) -> Vec<f64> {
        assert!(j < self.dim, "covariate index {j} out of range");
        (0..self.n).map(|i| self.covariates[i * self.dim + j]).collect()
    }

    /// A frame identical to this one with `y` (and `z`) replaced.
    pub fn with_outcomes(&self, y: Vec<f64>, z: Option<Vec<f64>>) -> Self {
        assert_eq!(y.len(), self.n);
        if let Some(zs) = &z {
            assert_eq!(zs.len(), self.n);
        }
        ExperimentFrame {
            y,
            z,
            ..self.clone()
        }
    }

    /// A frame with every treatment flag flipped.
    pub fn with_flipped_treatment(&self) -> Self {
        let mut flipped = self.clone();
        flipped.treatment.iter_mut().for_each(|t| *t = !*t);
        std::mem::swap(&mut flipped.n_treated, &mut flipped.n_control);
        flipped
    }
}

/// Mean, sample variance and count for one group and one column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanVar {
    pub mean: f64,
    pub variance: f64,
    pub n: usize,
}

/// Per-group first and second moments for the metric columns.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMeans {
    pub y_treated: MeanVar,
    pub y_control: MeanVar,
    pub z_treated: Option<MeanVar>,
    pub z_control: Option<MeanVar>,
}

fn column_stats(values: &[f64], mask: &[bool], keep: bool) -> MeanVar {
    let selected: Vec<f64> = values
        .iter()
        .zip(mask.iter())
        .filter(|(_, &t)| t == keep)
        .map(|(&v, _)| v)
        .collect();
    MeanVar {
        mean: math::mean(&selected),
        variance: math::sample_variance(&selected),
        n: selected.len(),
    }
}

/// Per-group sample means and variances of Y (and Z for ratio metrics).
pub fn group_means(frame: &ExperimentFrame, spec: &MetricSpec) -> GroupMeans {
    let want_z = spec.kind == MetricKind::Ratio;
    let (z_treated, z_control) = if want_z {
        let z = frame
            .z()
            .expect("ratio metric requires a denominator column");
        (
            Some(column_stats(z, frame.treatment(), true)),
            Some(column_stats(z, frame.treatment(), false)),
        )
    } else {
        (None, None)
    };
    GroupMeans {
        y_treated: column_stats(frame.y(), frame.treatment(), true),
        y_control: column_stats(frame.y(), frame.treatment(), false),
        z_treated,
        z_control,
    }
}
