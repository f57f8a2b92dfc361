//! Labelings and the radio condition
//! `|f(u) - f(v)| >= diam(G) + 1 - d(u, v)` for every pair of distinct vertices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::DistanceMatrix;
use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("labeling is empty")]
    Empty,
    #[error("labeling covers {got} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertices without a label: {}", join_ids(.0))]
    Missing(Vec<VertexId>),
    #[error("vertex {0} labeled more than once")]
    Duplicate(VertexId),
    #[error("vertex {0} is outside the graph")]
    UnknownVertex(VertexId),
}

fn join_ids(ids: &[VertexId]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Total map from vertices `0..len` to non-negative labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling {
    labels: Vec<u64>,
}

impl Labeling {
    pub fn new(labels: Vec<u64>) -> Self {
        Self { labels }
    }

    /// Collects `(vertex, label)` pairs into a total labeling of `n` vertices.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, LabelError>
    where
        I: IntoIterator<Item = (VertexId, u64)>,
    {
        let mut slots: Vec<Option<u64>> = vec![None; n];
        for (v, label) in pairs {
            let slot = slots.get_mut(v.0).ok_or(LabelError::UnknownVertex(v))?;
            if slot.replace(label).is_some() {
                return Err(LabelError::Duplicate(v));
            }
        }
        let missing: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| VertexId(i))
            .collect();
        if !missing.is_empty() {
            return Err(LabelError::Missing(missing));
        }
        Ok(Self {
            labels: slots.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.labels[v.0]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.labels
    }

    pub fn min(&self) -> Option<u64> {
        self.labels.iter().copied().min()
    }

    pub fn max(&self) -> Option<u64> {
        self.labels.iter().copied().max()
    }

    /// Vertices sorted by label, ties by vertex id.
    pub fn order(&self) -> Vec<VertexId> {
        let mut order: Vec<_> = (0..self.len()).map(VertexId).collect();
        order.sort_by_key(|v| (self.labels[v.0], v.0));
        order
    }

    /// Adds `shift` to every label.
    pub fn shifted(&self, shift: u64) -> Self {
        Self::new(self.labels.iter().map(|l| l + shift).collect())
    }

    /// Multiplies every label by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self::new(self.labels.iter().map(|l| l * factor).collect())
    }
}

/// One pair of vertices whose labels are too close.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: VertexId,
    pub v: VertexId,
    pub distance: u32,
    pub required_gap: u64,
    pub actual_gap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub span: u64,
    pub violations: Vec<Violation>,
}

/// `f_max - f_min`.
pub fn span(f: &Labeling) -> Result<u64, LabelError> {
    match (f.min(), f.max()) {
        (Some(lo), Some(hi)) => Ok(hi - lo),
        _ => Err(LabelError::Empty),
    }
}

/// Shifts labels so the smallest is 0.
pub fn normalize(f: &Labeling) -> Labeling {
    let lo = f.min().unwrap_or(0);
    Labeling::new(f.as_slice().iter().map(|l| l - lo).collect())
}

/// Checks every unordered pair and lists all violations.
pub fn validate(dm: &DistanceMatrix, f: &Labeling) -> Result<ValidationReport, LabelError> {
    if f.len() != dm.len() {
        return Err(LabelError::SizeMismatch {
            expected: dm.len(),
            got: f.len(),
        });
    }
    let span = span(f)?;
    let threshold = u64::from(dm.diameter()) + 1;
    let labels = f.as_slice();
    let mut violations = Vec::new();
    for u in 0..dm.len() {
        for v in u + 1..dm.len() {
            let d = dm.raw(u, v);
            let required = threshold.saturating_sub(u64::from(d));
            let actual = labels[u].abs_diff(labels[v]);
            if actual < required {
                violations.push(Violation {
                    u: VertexId(u),
                    v: VertexId(v),
                    distance: d,
                    required_gap: required,
                    actual_gap: actual,
                });
            }
        }
    }
    Ok(ValidationReport {
        valid: violations.is_empty(),
        span,
        violations,
    })
}
