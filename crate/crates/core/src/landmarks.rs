//! Paired source/target landmarks.

use crate::error::{Error, Result};

/// Minimum distance between two source landmarks.
pub const MIN_SEPARATION: f64 = 1e-12;

/// Tolerance for `source == target` on quasi-landmarks.
pub const QUASI_TOLERANCE: f64 = 1e-12;

/// One landmark pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Landmark {
    pub source: Vec<f64>,
    pub target: Vec<f64>,
    /// Fixed point added to pin the transformation.
    pub quasi: bool,
}

impl Landmark {
    pub fn new(source: Vec<f64>, target: Vec<f64>) -> Self {
        Self { source, target, quasi: false }
    }

    pub fn fixed(point: Vec<f64>) -> Self {
        Self { target: point.clone(), source: point, quasi: true }
    }
}

/// A validated set of landmark pairs in `R^m`, `1 <= m <= 3`.
///
/// Sources are pairwise distinct and quasi-landmarks map to themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct LandmarkSet {
    dim: usize,
    sources: Vec<f64>,
    targets: Vec<f64>,
    quasi: Vec<bool>,
}

impl LandmarkSet {
    pub fn new(dim: usize, pairs: Vec<Landmark>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Config(format!("landmark dimension must be 1, 2 or 3, got {dim}")));
        }
        if pairs.is_empty() {
            return Err(Error::Degenerate("at least one landmark is required".into()));
        }
        let mut sources = Vec::with_capacity(pairs.len() * dim);
        let mut targets = Vec::with_capacity(pairs.len() * dim);
        let mut quasi = Vec::with_capacity(pairs.len());
        for (j, p) in pairs.into_iter().enumerate() {
            if p.source.len() != dim || p.target.len() != dim {
                return Err(Error::Validation(format!(
                    "landmark {j} has coordinates of the wrong dimension (expected {dim})"
                )));
            }
            if p.source.iter().chain(&p.target).any(|v| !v.is_finite()) {
                return Err(Error::Validation(format!("landmark {j} has non-finite coordinates")));
            }
            if p.quasi && p.source.iter().zip(&p.target).any(|(s, t)| (s - t).abs() > QUASI_TOLERANCE) {
                return Err(Error::Validation(format!(
                    "quasi-landmark {j} must have identical source and target"
                )));
            }
            sources.extend_from_slice(&p.source);
            targets.extend_from_slice(&p.target);
            quasi.push(p.quasi);
        }
        let set = Self { dim, sources, targets, quasi };
        set.check_distinct()?;
        Ok(set)
    }

    fn check_distinct(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in 0..i {
                if distance(self.source(i), self.source(j)) <= MIN_SEPARATION {
                    return Err(Error::Degenerate(format!(
                        "source landmarks {j} and {i} coincide"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.quasi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quasi.is_empty()
    }

    pub fn source(&self, j: usize) -> &[f64] {
        &self.sources[j * self.dim..(j + 1) * self.dim]
    }

    pub fn target(&self, j: usize) -> &[f64] {
        &self.targets[j * self.dim..(j + 1) * self.dim]
    }

    pub fn is_quasi(&self, j: usize) -> bool {
        self.quasi[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = Landmark> + '_ {
        (0..self.len()).map(move |j| Landmark {
            source: self.source(j).to_vec(),
            target: self.target(j).to_vec(),
            quasi: self.quasi[j],
        })
    }

    /// Flat row-major source coordinates.
    pub fn sources_flat(&self) -> &[f64] {
        &self.sources
    }

    /// The landmarks at `indices`, renumbered in the given order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let mut sources = Vec::with_capacity(indices.len() * self.dim);
        let mut targets = Vec::with_capacity(indices.len() * self.dim);
        let mut quasi = Vec::with_capacity(indices.len());
        for &j in indices {
            sources.extend_from_slice(self.source(j));
            targets.extend_from_slice(self.target(j));
            quasi.push(self.quasi[j]);
        }
        Self { dim: self.dim, sources, targets, quasi }
    }

    /// Copy with the target of landmark `j` replaced.
    pub fn with_target(&self, j: usize, target: &[f64]) -> Result<Self> {
        let mut pairs: Vec<Landmark> = self.iter().collect();
        pairs[j].target = target.to_vec();
        pairs[j].quasi = false;
        Self::new(self.dim, pairs)
    }

    /// Sources and targets shifted by the same vector.
    pub fn translated(&self, shift: &[f64]) -> Self {
        let mut out = self.clone();
        for (k, v) in out.sources.iter_mut().enumerate() {
            *v += shift[k % self.dim];
        }
        for (k, v) in out.targets.iter_mut().enumerate() {
            *v += shift[k % self.dim];
        }
        out
    }

    /// Same sources with targets equal to sources.
    pub fn identity_targets(&self) -> Self {
        let mut out = self.clone();
        out.targets = out.sources.clone();
        out
    }
}

pub(crate) fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    distance_sq(a, b).sqrt()
}
