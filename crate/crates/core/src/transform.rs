//! The Schur transform of a covariance tensor, Schur content over variable
//! subsets, and the nearest-class rule built on content means.
//!
//! Amplitudes use the standard dot product on the input coordinates, so they
//! are invariant under rotations of the input frame but not under
//! anisotropic scaling.

use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::ProjectorSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::Partition;
use crate::statistics::{sample_covariance_tensor, CovarianceTensor, DataSeries};

/// Reconstruction tolerance, relative to `max(1, ‖T‖)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub lambda: Partition,
    pub tensor: Vec<f64>,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurResult {
    n: usize,
    k: usize,
    components: Vec<Component>,
    norm: f64,
    residual: f64,
}

impl SchurResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Components in canonical partition order.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, lambda: &Partition) -> Option<&Component> {
        self.components.iter().find(|c| &c.lambda == lambda)
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.components.iter().map(|c| c.lambda.clone()).collect()
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.amplitude).collect()
    }

    /// `‖T‖` of the input tensor.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `‖T − Σ_λ T(λ)‖`.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Applies the projectors of one `(n, k)` to covariance tensors.
#[derive(Debug, Clone)]
pub struct SchurTransformer {
    projectors: Arc<ProjectorSet>,
}

impl SchurTransformer {
    pub fn new(n: usize, k: usize, limits: &Limits) -> Result<Self> {
        Ok(SchurTransformer {
            projectors: ProjectorSet::shared(n, k, limits)?,
        })
    }

    pub fn from_projectors(projectors: Arc<ProjectorSet>) -> Self {
        SchurTransformer { projectors }
    }

    pub fn projectors(&self) -> &ProjectorSet {
        &self.projectors
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.projectors
            .projectors()
            .iter()
            .map(|p| p.lambda().clone())
            .collect()
    }

    pub fn transform(&self, tensor: &CovarianceTensor) -> Result<SchurResult> {
        if tensor.n() != self.projectors.n() || tensor.k() != self.projectors.k() {
            return Err(Error::argument(format!(
                "tensor with n={}, k={} given to a transformer for n={}, k={}",
                tensor.n(),
                tensor.k(),
                self.projectors.n(),
                self.projectors.k()
            )));
        }
        let values = tensor.values();
        let components: Vec<Component> = self
            .projectors
            .projectors()
            .iter()
            .map(|p| {
                let component = p.apply(values);
                let amplitude = component.iter().map(|v| v * v).sum::<f64>().sqrt();
                Component {
                    lambda: p.lambda().clone(),
                    tensor: component,
                    amplitude,
                }
            })
            .collect();
        let norm = tensor.norm();
        let residual = values
            .iter()
            .enumerate()
            .map(|(idx, &t)| {
                let sum: f64 = components.iter().map(|c| c.tensor[idx]).sum();
                (t - sum).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        let bound = RESIDUAL_TOLERANCE * norm.max(1.0);
        if residual > bound || !residual.is_finite() {
            return Err(Error::invariant(
                "reconstruction",
                format!("‖T − Σ_λ T(λ)‖ = {residual:e} exceeds {bound:e}"),
            ));
        }
        Ok(SchurResult {
            n: self.projectors.n(),
            k: self.projectors.k(),
            components,
            norm,
            residual,
        })
    }

    /// Centers `series`, forms its covariance tensor and transforms it.
    pub fn transform_series(
        &self,
        series: &DataSeries,
        refs: Option<&[Vec<f64>]>,
        normalize: bool,
    ) -> Result<SchurResult> {
        self.transform(&sample_covariance_tensor(series, refs, normalize)?)
    }
}

pub fn schur_transform(tensor: &CovarianceTensor, limits: &Limits) -> Result<SchurResult> {
    SchurTransformer::new(tensor.n(), tensor.k(), limits)?.transform(tensor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetMode {
    /// Every `n`-element subset of the variables.
    All,
    /// Consecutive windows of `n` variables.
    Sequential,
}

impl SubsetMode {
    /// Subsets of `0..m` in lexicographic order.
    pub fn subsets(self, m: usize, n: usize) -> Vec<Vec<usize>> {
        match self {
            SubsetMode::All => (0..m).combinations(n).collect(),
            SubsetMode::Sequential if n <= m => (0..=m - n).map(|s| (s..s + n).collect()).collect(),
            SubsetMode::Sequential => Vec::new(),
        }
    }
}

/// Amplitudes of one subset, with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetAmplitudes {
    pub id: usize,
    /// 0-based variable indices, ascending.
    pub members: Vec<usize>,
    /// One amplitude per partition, canonical order.
    pub amplitudes: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurContent {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub samples: usize,
    pub mode: SubsetMode,
    pub normalize: bool,
    pub partitions: Vec<Partition>,
    pub subsets: Vec<SubsetAmplitudes>,
}

impl SchurContent {
    /// Amplitudes of `lambda` over all subsets, in subset order.
    pub fn distribution(&self, lambda: &Partition) -> Option<Vec<f64>> {
        let idx = self.partitions.iter().position(|p| p == lambda)?;
        Some(self.subsets.iter().map(|s| s.amplitudes[idx]).collect())
    }

    /// Mean amplitude per partition.
    pub fn means(&self) -> Vec<f64> {
        mean_amplitudes(
            self.partitions.len(),
            self.subsets.iter().map(|s| s.amplitudes.as_slice()),
        )
    }
}

fn mean_amplitudes<'a>(width: usize, rows: impl Iterator<Item = &'a [f64]>) -> Vec<f64> {
    let mut sums = vec![0.0; width];
    let mut count = 0usize;
    for row in rows {
        sums.iter_mut().zip(row).for_each(|(s, a)| *s += a);
        count += 1;
    }
    sums.iter().map(|s| s / count.max(1) as f64).collect()
}

/// Schur amplitudes of every selected `n`-subset of the variables of `series`.
///
/// `refs`, when given, holds one reference point per variable of `series`.
pub fn schur_content(
    series: &DataSeries,
    n: usize,
    mode: SubsetMode,
    refs: Option<&[Vec<f64>]>,
    normalize: bool,
    limits: &Limits,
) -> Result<SchurContent> {
    let transformer = SchurTransformer::new(n, series.dim(), limits)?;
    schur_content_with(&transformer, series, mode, refs, normalize)
}

/// As [`schur_content`], with projectors already at hand.
pub fn schur_content_with(
    transformer: &SchurTransformer,
    series: &DataSeries,
    mode: SubsetMode,
    refs: Option<&[Vec<f64>]>,
    normalize: bool,
) -> Result<SchurContent> {
    let n = transformer.projectors().n();
    let m = series.variables();
    if n > m {
        return Err(Error::argument(format!(
            "cannot take {n}-element subsets of {m} variables"
        )));
    }
    if let Some(refs) = refs {
        if refs.len() != m {
            return Err(Error::argument(format!(
                "{} reference points given for {m} variables",
                refs.len()
            )));
        }
    }
    let subsets = mode
        .subsets(m, n)
        .into_par_iter()
        .enumerate()
        .map(|(id, members)| {
            let restricted = series.select(&members)?;
            let sub_refs: Option<Vec<Vec<f64>>> = refs.map(|r| members.iter().map(|&i| r[i].clone()).collect());
            let result = transformer.transform_series(&restricted, sub_refs.as_deref(), normalize)?;
            Ok(SubsetAmplitudes {
                id,
                members,
                amplitudes: result.amplitudes(),
                residual: result.residual(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SchurContent {
        n,
        m,
        k: series.dim(),
        samples: series.samples(),
        mode,
        normalize,
        partitions: transformer.partitions(),
        subsets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    L1,
    L2,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| x - y);
        match self {
            Metric::L1 => diffs.map(f64::abs).sum(),
            Metric::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LabeledClass {
    pub label: String,
    pub series: DataSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScore {
    pub label: String,
    /// Per-partition mean amplitude over the class's own `n`-subsets.
    pub content_means: Vec<f64>,
    /// Per-partition mean over `(n−1)`-subsets augmented with the candidate.
    pub augmented_means: Vec<f64>,
    pub l1: f64,
    pub l2: f64,
}

impl ClassScore {
    pub fn score(&self, metric: Metric) -> f64 {
        match metric {
            Metric::L1 => self.l1,
            Metric::L2 => self.l2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub n: usize,
    pub metric: Metric,
    pub partitions: Vec<Partition>,
    pub scores: Vec<ClassScore>,
    /// Index into `scores` of the chosen class.
    pub chosen: usize,
    pub label: String,
    /// Labels of later classes whose score equals the chosen one.
    pub tied_with: Vec<String>,
}

impl Classification {
    pub fn is_tie(&self) -> bool {
        !self.tied_with.is_empty()
    }
}

/// Assigns `candidate` (a single variable) to the class whose `n`-factor
/// content means move least when `n`-subsets are replaced by `(n−1)`-subsets
/// augmented with the candidate. Ties go to the earliest class.
pub fn classify(
    classes: &[LabeledClass],
    candidate: &DataSeries,
    n: usize,
    metric: Metric,
    normalize: bool,
    limits: &Limits,
) -> Result<Classification> {
    let first = classes
        .first()
        .ok_or_else(|| Error::argument("at least one class is required"))?;
    let transformer = SchurTransformer::new(n, first.series.dim(), limits)?;
    classify_with(&transformer, classes, candidate, metric, normalize)
}

/// Like [`classify`], with projectors supplied by the caller.
pub fn classify_with(
    transformer: &SchurTransformer,
    classes: &[LabeledClass],
    candidate: &DataSeries,
    metric: Metric,
    normalize: bool,
) -> Result<Classification> {
    let n = transformer.projectors().n();
    if classes.is_empty() {
        return Err(Error::argument("at least one class is required"));
    }
    if candidate.variables() != 1 {
        return Err(Error::argument(format!(
            "the candidate must be a single variable, got {}",
            candidate.variables()
        )));
    }
    if candidate.dim() != transformer.projectors().k() {
        return Err(Error::argument(format!(
            "candidate has k={} but the projectors were built for k={}",
            candidate.dim(),
            transformer.projectors().k()
        )));
    }
    for class in classes {
        let s = &class.series;
        if s.samples() != candidate.samples() || s.dim() != candidate.dim() {
            return Err(Error::argument(format!(
                "candidate has N={}, k={} but class {:?} has N={}, k={}",
                candidate.samples(),
                candidate.dim(),
                class.label,
                s.samples(),
                s.dim()
            )));
        }
        if s.variables() < n {
            return Err(Error::argument(format!(
                "class {:?} has {} variables, fewer than n = {n}",
                class.label,
                s.variables()
            )));
        }
    }
    let partitions = transformer.partitions();
    let scores = classes
        .iter()
        .map(|class| {
            let content = schur_content_with(transformer, &class.series, SubsetMode::All, None, normalize)?;
            let content_means = content.means();
            let augmented = (0..class.series.variables())
                .combinations(n - 1)
                .map(|members| {
                    let series = class.series.select(&members)?.join(candidate)?;
                    Ok(transformer.transform_series(&series, None, normalize)?.amplitudes())
                })
                .collect::<Result<Vec<_>>>()?;
            let augmented_means = mean_amplitudes(partitions.len(), augmented.iter().map(Vec::as_slice));
            Ok(ClassScore {
                label: class.label.clone(),
                l1: Metric::L1.distance(&content_means, &augmented_means),
                l2: Metric::L2.distance(&content_means, &augmented_means),
                content_means,
                augmented_means,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let chosen = scores
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.score(metric).total_cmp(&b.score(metric)))
        .map(|(i, _)| i)
        .expect("at least one class");
    let best = scores[chosen].score(metric);
    let tied_with = scores
        .iter()
        .enumerate()
        .filter(|&(i, s)| i != chosen && s.score(metric) == best)
        .map(|(_, s)| s.label.clone())
        .collect();
    Ok(Classification {
        n,
        metric,
        partitions,
        label: scores[chosen].label.clone(),
        scores,
        chosen,
        tied_with,
    })
}
