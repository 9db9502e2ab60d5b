//! Data series and sample covariance tensors.
//!
//! A [`DataSeries`] holds `N` matched samples of `n` variables, each a point
//! in `R^k`. Its sample covariance tensor is the unnormalized sum over samples
//! of the tensor product of the centered points, laid out as a vector of
//! length `k^n` in lexicographic index order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Sample `j`, variable `i`, coordinate `α`, stored as `values[(j*n + i)*k + α]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSeries {
    samples: usize,
    variables: usize,
    dim: usize,
    values: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl DataSeries {
    pub fn new(samples: usize, variables: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        if samples == 0 || variables == 0 || dim == 0 {
            return Err(Error::argument(format!(
                "a data series needs N, n, k ≥ 1 (got N={samples}, n={variables}, k={dim})"
            )));
        }
        if values.len() != samples * variables * dim {
            return Err(Error::argument(format!(
                "{} values do not fill N={samples} × n={variables} × k={dim}",
                values.len()
            )));
        }
        Ok(DataSeries {
            samples,
            variables,
            dim,
            values,
            labels: None,
        })
    }

    pub fn from_fn(
        samples: usize,
        variables: usize,
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(samples * variables * dim);
        for j in 0..samples {
            for i in 0..variables {
                for a in 0..dim {
                    values.push(f(j, i, a));
                }
            }
        }
        DataSeries::new(samples, variables, dim, values)
    }

    /// Builds a series from per-variable point lists, `points[i][j]` being the
    /// point of sample `j` for variable `i`.
    pub fn from_variables(points: &[Vec<Vec<f64>>]) -> Result<Self> {
        let variables = points.len();
        let samples = points.first().map_or(0, Vec::len);
        let dim = points.first().and_then(|v| v.first()).map_or(0, Vec::len);
        for (i, var) in points.iter().enumerate() {
            if var.len() != samples {
                return Err(Error::data(
                    format!("variable {}", i + 1),
                    format!("{} samples, expected {samples}", var.len()),
                ));
            }
            if let Some(j) = var.iter().position(|p| p.len() != dim) {
                return Err(Error::data(
                    format!("variable {}, sample {}", i + 1, j + 1),
                    format!("{} coordinates, expected {dim}", var[j].len()),
                ));
            }
        }
        DataSeries::from_fn(samples, variables, dim, |j, i, a| points[i][j][a])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.variables {
            return Err(Error::argument(format!(
                "{} labels for {} variables",
                labels.len(),
                self.variables
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `N`.
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// `n`, the number of variables (series length).
    pub fn variables(&self) -> usize {
        self.variables
    }

    /// `k`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn get(&self, sample: usize, variable: usize, coord: usize) -> f64 {
        self.values[(sample * self.variables + variable) * self.dim + coord]
    }

    pub fn point(&self, sample: usize, variable: usize) -> &[f64] {
        let start = (sample * self.variables + variable) * self.dim;
        &self.values[start..start + self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The series restricted to `variables`, in the given order.
    pub fn select(&self, variables: &[usize]) -> Result<DataSeries> {
        if let Some(&bad) = variables.iter().find(|&&i| i >= self.variables) {
            return Err(Error::argument(format!(
                "variable {bad} out of range for a series of {} variables",
                self.variables
            )));
        }
        let mut out = DataSeries::from_fn(self.samples, variables.len(), self.dim, |j, i, a| {
            self.get(j, variables[i], a)
        })?;
        out.labels = self
            .labels
            .as_ref()
            .map(|l| variables.iter().map(|&i| l[i].clone()).collect());
        Ok(out)
    }

    /// Appends the variables of `other`, which must match in `N` and `k`.
    pub fn join(&self, other: &DataSeries) -> Result<DataSeries> {
        if other.samples != self.samples || other.dim != self.dim {
            return Err(Error::argument(format!(
                "cannot join series with N={}, k={} to one with N={}, k={}",
                other.samples, other.dim, self.samples, self.dim
            )));
        }
        let variables = self.variables + other.variables;
        let mut out = DataSeries::from_fn(self.samples, variables, self.dim, |j, i, a| {
            if i < self.variables {
                self.get(j, i, a)
            } else {
                other.get(j, i - self.variables, a)
            }
        })?;
        if let (Some(a), Some(b)) = (&self.labels, &other.labels) {
            out.labels = Some(a.iter().chain(b).cloned().collect());
        }
        Ok(out)
    }

    fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(idx) => {
                let a = idx % self.dim;
                let i = (idx / self.dim) % self.variables;
                let j = idx / (self.dim * self.variables);
                Err(Error::data(
                    format!("sample {}, variable {}, coordinate {}", j + 1, i + 1, a + 1),
                    format!("non-finite value {}", self.values[idx]),
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenteringKind {
    /// Per-variable sample means were subtracted.
    SampleMean,
    /// User-supplied reference points were subtracted (non-central tensor).
    Reference,
}

/// What was subtracted from each variable: one `k`-vector per variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Centering {
    pub kind: CenteringKind,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Centered {
    pub series: DataSeries,
    pub centering: Centering,
}

/// Subtracts per-variable sample means, or the given reference points.
pub fn center(series: &DataSeries, refs: Option<&[Vec<f64>]>) -> Result<Centered> {
    series.check_finite()?;
    let (n, k) = (series.variables, series.dim);
    let centering = match refs {
        Some(refs) => {
            if refs.len() != n || refs.iter().any(|r| r.len() != k) {
                return Err(Error::argument(format!(
                    "reference points must be {n} points of dimension {k}"
                )));
            }
            if refs.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::data("reference points", "non-finite coordinate"));
            }
            Centering {
                kind: CenteringKind::Reference,
                points: refs.to_vec(),
            }
        }
        None => {
            let count = series.samples as f64;
            let points = (0..n)
                .map(|i| {
                    (0..k)
                        .map(|a| (0..series.samples).map(|j| series.get(j, i, a)).sum::<f64>() / count)
                        .collect()
                })
                .collect();
            Centering {
                kind: CenteringKind::SampleMean,
                points,
            }
        }
    };
    let mut values = series.values.clone();
    for (idx, v) in values.iter_mut().enumerate() {
        let a = idx % k;
        let i = (idx / k) % n;
        *v -= centering.points[i][a];
    }
    Ok(Centered {
        series: DataSeries {
            values,
            ..series.clone()
        },
        centering,
    })
}

/// A covariance tensor in `(R^k)^{⊗n}`, stored densely in tensor-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceTensor {
    n: usize,
    k: usize,
    values: Vec<f64>,
    samples: usize,
    normalized: bool,
    centering: Centering,
}

impl CovarianceTensor {
    /// Wraps raw tensor entries, e.g. for transforming a tensor that did not
    /// come from a data series.
    pub fn from_values(n: usize, k: usize, values: Vec<f64>) -> Result<Self> {
        let len = tensor_len(n, k)?;
        if values.len() != len {
            return Err(Error::argument(format!(
                "{} entries given for a tensor of length k^n = {len}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::data("tensor", "non-finite entry"));
        }
        Ok(CovarianceTensor {
            n,
            k,
            values,
            samples: 0,
            normalized: false,
            centering: Centering {
                kind: CenteringKind::Reference,
                points: vec![vec![0.0; k]; n],
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn centering(&self) -> &Centering {
        &self.centering
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

fn tensor_len(n: usize, k: usize) -> Result<usize> {
    k.checked_pow(n as u32)
        .ok_or_else(|| Error::argument(format!("k^n overflows for n = {n}, k = {k}")))
}

/// `T = Σ_j (v^j_1 − v̄_1) ⊗ ⋯ ⊗ (v^j_n − v̄_n)`, divided by `N` when
/// `normalize` is set.
pub fn sample_covariance_tensor(
    series: &DataSeries,
    refs: Option<&[Vec<f64>]>,
    normalize: bool,
) -> Result<CovarianceTensor> {
    let Centered {
        series: centered,
        centering,
    } = center(series, refs)?;
    let (n, k) = (centered.variables, centered.dim);
    let len = tensor_len(n, k)?;
    let mut total = vec![0.0; len];
    let mut product = Vec::with_capacity(len);
    let mut next = Vec::with_capacity(len);
    // Samples are accumulated in order so results are reproducible.
    for j in 0..centered.samples {
        product.clear();
        product.push(1.0);
        for i in 0..n {
            let point = centered.point(j, i);
            next.clear();
            for &p in &product {
                next.extend(point.iter().map(|&x| p * x));
            }
            std::mem::swap(&mut product, &mut next);
        }
        for (t, p) in total.iter_mut().zip(&product) {
            *t += p;
        }
    }
    if normalize {
        let count = centered.samples as f64;
        total.iter_mut().for_each(|v| *v /= count);
    }
    Ok(CovarianceTensor {
        n,
        k,
        values: total,
        samples: centered.samples,
        normalized: normalize,
        centering,
    })
}

/// Covariance tensor of type `(l_1,…,l_n)`: variable `i` repeated `l_i` times.
pub fn typed_covariance_tensor(
    series: &DataSeries,
    repeats: &[usize],
    refs: Option<&[Vec<f64>]>,
    normalize: bool,
    limits: &Limits,
) -> Result<CovarianceTensor> {
    if repeats.len() != series.variables {
        return Err(Error::argument(format!(
            "type has {} entries for {} variables",
            repeats.len(),
            series.variables
        )));
    }
    if repeats.contains(&0) {
        return Err(Error::argument("type entries must be positive"));
    }
    let order: usize = repeats.iter().sum();
    limits.check_n(order)?;
    let expanded: Vec<usize> = repeats
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| std::iter::repeat_n(i, l))
        .collect();
    // Center first so repeated copies share the variable's own reference.
    let centered = center(series, refs)?;
    let zeros = vec![vec![0.0; series.dim]; order];
    let mut tensor = sample_covariance_tensor(&centered.series.select(&expanded)?, Some(&zeros), normalize)?;
    tensor.centering = Centering {
        kind: centered.centering.kind,
        points: expanded.iter().map(|&i| centered.centering.points[i].clone()).collect(),
    };
    Ok(tensor)
}
