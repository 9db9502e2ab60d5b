use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use schur_transform::action::cache;
use schur_transform::io::{self, OutputFormat, ResultDocument};
use schur_transform::transform::{classify_with, schur_content_with, LabeledClass};
use schur_transform::{
    character_table, check_projectors, sample_covariance_tensor, DataSeries, Limits, ProjectorSet, SchurTransformer,
    SubsetMode, VerificationReport,
};

use crate::args::{Input, OutputArgs, StatsArgs};

pub struct RunContext {
    pub limits: Limits,
    pub cache: Option<PathBuf>,
}

impl RunContext {
    fn projectors(&self, n: usize, k: usize) -> Result<Arc<ProjectorSet>> {
        Ok(match &self.cache {
            Some(dir) => Arc::new(cache::load_or_build(n, k, dir, &self.limits)?),
            None => ProjectorSet::shared(n, k, &self.limits)?,
        })
    }

    fn transformer(&self, n: usize, k: usize) -> Result<SchurTransformer> {
        Ok(SchurTransformer::from_projectors(self.projectors(n, k)?))
    }
}

/// Character table with rows and columns running from the identity class
/// (or the sign character) up to the full cycle (or the trivial character).
pub fn table(ctx: &RunContext, n: usize) -> Result<String> {
    ctx.limits.check_n(n)?;
    let table = character_table(n)?;
    let order: Vec<usize> = (0..table.partitions().len()).rev().collect();

    let mut header_sizes = vec!["c.c. size".to_string()];
    let mut header_reps = vec!["c.c. rep.".to_string()];
    for &c in &order {
        header_sizes.push(table.class_sizes()[c].to_string());
        header_reps.push(table.partitions()[c].cycle_notation());
    }
    let mut rows = vec![header_sizes, header_reps];
    for &r in &order {
        let mut row = vec![table.partitions()[r].to_string()];
        row.extend(order.iter().map(|&c| table.values()[r][c].to_string()));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|col| rows.iter().map(|r| r[col].len()).max().unwrap_or(0))
        .collect();

    let mut out = format!("# character table of S_{n}\n");
    for row in &rows {
        let mut line = format!("{:<w$}", row[0], w = widths[0]);
        for (cell, w) in row.iter().zip(&widths).skip(1) {
            let _ = write!(line, "  {cell:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

pub fn selfcheck(ctx: &RunContext, n: usize, k: usize) -> Result<VerificationReport> {
    let set = ctx.projectors(n, k)?;
    Ok(check_projectors(&set))
}

fn read_input(input: &Input) -> Result<DataSeries> {
    Ok(match &input.manifest {
        Some(manifest) => io::read_series_from_manifest(manifest)?,
        None => io::read_series(&input.files)?,
    })
}

fn read_refs(stats: &StatsArgs) -> Result<Option<Vec<Vec<f64>>>> {
    stats.refs.as_deref().map(io::read_refs).transpose().map_err(Into::into)
}

fn emit(text: String, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn transform(ctx: &RunContext, input: &Input, stats: &StatsArgs, output: &OutputArgs) -> Result<()> {
    let series = read_input(input)?;
    let refs = read_refs(stats)?;
    let transformer = ctx.transformer(series.variables(), series.dim())?;
    let tensor = sample_covariance_tensor(&series, refs.as_deref(), stats.normalize)?;
    let result = transformer.transform(&tensor)?;
    let doc = ResultDocument::from_transform(&result, &series, tensor.centering(), stats.normalize);
    emit(io::render(&doc, output.format.into()), output.out.as_deref())
}

pub fn content(
    ctx: &RunContext,
    input: &Input,
    n: usize,
    mode: SubsetMode,
    stats: &StatsArgs,
    output: &OutputArgs,
) -> Result<()> {
    let series = read_input(input)?;
    let refs = read_refs(stats)?;
    if n > series.variables() {
        anyhow::bail!(schur_transform::Error::Argument(format!(
            "cannot take {n}-element subsets of {} variables",
            series.variables()
        )));
    }
    let transformer = ctx.transformer(n, series.dim())?;
    let content = schur_content_with(&transformer, &series, mode, refs.as_deref(), stats.normalize)?;
    let doc = ResultDocument::from_content(&content, series.labels(), refs.as_deref());
    emit(io::render(&doc, output.format.into()), output.out.as_deref())
}

pub fn classify(
    ctx: &RunContext,
    classes: &[(String, PathBuf)],
    candidate: &Path,
    n: usize,
    metric: schur_transform::Metric,
    normalize: bool,
    output: &OutputArgs,
) -> Result<()> {
    let classes = classes
        .iter()
        .map(|(label, manifest)| {
            Ok(LabeledClass {
                label: label.clone(),
                series: io::read_series_from_manifest(manifest)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let candidate = io::read_series(&[candidate.to_path_buf()])?;
    let transformer = ctx.transformer(n, candidate.dim())?;
    let result = classify_with(&transformer, &classes, &candidate, metric, normalize)?;
    let format: OutputFormat = output.format.into();
    emit(io::render_classification(&result, format), output.out.as_deref())
}
