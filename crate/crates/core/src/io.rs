//! Landmark file ingestion and result documents.
//!
//! Input is one point file per variable (e.g. per timepoint). Each file has
//! one landmark per row and `k` numeric columns separated by whitespace
//! and/or commas; `#` starts a comment and blank lines are skipped. Row `j`
//! of every file refers to the same landmark. A manifest lists the point
//! files in order, one per line, optionally followed by a tab and a label;
//! relative paths are resolved against the manifest's directory.
//!
//! Results are written as a fixed-width table, a JSON document that
//! round-trips every field, or a long-format CSV for plotting with one row
//! per (partition, subset).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::statistics::{Centering, CenteringKind, DataSeries};
use crate::transform::{Classification, SchurContent, SchurResult, SubsetMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub label: Option<String>,
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    let entries: Vec<ManifestEntry> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|line| {
            let (file, label) = match line.split_once('\t') {
                Some((f, l)) => (f.trim(), Some(l.trim().to_string()).filter(|l| !l.is_empty())),
                None => (line.trim(), None),
            };
            ManifestEntry {
                path: base.join(file),
                label,
            }
        })
        .collect();
    if entries.is_empty() {
        return Err(Error::data(path.display().to_string(), "manifest lists no files"));
    }
    Ok(entries)
}

/// Parses the rows of one point file. `source` names the file in errors.
pub fn parse_points(text: &str, source: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let row = content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(col, token)| parse_number(token, &format!("{source}:{line_no}:{}", col + 1)))
            .collect::<Result<Vec<f64>>>()?;
        match width {
            None => width = Some((row.len(), line_no)),
            Some((w, first)) if w != row.len() => {
                return Err(Error::data(
                    format!("{source}:{line_no}"),
                    format!("{} columns, but line {first} has {w}", row.len()),
                ));
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::data(source, "no data rows"));
    }
    Ok(rows)
}

fn parse_number(token: &str, location: &str) -> Result<f64> {
    let plain = token
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
    match token.parse::<f64>() {
        Ok(v) if plain && v.is_finite() => Ok(v),
        _ => Err(Error::data(location, format!("not a finite number: {token:?}"))),
    }
}

pub fn read_point_file(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_points(&text, &path.display().to_string())
}

/// Reads one point file per variable, in the given order.
pub fn read_series(paths: &[PathBuf]) -> Result<DataSeries> {
    if paths.is_empty() {
        return Err(Error::argument("no input files"));
    }
    let mut variables: Vec<Vec<Vec<f64>>> = Vec::with_capacity(paths.len());
    for path in paths {
        let points = read_point_file(path)?;
        if let Some(first) = variables.first() {
            let name = path.display();
            if points.len() != first.len() {
                return Err(Error::data(
                    name.to_string(),
                    format!("{} rows, but {} has {}", points.len(), paths[0].display(), first.len()),
                ));
            }
            if points[0].len() != first[0].len() {
                return Err(Error::data(
                    format!("{name}, row 1"),
                    format!(
                        "{} columns, but {} has {}",
                        points[0].len(),
                        paths[0].display(),
                        first[0].len()
                    ),
                ));
            }
        }
        variables.push(points);
    }
    DataSeries::from_variables(&variables)
}

pub fn read_series_from_manifest(manifest: &Path) -> Result<DataSeries> {
    let entries = read_manifest(manifest)?;
    let paths: Vec<PathBuf> = entries.iter().map(|e| e.path.clone()).collect();
    let series = read_series(&paths)?;
    if entries.iter().any(|e| e.label.is_some()) {
        let labels = entries
            .iter()
            .enumerate()
            .map(|(i, e)| e.label.clone().unwrap_or_else(|| format!("v{}", i + 1)))
            .collect();
        return series.with_labels(labels);
    }
    Ok(series)
}

/// Reference points: one `k`-vector per line, one line per variable.
pub fn read_refs(path: &Path) -> Result<Vec<Vec<f64>>> {
    read_point_file(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocumentKind {
    Transform,
    Content,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    /// Number of input variables `m`.
    pub variables: usize,
    pub mode: Option<SubsetMode>,
    pub normalize: bool,
    pub centering: CenteringKind,
    /// Reference points, when a non-central tensor was requested.
    pub refs: Option<Vec<Vec<f64>>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetRecord {
    pub id: usize,
    /// 1-based variable numbers.
    pub members: Vec<usize>,
    pub amplitudes: Vec<f64>,
    pub residual: f64,
}

/// Self-describing result of a `transform` or `content` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub kind: DocumentKind,
    pub meta: RunMeta,
    pub partitions: Vec<Partition>,
    pub subsets: Vec<SubsetRecord>,
}

impl ResultDocument {
    pub fn from_transform(result: &SchurResult, series: &DataSeries, centering: &Centering, normalize: bool) -> Self {
        ResultDocument {
            kind: DocumentKind::Transform,
            meta: RunMeta {
                n: result.n(),
                k: result.k(),
                samples: series.samples(),
                variables: series.variables(),
                mode: None,
                normalize,
                centering: centering.kind,
                refs: (centering.kind == CenteringKind::Reference).then(|| centering.points.clone()),
                labels: series.labels().map(<[String]>::to_vec),
            },
            partitions: result.partitions(),
            subsets: vec![SubsetRecord {
                id: 0,
                members: (1..=series.variables()).collect(),
                amplitudes: result.amplitudes(),
                residual: result.residual(),
            }],
        }
    }

    pub fn from_content(content: &SchurContent, labels: Option<&[String]>, refs: Option<&[Vec<f64>]>) -> Self {
        ResultDocument {
            kind: DocumentKind::Content,
            meta: RunMeta {
                n: content.n,
                k: content.k,
                samples: content.samples,
                variables: content.m,
                mode: Some(content.mode),
                normalize: content.normalize,
                centering: if refs.is_some() {
                    CenteringKind::Reference
                } else {
                    CenteringKind::SampleMean
                },
                refs: refs.map(<[Vec<f64>]>::to_vec),
                labels: labels.map(<[String]>::to_vec),
            },
            partitions: content.partitions.clone(),
            subsets: content
                .subsets
                .iter()
                .map(|s| SubsetRecord {
                    id: s.id,
                    members: s.members.iter().map(|i| i + 1).collect(),
                    amplitudes: s.amplitudes.clone(),
                    residual: s.residual,
                })
                .collect(),
        }
    }

    /// Mean amplitude per partition over all subsets.
    pub fn means(&self) -> Vec<f64> {
        let count = self.subsets.len().max(1) as f64;
        (0..self.partitions.len())
            .map(|p| self.subsets.iter().map(|s| s.amplitudes[p]).sum::<f64>() / count)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Struct,
    PlotCsv,
}

pub fn render(doc: &ResultDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => render_table(doc),
        OutputFormat::Struct => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
            s.push('\n');
            s
        }
        OutputFormat::PlotCsv => render_plot_csv(doc),
    }
}

/// Writes the rendered document to `out`, or stdout when `out` is `None`.
pub fn write_result(doc: &ResultDocument, format: OutputFormat, out: Option<&Path>) -> Result<()> {
    let text = render(doc, format);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn parse_struct(text: &str) -> Result<ResultDocument> {
    serde_json::from_str(text).map_err(|e| Error::data(format!("line {}", e.line()), e.to_string()))
}

/// Renders a classification: per-class scores, the chosen label and any tie.
pub fn render_classification(result: &Classification, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Struct => {
            out = serde_json::to_string_pretty(result).expect("classifications always serialize");
            out.push('\n');
        }
        OutputFormat::PlotCsv => {
            out.push_str("label,l1,l2,chosen\n");
            for (i, s) in result.scores.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    s.label,
                    sig12(s.l1),
                    sig12(s.l2),
                    i == result.chosen
                );
            }
        }
        OutputFormat::Table => {
            let metric = match result.metric {
                crate::transform::Metric::L1 => "l1",
                crate::transform::Metric::L2 => "l2",
            };
            let width = result.scores.iter().map(|s| s.label.len()).max().unwrap_or(0).max(5);
            let _ = writeln!(out, "# classify n={} metric={metric}", result.n);
            let _ = writeln!(out, "{:<width$} {:>20} {:>20}", "class", "l1", "l2");
            for (i, s) in result.scores.iter().enumerate() {
                let mark = if i == result.chosen { " *" } else { "" };
                let _ = writeln!(out, "{:<width$} {:>20} {:>20}{mark}", s.label, sig12(s.l1), sig12(s.l2));
            }
            let _ = writeln!(out, "label: {}", result.label);
            if result.is_tie() {
                let _ = writeln!(
                    out,
                    "tie: {} scores equal to {}",
                    result.label,
                    result.tied_with.join(", ")
                );
            }
        }
    }
    out
}

fn render_table(doc: &ResultDocument) -> String {
    let m = &doc.meta;
    let mut out = String::new();
    let kind = match doc.kind {
        DocumentKind::Transform => "schur transform",
        DocumentKind::Content => "schur content",
    };
    let mode = match m.mode {
        Some(SubsetMode::All) => " mode=all",
        Some(SubsetMode::Sequential) => " mode=seq",
        None => "",
    };
    let centering = match m.centering {
        CenteringKind::SampleMean => "mean",
        CenteringKind::Reference => "refs",
    };
    let _ = writeln!(
        out,
        "# {kind} n={} k={} N={} m={}{mode} normalize={} centering={centering}",
        m.n, m.k, m.samples, m.variables, m.normalize
    );
    match doc.kind {
        DocumentKind::Transform => {
            let subset = &doc.subsets[0];
            let _ = writeln!(out, "{:<16} {:>20}", "partition", "amplitude");
            for (lambda, amp) in doc.partitions.iter().zip(&subset.amplitudes) {
                let _ = writeln!(out, "{:<16} {:>20}", lambda.to_string(), sig12(*amp));
            }
            let _ = writeln!(out, "{:<16} {:>20}", "residual", sig12(subset.residual));
        }
        DocumentKind::Content => {
            let members_width = doc
                .subsets
                .iter()
                .map(|s| join_members(&s.members).len())
                .max()
                .unwrap_or(0)
                .max(7);
            let _ = write!(out, "{:<6} {:<members_width$}", "subset", "members");
            for lambda in &doc.partitions {
                let _ = write!(out, " {:>20}", lambda.to_string());
            }
            let _ = writeln!(out, " {:>20}", "residual");
            for s in &doc.subsets {
                let _ = write!(out, "{:<6} {:<members_width$}", s.id, join_members(&s.members));
                for a in &s.amplitudes {
                    let _ = write!(out, " {:>20}", sig12(*a));
                }
                let _ = writeln!(out, " {:>20}", sig12(s.residual));
            }
            let _ = write!(out, "{:<6} {:<members_width$}", "mean", "");
            for a in doc.means() {
                let _ = write!(out, " {:>20}", sig12(a));
            }
            out.push('\n');
        }
    }
    out
}

fn render_plot_csv(doc: &ResultDocument) -> String {
    let mut out = String::from("partition,subset_id,members,amplitude\n");
    for (p, lambda) in doc.partitions.iter().enumerate() {
        for s in &doc.subsets {
            let _ = writeln!(
                out,
                "\"{lambda}\",{},{},{}",
                s.id,
                join_members(&s.members),
                sig12(s.amplitudes[p])
            );
        }
    }
    out
}

fn join_members(members: &[usize]) -> String {
    members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
}

/// Formats with 12 significant digits, trimming trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}
