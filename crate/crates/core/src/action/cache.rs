//! On-disk cache of projector numerators.
//!
//! One text file per partition, named `proj_n{n}_k{k}_{parts}.txt` with parts
//! joined by `-`. The first line is the header `n k lambda nnz`, with `lambda`
//! written as comma-separated parts; each following line is a `row col value`
//! triple of the integer numerator `Num(λ)` (denominator `n!`), in row-major
//! order. Loading a set re-runs the resolution-of-identity and rank checks.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{BlockMatrix, ProjectorSet, WeightBasis};
use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::Partition;

pub fn cache_file(dir: &Path, n: usize, k: usize, lambda: &Partition) -> PathBuf {
    let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
    dir.join(format!("proj_n{n}_k{k}_{}.txt", parts.join("-")))
}

pub fn save(set: &ProjectorSet, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for projector in set.projectors() {
        let path = cache_file(dir, set.n(), set.k(), projector.lambda());
        let triplets = projector.numerator().triplets();
        let write = || -> std::io::Result<()> {
            let mut out = BufWriter::new(fs::File::create(&path)?);
            let parts: Vec<String> = projector.lambda().parts().iter().map(|p| p.to_string()).collect();
            writeln!(out, "{} {} {} {}", set.n(), set.k(), parts.join(","), triplets.len())?;
            for (r, c, v) in &triplets {
                writeln!(out, "{r} {c} {v}")?;
            }
            out.flush()
        };
        write().map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

/// Loads a complete set, or `Ok(None)` when any file is missing.
pub fn load(n: usize, k: usize, dir: &Path, limits: &Limits) -> Result<Option<ProjectorSet>> {
    limits.admit_projectors(n, k)?;
    let table = character_table(n)?;
    let paths: Vec<PathBuf> = table.partitions().iter().map(|l| cache_file(dir, n, k, l)).collect();
    if paths.iter().any(|p| !p.is_file()) {
        return Ok(None);
    }
    let basis = WeightBasis::new(n, k)?;
    let numerators = table
        .partitions()
        .iter()
        .zip(&paths)
        .map(|(lambda, path)| read_numerator(path, n, k, lambda, &basis).map(Some))
        .collect::<Result<Vec<_>>>()?;
    let set = ProjectorSet::from_numerators(n, k, basis, table, numerators)?;
    set.check_identity_and_ranks()?;
    Ok(Some(set))
}

/// Loads from `dir` when a verified copy is there, otherwise builds and saves.
pub fn load_or_build(n: usize, k: usize, dir: &Path, limits: &Limits) -> Result<ProjectorSet> {
    if let Some(set) = load(n, k, dir, limits)? {
        return Ok(set);
    }
    let set = ProjectorSet::build(n, k, limits)?;
    save(&set, dir)?;
    Ok(set)
}

fn read_numerator(
    path: &Path,
    n: usize,
    k: usize,
    lambda: &Partition,
    basis: &std::sync::Arc<WeightBasis>,
) -> Result<BlockMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let at = |line: usize| format!("{}:{}", path.display(), line);
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::data(at(1), "empty projector file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::data(at(1), "header must be `n k lambda nnz`"));
    }
    let header_n: usize = parse_field(fields[0], &at(1))?;
    let header_k: usize = parse_field(fields[1], &at(1))?;
    let header_lambda: Partition = fields[2]
        .parse()
        .map_err(|e: Error| Error::data(at(1), e.to_string()))?;
    let nnz: usize = parse_field(fields[3], &at(1))?;
    if header_n != n || header_k != k || &header_lambda != lambda {
        return Err(Error::data(
            at(1),
            format!("header describes n={header_n} k={header_k} {header_lambda}, expected n={n} k={k} {lambda}"),
        ));
    }
    let mut triplets = Vec::with_capacity(nnz);
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let loc = at(idx + 1);
        let values: Vec<&str> = line.split_whitespace().collect();
        if values.len() != 3 {
            return Err(Error::data(loc, "expected `row col value`"));
        }
        triplets.push((
            parse_field::<usize>(values[0], &loc)?,
            parse_field::<usize>(values[1], &loc)?,
            parse_field::<i64>(values[2], &loc)?,
        ));
    }
    if triplets.len() != nnz {
        return Err(Error::data(
            at(1),
            format!("header promises {nnz} entries, file has {}", triplets.len()),
        ));
    }
    BlockMatrix::from_triplets(basis, triplets).map_err(|e| Error::data(path.display().to_string(), e.to_string()))
}

fn parse_field<T: std::str::FromStr>(token: &str, location: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::data(location, format!("cannot parse {token:?}")))
}
