//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use schur_transform::action::{ClassSum, WeightBasis};
use schur_transform::partitions::{factorial, hook_length_dimension, schur_functor_dimension};
use schur_transform::transform::LabeledClass;
use schur_transform::{
    character_table, classify, enumerate_partitions, sample_covariance_tensor, BlockMatrix, DataSeries, Error, Limits,
    Metric, Partition, ProjectorSet, SchurTransformer,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

const BIN: &str = env!("CARGO_BIN_EXE_schur");

fn schur(args: &[&str]) -> std::process::Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SCHUR_BUDGET_MIB")
        .output()
        .expect("the schur binary runs")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_series(rng: &mut ChaCha8Rng, samples: usize, variables: usize, dim: usize) -> DataSeries {
    let values = (0..samples * variables * dim)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    DataSeries::new(samples, variables, dim, values).unwrap()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn transformer(n: usize, k: usize) -> SchurTransformer {
    SchurTransformer::new(n, k, &Limits::default()).unwrap()
}

// Character table of S_6 as printed in the reference table, rows in its order.
const S6_CLASS_SIZES: [u64; 11] = [1, 15, 45, 15, 40, 120, 40, 90, 90, 144, 120];
const S6_REPS: [&str; 11] = [
    "()",
    "(12)",
    "(12)(34)",
    "(12)(34)(56)",
    "(123)",
    "(123)(45)",
    "(123)(456)",
    "(1234)",
    "(1234)(56)",
    "(12345)",
    "(123456)",
];
const S6_ROWS: [[i64; 11]; 11] = [
    [1, -1, 1, -1, 1, -1, 1, -1, 1, 1, -1],
    [5, -3, 1, 1, 2, 0, -1, -1, -1, 0, 1],
    [9, -3, 1, -3, 0, 0, 0, 1, 1, -1, 0],
    [5, -1, 1, 3, -1, -1, 2, 1, -1, 0, 0],
    [10, -2, -2, 2, 1, 1, 1, 0, 0, 0, -1],
    [16, 0, 0, 0, -2, 0, -2, 0, 0, 1, 0],
    [5, 1, 1, -3, -1, 1, 2, -1, -1, 0, 0],
    [10, 2, -2, -2, 1, -1, 1, 0, 0, 0, 1],
    [9, 3, 1, 3, 0, 0, 0, -1, 1, -1, 0],
    [5, 3, 1, -1, 2, 0, -1, 1, -1, 0, -1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
];

fn character_table_fidelity() -> Outcome {
    let start = Instant::now();
    let out = schur(&["table", "6"]);
    let elapsed = start.elapsed();
    ensure!(out.status.success(), "exit status {}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();

    let sizes: Vec<u64> = lines[0]
        .strip_prefix("c.c. size")
        .ok_or("missing class-size line")?
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    ensure!(sizes == S6_CLASS_SIZES, "class sizes {sizes:?}");
    let reps: Vec<&str> = lines[1]
        .strip_prefix("c.c. rep.")
        .ok_or("missing representative line")?
        .split_whitespace()
        .collect();
    ensure!(reps == S6_REPS, "representatives {reps:?}");

    let mut got: Vec<Vec<i64>> = lines[2..]
        .iter()
        .map(|l| l.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect())
        .collect();
    let mut expected: Vec<Vec<i64>> = S6_ROWS.iter().map(|r| r.to_vec()).collect();
    ensure!(got.len() == 11, "{} rows", got.len());
    got.sort();
    expected.sort();
    ensure!(got == expected, "character rows differ");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("11 rows and class sizes match in {elapsed:.2?}"))
}

fn sum_of_numerators(set: &ProjectorSet) -> BlockMatrix {
    let mut sum = BlockMatrix::zeros(set.basis());
    for proj in set.projectors() {
        sum.add_scaled(proj.numerator(), 1).unwrap();
    }
    sum
}

fn resolution_of_identity() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=6 {
        for k in 1..=3 {
            let set = ProjectorSet::build(n, k, &Limits::default()).map_err(|e| e.to_string())?;
            let nf = factorial(n) as i64;
            let sum = sum_of_numerators(&set);
            ensure!(sum == BlockMatrix::scaled_identity(set.basis(), nf), "n={n} k={k}");
            // Dense cross-check on the diagonal and row sums.
            ensure!(
                sum.row_sums().iter().all(|&s| s == nf as i128) && (0..sum.dim()).all(|i| sum.get(i, i) == nf),
                "n={n} k={k} dense check"
            );
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!(
        "Σ Num(λ) = n!·I exactly for {cases} (n, k) pairs in {elapsed:.2?}"
    ))
}

/// `Σ_c f^λ χ_λ(c) S(c)` with class sums found by filtering all permutations.
fn brute_force_numerator(lambda: &Partition, k: usize) -> BlockMatrix {
    let n = lambda.n();
    let basis = WeightBasis::new(n, k).unwrap();
    let table = character_table(n).unwrap();
    let row = table.index_of(lambda).unwrap();
    let mut num = BlockMatrix::zeros(&basis);
    for (c, class) in table.partitions().iter().enumerate() {
        let s = ClassSum::build_by_filtering(class, &basis).unwrap();
        num.add_scaled(s.matrix(), table.degree(row) * table.values()[row][c])
            .unwrap();
    }
    num
}

fn projector_algebra() -> Outcome {
    let mut products = 0;
    for n in 1..=5 {
        for k in 1..=3 {
            let set = ProjectorSet::build(n, k, &Limits::default()).map_err(|e| e.to_string())?;
            let nf = factorial(n) as i64;
            for a in set.projectors() {
                let num_a = if a.is_vanishing() {
                    let brute = brute_force_numerator(a.lambda(), k);
                    ensure!(brute.is_zero(), "n={n} k={k} {} should vanish", a.lambda());
                    brute
                } else {
                    a.numerator().clone()
                };
                for b in set.projectors() {
                    let prod = num_a.mul(b.numerator()).map_err(|e| e.to_string())?;
                    if a.lambda() == b.lambda() {
                        let mut diff = prod;
                        diff.add_scaled(&num_a, -nf).unwrap();
                        ensure!(diff.is_zero(), "n={n} k={k} Num{}² ≠ n!·Num", a.lambda());
                    } else {
                        ensure!(prod.is_zero(), "n={n} k={k} Num{}·Num{} ≠ 0", a.lambda(), b.lambda());
                    }
                    products += 1;
                }
            }
        }
    }
    Ok(format!("{products} exact products checked"))
}

/// Standard tableaux counted by removing corners.
fn count_standard(shape: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if shape.iter().all(|&r| r == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(shape.as_slice()) {
        return v;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let below = shape.get(i + 1).copied().unwrap_or(0);
        if shape[i] > below {
            shape[i] -= 1;
            total += count_standard(shape, memo);
            shape[i] += 1;
        }
    }
    memo.insert(shape.clone(), total);
    total
}

/// Semistandard tableaux with entries `1..=k`, by exhaustive filling.
fn count_semistandard(shape: &[usize], k: usize) -> u128 {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    fn fill(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, k: usize) -> u128 {
        let Some(&(i, j)) = cells.get(idx) else {
            return 1;
        };
        let lo = [
            j.checked_sub(1).map(|jj| grid[i][jj]),
            i.checked_sub(1).map(|ii| grid[ii][j] + 1),
        ]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(1)
        .max(1);
        let mut total = 0;
        for v in lo..=k {
            grid[i][j] = v;
            total += fill(idx + 1, cells, grid, k);
        }
        total
    }
    fill(0, &cells, &mut grid, k)
}

fn dimension_identity() -> Outcome {
    let mut memo = HashMap::new();
    let mut checked = 0;
    for n in 1..=6 {
        for k in 1..=3 {
            let set = ProjectorSet::build(n, k, &Limits::default()).map_err(|e| e.to_string())?;
            let nf = factorial(n) as i128;
            let mut total = 0u128;
            for proj in set.projectors() {
                let lambda = proj.lambda();
                let f = count_standard(&mut lambda.parts().to_vec(), &mut memo);
                let d = count_semistandard(lambda.parts(), k);
                ensure!(f == hook_length_dimension(lambda), "hook length {lambda}");
                ensure!(d == schur_functor_dimension(lambda, k), "hook content {lambda} k={k}");
                let trace = proj.numerator().trace();
                ensure!(
                    trace % nf == 0 && (trace / nf) as u128 == f * d,
                    "n={n} k={k} {lambda}: trace {trace}"
                );
                total += f * d;
                checked += 1;
            }
            ensure!(total == (k as u128).pow(n as u32), "n={n} k={k}: total {total}");
        }
    }
    Ok(format!("{checked} traces equal f^λ·dim S^λ(R^k) and sum to k^n"))
}

fn vanishing_components() -> Outcome {
    let mut rng = rng(101);
    let mut zeros = 0;
    for n in 1..=5 {
        for k in 1..=3 {
            let t = transformer(n, k);
            for _ in 0..10 {
                let result = t
                    .transform_series(&random_series(&mut rng, 9, n, k), None, false)
                    .unwrap();
                for c in result.components().iter().filter(|c| c.lambda.len() > k) {
                    ensure!(
                        c.amplitude == 0.0,
                        "n={n} k={k} {} has amplitude {}",
                        c.lambda,
                        c.amplitude
                    );
                    zeros += 1;
                }
            }
        }
    }
    Ok(format!("{zeros} long-partition amplitudes exactly zero"))
}

fn two_factor_oracle() -> Outcome {
    let mut rng = rng(102);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let k = 1 + trial % 3;
        let samples = 3 + trial % 10;
        let series = random_series(&mut rng, samples, 2, k);
        let mean = |i: usize, a: usize| (0..samples).map(|j| series.get(j, i, a)).sum::<f64>() / samples as f64;
        let c: Vec<Vec<f64>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..samples)
                            .map(|j| (series.get(j, 0, a) - mean(0, a)) * (series.get(j, 1, b) - mean(1, b)))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let sym: Vec<f64> = (0..k * k).map(|i| (c[i / k][i % k] + c[i % k][i / k]) / 2.0).collect();
        let anti: Vec<f64> = (0..k * k).map(|i| (c[i / k][i % k] - c[i % k][i / k]) / 2.0).collect();
        let scale = norm(&c.concat());
        let result = transformer(2, k).transform_series(&series, None, false).unwrap();
        let e1 = distance(&result.component(&p("(2)")).unwrap().tensor, &sym) / scale;
        let e2 = distance(&result.component(&p("(1,1)")).unwrap().tensor, &anti) / scale;
        worst = worst.max(e1).max(e2);
    }
    ensure!(worst <= 1e-12, "worst relative error {worst:e}");
    Ok(format!("100 series, worst relative error {worst:.1e}"))
}

fn permutation_sum_oracle() -> Outcome {
    // (σ·T)[a] = T[a_σ(1), a_σ(2), a_σ(3)] on (R^2)^{⊗3}
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let chi = |lambda: &str, s: &[usize; 3]| -> f64 {
        let fixed = (0..3).filter(|&i| s[i] == i).count();
        match (lambda, fixed) {
            ("(3)", _) => 1.0,
            ("(1,1,1)", 3 | 0) => 1.0,
            ("(1,1,1)", _) => -1.0,
            ("(2,1)", f) => f as f64 - 1.0,
            _ => unreachable!(),
        }
    };
    let t3 = transformer(3, 2);
    let mut rng = rng(103);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let t = sample_covariance_tensor(&random_series(&mut rng, 7, 3, 2), None, false).unwrap();
        let result = t3.transform(&t).unwrap();
        for (lambda, degree) in [("(3)", 1.0), ("(2,1)", 2.0), ("(1,1,1)", 1.0)] {
            let mut expected = [0.0; 8];
            for s in &perms {
                for (idx, e) in expected.iter_mut().enumerate() {
                    let a = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
                    let src = a[s[0]] << 2 | a[s[1]] << 1 | a[s[2]];
                    *e += degree * chi(lambda, s) / 6.0 * t.values()[src];
                }
            }
            let err = distance(&result.component(&p(lambda)).unwrap().tensor, &expected) / t.norm();
            worst = worst.max(err);
        }
    }
    ensure!(worst <= 1e-12, "worst relative error {worst:e}");
    Ok(format!("50 tensors, worst relative error {worst:.1e}"))
}

fn identical_variables() -> Outcome {
    let mut rng = rng(104);
    for n in 2..=6 {
        for k in 1..=3 {
            let series = random_series(&mut rng, 15, 1, k).select(&vec![0; n]).unwrap();
            let result = transformer(n, k).transform_series(&series, None, false).unwrap();
            let top = Partition::new(vec![n]).unwrap();
            for c in result.components() {
                if c.lambda == top {
                    ensure!(c.amplitude > 0.0, "n={n} k={k}: symmetric amplitude is zero");
                } else {
                    ensure!(
                        c.amplitude <= 1e-12 * result.norm(),
                        "n={n} k={k} {}: {}",
                        c.lambda,
                        c.amplitude
                    );
                }
            }
        }
    }
    Ok("only λ=(n) is nonzero for n ≤ 6, k ≤ 3".into())
}

fn rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    loop {
        let mut m = [[0.0; 3]; 3];
        m.iter_mut().flatten().for_each(|x| *x = rng.sample(StandardNormal));
        let mut q = [[0.0; 3]; 3];
        let mut ok = true;
        for i in 0..3 {
            let mut v = m[i];
            for row in q.iter().take(i) {
                let dot: f64 = v.iter().zip(row).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(row).for_each(|(x, y)| *x -= dot * y);
            }
            let len = norm(&v);
            ok &= len > 1e-6;
            q[i] = v.map(|x| x / len);
        }
        if ok {
            return q;
        }
    }
}

fn invariance_suite() -> Outcome {
    let mut rng = rng(105);
    let (mut worst_order, mut worst_rot, mut worst_res): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for trial in 0..100 {
        let n = 2 + trial % 3;
        let t = transformer(n, 3);
        let series = random_series(&mut rng, 8 + trial % 13, n, 3);
        let base = t.transform_series(&series, None, false).unwrap();
        let scale = base.norm();
        let gap = |other: &[f64]| {
            base.amplitudes()
                .iter()
                .zip(other)
                .map(|(a, b)| (a - b).abs() / scale)
                .fold(0.0, f64::max)
        };

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let reordered = t
            .transform_series(&series.select(&order).unwrap(), None, false)
            .unwrap();
        worst_order = worst_order.max(gap(&reordered.amplitudes()));

        let q = rotation(&mut rng);
        let rotated_series = DataSeries::from_fn(series.samples(), n, 3, |j, i, a| {
            (0..3).map(|b| q[a][b] * series.get(j, i, b)).sum()
        })
        .unwrap();
        let rotated = t.transform_series(&rotated_series, None, false).unwrap();
        worst_rot = worst_rot.max(gap(&rotated.amplitudes()));

        for r in [&base, &reordered, &rotated] {
            worst_res = worst_res.max(r.residual() / r.norm().max(1.0));
        }
    }
    ensure!(worst_order <= 1e-12, "reordering changed amplitudes by {worst_order:e}");
    ensure!(worst_rot <= 1e-9, "rotation changed amplitudes by {worst_rot:e}");
    ensure!(worst_res <= 1e-10, "residual {worst_res:e}");
    Ok(format!(
        "reorder {worst_order:.1e}, rotation {worst_rot:.1e}, residual {worst_res:.1e}"
    ))
}

/// Six point files of 75 landmarks in R^3 drifting over time, plus a manifest.
fn write_landmark_fixture(dir: &Path, seed: u64) -> std::path::PathBuf {
    let mut rng = rng(seed);
    let base: Vec<[f64; 3]> = (0..75)
        .map(|_| {
            [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ]
        })
        .collect();
    let mut manifest = String::new();
    for t in 0..6 {
        let mut text = String::from("# x y z\n");
        for p in &base {
            let jitter: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            let q: Vec<String> = (0..3)
                .map(|a| format!("{:.6}", p[a] * (1.0 + 0.1 * t as f64) + 0.2 * jitter[a]))
                .collect();
            writeln!(text, "{}", q.join(" ")).unwrap();
        }
        let name = format!("t{t}.txt");
        fs::write(dir.join(&name), text).unwrap();
        writeln!(manifest, "{name}\tT{t}").unwrap();
    }
    let path = dir.join("series.manifest");
    fs::write(&path, manifest).unwrap();
    path
}

fn pipeline_scale() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_landmark_fixture(dir.path(), 106);
    let manifest = manifest.to_str().unwrap();
    let mut report = Vec::new();
    for (n, mode, expected) in [("3", "all", 20), ("4", "all", 15), ("3", "seq", 4), ("4", "seq", 3)] {
        let start = Instant::now();
        let out = schur(&[
            "content",
            "--manifest",
            manifest,
            "-n",
            n,
            "--mode",
            mode,
            "--format",
            "plot-csv",
        ]);
        let elapsed = start.elapsed();
        ensure!(
            out.status.success(),
            "n={n} {mode}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        ensure!(elapsed < Duration::from_secs(30), "n={n} {mode} took {elapsed:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let mut per_lambda: HashMap<String, usize> = HashMap::new();
        for line in text.lines().skip(1) {
            let lambda = line.rsplitn(4, ',').last().unwrap().to_string();
            *per_lambda.entry(lambda).or_default() += 1;
        }
        let partitions = enumerate_partitions(n.parse().unwrap()).unwrap().len();
        ensure!(
            per_lambda.len() == partitions,
            "n={n} {mode}: {} partitions",
            per_lambda.len()
        );
        ensure!(
            per_lambda.values().all(|&c| c == expected),
            "n={n} {mode}: rows per λ {per_lambda:?}"
        );
        report.push(format!("n={n} {mode}: {expected}/λ in {elapsed:.2?}"));
    }
    Ok(report.join(", "))
}

fn trajectory_class(rng: &mut ChaCha8Rng, base: &DataSeries, variables: usize, noise: f64) -> DataSeries {
    let series = base.select(&vec![0; variables]).unwrap();
    DataSeries::from_fn(series.samples(), variables, series.dim(), |j, i, a| {
        series.get(j, i, a) + noise * rng.sample::<f64, _>(StandardNormal)
    })
    .unwrap()
}

fn classifier_sanity() -> Outcome {
    let (samples, k, m, n) = (40, 3, 5, 3);
    let mut min_ratio = f64::INFINITY;
    for rep in 0..20 {
        let mut rng = rng(1000 + rep);
        // Class B shares the marginal law of the base; only the dependence differs.
        let base = random_series(&mut rng, samples, 1, k);
        let class_a = trajectory_class(&mut rng, &base, m, 0.05);
        let class_b = random_series(&mut rng, samples, m, k);
        let candidate = trajectory_class(&mut rng, &base, 1, 0.05);
        let classes = [
            LabeledClass {
                label: "A".into(),
                series: class_a,
            },
            LabeledClass {
                label: "B".into(),
                series: class_b,
            },
        ];
        for metric in [Metric::L1, Metric::L2] {
            let result = classify(&classes, &candidate, n, metric, false, &Limits::default()).unwrap();
            ensure!(
                result.label == "A" && !result.is_tie(),
                "repetition {rep} {metric:?}: chose {}",
                result.label
            );
            let (a, b) = (result.scores[0].score(metric), result.scores[1].score(metric));
            min_ratio = min_ratio.min(b / a);
        }
    }
    Ok(format!(
        "20/20 under L1 and L2, smallest score ratio B/A {min_ratio:.1}"
    ))
}

fn feasibility_guardrail() -> Outcome {
    let start = Instant::now();
    let err = ProjectorSet::build(10, 3, &Limits::default())
        .err()
        .ok_or("n=10, k=3 was admitted")?;
    ensure!(matches!(err, Error::Resource { .. }), "library error {err}");
    let out = schur(&["selfcheck", "10", "3"]);
    let elapsed = start.elapsed();
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure!(out.status.code() == Some(3), "exit status {}", out.status);
    ensure!(
        stderr.contains("resource budget exceeded") && stderr.contains("GiB"),
        "report {stderr}"
    );
    ensure!(elapsed < Duration::from_secs(2), "took {elapsed:?}");
    Ok(format!("refused in {elapsed:.2?}: {}", stderr.trim()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("character-table fidelity", character_table_fidelity),
        ("exact resolution of identity", resolution_of_identity),
        ("projector algebra", projector_algebra),
        ("dimension identity", dimension_identity),
        ("vanishing components", vanishing_components),
        ("two-factor oracle", two_factor_oracle),
        ("permutation-sum oracle", permutation_sum_oracle),
        ("identical variables", identical_variables),
        ("invariance suite", invariance_suite),
        ("pipeline scale", pipeline_scale),
        ("classifier sanity", classifier_sanity),
        ("feasibility guardrail", feasibility_guardrail),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
