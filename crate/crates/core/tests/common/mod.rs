#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use schur_transform::DataSeries;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_series(rng: &mut ChaCha8Rng, samples: usize, variables: usize, dim: usize) -> DataSeries {
    let values: Vec<f64> = (0..samples * variables * dim).map(|_| normal(rng)).collect();
    DataSeries::new(samples, variables, dim, values).unwrap()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Digits of `index` in base `k`, most significant first.
pub fn digits(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for d in out.iter_mut().rev() {
        *d = index % k;
        index /= k;
    }
    out
}

pub fn undigits(digits: &[usize], k: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * k + d)
}

/// `(σ·T)[a_1…a_n] = T[a_σ(1)…a_σ(n)]`, `sigma` holding 0-based images.
pub fn permute_factors(t: &[f64], sigma: &[usize], n: usize, k: usize) -> Vec<f64> {
    (0..t.len())
        .map(|idx| {
            let a = digits(idx, n, k);
            let b: Vec<usize> = sigma.iter().map(|&s| a[s]).collect();
            t[undigits(&b, k)]
        })
        .collect()
}

/// Applies `L` in every tensor slot.
pub fn apply_tensor_power(t: &[f64], l: &[Vec<f64>], n: usize, k: usize) -> Vec<f64> {
    let mut cur = t.to_vec();
    for slot in 0..n {
        let stride = k.pow((n - 1 - slot) as u32);
        let mut next = vec![0.0; cur.len()];
        for (idx, out) in next.iter_mut().enumerate() {
            let a = (idx / stride) % k;
            let base = idx - a * stride;
            *out = (0..k).map(|b| l[a][b] * cur[base + b * stride]).sum();
        }
        cur = next;
    }
    cur
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<f64>> {
    (0..k).map(|_| (0..k).map(|_| normal(rng)).collect()).collect()
}

/// Gram-Schmidt on a random Gaussian matrix.
pub fn random_rotation(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(k);
    while rows.len() < k {
        let mut v: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
        for r in &rows {
            let dot: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(r).for_each(|(x, y)| *x -= dot * y);
        }
        let len = norm(&v);
        if len > 1e-6 {
            rows.push(v.iter().map(|x| x / len).collect());
        }
    }
    rows
}

pub fn map_points(series: &DataSeries, l: &[Vec<f64>]) -> DataSeries {
    let k = series.dim();
    DataSeries::from_fn(series.samples(), series.variables(), k, |j, i, a| {
        let p = series.point(j, i);
        (0..k).map(|b| l[a][b] * p[b]).sum()
    })
    .unwrap()
}

/// Every permutation of `0..n` as image lists.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
