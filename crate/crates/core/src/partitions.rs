//! Integer partitions and Young-diagram combinatorics.
//!
//! A [`Partition`] of `n` serves three roles at once: a Young diagram, the
//! cycle type of a conjugacy class of `S_n`, and the label of an irreducible
//! representation. All tables in this crate index partitions in decreasing
//! lexicographic order, so `(n)` comes first and `(1,…,1)` last.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which factorials, class sizes and character values are
/// guaranteed to fit the integer types used here (`20! < 2^63`).
pub const MAX_N: usize = 20;

/// A non-increasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// The cycle type of a permutation, fixed points included as parts equal to 1.
pub type CycleType = Partition;

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::argument("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::argument(format!(
                "partition parts must be positive, got {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::argument(format!(
                "partition parts must be non-increasing, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary positive parts by sorting them.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows of the Young diagram).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_identity_class(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of the cell in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().take_while(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Iterates the cells `(row, column)` of the Young diagram.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| (i, j)))
    }

    /// Multiplicity of each cycle length, as `(length, multiplicity)` pairs in
    /// decreasing length order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Canonical cycle notation of a representative permutation, e.g. `(123)(45)`.
    ///
    /// Elements are numbered from 1; fixed points are omitted, so the identity
    /// class prints as `()`. For `n > 9` the entries are comma-separated.
    pub fn cycle_notation(&self) -> String {
        let n = self.n();
        let sep = if n > 9 { "," } else { "" };
        let mut out = String::new();
        let mut next = 1;
        for &len in self.parts.iter().filter(|&&p| p > 1) {
            let cycle: Vec<String> = (next..next + len).map(|e| e.to_string()).collect();
            out.push('(');
            out.push_str(&cycle.join(sep));
            out.push(')');
            next += len;
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `(4,3,1)`, `4,3,1` or `4 3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::argument(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Range {
            what: "n",
            value: n,
            min: 1,
            max: MAX_N,
        });
    }
    Ok(())
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill_partitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(rest: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_sorted_unchecked(current.clone()));
        return;
    }
    for part in (1..=rest.min(max_part)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Size of the conjugacy class of `S_n` with cycle type `c`: `n! / z_c`.
pub fn class_size(c: &CycleType) -> u128 {
    let centralizer: u128 = c
        .multiplicities()
        .into_iter()
        .map(|(len, m)| (len as u128).pow(m as u32) * factorial(m))
        .product();
    factorial(c.n()) / centralizer
}

/// Dimension of the irreducible `S_n`-representation labelled by `lambda`,
/// by the hook-length formula.
pub fn hook_length_dimension(lambda: &Partition) -> u128 {
    let hooks: u128 = lambda.cells().map(|(i, j)| lambda.hook(i, j) as u128).product();
    factorial(lambda.n()) / hooks
}

/// Dimension of the Schur functor `S^lambda(R^k)`, by the hook-content formula.
///
/// Zero exactly when `lambda` has more than `k` rows.
///
/// # Panics
///
/// Panics if the dimension does not fit in a `u128`.
pub fn schur_functor_dimension(lambda: &Partition, k: usize) -> u128 {
    if lambda.len() > k {
        return 0;
    }
    let mut numerator: u128 = 1;
    let mut denominator: u128 = 1;
    for (i, j) in lambda.cells() {
        numerator = numerator
            .checked_mul((k + j - i) as u128)
            .expect("Schur functor dimension overflows u128");
        denominator *= lambda.hook(i, j) as u128;
        let g = gcd(numerator, denominator);
        numerator /= g;
        denominator /= g;
    }
    debug_assert_eq!(denominator, 1);
    numerator / denominator
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
