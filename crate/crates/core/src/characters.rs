//! Exact integer character tables of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule: `χ_λ(μ)` is a signed sum over
//! the ways of stripping a rim hook of length `μ_1` from `λ`, recursing on the
//! remaining cycle lengths. Rim hooks are removed on the beta-set (abacus)
//! encoding of `λ`, where stripping a hook of length `r` moves one bead down by
//! `r` positions and the sign counts the beads jumped over.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partitions::{
    check_n, class_size, enumerate_partitions, factorial, hook_length_dimension, CycleType, Partition,
};

/// Character table of `S_n`. Rows are irreducible characters and columns are
/// conjugacy classes, both in canonical (decreasing lexicographic) order, so
/// the identity class is the last column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    class_sizes: Vec<u128>,
}

impl CharacterTable {
    /// Computes and verifies the table; use [`character_table`] for the cached copy.
    pub fn build(n: usize) -> Result<Self> {
        let partitions = enumerate_partitions(n)?;
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|mu| murnaghan_nakayama(lambda.parts(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let class_sizes = partitions.iter().map(class_size).collect();
        let table = CharacterTable {
            n,
            partitions,
            values,
            class_sizes,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row and column labels, shared because both are partitions of `n`.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.binary_search_by(|q| p.cmp(q)).ok()
    }

    pub fn identity_column(&self) -> usize {
        self.partitions.len() - 1
    }

    pub fn value(&self, lambda: &Partition, class: &CycleType) -> Result<i64> {
        let row = self.index_of(lambda).ok_or_else(|| mismatch(self.n, lambda))?;
        let col = self.index_of(class).ok_or_else(|| mismatch(self.n, class))?;
        Ok(self.values[row][col])
    }

    /// `χ_λ(identity)`, the dimension of the representation.
    pub fn degree(&self, row: usize) -> i64 {
        self.values[row][self.identity_column()]
    }

    /// Checks integrality-derived invariants exactly: the identity column
    /// against the hook-length formula, and both orthogonality relations.
    pub fn verify(&self) -> Result<()> {
        let order = factorial(self.n) as i128;
        let id = self.identity_column();
        let rows = self.partitions.len();
        for (r, lambda) in self.partitions.iter().enumerate() {
            let expected = hook_length_dimension(lambda) as i64;
            if self.values[r][id] != expected {
                return Err(Error::invariant(
                    "character degree",
                    format!(
                        "χ_{lambda}(id) = {} but hook length gives {expected}",
                        self.values[r][id]
                    ),
                ));
            }
        }
        for a in 0..rows {
            for b in a..rows {
                let inner: i128 = (0..rows)
                    .map(|c| self.class_sizes[c] as i128 * self.values[a][c] as i128 * self.values[b][c] as i128)
                    .sum();
                let expected = if a == b { order } else { 0 };
                if inner != expected {
                    return Err(Error::invariant(
                        "row orthogonality",
                        format!(
                            "<χ_{}, χ_{}> = {inner}, expected {expected}",
                            self.partitions[a], self.partitions[b]
                        ),
                    ));
                }
                let column: i128 = (0..rows)
                    .map(|r| self.values[r][a] as i128 * self.values[r][b] as i128)
                    .sum();
                let expected = if a == b { order / self.class_sizes[a] as i128 } else { 0 };
                if column != expected {
                    return Err(Error::invariant(
                        "column orthogonality",
                        format!(
                            "classes {} and {}: {column}, expected {expected}",
                            self.partitions[a], self.partitions[b]
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn mismatch(n: usize, p: &Partition) -> Error {
    Error::argument(format!("{p} is a partition of {}, expected a partition of {n}", p.n()))
}

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

fn murnaghan_nakayama(lambda: &[usize], mu: &[usize], memo: &mut Memo) -> i64 {
    let Some((&hook_len, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len();
    // Beta-set: strictly decreasing first-column hook lengths.
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &bead) in beta.iter().enumerate() {
        if bead < hook_len {
            continue;
        }
        let target = bead - hook_len;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&b| b > target && b < bead).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The character table of `S_n`, built on first use and shared afterwards.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    check_n(n)?;
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let mut tables = TABLES
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    if let Some(table) = tables.get(&n) {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(CharacterTable::build(n)?);
    tables.insert(n, Arc::clone(&table));
    Ok(table)
}

/// `χ_λ(c)` for partitions of the same `n`.
pub fn character_value(lambda: &Partition, class: &CycleType) -> Result<i64> {
    if lambda.n() != class.n() {
        return Err(Error::argument(format!(
            "character {lambda} of S_{} evaluated on class {class} of S_{}",
            lambda.n(),
            class.n()
        )));
    }
    character_table(lambda.n())?.value(lambda, class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn s2_table() {
        let t = character_table(2).unwrap();
        assert_eq!(t.partitions(), &[p(&[2]), p(&[1, 1])]);
        // columns: (2) then identity
        assert_eq!(t.values(), &[vec![1, 1], vec![-1, 1]]);
    }

    #[test]
    fn s3_standard_character() {
        // Trace of a 3-cycle on the standard representation: the permutation
        // representation has trace 0 on a 3-cycle, minus the trivial summand.
        let perm_trace_on_3_cycle = 0;
        assert_eq!(
            character_value(&p(&[2, 1]), &p(&[3])).unwrap(),
            perm_trace_on_3_cycle - 1
        );
        let t = character_table(3).unwrap();
        let row = t.index_of(&p(&[2, 1])).unwrap();
        assert_eq!(t.values()[row], vec![-1, 0, 2]);
    }

    #[test]
    fn trivial_and_sign_rows() {
        for n in 1..=8 {
            let t = character_table(n).unwrap();
            for (c, class) in t.partitions().iter().enumerate() {
                assert_eq!(t.values()[0][c], 1);
                let odd = class.parts().iter().filter(|&&l| l % 2 == 0).count() % 2 == 1;
                assert_eq!(t.values()[t.partitions().len() - 1][c], if odd { -1 } else { 1 });
            }
        }
        assert_eq!(character_value(&p(&[1; 6]), &p(&[2, 1, 1, 1, 1])).unwrap(), -1);
        assert_eq!(character_value(&p(&[6]), &p(&[3, 2, 1])).unwrap(), 1);
    }

    #[test]
    fn tables_verify_up_to_ten() {
        for n in 1..=10 {
            CharacterTable::build(n).unwrap().verify().unwrap();
        }
    }

    #[test]
    fn mismatched_n_is_an_argument_error() {
        assert!(matches!(
            character_value(&p(&[2, 1]), &p(&[2, 2])),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn corrupted_table_fails_verification() {
        let mut t = CharacterTable::build(4).unwrap();
        t.values[1][0] += 1;
        assert!(matches!(t.verify(), Err(Error::InvariantViolation { .. })));
    }
}
