use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partitions::{CycleType, Partition};

/// A permutation of `{0, …, n-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::argument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `n` points from disjoint cycles written with
    /// 1-based elements, e.g. `&[&[1, 2], &[3, 4]]` for `(12)(34)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (pos, &e) in cycle.iter().enumerate() {
                if e == 0 || e > n || std::mem::replace(&mut used[e - 1], true) {
                    return Err(Error::argument(format!("bad cycle {cycle:?} for n = {n}")));
                }
                images[e - 1] = cycle[(pos + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut seen = vec![false; self.n()];
        let mut lengths = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lengths)
    }

    /// All `n!` permutations, in lexicographic order of image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(|images| Permutation { images })
    }

    /// Every permutation with cycle type `class`, each exactly once, generated
    /// directly rather than by filtering `S_n`.
    ///
    /// The cycle through the smallest unused point is built first: its length
    /// is chosen among the remaining cycle lengths and its other points are an
    /// ordered selection of the unused points.
    pub fn of_cycle_type(class: &CycleType) -> Vec<Permutation> {
        let n = class.n();
        let mut lengths: Vec<(usize, usize)> = class.multiplicities();
        let mut images = vec![usize::MAX; n];
        let mut out = Vec::new();
        fill_cycles(&mut images, &mut lengths, &mut out);
        out
    }
}

fn fill_cycles(images: &mut Vec<usize>, lengths: &mut Vec<(usize, usize)>, out: &mut Vec<Permutation>) {
    let Some(start) = images.iter().position(|&i| i == usize::MAX) else {
        out.push(Permutation { images: images.clone() });
        return;
    };
    for slot in 0..lengths.len() {
        let (len, count) = lengths[slot];
        if count == 0 {
            continue;
        }
        lengths[slot].1 -= 1;
        let free: Vec<usize> = (start + 1..images.len()).filter(|&i| images[i] == usize::MAX).collect();
        for tail in free.into_iter().permutations(len - 1) {
            let mut prev = start;
            for &e in &tail {
                images[prev] = e;
                prev = e;
            }
            images[prev] = start;
            fill_cycles(images, lengths, out);
            images[start] = usize::MAX;
            for &e in &tail {
                images[e] = usize::MAX;
            }
        }
        lengths[slot].1 += 1;
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.n()];
        let mut wrote = false;
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first && self.n() > 9 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}
