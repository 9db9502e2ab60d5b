//! Block-diagonal storage for matrices in the span of the factor permutations.
//!
//! A permutation of tensor factors maps `e_{α_1}⊗⋯⊗e_{α_n}` to a basis
//! tensor with the same letter counts. Grouping the `k^n` basis indices by
//! letter counts (weight orbits) makes every class sum and every projector
//! block-diagonal, so each orbit stores one dense square block and entries
//! between orbits are structural zeros.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The `k^n` tensor basis partitioned into weight orbits.
#[derive(Debug, PartialEq, Eq)]
pub struct WeightBasis {
    n: usize,
    k: usize,
    digits: Vec<u8>,
    orbit_of: Vec<u32>,
    local: Vec<u32>,
    orbits: Vec<Vec<usize>>,
}

impl WeightBasis {
    /// Callers are expected to have admitted `(n, k)` against a memory budget.
    pub fn new(n: usize, k: usize) -> Result<Arc<Self>> {
        if k == 0 || k > u8::MAX as usize + 1 {
            return Err(Error::argument(format!("k = {k} is not supported by the tensor basis")));
        }
        let len = k
            .checked_pow(n as u32)
            .filter(|&len| len <= u32::MAX as usize)
            .ok_or_else(|| Error::argument(format!("k^n overflows for n = {n}, k = {k}")))?;
        let mut digits = vec![0u8; len * n];
        let mut orbit_of = vec![0u32; len];
        let mut local = vec![0u32; len];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut ids: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut counts = vec![0u8; k];
        for index in 0..len {
            let tuple = &mut digits[index * n..(index + 1) * n];
            let mut rest = index;
            for slot in tuple.iter_mut().rev() {
                *slot = (rest % k) as u8;
                rest /= k;
            }
            counts.iter_mut().for_each(|c| *c = 0);
            for &d in tuple.iter() {
                counts[d as usize] += 1;
            }
            let id = *ids.entry(counts.clone()).or_insert_with(|| {
                orbits.push(Vec::new());
                (orbits.len() - 1) as u32
            });
            orbit_of[index] = id;
            local[index] = orbits[id as usize].len() as u32;
            orbits[id as usize].push(index);
        }
        Ok(Arc::new(WeightBasis {
            n,
            k,
            digits,
            orbit_of,
            local,
            orbits,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k^n`.
    pub fn len(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit_of.is_empty()
    }

    /// Index tuple of a linear index, with letters `0..k`.
    pub fn tuple(&self, index: usize) -> &[u8] {
        &self.digits[index * self.n..(index + 1) * self.n]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, index: usize) -> usize {
        self.orbit_of[index] as usize
    }

    pub fn local_position(&self, index: usize) -> usize {
        self.local[index] as usize
    }

    /// Number of stored entries of a full block-diagonal matrix.
    pub fn block_entries(&self) -> usize {
        self.orbits.iter().map(|o| o.len() * o.len()).sum()
    }
}

/// Integer matrix on the tensor basis, stored as one dense row-major block per
/// weight orbit. An empty block stands for an all-zero block.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    basis: Arc<WeightBasis>,
    blocks: Vec<Vec<i64>>,
}

impl BlockMatrix {
    pub fn zeros(basis: &Arc<WeightBasis>) -> Self {
        BlockMatrix {
            basis: Arc::clone(basis),
            blocks: vec![Vec::new(); basis.orbits.len()],
        }
    }

    pub fn scaled_identity(basis: &Arc<WeightBasis>, scale: i64) -> Self {
        let blocks = basis
            .orbits
            .iter()
            .map(|o| {
                let s = o.len();
                let mut block = vec![0; s * s];
                (0..s).for_each(|i| block[i * s + i] = scale);
                block
            })
            .collect();
        BlockMatrix {
            basis: Arc::clone(basis),
            blocks,
        }
    }

    pub(crate) fn from_blocks(basis: &Arc<WeightBasis>, blocks: Vec<Vec<i64>>) -> Self {
        debug_assert_eq!(blocks.len(), basis.orbits.len());
        BlockMatrix {
            basis: Arc::clone(basis),
            blocks,
        }
    }

    pub fn basis(&self) -> &Arc<WeightBasis> {
        &self.basis
    }

    /// Dimension `k^n` of the square matrix.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        let orbit = self.basis.orbit_of(row);
        if orbit != self.basis.orbit_of(col) {
            return 0;
        }
        let block = &self.blocks[orbit];
        if block.is_empty() {
            return 0;
        }
        let s = self.basis.orbits[orbit].len();
        block[self.basis.local_position(row) * s + self.basis.local_position(col)]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&v| v == 0))
    }

    pub fn nnz(&self) -> usize {
        self.blocks.iter().map(|b| b.iter().filter(|&&v| v != 0).count()).sum()
    }

    pub fn trace(&self) -> i128 {
        self.blocks
            .iter()
            .zip(&self.basis.orbits)
            .filter(|(b, _)| !b.is_empty())
            .map(|(b, o)| (0..o.len()).map(|i| b[i * o.len() + i] as i128).sum::<i128>())
            .sum()
    }

    /// Row sums, in basis order.
    pub fn row_sums(&self) -> Vec<i128> {
        let mut sums = vec![0i128; self.dim()];
        for (block, orbit) in self.blocks.iter().zip(&self.basis.orbits) {
            if block.is_empty() {
                continue;
            }
            let s = orbit.len();
            for (i, &row) in orbit.iter().enumerate() {
                sums[row] = block[i * s..(i + 1) * s].iter().map(|&v| v as i128).sum();
            }
        }
        sums
    }

    /// `self += factor * other`, failing on `i64` overflow.
    pub fn add_scaled(&mut self, other: &BlockMatrix, factor: i64) -> Result<()> {
        self.check_same_basis(other)?;
        if factor == 0 {
            return Ok(());
        }
        for (mine, theirs) in self.blocks.iter_mut().zip(&other.blocks) {
            if theirs.is_empty() {
                continue;
            }
            if mine.is_empty() {
                mine.resize(theirs.len(), 0);
            }
            for (a, &b) in mine.iter_mut().zip(theirs) {
                *a = b
                    .checked_mul(factor)
                    .and_then(|p| a.checked_add(p))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        self.check_same_basis(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .zip(&self.basis.orbits)
            .map(|((a, b), orbit)| {
                if a.is_empty() || b.is_empty() {
                    return Ok(Vec::new());
                }
                let s = orbit.len();
                let mut acc = vec![0i128; s * s];
                for i in 0..s {
                    for l in 0..s {
                        let left = a[i * s + l] as i128;
                        if left == 0 {
                            continue;
                        }
                        let row = &mut acc[i * s..(i + 1) * s];
                        for (out, &right) in row.iter_mut().zip(&b[l * s..(l + 1) * s]) {
                            *out += left * right as i128;
                        }
                    }
                }
                acc.into_iter()
                    .map(|v| i64::try_from(v).map_err(|_| overflow()))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockMatrix {
            basis: Arc::clone(&self.basis),
            blocks,
        })
    }

    /// Integer matrix times a real vector, without any scaling.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim(), "vector length does not match k^n");
        let mut y = vec![0.0; x.len()];
        for (block, orbit) in self.blocks.iter().zip(&self.basis.orbits) {
            if block.is_empty() {
                continue;
            }
            let s = orbit.len();
            for (i, &row) in orbit.iter().enumerate() {
                y[row] = block[i * s..(i + 1) * s]
                    .iter()
                    .zip(orbit)
                    .filter(|(&v, _)| v != 0)
                    .map(|(&v, &col)| v as f64 * x[col])
                    .sum();
            }
        }
        y
    }

    /// Non-zero entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (block, orbit) in self.blocks.iter().zip(&self.basis.orbits) {
            if block.is_empty() {
                continue;
            }
            let s = orbit.len();
            for (i, &row) in orbit.iter().enumerate() {
                for (j, &col) in orbit.iter().enumerate() {
                    let v = block[i * s + j];
                    if v != 0 {
                        out.push((row, col, v));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Rebuilds a matrix from triplets; entries coupling different weight
    /// orbits are rejected.
    pub fn from_triplets(
        basis: &Arc<WeightBasis>,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut m = BlockMatrix::zeros(basis);
        for (row, col, value) in triplets {
            if row >= basis.len() || col >= basis.len() {
                return Err(Error::argument(format!(
                    "entry ({row}, {col}) outside a {0}×{0} matrix",
                    basis.len()
                )));
            }
            let orbit = basis.orbit_of(row);
            if orbit != basis.orbit_of(col) {
                return Err(Error::argument(format!(
                    "entry ({row}, {col}) couples different weight orbits"
                )));
            }
            let s = basis.orbits[orbit].len();
            let block = &mut m.blocks[orbit];
            if block.is_empty() {
                block.resize(s * s, 0);
            }
            block[basis.local_position(row) * s + basis.local_position(col)] = value;
        }
        Ok(m)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut dense = vec![vec![0; d]; d];
        for (r, c, v) in self.triplets() {
            dense[r][c] = v;
        }
        dense
    }

    fn check_same_basis(&self, other: &BlockMatrix) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::argument("matrices live on different tensor bases"))
        }
    }
}

impl PartialEq for BlockMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.check_same_basis(other).is_err() {
            return false;
        }
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| match (a.is_empty(), b.is_empty()) {
                (true, true) => true,
                (true, false) => b.iter().all(|&v| v == 0),
                (false, true) => a.iter().all(|&v| v == 0),
                (false, false) => a == b,
            })
    }
}

fn overflow() -> Error {
    Error::invariant("integer arithmetic", "i64 overflow in block matrix arithmetic")
}
