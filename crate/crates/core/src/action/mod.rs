//! The permutation action on `(R^k)^{⊗n}`, conjugacy-class sums and exact
//! isotypic projectors.
//!
//! Basis tensors `e_{α_1}⊗⋯⊗e_{α_n}` are indexed lexicographically with
//! letters `0..k`: the linear index of `(α_1,…,α_n)` is `Σ α_i·k^{n-i}`.
//!
//! `P(σ)` has its single 1 in row `α` at the column of the tuple `β` with
//! `β_{σ(i)} = α_i`, i.e. the factor in position `i` moves to position `σ(i)`.
//! For `σ = (12)` the row of `e_{α_1}⊗e_{α_2}⊗⋯` points at `e_{α_2}⊗e_{α_1}⊗⋯`.
//! Under this convention `P(σ)·P(τ) = P(τ∘σ)`; [`check_conventions`] asserts
//! both facts before any projector is built.
//!
//! The projector numerators `Num(λ) = Σ_c χ_λ(id)·χ_λ(c)·S(c)` are exact
//! integer matrices with common denominator `n!`.

mod blocks;
pub mod cache;
mod permutation;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

pub use blocks::{BlockMatrix, WeightBasis};
pub use permutation::Permutation;

use crate::characters::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{factorial, hook_length_dimension, schur_functor_dimension, CycleType, Partition};

/// Linear index of a tuple with letters `0..k`.
pub fn tensor_index(tuple: &[usize], k: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| {
        debug_assert!(a < k);
        acc * k + a
    })
}

/// Tuple of letters `0..k` for a linear index.
pub fn tensor_tuple(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut tuple = vec![0; n];
    for slot in tuple.iter_mut().rev() {
        *slot = index % k;
        index /= k;
    }
    tuple
}

/// Column tuple hit by row `tuple` in `P(σ)`.
pub fn permute_tuple(sigma: &Permutation, tuple: &[usize]) -> Vec<usize> {
    let mut out = vec![0; tuple.len()];
    for (i, &a) in tuple.iter().enumerate() {
        out[sigma.apply(i)] = a;
    }
    out
}

/// The 0/1 matrix `P(σ)` on `(R^k)^{⊗n}`, one column index per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatrix {
    k: usize,
    columns: Vec<usize>,
}

impl PermutationMatrix {
    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Column of the single 1 in `row`.
    pub fn column(&self, row: usize) -> usize {
        self.columns[row]
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        i64::from(self.columns[row] == col)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &PermutationMatrix) -> PermutationMatrix {
        assert_eq!(self.dim(), other.dim());
        PermutationMatrix {
            k: self.k,
            columns: self.columns.iter().map(|&c| other.columns[c]).collect(),
        }
    }

    /// `P·x`: entry `α` of the result is `x` at the column of row `α`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        self.columns.iter().map(|&c| x[c]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().enumerate().all(|(r, &c)| r == c)
    }

    pub fn to_block(&self, basis: &Arc<WeightBasis>) -> Result<BlockMatrix> {
        BlockMatrix::from_triplets(basis, self.columns.iter().enumerate().map(|(r, &c)| (r, c, 1)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut dense = vec![vec![0; d]; d];
        for (r, &c) in self.columns.iter().enumerate() {
            dense[r][c] = 1;
        }
        dense
    }
}

pub fn permutation_matrix(sigma: &Permutation, k: usize, limits: &Limits) -> Result<PermutationMatrix> {
    let n = sigma.n();
    if k == 0 {
        return Err(Error::argument("k must be positive"));
    }
    limits.admit_vectors(n, k, 1, "permutation matrix")?;
    let len = k.pow(n as u32);
    let columns = (0..len)
        .map(|row| tensor_index(&permute_tuple(sigma, &tensor_tuple(row, n, k)), k))
        .collect();
    Ok(PermutationMatrix { k, columns })
}

/// How matrix products of `P` relate to composition of permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionOrder {
    /// `P(σ)·P(τ) = P(σ∘τ)`.
    Direct,
    /// `P(σ)·P(τ) = P(τ∘σ)`.
    Reversed,
}

/// The order this crate's `P` follows; see the module docs.
pub const COMPOSITION_ORDER: CompositionOrder = CompositionOrder::Reversed;

/// Determines the composition order empirically from `(12)` and `(23)` on `n = 3`, `k = 2`.
pub fn observed_composition_order() -> CompositionOrder {
    let limits = Limits::default();
    let sigma = Permutation::from_cycles(3, &[&[1, 2]]).expect("valid cycle");
    let tau = Permutation::from_cycles(3, &[&[2, 3]]).expect("valid cycle");
    let p = |s: &Permutation| permutation_matrix(s, 2, &limits).expect("tiny matrix");
    let product = p(&sigma).mul(&p(&tau));
    if product == p(&sigma.compose(&tau)) {
        CompositionOrder::Direct
    } else {
        assert_eq!(product, p(&tau.compose(&sigma)), "P is not a (anti-)homomorphism");
        CompositionOrder::Reversed
    }
}

/// Asserts the `(12)` example and the documented composition order.
pub fn check_conventions() -> Result<()> {
    static CHECKED: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CHECKED
        .get_or_init(|| {
            let swap = Permutation::from_cycles(2, &[&[1, 2]]).expect("valid cycle");
            let p = permutation_matrix(&swap, 2, &Limits::default()).map_err(|e| e.to_string())?;
            // rows (0,0),(0,1),(1,0),(1,1)
            if (0..4).map(|r| p.column(r)).collect::<Vec<_>>() != [0, 2, 1, 3] {
                return Err("P((12)) is not the factor swap".to_string());
            }
            let observed = observed_composition_order();
            if observed != COMPOSITION_ORDER {
                return Err(format!(
                    "expected {COMPOSITION_ORDER:?} composition order, observed {observed:?}"
                ));
            }
            Ok(())
        })
        .clone()
        .map_err(|detail| Error::invariant("permutation convention", detail))
}

/// `S(c) = Σ_{σ∈c} P(σ)`.
#[derive(Debug, Clone)]
pub struct ClassSum {
    class: CycleType,
    matrix: BlockMatrix,
}

impl ClassSum {
    /// Sums `P(σ)` over the permutations of cycle type `class`, which are
    /// enumerated directly. Orbit blocks are filled in parallel.
    pub fn build(class: &CycleType, basis: &Arc<WeightBasis>) -> Result<Self> {
        if class.n() != basis.n() {
            return Err(Error::argument(format!(
                "class {class} does not act on {}-fold tensors",
                basis.n()
            )));
        }
        let n = basis.n();
        let k = basis.k();
        let members = Permutation::of_cycle_type(class);
        // weight[σ][i] = k^{n-1-σ(i)}: where letter i lands in the column index
        let weights: Vec<Vec<usize>> = members
            .iter()
            .map(|s| (0..n).map(|i| k.pow((n - 1 - s.apply(i)) as u32)).collect())
            .collect();
        let blocks = basis
            .orbits()
            .par_iter()
            .map(|orbit| {
                let s = orbit.len();
                let mut block = vec![0i64; s * s];
                for (i, &row) in orbit.iter().enumerate() {
                    let tuple = basis.tuple(row);
                    for w in &weights {
                        let col: usize = tuple.iter().zip(w).map(|(&a, &p)| a as usize * p).sum();
                        block[i * s + basis.local_position(col)] += 1;
                    }
                }
                block
            })
            .collect();
        Ok(ClassSum {
            class: class.clone(),
            matrix: BlockMatrix::from_blocks(basis, blocks),
        })
    }

    /// Reference construction that filters all `n!` permutations.
    pub fn build_by_filtering(class: &CycleType, basis: &Arc<WeightBasis>) -> Result<Self> {
        let mut matrix = BlockMatrix::zeros(basis);
        let limits = Limits::default();
        for sigma in Permutation::all(basis.n()).filter(|s| &s.cycle_type() == class) {
            let p = permutation_matrix(&sigma, basis.k(), &limits)?.to_block(basis)?;
            matrix.add_scaled(&p, 1)?;
        }
        Ok(ClassSum {
            class: class.clone(),
            matrix,
        })
    }

    pub fn class(&self) -> &CycleType {
        &self.class
    }

    pub fn matrix(&self) -> &BlockMatrix {
        &self.matrix
    }
}

pub fn class_sum(class: &CycleType, k: usize, limits: &Limits) -> Result<ClassSum> {
    limits.admit_projectors(class.n(), k)?;
    ClassSum::build(class, &WeightBasis::new(class.n(), k)?)
}

/// `π(λ) = Num(λ) / n!`.
#[derive(Debug, Clone)]
pub struct IsotypicProjector {
    lambda: Partition,
    numerator: BlockMatrix,
    denominator: u128,
    vanishing: bool,
}

impl IsotypicProjector {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn numerator(&self) -> &BlockMatrix {
        &self.numerator
    }

    /// `n!`.
    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    /// True when `S^λ(R^k) = 0`; the numerator is then never materialized.
    pub fn is_vanishing(&self) -> bool {
        self.vanishing
    }

    /// `π(λ)·x`, dividing by `n!` once after the integer matrix product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        if self.vanishing {
            return vec![0.0; x.len()];
        }
        let scale = self.denominator as f64;
        let mut y = self.numerator.apply(x);
        y.iter_mut().for_each(|v| *v /= scale);
        y
    }

    /// `dim I_λ = dim M_λ · dim S^λ(V)`.
    pub fn expected_rank(&self) -> u128 {
        hook_length_dimension(&self.lambda) * schur_functor_dimension(&self.lambda, self.numerator.basis().k())
    }
}

/// All isotypic projectors for one `(n, k)`, in canonical partition order.
#[derive(Debug)]
pub struct ProjectorSet {
    n: usize,
    k: usize,
    basis: Arc<WeightBasis>,
    table: Arc<CharacterTable>,
    projectors: Vec<IsotypicProjector>,
}

type SharedSets = HashMap<(usize, usize), Arc<ProjectorSet>>;

impl ProjectorSet {
    /// Builds all projectors, folding in one class sum at a time. The
    /// resolution of identity and the rank identity are checked before the
    /// set is returned.
    pub fn build(n: usize, k: usize, limits: &Limits) -> Result<Self> {
        limits.admit_projectors(n, k)?;
        check_conventions()?;
        let table = character_table(n)?;
        let basis = WeightBasis::new(n, k)?;
        let mut numerators: Vec<Option<BlockMatrix>> = table
            .partitions()
            .iter()
            .map(|l| (l.len() <= k).then(|| BlockMatrix::zeros(&basis)))
            .collect();
        for (col, class) in table.partitions().iter().enumerate() {
            let sum = ClassSum::build(class, &basis)?;
            for (row, numerator) in numerators.iter_mut().enumerate() {
                if let Some(numerator) = numerator {
                    let coefficient = table.degree(row) * table.values()[row][col];
                    numerator.add_scaled(sum.matrix(), coefficient)?;
                }
            }
        }
        let set = ProjectorSet::from_numerators(n, k, basis, table, numerators)?;
        set.check_identity_and_ranks()?;
        Ok(set)
    }

    pub(crate) fn from_numerators(
        n: usize,
        k: usize,
        basis: Arc<WeightBasis>,
        table: Arc<CharacterTable>,
        numerators: Vec<Option<BlockMatrix>>,
    ) -> Result<Self> {
        let denominator = factorial(n);
        let projectors = table
            .partitions()
            .iter()
            .zip(numerators)
            .map(|(lambda, numerator)| {
                let vanishing = schur_functor_dimension(lambda, k) == 0;
                let numerator = numerator.unwrap_or_else(|| BlockMatrix::zeros(&basis));
                if vanishing && !numerator.is_zero() {
                    return Err(Error::invariant(
                        "vanishing component",
                        format!("Num{lambda} is non-zero although S^{lambda}(R^{k}) = 0"),
                    ));
                }
                Ok(IsotypicProjector {
                    lambda: lambda.clone(),
                    numerator,
                    denominator,
                    vanishing,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectorSet {
            n,
            k,
            basis,
            table,
            projectors,
        })
    }

    /// Shared, lazily built set for `(n, k)`. The budget is checked on every
    /// call, so a cached set is never handed out under a tighter budget.
    pub fn shared(n: usize, k: usize, limits: &Limits) -> Result<Arc<Self>> {
        limits.admit_projectors(n, k)?;
        static SETS: OnceLock<Mutex<SharedSets>> = OnceLock::new();
        let mut sets = SETS
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|poisoned| poisoned.into_inner());
        if let Some(set) = sets.get(&(n, k)) {
            return Ok(Arc::clone(set));
        }
        let set = Arc::new(ProjectorSet::build(n, k, limits)?);
        sets.insert((n, k), Arc::clone(&set));
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &Arc<WeightBasis> {
        &self.basis
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn projectors(&self) -> &[IsotypicProjector] {
        &self.projectors
    }

    pub fn get(&self, lambda: &Partition) -> Option<&IsotypicProjector> {
        self.projectors.iter().find(|p| &p.lambda == lambda)
    }

    pub fn denominator(&self) -> u128 {
        factorial(self.n)
    }

    fn check_identity_and_ranks(&self) -> Result<()> {
        for outcome in self.identity_check().into_iter().chain(self.rank_checks()) {
            outcome.into_result()?;
        }
        Ok(())
    }

    fn identity_check(&self) -> Option<CheckOutcome> {
        let mut total = BlockMatrix::zeros(&self.basis);
        for p in &self.projectors {
            if let Err(e) = total.add_scaled(&p.numerator, 1) {
                return Some(CheckOutcome::fail(Check::ResolutionOfIdentity, "all λ", e.to_string()));
            }
        }
        let order = self.denominator() as i64;
        let expected = BlockMatrix::scaled_identity(&self.basis, order);
        Some(if total == expected {
            CheckOutcome::pass(Check::ResolutionOfIdentity, "all λ", format!("Σ_λ Num(λ) = {order}·I"))
        } else {
            let bad = total
                .triplets()
                .into_iter()
                .find(|&(r, c, v)| v != if r == c { order } else { 0 })
                .or_else(|| (0..self.basis.len()).find(|&r| total.get(r, r) == 0).map(|r| (r, r, 0)));
            CheckOutcome::fail(
                Check::ResolutionOfIdentity,
                "all λ",
                format!("Σ_λ Num(λ) differs from {order}·I at {bad:?}"),
            )
        })
    }

    fn rank_checks(&self) -> Vec<CheckOutcome> {
        let order = self.denominator() as i128;
        self.projectors
            .iter()
            .map(|p| {
                let trace = p.numerator.trace();
                let expected = order * p.expected_rank() as i128;
                let subject = p.lambda.to_string();
                if trace == expected {
                    CheckOutcome::pass(
                        Check::Trace,
                        subject,
                        format!("trace/n! = {} = dim M·dim S^λ", trace / order),
                    )
                } else {
                    CheckOutcome::fail(Check::Trace, subject, format!("trace = {trace}, expected {expected}"))
                }
            })
            .collect()
    }

    fn product_checks(&self) -> Vec<CheckOutcome> {
        let order = self.denominator() as i64;
        let live: Vec<&IsotypicProjector> = self.projectors.iter().filter(|p| !p.vanishing).collect();
        let pairs: Vec<(usize, usize)> = (0..live.len())
            .flat_map(|a| (a..live.len()).map(move |b| (a, b)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(a, b)| {
                let (pa, pb) = (live[a], live[b]);
                let product = match pa.numerator.mul(&pb.numerator) {
                    Ok(m) => m,
                    Err(e) => {
                        let check = if a == b {
                            Check::Idempotence
                        } else {
                            Check::Orthogonality
                        };
                        return CheckOutcome::fail(check, pair_subject(pa, pb, a == b), e.to_string());
                    }
                };
                if a == b {
                    let mut expected = BlockMatrix::zeros(&self.basis);
                    let ok = expected.add_scaled(&pa.numerator, order).is_ok() && product == expected;
                    let subject = pair_subject(pa, pb, true);
                    if ok {
                        CheckOutcome::pass(Check::Idempotence, subject, "Num² = n!·Num".into())
                    } else {
                        CheckOutcome::fail(Check::Idempotence, subject, "Num² ≠ n!·Num".into())
                    }
                } else if product.is_zero() {
                    CheckOutcome::pass(Check::Orthogonality, pair_subject(pa, pb, false), "product = 0".into())
                } else {
                    CheckOutcome::fail(
                        Check::Orthogonality,
                        pair_subject(pa, pb, false),
                        format!("product has {} non-zero entries", product.nnz()),
                    )
                }
            })
            .collect()
    }
}

fn pair_subject(a: &IsotypicProjector, b: &IsotypicProjector, same: bool) -> String {
    if same {
        a.lambda.to_string()
    } else {
        format!("{} × {}", a.lambda, b.lambda)
    }
}

/// Builds the projector for one `λ` (with its full set under the hood).
pub fn projector(lambda: &Partition, k: usize, limits: &Limits) -> Result<IsotypicProjector> {
    let set = ProjectorSet::shared(lambda.n(), k, limits)?;
    Ok(set.get(lambda).expect("every partition of n has a projector").clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    ResolutionOfIdentity,
    Idempotence,
    Orthogonality,
    Trace,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::ResolutionOfIdentity => "resolution-of-identity",
            Check::Idempotence => "idempotence",
            Check::Orthogonality => "orthogonality",
            Check::Trace => "trace",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(check: Check, subject: impl Into<String>, detail: String) -> Self {
        CheckOutcome {
            check,
            subject: subject.into(),
            passed: true,
            detail,
        }
    }

    fn fail(check: Check, subject: impl Into<String>, detail: String) -> Self {
        CheckOutcome {
            check,
            subject: subject.into(),
            passed: false,
            detail,
        }
    }

    fn into_result(self) -> Result<()> {
        if self.passed {
            Ok(())
        } else {
            Err(Error::invariant(
                format!("{} check for {}", self.check, self.subject),
                self.detail,
            ))
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}: {}", self.check, self.subject, self.detail)
    }
}

/// Dimension bookkeeping for one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDimension {
    pub lambda: Partition,
    pub irrep_dimension: u128,
    pub schur_dimension: u128,
    /// `trace(Num(λ)) / n!`.
    pub rank: u128,
}

impl ComponentDimension {
    pub fn is_vanishing(&self) -> bool {
        self.schur_dimension == 0
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<CheckOutcome>,
    pub components: Vec<ComponentDimension>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn into_result(self) -> Result<Self> {
        if let Some(failure) = self.failures().next() {
            return Err(failure.clone().into_result().unwrap_err());
        }
        Ok(self)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selfcheck n={} k={}", self.n, self.k)?;
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        for c in &self.components {
            if c.is_vanishing() {
                writeln!(f, "component {} vanishing (length {} > k)", c.lambda, c.lambda.len())?;
            } else {
                writeln!(
                    f,
                    "component {} dim {} = {} x {}",
                    c.lambda, c.rank, c.irrep_dimension, c.schur_dimension
                )?;
            }
        }
        let total: u128 = self.components.iter().map(|c| c.rank).sum();
        write!(
            f,
            "total dim {total} of {}; {}",
            (self.k as u128).pow(self.n as u32),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs every exact check and reports each one, without failing.
pub fn check_projectors(set: &ProjectorSet) -> VerificationReport {
    let mut checks = Vec::new();
    checks.extend(set.identity_check());
    checks.extend(set.product_checks());
    checks.extend(set.rank_checks());
    let order = set.denominator() as i128;
    let components = set
        .projectors
        .iter()
        .map(|p| ComponentDimension {
            lambda: p.lambda.clone(),
            irrep_dimension: hook_length_dimension(&p.lambda),
            schur_dimension: schur_functor_dimension(&p.lambda, set.k),
            rank: (p.numerator.trace() / order) as u128,
        })
        .collect();
    VerificationReport {
        n: set.n,
        k: set.k,
        checks,
        components,
    }
}

/// Exact verification of resolution of identity, idempotence, mutual
/// orthogonality and the rank identity; the first failure becomes an error.
pub fn verify_projectors(set: &ProjectorSet) -> Result<VerificationReport> {
    check_projectors(set).into_result()
}
