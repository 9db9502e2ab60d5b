//! Schur-Weyl decomposition of sample covariance tensors.
//!
//! A covariance tensor of `n` variables in `R^k` lives in `(R^k)^{⊗n}`. The
//! symmetric group `S_n` acts by permuting tensor factors, and the isotypic
//! projectors built from its character table split the tensor into one
//! component per partition of `n`. The norms of those components form the
//! Schur transform.

pub mod action;
pub mod characters;
pub mod error;
pub mod io;
pub mod limits;
pub mod partitions;
pub mod statistics;
pub mod transform;

pub use action::{
    check_projectors, permutation_matrix, projector, verify_projectors, BlockMatrix, IsotypicProjector, Permutation,
    ProjectorSet, VerificationReport,
};
pub use characters::{character_table, character_value, CharacterTable};
pub use error::{Error, Result};
pub use limits::{Limits, MemoryEstimate};
pub use partitions::{enumerate_partitions, CycleType, Partition};
pub use statistics::{sample_covariance_tensor, typed_covariance_tensor, CovarianceTensor, DataSeries};
pub use transform::{
    classify, classify_with, schur_content, schur_transform, Metric, SchurContent, SchurResult, SchurTransformer,
    SubsetMode,
};
