//! Permutation-group toolkit: stabilizer chains, minimal bases,
//! distinguishing numbers with constructive colorings, and base
//! constructions for imprimitive linear groups over prime fields.
//!
//! Points are 0-indexed throughout. Every construction that produces a
//! base or a coloring re-verifies it with a stabilizer computation before
//! returning.

pub mod action;
pub mod affine;
pub mod backtrack;
pub mod base;
pub mod blocks;
pub mod chain;
pub mod distinguish;
pub mod families;
pub mod gf;
pub mod group;
pub mod linking;
pub mod perm;

pub use base::BaseCertificate;
pub use blocks::{BlockActionData, BlockSystem};
pub use chain::StabChain;
pub use distinguish::Coloring;
pub use group::PermGroup;
pub use linking::LinkingStructure;
pub use perm::Permutation;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image sequence is not a bijection")]
    NotBijective,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("domain of {size} points exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("structural error: {0}")]
    Structure(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
