//! Exact monomial-matrix models of `G(m,p,n)` over cyclotomic scalars.

mod group;
mod matrix;
pub mod sampling;
mod scalar;
mod stabilizer;

use thiserror::Error;

use crate::taxonomy::{DescriptorError, GroupDescriptor};

pub use group::{
    common_ambient, default_ambient, extended_group_equal, is_subgroup, MonoGroup, RegularElement,
    DEFAULT_CAP,
};
pub use matrix::{Eigenspace, LinearForm, MonoMatrix, MonoVector};
pub use scalar::RootScalar;
pub use stabilizer::{extended_stabilizer, StabilizerPair, StabilizerProbe, StabilizerReport, Stratum};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonomialError {
    #[error("the zero vector has no stabilizer")]
    ZeroVector,
    #[error("vector syntax error at byte {pos}: {msg}")]
    VectorSyntax { pos: usize, msg: String },
    #[error("vector has {got} coordinates, group has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("ambient order {l} is not a multiple of {required}")]
    BadAmbient { l: u64, required: u64 },
    #[error("{descriptor} has order {order}, above the cap {cap}")]
    CapExceeded {
        descriptor: GroupDescriptor,
        order: u128,
        cap: u128,
    },
    #[error("{0} has no monomial model")]
    NoMatrixModel(GroupDescriptor),
    #[error("cannot compare {} over mu_{} with {} over mu_{}", left.0, left.1, right.0, right.1)]
    IncompatibleAmbient {
        left: (GroupDescriptor, u64),
        right: (GroupDescriptor, u64),
    },
}
