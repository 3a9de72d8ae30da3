use crate::fullgroup::{self, BraidShadow, FullGroupResult};
use crate::taxonomy::{self, GroupDescriptor, RankOneError};

/// The closed-form side of every campaign. Campaigns compare these answers
/// against the monomial oracle; overriding a method injects a fault.
pub trait ArithmeticModel: Sync {
    fn degrees(&self, d: &GroupDescriptor) -> Vec<u64> {
        taxonomy::degrees(d)
    }

    fn codegrees(&self, d: &GroupDescriptor) -> Vec<u64> {
        taxonomy::codegrees(d)
    }

    fn group_order(&self, d: &GroupDescriptor) -> u128 {
        taxonomy::group_order(d)
    }

    fn central_index(&self, d: &GroupDescriptor) -> u128 {
        taxonomy::central_index(d)
    }

    fn full_group(&self, d: &GroupDescriptor) -> Result<FullGroupResult, RankOneError> {
        fullgroup::full_group(d)
    }

    fn braid_shadow(&self, d: &GroupDescriptor) -> Result<BraidShadow, RankOneError> {
        fullgroup::braid_shadow(d)
    }
}

/// The library's own formulas.
#[derive(Debug, Clone, Copy, Default)]
pub struct Formulas;

impl ArithmeticModel for Formulas {}
