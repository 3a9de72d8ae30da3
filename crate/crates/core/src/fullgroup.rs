//! Full reflection groups: the largest reflection group with the same
//! scalar-extended group as a given one, and the integer invariants of the
//! associated enlarged braid groups.

use num_integer::Integer;
use serde::Serialize;

use crate::taxonomy::{
    self, all_regular_central, center_order, exceptional, group_order, ExceptionalClass,
    GroupDescriptor, RankOneError,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullGroupResult {
    pub input: GroupDescriptor,
    pub full: GroupDescriptor,
    /// `[W_f : W]`.
    pub index: u128,
    /// `[Z(W_f) : Z(W)]`.
    pub center_ratio: u64,
}

/// Numeric shadows of the enlarged braid group `B_S(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidShadow {
    pub center_w: u64,
    pub center_wf: u64,
    /// `e` with `beta_S^e = pi_S`; always `|Z(W)|`.
    pub beta_to_pi_exponent: u64,
    /// Power of `beta_S(W_f)` generating `Z(B_S(W))`.
    pub beta_wf_power: u64,
    /// No regular hyperplanes, so `B_S -> B` is an isomorphism.
    pub bs_equals_b: bool,
    /// All regular elements are central.
    pub bmr_diagram_completes: bool,
}

/// Rewrites descriptors that name a group also present in the imprimitive
/// family: `Sym(2)` is `G(3,3,2)` and `Sym(3)` is `G(2,2,3)`.
fn normalize(d: &GroupDescriptor) -> GroupDescriptor {
    match *d {
        GroupDescriptor::Symmetric { n: 2 } => GroupDescriptor::Imprimitive { m: 3, p: 3, n: 2 },
        GroupDescriptor::Symmetric { n: 3 } => GroupDescriptor::Imprimitive { m: 2, p: 2, n: 3 },
        other => other,
    }
}

pub fn full_group(d: &GroupDescriptor) -> Result<FullGroupResult, RankOneError> {
    if d.rank() < 2 {
        return Err(RankOneError(*d));
    }
    let full = match normalize(d) {
        GroupDescriptor::Imprimitive { m, p, n: 2 } => GroupDescriptor::Imprimitive {
            m: 2 * m / p.gcd(&2),
            p: 2,
            n: 2,
        },
        GroupDescriptor::Imprimitive { m, p, n } => GroupDescriptor::Imprimitive {
            m,
            p: p.gcd(&n),
            n,
        },
        GroupDescriptor::Exceptional { id } => {
            let record = exceptional::lookup(id).expect("validated descriptor");
            let id = match record.class {
                ExceptionalClass::Tetrahedral => 7,
                ExceptionalClass::Octahedral => 11,
                ExceptionalClass::Icosahedral => 19,
                ExceptionalClass::Primitive if id == 25 => 26,
                ExceptionalClass::Primitive => id,
            };
            GroupDescriptor::Exceptional { id }
        }
        sym @ GroupDescriptor::Symmetric { .. } => sym,
    };
    Ok(FullGroupResult {
        input: *d,
        full,
        index: group_order(&full) / group_order(d),
        center_ratio: center_order(&full) / center_order(d),
    })
}

pub fn is_full(d: &GroupDescriptor) -> Result<bool, RankOneError> {
    Ok(full_group(d)?.full == *d)
}

/// Descriptor-level test of `W~ = W'~`, i.e. of equal projective images.
pub fn same_projective_image(
    a: &GroupDescriptor,
    b: &GroupDescriptor,
) -> Result<bool, RankOneError> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    Ok(full_group(a)?.full == full_group(b)?.full)
}

pub fn braid_shadow(d: &GroupDescriptor) -> Result<BraidShadow, RankOneError> {
    let full = full_group(d)?;
    let center_w = center_order(d);
    let center_wf = center_order(&full.full);
    Ok(BraidShadow {
        center_w,
        center_wf,
        beta_to_pi_exponent: center_w,
        beta_wf_power: center_wf / center_w,
        bs_equals_b: taxonomy::regular_hyperplane_numbers(d)?.is_empty(),
        bmr_diagram_completes: all_regular_central(d),
    })
}
