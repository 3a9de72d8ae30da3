//! Group descriptors and the arithmetic read off their degrees and
//! codegrees: orders, centers, regular numbers and regular hyperplanes.

mod descriptor;
pub mod exceptional;

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

pub use descriptor::{parse_descriptor, DescriptorError, GroupDescriptor};
pub use exceptional::{ExceptionalClass, ExceptionalRecord};

/// Degrees and codegrees of a group together with the gcd data used by the
/// regular-hyperplane criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// Ascending.
    pub degrees: Vec<u64>,
    /// Descending; the last entry is 0.
    pub codegrees: Vec<u64>,
    /// gcd of all degrees, the order of the center.
    #[serde(rename = "D")]
    pub d: u64,
    /// `dj[j]` is the gcd of all degrees except the `j`-th.
    #[serde(rename = "Dj")]
    pub dj: Vec<u64>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("{0} has rank 1; this operation needs rank at least 2")]
pub struct RankOneError(pub GroupDescriptor);

pub fn degrees(d: &GroupDescriptor) -> Vec<u64> {
    let mut out: Vec<u64> = match *d {
        GroupDescriptor::Imprimitive { m, p, n } => {
            let (m, p, n) = (m as u64, p as u64, n as u64);
            (1..n).map(|k| k * m).chain([m * n / p]).collect()
        }
        GroupDescriptor::Exceptional { id } => exceptional::lookup(id)
            .map(|r| r.degrees.clone())
            .unwrap_or_default(),
        GroupDescriptor::Symmetric { n } => (2..=n as u64 + 1).collect(),
    };
    out.sort_unstable();
    out
}

pub fn codegrees(d: &GroupDescriptor) -> Vec<u64> {
    let mut out: Vec<u64> = match *d {
        GroupDescriptor::Imprimitive { m, p, n } => {
            let (m, n) = (m as u64, n as u64);
            if p as u64 == m {
                (0..n - 1).map(|k| k * m).chain([(n - 1) * m - n]).collect()
            } else {
                (0..n).map(|k| k * m).collect()
            }
        }
        GroupDescriptor::Exceptional { id } => exceptional::lookup(id)
            .map(|r| r.codegrees.clone())
            .unwrap_or_default(),
        GroupDescriptor::Symmetric { n } => (0..n as u64).collect(),
    };
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn degree_profile(d: &GroupDescriptor) -> DegreeProfile {
    let degrees = degrees(d);
    let gcd_all = |it: &mut dyn Iterator<Item = u64>| it.fold(0u64, |g, x| g.gcd(&x));
    let dj = (0..degrees.len())
        .map(|j| {
            gcd_all(
                &mut degrees
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &x)| x),
            )
        })
        .collect();
    DegreeProfile {
        d: gcd_all(&mut degrees.iter().copied()),
        codegrees: codegrees(d),
        degrees,
        dj,
    }
}

/// `|W|`. For `G(m,p,n)` this is `m^n n! / p`.
pub fn group_order(d: &GroupDescriptor) -> u128 {
    match *d {
        GroupDescriptor::Exceptional { id } => exceptional::lookup(id).map_or(0, |r| r.order),
        _ => d
            .checked_order()
            .expect("descriptor constructors reject overflowing orders"),
    }
}

/// `|Z(W)|`, the gcd of the degrees.
pub fn center_order(d: &GroupDescriptor) -> u64 {
    gcd_of(&degrees(d))
}

/// `[W : Z(W)]`, the order of the projective image.
pub fn central_index(d: &GroupDescriptor) -> u128 {
    group_order(d) / center_order(d) as u128
}

/// Number of degrees divisible by `k`; the dimension of a regular
/// eigenspace for a primitive `k`-th root of unity.
pub fn eigenspace_dimension(d: &GroupDescriptor, k: u64) -> usize {
    divisible_count(&degrees(d), k)
}

/// Integers `k >= 1` dividing as many degrees as codegrees.
pub fn regular_numbers(d: &GroupDescriptor) -> BTreeSet<u64> {
    regular_numbers_of(&degrees(d), &codegrees(d))
}

/// Regular numbers whose regular eigenspaces are hyperplanes.
pub fn regular_hyperplane_numbers(d: &GroupDescriptor) -> Result<BTreeSet<u64>, RankOneError> {
    if d.rank() < 2 {
        return Err(RankOneError(*d));
    }
    Ok(regular_hyperplane_numbers_of(&degrees(d), &codegrees(d)))
}

/// Whether every regular element is central, i.e. every regular number
/// divides the center order.
pub fn all_regular_central(d: &GroupDescriptor) -> bool {
    all_regular_central_of(&degrees(d), &codegrees(d))
}

/// The same criteria over explicit degree and codegree lists.
pub fn gcd_of(xs: &[u64]) -> u64 {
    xs.iter().fold(0, |g, x| g.gcd(x))
}

pub fn divisible_count(xs: &[u64], k: u64) -> usize {
    xs.iter().filter(|&&x| x % k == 0).count()
}

pub fn regular_numbers_of(degrees: &[u64], codegrees: &[u64]) -> BTreeSet<u64> {
    let top = degrees.iter().copied().max().unwrap_or(1);
    (1..=top)
        .filter(|&k| divisible_count(degrees, k) == divisible_count(codegrees, k))
        .collect()
}

pub fn regular_hyperplane_numbers_of(degrees: &[u64], codegrees: &[u64]) -> BTreeSet<u64> {
    regular_numbers_of(degrees, codegrees)
        .into_iter()
        .filter(|&k| divisible_count(degrees, k) + 1 == degrees.len())
        .collect()
}

pub fn all_regular_central_of(degrees: &[u64], codegrees: &[u64]) -> bool {
    let z = gcd_of(degrees);
    regular_numbers_of(degrees, codegrees).iter().all(|k| z.is_multiple_of(*k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degrees(&g("G(4,2,3)")), vec![4, 6, 8]);
        assert_eq!(degrees(&g("Sym(4)")), vec![2, 3, 4, 5]);
        assert_eq!(degrees(&g("G25")), vec![6, 9, 12]);
        assert_eq!(degrees(&g("G(5,5,2)")), vec![2, 5]);
        assert_eq!(degrees(&g("G(4,4,2)")), vec![2, 4]);
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(codegrees(&g("G(4,2,3)")), vec![8, 4, 0]);
        assert_eq!(codegrees(&g("G(2,2,4)")), vec![4, 2, 2, 0]);
        assert_eq!(codegrees(&g("G25")), vec![6, 3, 0]);
        assert_eq!(codegrees(&g("Sym(4)")), vec![3, 2, 1, 0]);
        assert_eq!(codegrees(&g("G(3,3,2)")), vec![1, 0]);
    }

    #[test]
    fn real_groups_have_codegrees_degree_minus_two() {
        for s in ["G(2,2,4)", "G(2,1,3)", "G(2,2,5)", "G(5,5,2)", "G(8,8,2)", "Sym(5)", "G28", "G35"] {
            let d = g(s);
            let mut shifted: Vec<u64> = degrees(&d).iter().map(|x| x - 2).collect();
            shifted.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(codegrees(&d), shifted, "{s}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&g("G(4,2,3)")), 192);
        assert_eq!(group_order(&g("Sym(4)")), 120);
        assert_eq!(group_order(&g("G(2,1,2)")), 8);
        assert_eq!(group_order(&g("G25")), 648);
        assert_eq!(group_order(&g("G37")), 696_729_600);
    }

    #[test]
    fn centers() {
        assert_eq!(center_order(&g("G(4,2,3)")), 2);
        assert_eq!(center_order(&g("G25")), 3);
        assert_eq!(center_order(&g("Sym(4)")), 1);
        assert_eq!(central_index(&g("G(4,2,3)")), 96);
    }

    #[test]
    fn profile() {
        let p = degree_profile(&g("G25"));
        assert_eq!(p.d, 3);
        assert_eq!(p.dj, vec![3, 6, 3]);
        let p = degree_profile(&g("Sym(4)"));
        assert_eq!((p.d, p.dj), (1, vec![1, 1, 1, 1]));
        assert_eq!(degree_profile(&g("Sym(1)")).dj, vec![0]);
    }

    #[test]
    fn regular_number_examples() {
        assert_eq!(regular_numbers(&g("G(4,1,2)")), set(&[1, 2, 4, 8]));
        assert_eq!(regular_numbers(&g("Sym(2)")), set(&[1, 2, 3]));
        // A4: divisors of the Coxeter number 5 and of 4; 3 divides one
        // degree but two codegrees
        assert_eq!(regular_numbers(&g("Sym(4)")), set(&[1, 2, 4, 5]));
        assert!(regular_numbers(&g("G25")).contains(&6));
    }

    #[test]
    fn regular_hyperplane_examples() {
        // 2 and 6 both divide exactly the degrees 6 and 12
        assert_eq!(regular_hyperplane_numbers(&g("G25")).unwrap(), set(&[2, 6]));
        assert_eq!(regular_hyperplane_numbers(&g("G(4,2,3)")).unwrap(), set(&[]));
        assert_eq!(regular_hyperplane_numbers(&g("Sym(4)")).unwrap(), set(&[]));
        assert_eq!(regular_hyperplane_numbers(&g("Sym(3)")).unwrap(), set(&[2]));
        assert!(regular_hyperplane_numbers(&g("Sym(1)")).is_err());
    }

    #[test]
    fn all_regular_central_examples() {
        assert!(!all_regular_central(&g("G(4,1,2)")));
        // degrees {2, 4}: 4 is regular but does not divide the center order 2
        assert!(!all_regular_central(&g("G(4,4,2)")));
        // G7: degrees 12,12, codegrees 12,0; the regular numbers are the
        // divisors of 12, which is also the center order.
        assert!(all_regular_central(&g("G7")));
        assert!(all_regular_central(&g("G11")));
        assert!(all_regular_central(&g("G19")));
        assert!(!all_regular_central(&g("G25")));
    }

    #[test]
    fn one_is_always_regular() {
        for r in exceptional::records() {
            assert!(regular_numbers(&GroupDescriptor::Exceptional { id: r.id }).contains(&1));
        }
    }
}
