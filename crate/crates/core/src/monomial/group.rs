use std::collections::HashSet;

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;

use super::{LinearForm, MonoMatrix, MonoVector, MonomialError, RootScalar};
use crate::taxonomy::{group_order, GroupDescriptor};

/// Default element cap for materialized groups.
pub const DEFAULT_CAP: u128 = 32_768;

/// `m · lcm(1..=n)`: every eigenvalue of every element of `G(m,p,n)` is an
/// `l`-th root of unity, since a `k`-cycle with weight sum in `μ_m` has
/// eigenvalues in `μ_{km}`.
pub fn default_ambient(m: u32, n: u32) -> u64 {
    (1..=n as u64).fold(1u64, |acc, k| acc.lcm(&k)) * m as u64
}

/// `G(m,p,n)` materialized as monomial matrices over `μ_l`.
#[derive(Debug, Clone)]
pub struct MonoGroup {
    m: u32,
    p: u32,
    n: u32,
    l: u64,
    elements: Vec<MonoMatrix>,
}

impl MonoGroup {
    pub fn build(m: u32, p: u32, n: u32, cap: u128) -> Result<Self, MonomialError> {
        Self::build_in(m, p, n, cap, default_ambient(m, n))
    }

    /// Builds over a caller-chosen ambient order, which must be a multiple
    /// of [`default_ambient`].
    pub fn build_in(m: u32, p: u32, n: u32, cap: u128, l: u64) -> Result<Self, MonomialError> {
        let descriptor = GroupDescriptor::imprimitive(m, p, n)?;
        let required = default_ambient(m, n);
        if !l.is_multiple_of(required) {
            return Err(MonomialError::BadAmbient { l, required });
        }
        let order = group_order(&descriptor);
        if order > cap {
            return Err(MonomialError::CapExceeded {
                descriptor,
                order,
                cap,
            });
        }
        let c = l / m as u64;
        let weight_vectors: Vec<Vec<u64>> = (0..n)
            .map(|_| 0..m as u64)
            .multi_cartesian_product()
            .filter(|w| w.iter().sum::<u64>() % p as u64 == 0)
            .map(|w| w.into_iter().map(|x| x * c).collect())
            .collect();
        let elements = (0..n as usize)
            .permutations(n as usize)
            .flat_map(|perm| {
                weight_vectors
                    .iter()
                    .map(move |w| MonoMatrix::new(perm.clone(), w.clone(), l))
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(elements.len() as u128, order);
        Ok(MonoGroup {
            m,
            p,
            n,
            l,
            elements,
        })
    }

    pub fn from_descriptor(d: &GroupDescriptor, cap: u128) -> Result<Self, MonomialError> {
        match *d {
            GroupDescriptor::Imprimitive { m, p, n } => Self::build(m, p, n, cap),
            _ => Err(MonomialError::NoMatrixModel(*d)),
        }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::Imprimitive {
            m: self.m,
            p: self.p,
            n: self.n,
        }
    }

    pub fn params(&self) -> (u32, u32, u32) {
        (self.m, self.p, self.n)
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn ambient(&self) -> u64 {
        self.l
    }

    pub fn elements(&self) -> &[MonoMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Membership test: all weights lie in `μ_m` and their sum lies in
    /// `μ_{m/p}`.
    pub fn contains(&self, w: &MonoMatrix) -> bool {
        if w.dim() != self.rank() || w.ambient() != self.l {
            return false;
        }
        let c = self.l / self.m as u64;
        w.weights().iter().all(|x| x % c == 0)
            && w.weights().iter().sum::<u64>() % (c * self.p as u64) == 0
    }

    /// Exponents `e` with `ζ_l^e · Id` in the group.
    pub fn scalars(&self) -> Vec<u64> {
        self.elements
            .iter()
            .filter_map(MonoMatrix::scalar_exponent)
            .collect()
    }

    /// All reflections, built directly: diagonal ones (present iff `p < m`)
    /// and transposition-type ones.
    pub fn reflections(&self) -> Vec<MonoMatrix> {
        let (m, p, n, l) = (self.m as u64, self.p as u64, self.rank(), self.l);
        let c = l / m;
        let mut out = Vec::new();
        for i in 0..n {
            for t in (p..m).step_by(p as usize) {
                let mut w = vec![0; n];
                w[i] = t * c;
                out.push(MonoMatrix::new((0..n).collect(), w, l));
            }
        }
        for (i, j) in (0..n).tuple_combinations() {
            for a in 0..m {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(i, j);
                let mut w = vec![0; n];
                w[i] = a * c;
                w[j] = ((m - a) % m) * c;
                out.push(MonoMatrix::new(perm, w, l));
            }
        }
        out
    }

    /// Reflecting hyperplanes as linear forms, one per hyperplane, sorted.
    pub fn hyperplanes(&self) -> Vec<LinearForm> {
        self.reflections()
            .iter()
            .filter_map(LinearForm::of_reflection)
            .sorted()
            .dedup()
            .collect()
    }

    /// Whether `span(basis)` is contained in no reflecting hyperplane. A
    /// subspace inside a finite union of hyperplanes lies in one of them,
    /// so it suffices to test each form against the basis.
    pub fn avoids_hyperplanes(forms: &[LinearForm], basis: &[MonoVector]) -> bool {
        forms
            .iter()
            .all(|f| basis.iter().any(|b| !f.vanishes_at(b)))
    }

    /// All pairs `(w, ζ)` such that `V(w, ζ)` meets the hyperplane complement.
    pub fn regular_elements(&self) -> Vec<RegularElement> {
        let forms = self.hyperplanes();
        self.elements
            .par_iter()
            .enumerate()
            .flat_map_iter(|(index, w)| {
                let forms = &forms;
                w.eigen_data().into_iter().filter_map(move |sp| {
                    Self::avoids_hyperplanes(forms, &sp.basis).then_some(RegularElement {
                        index,
                        eigenvalue: sp.eigenvalue,
                        basis: sp.basis,
                    })
                })
            })
            .collect()
    }
}

/// A regular pair: element `index` of its group together with an
/// eigenvalue whose eigenspace meets the hyperplane complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularElement {
    pub index: usize,
    pub eigenvalue: RootScalar,
    pub basis: Vec<MonoVector>,
}

impl RegularElement {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Order of the eigenvalue as a root of unity.
    pub fn order(&self) -> u64 {
        self.eigenvalue.root_order()
    }
}

/// Whether `W~ = W'~`: each element of either group is a scalar multiple of
/// an element of the other. Compared through projective keys, which pick
/// the unique multiple with first weight 0.
pub fn extended_group_equal(a: &MonoGroup, b: &MonoGroup) -> Result<bool, MonomialError> {
    if a.ambient() != b.ambient() || a.rank() != b.rank() {
        return Err(MonomialError::IncompatibleAmbient {
            left: (a.descriptor(), a.ambient()),
            right: (b.descriptor(), b.ambient()),
        });
    }
    let keys = |g: &MonoGroup| -> HashSet<MonoMatrix> {
        g.elements().iter().map(MonoMatrix::projective_key).collect()
    };
    Ok(keys(a) == keys(b))
}

/// Whether every element of `a` lies in `b` (same ambient required).
pub fn is_subgroup(a: &MonoGroup, b: &MonoGroup) -> Result<bool, MonomialError> {
    if a.ambient() != b.ambient() || a.rank() != b.rank() {
        return Err(MonomialError::IncompatibleAmbient {
            left: (a.descriptor(), a.ambient()),
            right: (b.descriptor(), b.ambient()),
        });
    }
    Ok(a.elements().iter().all(|w| b.contains(w)))
}

/// Smallest ambient order valid for both `G(m1,·,n)` and `G(m2,·,n)`.
pub fn common_ambient(m1: u32, m2: u32, n: u32) -> u64 {
    default_ambient(m1, n).lcm(&default_ambient(m2, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy;

    fn grp(m: u32, p: u32, n: u32) -> MonoGroup {
        MonoGroup::build(m, p, n, DEFAULT_CAP).unwrap()
    }

    fn in_ambient(m: u32, p: u32, n: u32, l: u64) -> MonoGroup {
        MonoGroup::build_in(m, p, n, DEFAULT_CAP, l).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(2, 1, 2).order(), 8);
        assert_eq!(grp(4, 2, 3).order(), 192);
        assert_eq!(grp(3, 3, 3).order(), 54);
    }

    #[test]
    fn cap_refusal() {
        match MonoGroup::build(6, 1, 4, 20_000) {
            Err(MonomialError::CapExceeded { order, cap, .. }) => {
                assert_eq!((order, cap), (31_104, 20_000))
            }
            other => panic!("expected cap refusal, got {other:?}"),
        }
        assert!(matches!(
            MonoGroup::build(2, 2, 2, DEFAULT_CAP),
            Err(MonomialError::Descriptor(_))
        ));
        assert!(matches!(
            MonoGroup::build_in(4, 1, 2, DEFAULT_CAP, 12),
            Err(MonomialError::BadAmbient { required: 8, .. })
        ));
    }

    #[test]
    fn ambient_holds_all_eigenvalues() {
        // G(4,1,4) has 4-cycles with eigenvalues of order 16.
        let g = grp(4, 1, 4);
        assert_eq!(g.ambient(), 48);
        for w in g.elements() {
            for sp in w.eigen_data() {
                assert!(sp.eigenvalue.exponent_in(g.ambient()).is_some(), "{w}");
            }
        }
    }

    #[test]
    fn closed_under_composition_and_inverse() {
        let g = grp(4, 2, 3);
        let els = g.elements();
        for (k, a) in els.iter().enumerate().step_by(7) {
            let b = &els[(k * 31 + 5) % els.len()];
            assert!(g.contains(&a.compose(b)));
            assert!(g.contains(&a.inverse()));
        }
        assert!(els.iter().all(|w| g.contains(w)));
        assert_eq!(els.iter().collect::<HashSet<_>>().len(), els.len());
    }

    #[test]
    fn reflections_match_fixed_space_filter() {
        for (m, p, n, count) in [(2, 1, 2, 4), (3, 3, 3, 9), (4, 2, 3, 15), (6, 2, 3, 24), (4, 4, 2, 4)] {
            let g = grp(m, p, n);
            let direct: HashSet<MonoMatrix> = g.reflections().into_iter().collect();
            let filtered: HashSet<MonoMatrix> = g
                .elements()
                .iter()
                .filter(|w| w.fixed_dim() == g.rank() - 1)
                .cloned()
                .collect();
            assert_eq!(direct, filtered, "G({m},{p},{n})");
            assert_eq!(direct.len(), count, "G({m},{p},{n})");
            // number of reflections is the sum of (d_i - 1)
            let d = GroupDescriptor::imprimitive(m, p, n).unwrap();
            let expected: u64 = taxonomy::degrees(&d).iter().map(|x| x - 1).sum();
            assert_eq!(direct.len() as u64, expected);
        }
    }

    #[test]
    fn hyperplane_examples() {
        let g = grp(2, 1, 2);
        let forms = g.hyperplanes();
        assert_eq!(forms.len(), 4);
        assert!(forms.contains(&LinearForm::Coordinate(0)));
        assert!(forms.contains(&LinearForm::Coordinate(1)));
        assert!(forms.contains(&LinearForm::Difference { i: 0, j: 1, e: 0, l: 4 }));
        assert!(forms.contains(&LinearForm::Difference { i: 0, j: 1, e: 2, l: 4 }));

        let g = grp(3, 3, 2);
        let forms = g.hyperplanes();
        assert_eq!(forms.len(), 3);
        assert!(forms.iter().all(|f| matches!(f, LinearForm::Difference { .. })));

        assert_eq!(grp(4, 2, 3).hyperplanes().len(), 15);
    }

    #[test]
    fn hyperplane_count_is_codegree_sum() {
        for (m, p, n) in [(2, 1, 2), (3, 3, 3), (4, 2, 3), (6, 6, 2), (5, 1, 3), (2, 2, 4)] {
            let g = grp(m, p, n);
            let d = g.descriptor();
            let expected: u64 = taxonomy::codegrees(&d).iter().map(|x| x + 1).sum();
            assert_eq!(g.hyperplanes().len() as u64, expected, "{d}");
        }
    }

    #[test]
    fn scalar_count_is_center_order() {
        for (m, p, n) in [(4, 2, 3), (6, 3, 2), (6, 2, 4), (5, 5, 3)] {
            let g = grp(m, p, n);
            assert_eq!(
                g.scalars().len() as u64,
                taxonomy::center_order(&g.descriptor()),
                "G({m},{p},{n})"
            );
        }
    }

    #[test]
    fn regular_examples() {
        let g = grp(2, 1, 2);
        let regular = g.regular_elements();
        let rot = MonoMatrix::new(vec![1, 0], vec![0, 2], 4);
        let idx = g.elements().iter().position(|w| *w == rot).unwrap();
        assert!(regular
            .iter()
            .any(|r| r.index == idx && r.eigenvalue == RootScalar::root(1, 4)));
        let id = g.elements().iter().position(|w| w.is_scalar() && w.weights()[0] == 0).unwrap();
        assert!(regular.iter().any(|r| r.index == id && r.eigenvalue == RootScalar::ONE));

        // G(3,3,3) has degrees 3,3,6, so a ζ_3-regular eigenspace is the
        // whole space: the ζ_3-regular elements are exactly the scalars ζ_3^k.
        let g = grp(3, 3, 3);
        let omega = RootScalar::root(1, 3);
        let cube_regular: Vec<usize> = g
            .regular_elements()
            .into_iter()
            .filter(|r| r.eigenvalue == omega)
            .map(|r| r.index)
            .collect();
        assert_eq!(cube_regular.len(), 1);
        assert!(g.elements()[cube_regular[0]].is_scalar());
        let c = g.ambient() / 3;
        let cycle = MonoMatrix::new(vec![1, 2, 0], vec![0, c, 2 * c], g.ambient());
        let idx = g.elements().iter().position(|x| *x == cycle).unwrap();
        assert!(regular_orders(&g, idx).is_empty());
        // a 6-regular element exists and has a one-dimensional eigenspace
        assert!(g.regular_elements().iter().any(|r| r.order() == 6 && r.dim() == 1));
    }

    fn regular_orders(g: &MonoGroup, idx: usize) -> HashSet<u64> {
        g.regular_elements()
            .into_iter()
            .filter(|r| r.index == idx)
            .map(|r| r.order())
            .collect()
    }

    #[test]
    fn extended_equality_examples() {
        let l = common_ambient(2, 4, 2);
        let b2 = in_ambient(2, 1, 2, l);
        let g442 = in_ambient(4, 4, 2, l);
        let g422 = in_ambient(4, 2, 2, l);
        assert!(extended_group_equal(&b2, &g442).unwrap());
        assert!(extended_group_equal(&b2, &g422).unwrap());
        assert!(extended_group_equal(&g422, &g422).unwrap());

        let l = common_ambient(2, 3, 2);
        assert!(!extended_group_equal(&in_ambient(2, 1, 2, l), &in_ambient(3, 3, 2, l)).unwrap());

        // A2 and its full group G(6,2,2)
        let l = common_ambient(3, 6, 2);
        assert!(extended_group_equal(&in_ambient(3, 3, 2, l), &in_ambient(6, 2, 2, l)).unwrap());

        assert!(matches!(
            extended_group_equal(&grp(2, 1, 2), &grp(3, 3, 2)),
            Err(MonomialError::IncompatibleAmbient { .. })
        ));
    }

    #[test]
    fn subgroup_checks() {
        let l = common_ambient(4, 4, 3);
        assert!(is_subgroup(&in_ambient(4, 2, 3, l), &in_ambient(4, 1, 3, l)).unwrap());
        assert!(!is_subgroup(&in_ambient(4, 1, 3, l), &in_ambient(4, 2, 3, l)).unwrap());
    }
}
