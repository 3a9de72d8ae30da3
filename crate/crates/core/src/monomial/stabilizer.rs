use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{LinearForm, MonoGroup, MonoMatrix, MonoVector, MonomialError, RegularElement, RootScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stratum {
    OnReflectingHyperplane,
    InProperRegularEigenspace,
    StronglyRegular,
}

/// An element `λw` of `W~` fixing the probed vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerPair {
    pub element: MonoMatrix,
    pub lambda: RootScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub ambient: u64,
    /// One pair per element of the stabilizer; always contains `(Id, 1)`.
    pub pairs: Vec<StabilizerPair>,
    pub stratum: Stratum,
    /// Whether every `λw` in the stabilizer lies in `W`.
    pub stab_in_w: bool,
}

impl StabilizerReport {
    pub fn is_trivial(&self) -> bool {
        self.pairs.len() == 1
    }
}

/// Precomputed hyperplanes and proper regular eigenpairs of one group, for
/// repeated stabilizer probes.
pub struct StabilizerProbe<'g> {
    group: &'g MonoGroup,
    forms: Vec<LinearForm>,
    /// `(element index, ζ)` with `V(w, ζ)` regular and `w` not scalar.
    proper_regular: Vec<(usize, RootScalar)>,
}

impl<'g> StabilizerProbe<'g> {
    pub fn new(group: &'g MonoGroup) -> Self {
        Self::with_regular(group, &group.regular_elements())
    }

    pub fn with_regular(group: &'g MonoGroup, regular: &[RegularElement]) -> Self {
        let proper_regular = regular
            .iter()
            .filter(|r| !group.elements()[r.index].is_scalar())
            .map(|r| (r.index, r.eigenvalue))
            .collect();
        StabilizerProbe {
            group,
            forms: group.hyperplanes(),
            proper_regular,
        }
    }

    pub fn group(&self) -> &MonoGroup {
        self.group
    }

    fn check(&self, x: &MonoVector) -> Result<(), MonomialError> {
        if x.dim() != self.group.rank() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.group.rank(),
                got: x.dim(),
            });
        }
        if x.coords().iter().all(RootScalar::is_zero) {
            return Err(MonomialError::ZeroVector);
        }
        Ok(())
    }

    /// Hyperplanes containing `x`.
    pub fn hyperplanes_through(&self, x: &MonoVector) -> Vec<LinearForm> {
        self.forms.iter().filter(|f| f.vanishes_at(x)).copied().collect()
    }

    /// A proper regular eigenspace containing `x`, tested as `w·x = ζx`.
    pub fn proper_regular_eigenspace_through(&self, x: &MonoVector) -> Option<(usize, RootScalar)> {
        self.proper_regular
            .iter()
            .find(|&&(i, zeta)| self.group.elements()[i].apply(x) == x.scale(zeta))
            .copied()
    }

    /// Stratum of `x`, decided by membership tests only.
    pub fn stratum(&self, x: &MonoVector) -> Stratum {
        if self.forms.iter().any(|f| f.vanishes_at(x)) {
            Stratum::OnReflectingHyperplane
        } else if self.proper_regular_eigenspace_through(x).is_some() {
            Stratum::InProperRegularEigenspace
        } else {
            Stratum::StronglyRegular
        }
    }

    /// `Stab_{W~}(x)`: every `λw` with `w·x = λ^{-1} x`.
    pub fn extended_stabilizer(&self, x: &MonoVector) -> Result<StabilizerReport, MonomialError> {
        self.check(x)?;
        let l = self.group.ambient();
        // `λw` and `(λz^{-1})(zw)` are the same element of `W~` for central
        // `z`, so keep one pair per coset of `Z(W)`, preferring scalars as
        // `(Id, 1)`.
        let mut by_coset: BTreeMap<MonoMatrix, StabilizerPair> = BTreeMap::new();
        for w in self.group.elements() {
            let Some(mu) = w.multiplier(x) else {
                continue;
            };
            let lambda = mu.recip().expect("w is invertible, so w·x is nonzero");
            let pair = if w.is_scalar() {
                StabilizerPair {
                    element: MonoMatrix::identity(w.dim(), l),
                    lambda: RootScalar::ONE,
                }
            } else {
                StabilizerPair {
                    element: w.clone(),
                    lambda,
                }
            };
            by_coset.entry(w.projective_key()).or_insert(pair);
        }
        let pairs: Vec<StabilizerPair> = by_coset.into_values().collect();
        let stab_in_w = pairs.iter().all(|pair| {
            pair.lambda.is_root_of_unity()
                && pair
                    .lambda
                    .exponent_in(l)
                    .is_some_and(|e| self.group.contains(&pair.element.scaled(e)))
        });
        Ok(StabilizerReport {
            ambient: l,
            pairs,
            stratum: self.stratum(x),
            stab_in_w,
        })
    }

    /// Whether the stabilizer of the line `[x]` in `W / Z(W)` is trivial:
    /// every `w` with `[w·x] = [x]` is scalar. Lines are compared by 2×2
    /// minors.
    pub fn projective_stabilizer_trivial(&self, x: &MonoVector) -> bool {
        self.group
            .elements()
            .iter()
            .filter(|w| !w.is_scalar())
            .all(|w| !x.same_line(&w.apply(x)))
    }

    /// Whether the stabilizer of the orbit `W·x` under scalars modulo
    /// `Z(W)` is trivial: no `ζ_l^e ∉ Z(W)` has `ζ_l^e x ∈ W·x`. Only
    /// `l`-th roots can occur since each such scalar is an eigenvalue.
    pub fn scalar_action_stabilizer_trivial(&self, x: &MonoVector) -> bool {
        let l = self.group.ambient();
        let orbit: HashSet<MonoVector> = self.group.elements().iter().map(|w| w.apply(x)).collect();
        let center: HashSet<u64> = self.group.scalars().into_iter().collect();
        (0..l)
            .filter(|e| !center.contains(e))
            .all(|e| !orbit.contains(&x.scale(RootScalar::root(e as i64, l))))
    }
}

/// One-off probe of `Stab_{W~}(x)`.
pub fn extended_stabilizer(g: &MonoGroup, x: &MonoVector) -> Result<StabilizerReport, MonomialError> {
    StabilizerProbe::new(g).extended_stabilizer(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::DEFAULT_CAP;

    fn b2() -> MonoGroup {
        MonoGroup::build(2, 1, 2, DEFAULT_CAP).unwrap()
    }

    fn v(text: &str, g: &MonoGroup) -> MonoVector {
        MonoVector::parse(text, g.ambient()).unwrap()
    }

    #[test]
    fn vector_on_mirror() {
        let g = b2();
        let r = extended_stabilizer(&g, &v("(1, 1)", &g)).unwrap();
        assert_eq!(r.stratum, Stratum::OnReflectingHyperplane);
        let swap = MonoMatrix::new(vec![1, 0], vec![0, 0], g.ambient());
        assert!(r.pairs.contains(&StabilizerPair {
            element: swap,
            lambda: RootScalar::ONE
        }));
    }

    #[test]
    fn strongly_regular_vector() {
        let g = b2();
        let r = extended_stabilizer(&g, &v("(1, 2)", &g)).unwrap();
        assert_eq!(r.stratum, Stratum::StronglyRegular);
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].element, MonoMatrix::identity(2, g.ambient()));
        assert_eq!(r.pairs[0].lambda, RootScalar::ONE);
        assert!(r.stab_in_w);
    }

    #[test]
    fn vector_on_regular_eigenline() {
        let g = b2();
        // (1, -i) spans the i-eigenline of e1 -> e2 -> -e1; ambient l = 4.
        let x = v("(1, z^3)", &g);
        let probe = StabilizerProbe::new(&g);
        let r = probe.extended_stabilizer(&x).unwrap();
        assert_eq!(r.stratum, Stratum::InProperRegularEigenspace);
        assert_eq!(r.pairs.len(), 2);
        assert!(r.pairs.iter().any(|p| p.lambda.root_order() == 4));
        assert!(!r.stab_in_w);
        assert!(!probe.scalar_action_stabilizer_trivial(&x));
        assert!(!probe.projective_stabilizer_trivial(&x));
    }

    #[test]
    fn identity_always_present() {
        let g = MonoGroup::build(3, 1, 3, DEFAULT_CAP).unwrap();
        let probe = StabilizerProbe::new(&g);
        for text in ["(1, 0, 0)", "(1, 2, 3)", "(z, z, z)", "(1/2*z^5, 3, 0)"] {
            let r = probe.extended_stabilizer(&v(text, &g)).unwrap();
            assert!(r
                .pairs
                .iter()
                .any(|p| p.element == MonoMatrix::identity(3, g.ambient()) && p.lambda == RootScalar::ONE));
        }
    }

    #[test]
    fn rejects_bad_vectors() {
        let g = b2();
        let probe = StabilizerProbe::new(&g);
        let x = MonoVector::parse("(1, 2, 3)", 4).unwrap();
        assert!(matches!(
            probe.extended_stabilizer(&x),
            Err(MonomialError::DimensionMismatch { expected: 2, got: 3 })
        ));
    }
}
