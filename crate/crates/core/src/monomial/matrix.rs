use std::fmt;

use itertools::Itertools;
use num_rational::Rational64;

use super::{MonomialError, RootScalar};

/// A monomial matrix over `μ_l`: column `i` holds `ζ_l^{weights[i]}` in row
/// `perm[i]` and zeros elsewhere, i.e. `w·e_i = ζ_l^{weights[i]} e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoMatrix {
    perm: Vec<usize>,
    weights: Vec<u64>,
    l: u64,
}

impl MonoMatrix {
    pub fn new(perm: Vec<usize>, weights: Vec<u64>, l: u64) -> Self {
        assert_eq!(perm.len(), weights.len());
        assert!(l > 0);
        debug_assert!(perm.iter().sorted().copied().eq(0..perm.len()), "not a permutation");
        let weights = weights.into_iter().map(|w| w % l).collect();
        MonoMatrix { perm, weights, l }
    }

    pub fn identity(n: usize, l: u64) -> Self {
        MonoMatrix::new((0..n).collect(), vec![0; n], l)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn ambient(&self) -> u64 {
        self.l
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &MonoMatrix) -> MonoMatrix {
        assert_eq!(self.l, rhs.l, "ambient orders differ");
        let perm = rhs.perm.iter().map(|&j| self.perm[j]).collect();
        let weights = rhs
            .perm
            .iter()
            .zip(&rhs.weights)
            .map(|(&j, &w)| (w + self.weights[j]) % self.l)
            .collect();
        MonoMatrix {
            perm,
            weights,
            l: self.l,
        }
    }

    pub fn inverse(&self) -> MonoMatrix {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut weights = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            weights[self.perm[i]] = (self.l - self.weights[i]) % self.l;
        }
        MonoMatrix {
            perm,
            weights,
            l: self.l,
        }
    }

    /// `ζ_l^e · self`.
    pub fn scaled(&self, e: u64) -> MonoMatrix {
        MonoMatrix {
            perm: self.perm.clone(),
            weights: self.weights.iter().map(|w| (w + e) % self.l).collect(),
            l: self.l,
        }
    }

    /// Representative of the coset `self · Z` with `Z` all scalar matrices:
    /// the multiple whose first weight is 0.
    pub fn projective_key(&self) -> MonoMatrix {
        let shift = (self.l - self.weights[0]) % self.l;
        self.scaled(shift)
    }

    /// The exponent `e` if `self = ζ_l^e · Id`.
    pub fn scalar_exponent(&self) -> Option<u64> {
        let e = self.weights[0];
        (self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.weights.iter().all(|&w| w == e))
            .then_some(e)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_exponent().is_some()
    }

    pub fn apply(&self, x: &MonoVector) -> MonoVector {
        assert_eq!(x.dim(), self.dim());
        let mut out = vec![RootScalar::ZERO; self.dim()];
        for (i, c) in x.coords.iter().enumerate() {
            out[self.perm[i]] = c.rotate(self.weights[i], self.l);
        }
        MonoVector { coords: out }
    }

    /// The `μ` with `self·x = μx`, if any. Same test as
    /// [`MonoVector::proportionality`] without materializing `self·x`.
    pub fn multiplier(&self, x: &MonoVector) -> Option<RootScalar> {
        let c = &x.coords;
        let i = c.iter().position(|v| !v.is_zero())?;
        let mu = c[i].rotate(self.weights[i], self.l).checked_div(&c[self.perm[i]])?;
        (0..c.len())
            .all(|j| c[j].rotate(self.weights[j], self.l) == mu * c[self.perm[j]])
            .then_some(mu)
    }

    /// Cycles of the permutation, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dim()];
        let mut out = Vec::new();
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Dimension of the fixed space: one per cycle whose weights sum to 0.
    pub fn fixed_dim(&self) -> usize {
        self.cycles()
            .iter()
            .filter(|c| c.iter().map(|&i| self.weights[i]).sum::<u64>() % self.l == 0)
            .count()
    }

    /// Full eigen-decomposition, read off cycle by cycle.
    ///
    /// A cycle `i_1 -> ... -> i_k` with weight sum `s` contributes the `k`
    /// eigenvalues `λ` with `λ^k = ζ_l^s`; the eigenvector for `λ` is
    /// supported on the cycle with `x_{i_1} = 1` and
    /// `x_{perm(i)} = ζ_l^{weights[i]} x_i / λ`. Equal eigenvalues from
    /// different cycles are merged. Eigenspaces are sorted by angle.
    pub fn eigen_data(&self) -> Vec<Eigenspace> {
        let mut spaces: Vec<Eigenspace> = Vec::new();
        for cycle in self.cycles() {
            let k = cycle.len() as u64;
            let s = cycle.iter().map(|&i| self.weights[i]).sum::<u64>() % self.l;
            for j in 0..k {
                // λ = exp(2πi (s + j·l) / (k·l))
                let lambda = RootScalar::root((s + j * self.l) as i64, k * self.l);
                let vector = self.cycle_eigenvector(&cycle, lambda);
                match spaces.iter_mut().find(|sp| sp.eigenvalue == lambda) {
                    Some(sp) => sp.basis.push(vector),
                    None => spaces.push(Eigenspace {
                        eigenvalue: lambda,
                        basis: vec![vector],
                    }),
                }
            }
        }
        spaces.sort_by_key(|sp| {
            let (a, b) = sp.eigenvalue.turn();
            Rational64::new(a as i64, b as i64)
        });
        spaces
    }

    fn cycle_eigenvector(&self, cycle: &[usize], lambda: RootScalar) -> MonoVector {
        let inv = lambda.recip().expect("eigenvalues are nonzero");
        let mut coords = vec![RootScalar::ZERO; self.dim()];
        coords[cycle[0]] = RootScalar::ONE;
        for w in cycle.windows(2) {
            let (i, next) = (w[0], w[1]);
            coords[next] = coords[i].rotate(self.weights[i], self.l) * inv;
        }
        MonoVector { coords }
    }

    /// Basis of `V(self, ζ)`; empty if `ζ` is not an eigenvalue.
    pub fn eigenspace(&self, zeta: RootScalar) -> Vec<MonoVector> {
        self.eigen_data()
            .into_iter()
            .find(|sp| sp.eigenvalue == zeta)
            .map(|sp| sp.basis)
            .unwrap_or_default()
    }
}

impl fmt::Display for MonoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "perm=[{}] weights=[{}]",
            self.perm.iter().map(|i| i + 1).join(","),
            self.weights.iter().join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenspace {
    pub eigenvalue: RootScalar,
    /// Vectors with pairwise disjoint supports.
    pub basis: Vec<MonoVector>,
}

/// A nonzero vector with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoVector {
    coords: Vec<RootScalar>,
}

impl MonoVector {
    pub fn new(coords: Vec<RootScalar>) -> Result<Self, MonomialError> {
        if coords.iter().all(RootScalar::is_zero) {
            return Err(MonomialError::ZeroVector);
        }
        Ok(MonoVector { coords })
    }

    pub fn coords(&self) -> &[RootScalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, c: RootScalar) -> MonoVector {
        MonoVector {
            coords: self.coords.iter().map(|&x| x * c).collect(),
        }
    }

    /// Sum of vectors with pairwise disjoint supports, scaled by `coeffs`.
    /// Returns `None` if supports overlap or the result is zero.
    pub fn disjoint_combination(vectors: &[MonoVector], coeffs: &[RootScalar]) -> Option<Self> {
        let n = vectors.first()?.dim();
        let mut coords = vec![RootScalar::ZERO; n];
        for (v, &c) in vectors.iter().zip(coeffs) {
            for (slot, &x) in coords.iter_mut().zip(&v.coords) {
                if x.is_zero() {
                    continue;
                }
                if !slot.is_zero() {
                    return None;
                }
                *slot = x * c;
            }
        }
        MonoVector::new(coords).ok()
    }

    /// The `μ` with `other = μ · self`, found from the first nonzero
    /// coordinate of `self` and verified on every coordinate.
    pub fn proportionality(&self, other: &MonoVector) -> Option<RootScalar> {
        let i = self.coords.iter().position(|c| !c.is_zero())?;
        let mu = other.coords[i].checked_div(&self.coords[i])?;
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| a * mu == b)
            .then_some(mu)
    }

    /// Whether `self` and `other` span the same line, by vanishing of all
    /// 2×2 minors. Independent of [`MonoVector::proportionality`].
    pub fn same_line(&self, other: &MonoVector) -> bool {
        let n = self.dim();
        if other.coords.iter().all(RootScalar::is_zero) {
            return false;
        }
        (0..n).all(|i| (i + 1..n).all(|j| self.coords[i] * other.coords[j] == self.coords[j] * other.coords[i]))
    }

    pub fn display_in(&self, l: u64) -> String {
        format!("({})", self.coords.iter().map(|c| c.display_in(l)).join(", "))
    }

    /// Parses `(c_1, ..., c_n)` where each coordinate is `q`, `q*z^e`,
    /// `z^e` or `z`, with `q` an optional-sign rational `a` or `a/b` and `z`
    /// standing for `ζ_l`. Parentheses are optional; whitespace is ignored.
    pub fn parse(text: &str, l: u64) -> Result<Self, MonomialError> {
        let syntax = |pos: usize, msg: &str| MonomialError::VectorSyntax {
            pos,
            msg: msg.to_string(),
        };
        let trimmed = text.trim();
        let offset = text.len() - text.trim_start().len();
        let (body, body_offset) = match (trimmed.strip_prefix('('), trimmed.strip_suffix(')')) {
            (Some(_), Some(_)) => (&trimmed[1..trimmed.len() - 1], offset + 1),
            (None, None) => (trimmed, offset),
            _ => return Err(syntax(offset, "unbalanced parentheses")),
        };
        let mut coords = Vec::new();
        let mut start = body_offset;
        for piece in body.split(',') {
            coords.push(parse_coordinate(piece, start, l)?);
            start += piece.len() + 1;
        }
        MonoVector::new(coords)
    }
}

fn parse_coordinate(piece: &str, start: usize, l: u64) -> Result<RootScalar, MonomialError> {
    let err = |msg: String| MonomialError::VectorSyntax { pos: start, msg };
    let compact: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty coordinate".into()));
    }
    let (q_part, root_part) = match compact.find('z') {
        Some(i) => {
            let q = compact[..i].strip_suffix('*').unwrap_or(&compact[..i]);
            if !compact[..i].is_empty() && !compact[..i].ends_with('*') && q != "-" {
                return Err(err(format!("expected '*' before 'z' in {compact:?}")));
            }
            (q, Some(&compact[i + 1..]))
        }
        None => (compact.as_str(), None),
    };
    let q = match q_part {
        "" => Rational64::ONE,
        "-" => -Rational64::ONE,
        s => parse_rational(s).ok_or_else(|| err(format!("bad rational {s:?}")))?,
    };
    let e = match root_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or_else(|| err(format!("bad exponent in {compact:?}")))?,
    };
    Ok(RootScalar::new(q, e, l))
}

fn parse_rational(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.parse().ok()?, b.parse().ok()?);
            (b != 0).then(|| Rational64::new(a, b))
        }
        None => Some(Rational64::from_integer(s.parse().ok()?)),
    }
}

/// A linear form whose kernel is a reflecting hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearForm {
    /// `x_i`.
    Coordinate(usize),
    /// `x_i - ζ_l^e x_j` with `i < j`.
    Difference { i: usize, j: usize, e: u64, l: u64 },
}

impl LinearForm {
    pub fn vanishes_at(&self, x: &MonoVector) -> bool {
        let c = x.coords();
        match *self {
            LinearForm::Coordinate(i) => c[i].is_zero(),
            LinearForm::Difference { i, j, e, l } => c[i] == c[j].rotate(e, l),
        }
    }

    /// Kernel of `r - 1` for a reflection `r`; `None` if `r` is not a
    /// reflection of diagonal or transposition type.
    pub fn of_reflection(r: &MonoMatrix) -> Option<LinearForm> {
        let moved: Vec<usize> = (0..r.dim()).filter(|&i| r.perm[i] != i).collect();
        match moved.as_slice() {
            [] => {
                let nontrivial: Vec<usize> = (0..r.dim()).filter(|&i| r.weights[i] != 0).collect();
                match nontrivial.as_slice() {
                    [i] => Some(LinearForm::Coordinate(*i)),
                    _ => None,
                }
            }
            &[i, j] => {
                if !(r.weights[i] + r.weights[j]).is_multiple_of(r.l)
                    || (0..r.dim()).any(|k| k != i && k != j && r.weights[k] != 0)
                {
                    return None;
                }
                // Fixed vectors satisfy x_j = ζ^{w_i} x_i, i.e. x_i = ζ^{w_j} x_j.
                Some(LinearForm::Difference {
                    i,
                    j,
                    e: r.weights[j],
                    l: r.l,
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LinearForm::Coordinate(i) => write!(f, "x{}", i + 1),
            LinearForm::Difference { i, j, e: 0, .. } => write!(f, "x{} - x{}", i + 1, j + 1),
            LinearForm::Difference { i, j, e, .. } => write!(f, "x{} - z^{e}*x{}", i + 1, j + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(e: i64, l: u64) -> RootScalar {
        RootScalar::root(e, l)
    }

    fn vector(coords: &[RootScalar]) -> MonoVector {
        MonoVector::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn identity_eigen_data() {
        let id = MonoMatrix::identity(3, 6);
        let data = id.eigen_data();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].eigenvalue, RootScalar::ONE);
        assert_eq!(data[0].basis.len(), 3);
    }

    #[test]
    fn rotation_eigen_data() {
        // e1 -> e2, e2 -> -e1 over μ_4: weights (0, 2).
        let w = MonoMatrix::new(vec![1, 0], vec![0, 2], 4);
        let data = w.eigen_data();
        let i = rs(1, 4);
        let minus_i = rs(3, 4);
        assert_eq!(data.len(), 2);
        for sp in &data {
            assert_eq!(sp.basis.len(), 1);
            let v = &sp.basis[0];
            assert_eq!(w.apply(v), v.scale(sp.eigenvalue));
        }
        // λ = i has eigenvector (1, -i); λ = -i has (1, i).
        assert_eq!(w.eigenspace(i), vec![vector(&[RootScalar::ONE, minus_i])]);
        assert_eq!(w.eigenspace(minus_i), vec![vector(&[RootScalar::ONE, i])]);
    }

    #[test]
    fn diagonal_eigen_data() {
        let w = MonoMatrix::new(vec![0, 1, 2], vec![1, 0, 0], 4);
        let data = w.eigen_data();
        assert_eq!(data.len(), 2);
        assert_eq!((data[0].eigenvalue, data[0].basis.len()), (RootScalar::ONE, 2));
        assert_eq!((data[1].eigenvalue, data[1].basis.len()), (rs(1, 4), 1));
    }

    #[test]
    fn reflection_forms() {
        let diag = MonoMatrix::new(vec![0, 1], vec![0, 2], 4);
        assert_eq!(LinearForm::of_reflection(&diag), Some(LinearForm::Coordinate(1)));
        let t = MonoMatrix::new(vec![1, 0, 2], vec![1, 3, 0], 4);
        let form = LinearForm::of_reflection(&t).unwrap();
        assert_eq!(form, LinearForm::Difference { i: 0, j: 1, e: 3, l: 4 });
        // the form vanishes exactly on the fixed space of t
        let fixed = vector(&[rs(3, 4), RootScalar::ONE, rs(1, 3)]);
        assert_eq!(t.apply(&fixed), fixed);
        assert!(form.vanishes_at(&fixed));
        assert_eq!(LinearForm::of_reflection(&MonoMatrix::identity(2, 4)), None);
    }

    #[test]
    fn parse_vectors() {
        let l = 4;
        let v = MonoVector::parse("(1, 2)", l).unwrap();
        assert_eq!(v.coords(), &[RootScalar::ONE, RootScalar::rational(2.into())]);
        let v = MonoVector::parse("1, -z", l).unwrap();
        assert_eq!(v.coords(), &[RootScalar::ONE, rs(3, 4)]);
        let v = MonoVector::parse("( 1/2*z^3 , -1/3, 0, z^2 )", l).unwrap();
        assert_eq!(
            v.coords(),
            &[
                RootScalar::new(Rational64::new(1, 2), 3, 4),
                RootScalar::new(Rational64::new(-1, 3), 0, 1),
                RootScalar::ZERO,
                rs(2, 4)
            ]
        );
        assert!(matches!(MonoVector::parse("(0, 0)", l), Err(MonomialError::ZeroVector)));
        assert!(matches!(
            MonoVector::parse("(1, 2", l),
            Err(MonomialError::VectorSyntax { .. })
        ));
        assert!(matches!(
            MonoVector::parse("(1, 2z)", l),
            Err(MonomialError::VectorSyntax { pos: 3, .. })
        ));
        assert!(matches!(
            MonoVector::parse("(1, 1/0)", l),
            Err(MonomialError::VectorSyntax { .. })
        ));
    }

    fn matrix(n: usize, l: u64) -> impl Strategy<Value = MonoMatrix> {
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(0..l, n),
        )
            .prop_map(move |(perm, w)| MonoMatrix::new(perm, w, l))
    }

    fn scalar(l: u64) -> impl Strategy<Value = RootScalar> {
        (0i64..4, 0..l as i64).prop_map(move |(q, e)| RootScalar::new(q.into(), e, l))
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in matrix(4, 12), b in matrix(4, 12), c in matrix(4, 12)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn inverse_and_action(a in matrix(4, 12), b in matrix(4, 12),
                              x in prop::collection::vec(scalar(12), 4)) {
            prop_assume!(x.iter().any(|c| !c.is_zero()));
            let x = MonoVector::new(x).unwrap();
            prop_assert_eq!(a.compose(&a.inverse()), MonoMatrix::identity(4, 12));
            prop_assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        }

        #[test]
        fn eigen_data_is_complete_and_correct(a in matrix(4, 12)) {
            let data = a.eigen_data();
            prop_assert_eq!(data.iter().map(|sp| sp.basis.len()).sum::<usize>(), 4);
            let fixed = data.iter().find(|sp| sp.eigenvalue == RootScalar::ONE).map_or(0, |sp| sp.basis.len());
            prop_assert_eq!(fixed, a.fixed_dim());
            for sp in &data {
                for v in &sp.basis {
                    prop_assert_eq!(a.apply(v), v.scale(sp.eigenvalue));
                }
            }
        }

        #[test]
        fn proportionality_agrees_with_minors(a in matrix(3, 6),
                                              x in prop::collection::vec(scalar(6), 3)) {
            prop_assume!(x.iter().any(|c| !c.is_zero()));
            let x = MonoVector::new(x).unwrap();
            let y = a.apply(&x);
            prop_assert_eq!(x.proportionality(&y).is_some(), x.same_line(&y));
        }

        #[test]
        fn multiplier_matches_proportionality(a in matrix(3, 6), b in matrix(3, 6),
                                              x in prop::collection::vec(scalar(6), 3)) {
            prop_assume!(x.iter().any(|c| !c.is_zero()));
            let x = MonoVector::new(x).unwrap();
            prop_assert_eq!(a.multiplier(&x), x.proportionality(&a.apply(&x)));
            for sp in b.eigen_data() {
                for v in &sp.basis {
                    prop_assert_eq!(a.multiplier(v), v.proportionality(&a.apply(v)));
                    prop_assert_eq!(b.multiplier(v), Some(sp.eigenvalue));
                }
            }
        }
    }
}
