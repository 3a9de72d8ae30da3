use num_rational::Rational64;
use rand::Rng;

use super::{MonoGroup, MonoVector, RegularElement, RootScalar};

const MODULI: [(i64, i64); 6] = [(0, 1), (1, 1), (2, 1), (3, 1), (1, 2), (1, 3)];
const COEFF_MODULI: [(i64, i64); 4] = [(1, 1), (2, 1), (3, 1), (1, 2)];

fn random_scalar<R: Rng>(rng: &mut R, l: u64, moduli: &[(i64, i64)]) -> RootScalar {
    let (a, b) = moduli[rng.random_range(0..moduli.len())];
    RootScalar::new(Rational64::new(a, b), rng.random_range(0..l) as i64, l)
}

/// A random nonzero vector with coordinates `q · ζ_l^e`, `q` drawn from
/// `{0, 1, 2, 3, 1/2, 1/3}` and `e` uniform.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, l: u64) -> MonoVector {
    loop {
        let coords = (0..n).map(|_| random_scalar(rng, l, &MODULI)).collect();
        if let Ok(v) = MonoVector::new(coords) {
            return v;
        }
    }
}

pub fn random_vectors<R: Rng>(rng: &mut R, g: &MonoGroup, count: usize) -> Vec<MonoVector> {
    (0..count).map(|_| random_vector(rng, g.rank(), g.ambient())).collect()
}

/// Structured vectors likely to have nontrivial stabilizers: the all-ones
/// vector, vectors with one zero coordinate, eigenvectors of random
/// elements, and random points of random regular eigenspaces.
pub fn adversarial_vectors<R: Rng>(rng: &mut R, g: &MonoGroup, regular: &[RegularElement]) -> Vec<MonoVector> {
    const PICKS: usize = 50;
    let n = g.rank();
    let l = g.ambient();
    let mut out = Vec::new();
    out.push(MonoVector::new(vec![RootScalar::ONE; n]).expect("nonzero"));
    for i in 0..n {
        let mut coords = vec![RootScalar::ONE; n];
        coords[i] = RootScalar::ZERO;
        out.push(MonoVector::new(coords).expect("n >= 2"));
    }
    for _ in 0..PICKS {
        let w = &g.elements()[rng.random_range(0..g.order())];
        for space in w.eigen_data() {
            out.extend(space.basis);
        }
    }
    if !regular.is_empty() {
        for _ in 0..PICKS {
            let r = &regular[rng.random_range(0..regular.len())];
            let coeffs: Vec<RootScalar> = (0..r.basis.len()).map(|_| random_scalar(rng, l, &COEFF_MODULI)).collect();
            out.extend(MonoVector::disjoint_combination(&r.basis, &coeffs));
        }
    }
    out
}
