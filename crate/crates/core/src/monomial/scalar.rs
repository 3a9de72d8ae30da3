use std::fmt;
use std::ops::{Mul, Neg};

use num_integer::Integer;
use num_rational::Rational64;

/// An exact complex number `q · exp(2πi · num/den)` with `q` rational.
///
/// Canonical form: `q > 0` and `num/den` reduced with `0 <= num < den`, or
/// `q = 0` with `num/den = 0/1`. Signs are folded into the angle, so two
/// values are equal iff their fields are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootScalar {
    q: Rational64,
    num: u64,
    den: u64,
}

impl RootScalar {
    pub const ZERO: RootScalar = RootScalar {
        q: Rational64::ZERO,
        num: 0,
        den: 1,
    };
    pub const ONE: RootScalar = RootScalar {
        q: Rational64::ONE,
        num: 0,
        den: 1,
    };

    /// `q · ζ_l^e` where `ζ_l = exp(2πi/l)`.
    pub fn new(q: Rational64, e: i64, l: u64) -> Self {
        assert!(l > 0, "root order must be positive");
        if q == Rational64::ZERO {
            return Self::ZERO;
        }
        let (q, num, den) = if q < Rational64::ZERO {
            // -1 = ζ_2, so shift the angle by l/2 in units of 1/(2l).
            (-q, 2 * e.rem_euclid(l as i64) as u64 + l, 2 * l)
        } else {
            (q, e.rem_euclid(l as i64) as u64, l)
        };
        Self::from_turn(q, num, den)
    }

    /// The root of unity `ζ_l^e`.
    pub fn root(e: i64, l: u64) -> Self {
        Self::new(Rational64::ONE, e, l)
    }

    pub fn rational(q: Rational64) -> Self {
        Self::new(q, 0, 1)
    }

    fn from_turn(q: Rational64, num: u64, den: u64) -> Self {
        let num = num % den;
        let g = num.gcd(&den);
        RootScalar {
            q,
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q == Rational64::ZERO
    }

    pub fn modulus(&self) -> Rational64 {
        self.q
    }

    /// Angle as a reduced fraction of a full turn.
    pub fn turn(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.q == Rational64::ONE
    }

    /// Multiplicative order of the angle part: the `k` with this value a
    /// primitive `k`-th root of unity when `q = 1`.
    pub fn root_order(&self) -> u64 {
        self.den
    }

    /// Exponent `e` with `self = q · ζ_l^e`, if the angle lives in `μ_l`.
    pub fn exponent_in(&self, l: u64) -> Option<u64> {
        l.is_multiple_of(self.den).then(|| self.num * (l / self.den))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_turn(
            self.q.recip(),
            self.den - self.num,
            self.den,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| *self * r)
    }

    /// Multiplies by `ζ_l^e`.
    pub fn rotate(&self, e: u64, l: u64) -> Self {
        if self.is_zero() {
            return *self;
        }
        let den = self.den.lcm(&l);
        let num = self.num * (den / self.den) + (e % l) * (den / l);
        Self::from_turn(self.q, num, den)
    }

    /// Renders as `q*z^e` relative to `z = ζ_l`, falling back to an explicit
    /// turn when the angle is not in `μ_l`.
    pub fn display_in(&self, l: u64) -> String {
        let q = fmt_rational(self.q);
        match self.exponent_in(l) {
            _ if self.is_zero() => "0".to_string(),
            Some(0) => q,
            Some(e) if self.q == Rational64::ONE => format!("z^{e}"),
            Some(e) => format!("{q}*z^{e}"),
            None => self.to_string(),
        }
    }
}

fn fmt_rational(q: Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Mul for RootScalar {
    type Output = RootScalar;

    fn mul(self, rhs: RootScalar) -> RootScalar {
        let q = self.q * rhs.q;
        if q == Rational64::ZERO {
            return Self::ZERO;
        }
        let den = self.den.lcm(&rhs.den);
        let num = self.num * (den / self.den) + rhs.num * (den / rhs.den);
        Self::from_turn(q, num, den)
    }
}

impl Neg for RootScalar {
    type Output = RootScalar;

    fn neg(self) -> RootScalar {
        self * RootScalar::root(1, 2)
    }
}

impl fmt::Display for RootScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let q = fmt_rational(self.q);
        if self.num == 0 {
            write!(f, "{q}")
        } else {
            write!(f, "{q}*exp(2pi*i*{}/{})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(RootScalar::new(r(0, 1), 3, 7), RootScalar::ZERO);
        assert_eq!(RootScalar::root(2, 4), RootScalar::root(1, 2));
        assert_eq!(RootScalar::root(4, 4), RootScalar::ONE);
        assert_eq!(RootScalar::new(r(-1, 1), 0, 1), RootScalar::root(1, 2));
        assert_eq!(RootScalar::new(r(-2, 1), 1, 4), RootScalar::new(r(2, 1), 3, 4));
        assert_eq!(RootScalar::root(-1, 6), RootScalar::root(5, 6));
        assert_eq!(-RootScalar::ONE, RootScalar::root(1, 2));
    }

    #[test]
    fn orders_and_exponents() {
        let z = RootScalar::root(6, 24);
        assert_eq!(z.root_order(), 4);
        assert_eq!(z.exponent_in(8), Some(2));
        assert_eq!(z.exponent_in(6), None);
        assert_eq!(RootScalar::ONE.root_order(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(RootScalar::root(3, 8).display_in(8), "z^3");
        assert_eq!(RootScalar::new(r(1, 2), 1, 4).display_in(8), "1/2*z^2");
        assert_eq!(RootScalar::rational(r(3, 1)).display_in(8), "3");
        assert_eq!(RootScalar::rational(r(-3, 1)).display_in(8), "3*z^4");
        assert_eq!(RootScalar::ZERO.display_in(8), "0");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RootScalar::ONE.checked_div(&RootScalar::ZERO), None);
        assert_eq!(RootScalar::ZERO.recip(), None);
    }

    fn scalar() -> impl Strategy<Value = RootScalar> {
        (-4i64..=4, 1i64..=4, 0i64..60, prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 12, 60]))
            .prop_map(|(a, b, e, l)| RootScalar::new(r(a, b), e, l))
    }

    proptest! {
        #[test]
        fn multiplication_is_a_commutative_monoid(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * RootScalar::ONE, a);
        }

        #[test]
        fn division_inverts_multiplication(a in scalar(), b in scalar()) {
            if let Some(q) = a.checked_div(&b) {
                prop_assert_eq!(q * b, a);
            } else {
                prop_assert!(b.is_zero());
            }
        }

        #[test]
        fn rotate_matches_root_multiplication(a in scalar(), e in 0u64..100, l in 1u64..30) {
            prop_assert_eq!(a.rotate(e, l), a * RootScalar::root(e as i64, l));
        }
    }
}
