//! Exact arithmetic in the ring Z[ω] of Eisenstein integers, ω = e^{2πi/3}.
//!
//! Every cube-root-of-unity character sum in this crate lives in Z[ω], so all
//! of them are evaluated without any floating point. An element is stored as
//! a + bω with big-integer coordinates; multiplication uses ω² = −1 − ω.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

/// An Eisenstein integer a + bω.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        EisensteinInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisensteinInt::new(1, 0)
    }

    /// ω^k for k in {0, 1, 2}: 1, ω, and ω² = −1 − ω.
    pub fn omega_pow(k: u8) -> Self {
        match k {
            0 => EisensteinInt::new(1, 0),
            1 => EisensteinInt::new(0, 1),
            2 => EisensteinInt::new(-1, -1),
            _ => panic!("omega exponent {k} out of range"),
        }
    }

    /// Complex conjugate: conj(a + bω) = (a − b) − bω.
    pub fn conjugate(&self) -> Self {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// True iff the value is a rational integer (b = 0).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Extracts the rational integer value, panicking on a nonzero
    /// ω-component. Callers use this exactly where the ω-component is
    /// guaranteed to vanish (e.g. conjugate-paired character sums), so a
    /// panic here is an internal consistency failure.
    pub fn expect_rational(&self, context: &str) -> BigInt {
        assert!(
            self.is_rational(),
            "internal consistency: {context} has nonzero omega component: {self}"
        );
        self.a.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Scales by a rational integer.
    pub fn scale(&self, c: &BigInt) -> Self {
        EisensteinInt { a: &self.a * c, b: &self.b * c }
    }
}

impl From<BigInt> for EisensteinInt {
    fn from(a: BigInt) -> Self {
        EisensteinInt { a, b: BigInt::zero() }
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        EisensteinInt::new(a, 0)
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: EisensteinInt) -> EisensteinInt {
        &self + &rhs
    }
}

impl AddAssign<&EisensteinInt> for EisensteinInt {
    fn add_assign(&mut self, rhs: &EisensteinInt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: EisensteinInt) -> EisensteinInt {
        &self - &rhs
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

// (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω, using ω² = −1 − ω.
impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &rhs.b;
        EisensteinInt {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        }
    }
}

impl Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: EisensteinInt) -> EisensteinInt {
        &self * &rhs
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ω", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn omega_cubes_to_one() {
        let w = EisensteinInt::omega_pow(1);
        assert_eq!(&(&w * &w) * &w, EisensteinInt::one());
        assert_eq!(&w * &w, EisensteinInt::omega_pow(2));
    }

    #[test]
    fn omega_powers_sum_to_zero() {
        let s = EisensteinInt::omega_pow(0) + EisensteinInt::omega_pow(1) + EisensteinInt::omega_pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn conjugate_of_omega_is_omega_squared() {
        assert_eq!(EisensteinInt::omega_pow(1).conjugate(), EisensteinInt::omega_pow(2));
    }

    fn arb_eis() -> impl Strategy<Value = EisensteinInt> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| EisensteinInt::new(a, b))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_eis(), y in arb_eis(), z in arb_eis()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn conjugation_is_multiplicative(x in arb_eis(), y in arb_eis()) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        }

        #[test]
        fn rational_iff_b_zero(a in -1000i64..1000, b in -1000i64..1000) {
            let x = EisensteinInt::new(a, b);
            prop_assert_eq!(x.is_rational(), b == 0);
        }
    }
}
