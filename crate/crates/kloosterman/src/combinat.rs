//! Exact combinatorial primitives: Stirling numbers of the second kind,
//! Gaussian (q-)binomial coefficients, the guarded three-part multinomial,
//! falling-factorial binomials for astronomically large upper arguments, and
//! the A∓/B∓ constants attached to the double-coset families.
//!
//! Every division here is exact by construction; a nonzero remainder would
//! mean a transcribed formula is wrong, so all divisions assert remainder
//! zero and panic otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Divides exactly, panicking on a nonzero remainder.
fn exact_div(num: BigInt, den: &BigInt, context: &str) -> BigInt {
    let (quot, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "internal consistency: inexact division in {context}");
    quot
}

/// Stirling number of the second kind
/// S(h,t) = (1/t!) Σ_{j=0}^{t} (−1)^{t−j} C(t,j) j^h, with S(h,t) = 0 for t > h.
pub fn stirling2(h: u32, t: u32) -> BigInt {
    if t > h {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for j in 0..=t {
        let term = binom(t as u64, j as u64) * BigInt::from(j).pow(h);
        if (t - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, &factorial(t), "stirling2")
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ordinary binomial coefficient for machine-sized arguments.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = exact_div(out * BigInt::from(n - i), &BigInt::from(i + 1), "binom");
    }
    out
}

/// Gaussian binomial coefficient ∏_{j=0}^{r−1} (q^{n−j}−1)/(q^{r−j}−1),
/// zero outside 0 ≤ r ≤ n.
pub fn qbinom(n: u32, r: u32, q: &BigInt) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= q.pow(n - j) - BigInt::one();
        den *= q.pow(r - j) - BigInt::one();
    }
    exact_div(num, &den, "qbinom")
}

/// Guarded multinomial C(c; a, b) = c!/(a! b! (c−a−b)!), equal to 0 whenever
/// a + b > c. Computed as the falling factorial c(c−1)⋯(c−a−b+1)/(a!·b!), so
/// `c` may be astronomically large while a and b stay small.
pub fn multinom3(c: &BigInt, a: u32, b: u32) -> BigInt {
    let k = a + b;
    if BigInt::from(k) > *c {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= c - BigInt::from(i);
    }
    exact_div(num, &(factorial(a) * factorial(b)), "multinom3")
}

/// Binomial C(c, k) with a big upper argument, via the falling factorial.
pub fn big_binom(c: &BigInt, k: u32) -> BigInt {
    multinom3(c, k, 0)
}

/// Which of the two double-coset families a parameter set belongs to:
/// `Minus` families exist for odd n, `Plus` families for even n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn validate(self, n: u32) -> Result<()> {
        let ok = match self {
            Sign::Minus => n % 2 == 1,
            Sign::Plus => n % 2 == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parity(format!("{self:?} family requires n {} (got n={n})", match self {
                Sign::Minus => "odd",
                Sign::Plus => "even",
            })))
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Minus => write!(f, "minus"),
            Sign::Plus => write!(f, "plus"),
        }
    }
}

/// One of the four double-coset families inside the odd orthogonal group:
/// sign selects the Bruhat representative (σ_{n−1} for minus, σ_{n−2} for
/// plus) and i ∈ {1,2} selects the plain or ρ-twisted coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosetFamily {
    pub sign: Sign,
    pub n: u32,
    pub i: u8,
}

impl CosetFamily {
    pub fn new(sign: Sign, n: u32, i: u8) -> Result<CosetFamily> {
        if n == 0 {
            return Err(Error::parameter("n must be positive"));
        }
        sign.validate(n)?;
        if i != 1 && i != 2 {
            return Err(Error::parameter(format!("coset index i must be 1 or 2 (got {i})")));
        }
        Ok(CosetFamily { sign, n, i })
    }

    /// Bruhat index of the representative σ_r defining this family.
    pub fn bruhat_r(&self) -> u32 {
        match self.sign {
            Sign::Minus => self.n - 1,
            Sign::Plus => self.n - 2,
        }
    }
}

/// The size constants of a double-coset family: |DC| = A·B with
///
///   A⁻(n,q) = q^{(5n²−1)/4} [n;1]_q ∏_{j=1}^{(n−1)/2} (q^{2j−1}−1)
///   B⁻(n,q) = q^{(n−1)²/4} (qⁿ−1) ∏_{j=1}^{(n−1)/2} (q^{2j}−1)
///   A⁺(n,q) = q^{(5n²−2n)/4} [n;2]_q ∏_{j=1}^{(n−2)/2} (q^{2j−1}−1)
///   B⁺(n,q) = q^{(n−2)²/4} (qⁿ−1)(q^{n−1}−1) ∏_{j=1}^{(n−2)/2} (q^{2j}−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeConstants {
    pub a: BigInt,
    pub b: BigInt,
    /// The family size N = A·B, which is also the code length.
    pub n_size: BigInt,
}

pub fn constants(sign: Sign, n: u32, q: &BigInt) -> Result<SizeConstants> {
    sign.validate(n)?;
    let (a, b) = match sign {
        Sign::Minus => {
            let exp_a = 5 * n * n - 1;
            let exp_b = (n - 1) * (n - 1);
            assert!(exp_a % 4 == 0 && exp_b % 4 == 0, "internal consistency: minus exponents");
            let mut a = q.pow(exp_a / 4) * qbinom(n, 1, q);
            let mut b = q.pow(exp_b / 4) * (q.pow(n) - BigInt::one());
            for j in 1..=(n - 1) / 2 {
                a *= q.pow(2 * j - 1) - BigInt::one();
                b *= q.pow(2 * j) - BigInt::one();
            }
            (a, b)
        }
        Sign::Plus => {
            let exp_a = 5 * n * n - 2 * n;
            let exp_b = (n - 2) * (n - 2);
            assert!(exp_a % 4 == 0 && exp_b % 4 == 0, "internal consistency: plus exponents");
            let mut a = q.pow(exp_a / 4) * qbinom(n, 2, q);
            let mut b = q.pow(exp_b / 4) * (q.pow(n) - BigInt::one()) * (q.pow(n - 1) - BigInt::one());
            for j in 1..=(n - 2) / 2 {
                a *= q.pow(2 * j - 1) - BigInt::one();
                b *= q.pow(2 * j) - BigInt::one();
            }
            (a, b)
        }
    };
    assert!(a.is_positive() && b.is_positive(), "internal consistency: nonpositive size constant");
    let n_size = &a * &b;
    Ok(SizeConstants { a, b, n_size })
}

/// Cardinalities attached to the Bruhat stratum σ_r of the odd orthogonal
/// group on 2n+1 coordinates:
///
///   cosets      = |B_r\Q| = q^{C(r+1,2)} [n;r]_q
///   double_coset = |Qσ_rQ| = q^{n²} ∏_{j=1}^{n}(q^j−1) · q^{C(r,2)} q^r [n;r]_q.
pub fn bruhat_sizes(n: u32, q: &BigInt, r: u32) -> Result<(BigInt, BigInt)> {
    if r > n {
        return Err(Error::parameter(format!("bruhat index r={r} out of range 0..={n}")));
    }
    let cosets = q.pow(r * (r + 1) / 2) * qbinom(n, r, q);
    let mut group_q = q.pow(n * n);
    for j in 1..=n {
        group_q *= q.pow(j) - BigInt::one();
    }
    let double_coset = group_q * q.pow(r * (r.saturating_sub(1)) / 2) * q.pow(r) * qbinom(n, r, q);
    Ok((cosets, double_coset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn stirling_diagonal_and_small_values() {
        for h in 0..12 {
            assert_eq!(stirling2(h, h), BigInt::one());
        }
        assert_eq!(stirling2(4, 2), big(7));
        assert_eq!(stirling2(5, 3), big(25));
        assert_eq!(stirling2(2, 5), BigInt::zero());
    }

    #[test]
    fn stirling_recurrence_holds() {
        // S(h+1,t) = t·S(h,t) + S(h,t−1)
        for h in 1..20u32 {
            for t in 1..=h {
                assert_eq!(
                    stirling2(h + 1, t),
                    BigInt::from(t) * stirling2(h, t) + stirling2(h, t - 1)
                );
            }
        }
    }

    #[test]
    fn qbinom_small_values() {
        assert_eq!(qbinom(4, 0, &big(3)), BigInt::one());
        assert_eq!(qbinom(2, 1, &big(3)), big(4));
        assert_eq!(qbinom(3, 1, &big(3)), big(13));
        assert_eq!(qbinom(3, 1, &big(27)), big(757));
        assert_eq!(qbinom(1, 2, &big(3)), BigInt::zero());
    }

    #[test]
    fn qbinom_symmetry() {
        for q in [3i64, 9] {
            for n in 0..=6u32 {
                for r in 0..=n {
                    assert_eq!(qbinom(n, r, &big(q)), qbinom(n, n - r, &big(q)));
                }
            }
        }
    }

    #[test]
    fn multinom_guard_and_falling_factorial() {
        assert_eq!(multinom3(&big(3), 1, 0), big(3));
        assert_eq!(multinom3(&big(2), 2, 1), BigInt::zero());
        let c = BigInt::from(10u64).pow(9);
        assert_eq!(multinom3(&c, 1, 1), &c * (&c - 1));
        assert_eq!(multinom3(&big(6), 2, 2), big(90)); // 6!/(2!2!2!)
    }

    proptest! {
        #[test]
        fn multinom_symmetric_in_a_b(c in 0i64..5000, a in 0u32..8, b in 0u32..8) {
            prop_assert_eq!(multinom3(&big(c), a, b), multinom3(&big(c), b, a));
        }
    }

    #[test]
    fn constants_examples() {
        let c = constants(Sign::Minus, 1, &big(3)).unwrap();
        assert_eq!((c.a, c.b, c.n_size), (big(3), big(2), big(6)));
        let c = constants(Sign::Plus, 2, &big(3)).unwrap();
        assert_eq!((c.a, c.b, c.n_size), (big(81), big(16), big(1296)));
        let c = constants(Sign::Minus, 3, &big(3)).unwrap();
        assert_eq!(c.a, BigInt::from(3).pow(11) * 13 * 2);
        assert_eq!(c.b, big(3 * 26 * 8));
    }

    #[test]
    fn constants_rejects_parity_mismatch() {
        assert!(constants(Sign::Minus, 2, &big(3)).is_err());
        assert!(constants(Sign::Plus, 3, &big(3)).is_err());
        assert!(CosetFamily::new(Sign::Minus, 4, 1).is_err());
        assert!(CosetFamily::new(Sign::Plus, 2, 3).is_err());
    }

    #[test]
    fn bruhat_size_examples() {
        let (cosets, _) = bruhat_sizes(1, &big(3), 1).unwrap();
        assert_eq!(cosets, big(3));
        let (_, dc0) = bruhat_sizes(1, &big(3), 0).unwrap();
        assert_eq!(dc0, big(6));
        let (_, dc1) = bruhat_sizes(1, &big(3), 1).unwrap();
        assert_eq!(big(2) * (dc0 + dc1), big(48));
        assert!(bruhat_sizes(1, &big(3), 2).is_err());
    }

    #[test]
    fn family_size_matches_bruhat_stratum() {
        for (sign, ns) in [(Sign::Minus, vec![1u32, 3, 5]), (Sign::Plus, vec![2, 4])] {
            for n in ns {
                for q in [3i64, 9, 27] {
                    let c = constants(sign, n, &big(q)).unwrap();
                    let r = match sign {
                        Sign::Minus => n - 1,
                        Sign::Plus => n - 2,
                    };
                    let (_, dc) = bruhat_sizes(n, &big(q), r).unwrap();
                    assert_eq!(c.n_size, dc, "sign={sign:?} n={n} q={q}");
                }
            }
        }
    }
}
