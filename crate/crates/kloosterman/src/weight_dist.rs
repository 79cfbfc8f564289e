//! Closed-form weight distributions of the double-coset codes.
//!
//! Each code has one coordinate per group element, and a codeword is a
//! ternary vector orthogonal to the vector of matrix traces. A codeword of
//! weight j is determined by choosing, for each β ∈ F_q, how many coordinates
//! with trace β carry a 1 (ν_β) and how many carry a 2 (μ_β), subject to
//! Σ(ν+μ) = j and Σ(ν_β − μ_β)β = 0 in F_q. The number of weight-j words is
//! therefore Σ ∏_β C(N(β); ν_β, μ_β) over admissible choices, where N(β) is
//! the number of coordinates with trace β — a constrained composition counted
//! here by dynamic programming over the cells.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::char_sums::{delta1_via_squares, delta_table, kloosterman};
use crate::combinat::{constants, multinom3, CosetFamily, Sign};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};

/// Per-β coordinate counts N(β) of one code: the trace histogram of the
/// underlying element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellProfile {
    /// Cell sizes indexed by the element index of β.
    pub sizes: Vec<BigInt>,
}

impl CellProfile {
    /// Total mass Σ_β N(β), i.e. the code length.
    pub fn length(&self) -> BigInt {
        self.sizes.iter().sum()
    }
}

/// Which code family a profile describes: the orthogonal-group double-coset
/// codes (four families, indexed by sign and i), or the companion symplectic
/// codes whose profiles carry no character-prefactor shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Orthogonal(CosetFamily),
    Symplectic { sign: Sign, n: u32 },
}

impl CodeSpec {
    pub fn sign(&self) -> Sign {
        match self {
            CodeSpec::Orthogonal(fam) => fam.sign,
            CodeSpec::Symplectic { sign, .. } => *sign,
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            CodeSpec::Orthogonal(fam) => fam.n,
            CodeSpec::Symplectic { n, .. } => *n,
        }
    }
}

/// The trace argument shift of a code family: the orthogonal codes read
/// δ(·,q;β−1) for i = 1 and δ(·,q;β+1) for i = 2; the symplectic codes read
/// δ(·,q;β) unshifted.
fn shifted_arg(t: &FieldTable, spec: &CodeSpec, beta: FieldElement) -> FieldElement {
    match spec {
        CodeSpec::Orthogonal(fam) if fam.i == 1 => t.sub(beta, FieldElement::ONE),
        CodeSpec::Orthogonal(_) => t.add(beta, FieldElement::ONE),
        CodeSpec::Symplectic { .. } => beta,
    }
}

/// Exact cell profile N(β) of a code family.
///
/// Minus families: N(β) = q⁻¹·A⁻·(B⁻ + q·δ(1,q;arg) − q + 1), which splits
/// by the square class of arg²−1 into the three values
/// q⁻¹A⁻(B⁻+q+1), q⁻¹A⁻(B⁻+1), q⁻¹A⁻(B⁻−q+1).
///
/// Plus families: N(β) = q⁻¹·A⁺·(B⁺ + q·δ(2,q;arg) + (q−1)³) at arg = 0 and
/// q⁻¹·A⁺·(B⁺ + q·δ(2,q;arg) − 2q² + 3q − 1) elsewhere.
///
/// For the symplectic plus code these cells are the unique profile consistent
/// with its dual-codeword weights (the inverse character transform of
/// A⁺·(K(λ;a²)²+q²−q)); see [`sp_plus_profile_printed`] for the published
/// variant, whose mass does not match the code length.
pub fn cell_profile(t: &FieldTable, spec: &CodeSpec) -> Result<CellProfile> {
    let q_int = BigInt::from(t.q());
    let c = constants(spec.sign(), spec.n(), &q_int)?;
    let q = t.q();
    let d2 = match spec.sign() {
        Sign::Plus => Some(delta_table(t, 2)?),
        Sign::Minus => None,
    };
    let mut sizes = Vec::with_capacity(q);
    for beta in t.elements() {
        let arg = shifted_arg(t, spec, beta);
        let inner = match spec.sign() {
            Sign::Minus => {
                &c.b + BigInt::from(q) * delta1_via_squares(t, arg) - q_int.clone() + 1
            }
            Sign::Plus => {
                let d = d2.as_ref().unwrap().get(arg);
                if arg.is_zero() {
                    &c.b + &q_int * d + (&q_int - BigInt::one()).pow(3)
                } else {
                    &c.b + &q_int * d - BigInt::from(2) * &q_int * &q_int + BigInt::from(3) * &q_int
                        - 1
                }
            }
        };
        let cell = exact_cell(&c.a * inner, &q_int);
        assert!(!cell.is_negative(), "internal consistency: negative cell size");
        sizes.push(cell);
    }
    let profile = CellProfile { sizes };
    assert_eq!(profile.length(), c.n_size, "internal consistency: profile mass != A·B");
    Ok(profile)
}

fn exact_cell(num: BigInt, q: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (quot, rem) = num.div_rem(q);
    assert!(rem.is_zero(), "internal consistency: cell size not divisible by q");
    quot
}

/// The symplectic plus-family cell profile in its published form,
/// q⁴(δ(2,q;0)+q⁵−q²−3q+3) at β = 0 and q⁴(δ(2,q;β)+q⁵−q³−q²−2q+3)
/// elsewhere. These cells sum to q⁴(q²−1)(q⁴−1) — the order of Sp(4,q) —
/// rather than to the code length A⁺B⁺, so [`mass_mismatch`] reports a
/// diagnostic for them and the identity checks use [`cell_profile`] instead.
pub fn sp_plus_profile_printed(t: &FieldTable) -> Result<CellProfile> {
    let q = BigInt::from(t.q());
    let q4 = q.pow(4);
    let d2 = delta_table(t, 2)?;
    let sizes = t
        .elements()
        .map(|beta| {
            let d = d2.get(beta);
            if beta.is_zero() {
                &q4 * (d + q.pow(5) - &q * &q - BigInt::from(3) * &q + 3)
            } else {
                &q4 * (d + q.pow(5) - q.pow(3) - &q * &q - BigInt::from(2) * &q + 3)
            }
        })
        .collect();
    Ok(CellProfile { sizes })
}

/// Compares a profile's mass against an expected code length, returning
/// `Some((actual, expected))` on mismatch.
pub fn mass_mismatch(profile: &CellProfile, expected: &BigInt) -> Option<(BigInt, BigInt)> {
    let actual = profile.length();
    (actual != *expected).then(|| (actual, expected.clone()))
}

/// The weight-distribution prefix C_0, …, C_{j_max} of a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCounts {
    pub counts: Vec<BigInt>,
}

impl WeightCounts {
    pub fn get(&self, j: usize) -> BigInt {
        self.counts.get(j).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Counts weight-j codewords for j ≤ j_max by a DP over the q cells with
/// state (weight used, running F_q-sum Σ(ν−μ)β). Since the field has
/// characteristic 3, only ν−μ mod 3 enters the running sum.
pub fn weight_counts(t: &FieldTable, profile: &CellProfile, j_max: u32) -> Result<WeightCounts> {
    if j_max > 12 {
        return Err(Error::parameter(format!("j_max={j_max} exceeds supported bound 12")));
    }
    let q = t.q();
    let jm = j_max as usize;
    assert_eq!(profile.sizes.len(), q, "profile has wrong number of cells");

    // dp[w][d]
    let mut dp = vec![vec![BigInt::zero(); q]; jm + 1];
    dp[0][0] = BigInt::one();

    for beta in t.elements() {
        let size = &profile.sizes[beta.index()];
        let mut moves: Vec<(usize, FieldElement, BigInt)> = Vec::new();
        for nu in 0..=j_max {
            for mu in 0..=(j_max - nu) {
                let ways = multinom3(size, nu, mu);
                if ways.is_zero() {
                    continue;
                }
                let coef = ((3 + nu as i32 - mu as i32) % 3).rem_euclid(3) as u8;
                let step = t.mul(t.constant(coef), beta);
                moves.push(((nu + mu) as usize, step, ways));
            }
        }
        let mut next = vec![vec![BigInt::zero(); q]; jm + 1];
        for (w, row) in dp.iter().enumerate() {
            for (d, value) in row.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                for (dw, step, ways) in &moves {
                    if w + dw > jm {
                        continue;
                    }
                    let nd = t.add(t.elem(d), *step).index();
                    next[w + dw][nd] += value * ways;
                }
            }
        }
        dp = next;
    }

    let counts = dp.into_iter().map(|row| row.into_iter().next().unwrap()).collect();
    Ok(WeightCounts { counts })
}

/// Hamming weight of the dual codeword indexed by a ∈ F_q^* in an
/// orthogonal-family code:
///
///   w(c_i⁻(a)) = (2/3)·A⁻·(B⁻ − Re λ(a)·K(λ;a²))
///   w(c_i⁺(a)) = (2/3)·A⁺·(B⁺ − Re λ(a)·(K(λ;a²)² + q² − q))
///
/// with Re λ(a) = 1 when tr a = 0 and −1/2 otherwise, evaluated exactly in
/// rationals and asserted to collapse to an integer in [0, A·B].
pub fn dual_weight(t: &FieldTable, fam: &CosetFamily, a: FieldElement) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::parameter("dual weight requires a nonzero index"));
    }
    let q = BigInt::from(t.q());
    let c = constants(fam.sign, fam.n, &q)?;
    let k = kloosterman(t, t.mul(a, a))?;
    let value = match fam.sign {
        Sign::Minus => k,
        Sign::Plus => &k * &k + &q * &q - &q,
    };
    let re_lambda = if t.trace(a) == 0 {
        BigRational::one()
    } else {
        BigRational::new(BigInt::from(-1), BigInt::from(2))
    };
    let w = BigRational::new(BigInt::from(2), BigInt::from(3))
        * BigRational::from(c.a)
        * (BigRational::from(c.b) - re_lambda * BigRational::from(value));
    assert!(w.is_integer(), "internal consistency: dual weight is not an integer");
    let w = w.to_integer();
    assert!(
        !w.is_negative() && w <= c.n_size,
        "internal consistency: dual weight outside [0, code length]"
    );
    Ok(w)
}

/// Histogram of dual-codeword weights over all a ∈ F_q, i.e. the q dual
/// weights including the zero word.
pub fn dual_distribution(t: &FieldTable, fam: &CosetFamily) -> Result<BTreeMap<BigInt, u64>> {
    let mut hist = BTreeMap::new();
    hist.insert(BigInt::zero(), 1u64);
    for a in t.nonzero_elements() {
        *hist.entry(dual_weight(t, fam, a)?).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u32) -> FieldTable {
        FieldTable::new(r, None).unwrap()
    }

    fn ocode(sign: Sign, n: u32, i: u8) -> CodeSpec {
        CodeSpec::Orthogonal(CosetFamily::new(sign, n, i).unwrap())
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn minus_n1_q3_profiles() {
        let t = f(1);
        let p1 = cell_profile(&t, &ocode(Sign::Minus, 1, 1)).unwrap();
        assert_eq!(p1.sizes, vec![big(3), big(0), big(3)]);
        let p2 = cell_profile(&t, &ocode(Sign::Minus, 1, 2)).unwrap();
        assert_eq!(p2.sizes, vec![big(3), big(3), big(0)]);
    }

    #[test]
    fn plus_n2_q3_profile() {
        let t = f(1);
        let p = cell_profile(&t, &ocode(Sign::Plus, 2, 1)).unwrap();
        assert_eq!(p.length(), big(1296));
        assert_eq!(p.sizes, vec![big(243), big(810), big(243)]);
        let p2 = cell_profile(&t, &ocode(Sign::Plus, 2, 2)).unwrap();
        assert_eq!(p2.sizes, vec![big(243), big(243), big(810)]);
    }

    #[test]
    fn twisted_profile_is_reflection_of_untwisted() {
        for (sign, n) in [(Sign::Minus, 1), (Sign::Minus, 3), (Sign::Plus, 2)] {
            let t = f(2);
            let p1 = cell_profile(&t, &ocode(sign, n, 1)).unwrap();
            let p2 = cell_profile(&t, &ocode(sign, n, 2)).unwrap();
            for beta in t.elements() {
                assert_eq!(p1.sizes[beta.index()], p2.sizes[t.neg(beta).index()]);
            }
        }
    }

    #[test]
    fn profile_mass_equals_family_size() {
        for r in 1..=3 {
            let t = f(r);
            let q = BigInt::from(t.q());
            for (sign, ns) in [(Sign::Minus, [1u32, 3]), (Sign::Plus, [2, 4])] {
                for n in ns {
                    for i in [1, 2] {
                        let p = cell_profile(&t, &ocode(sign, n, i)).unwrap();
                        assert_eq!(p.length(), constants(sign, n, &q).unwrap().n_size);
                    }
                    let sp = cell_profile(&t, &CodeSpec::Symplectic { sign, n }).unwrap();
                    assert_eq!(sp.length(), constants(sign, n, &q).unwrap().n_size);
                }
            }
        }
    }

    #[test]
    fn cell_positivity_matches_family_structure() {
        // all cells strictly positive for minus n ≥ 3 and plus n ≥ 2
        for r in 1..=3 {
            let t = f(r);
            for i in [1, 2] {
                let p = cell_profile(&t, &ocode(Sign::Minus, 3, i)).unwrap();
                assert!(p.sizes.iter().all(|s| s.is_positive()));
                for n in [2, 4] {
                    let p = cell_profile(&t, &ocode(Sign::Plus, n, i)).unwrap();
                    assert!(p.sizes.iter().all(|s| s.is_positive()));
                }
            }
            // for minus n = 1 the zero cells are exactly the nonsquare classes
            for i in [1, 2] {
                let p = cell_profile(&t, &ocode(Sign::Minus, 1, i)).unwrap();
                let q_big = BigInt::from(t.q());
                for beta in t.elements() {
                    let arg = if i == 1 {
                        t.sub(beta, FieldElement::ONE)
                    } else {
                        t.add(beta, FieldElement::ONE)
                    };
                    let expected = match delta1_via_squares(&t, arg) {
                        2 => BigInt::from(2) * &q_big,
                        1 => q_big.clone(),
                        _ => BigInt::zero(),
                    };
                    assert_eq!(p.sizes[beta.index()], expected);
                }
            }
        }
    }

    #[test]
    fn printed_sp_plus_profile_mass_mismatch_diagnostic() {
        for r in 1..=2 {
            let t = f(r);
            let q = BigInt::from(t.q());
            let printed = sp_plus_profile_printed(&t).unwrap();
            let expected = constants(Sign::Plus, 2, &q).unwrap().n_size;
            let (actual, exp) = mass_mismatch(&printed, &expected).expect("mass must mismatch");
            assert_eq!(actual, q.pow(4) * (&q * &q - 1) * (q.pow(4) - 1));
            assert_eq!(exp, expected);
            // the profile actually used is consistent
            let used = cell_profile(&t, &CodeSpec::Symplectic { sign: Sign::Plus, n: 2 }).unwrap();
            assert!(mass_mismatch(&used, &expected).is_none());
        }
    }

    #[test]
    fn weight_counts_base_cases() {
        let t = f(1);
        let p = cell_profile(&t, &ocode(Sign::Minus, 1, 1)).unwrap();
        let c = weight_counts(&t, &p, 6).unwrap();
        assert_eq!(c.get(0), big(1));
        assert_eq!(c.get(1), big(6));
        // full distribution of the 243-word code
        assert_eq!(
            c.counts,
            vec![big(1), big(6), big(18), big(46), big(84), big(72), big(16)]
        );
        let total: BigInt = c.counts.iter().sum();
        assert_eq!(total, big(243));
    }

    #[test]
    fn sp_minus_q3_has_no_weight_one_words() {
        let t = f(1);
        let p = cell_profile(&t, &CodeSpec::Symplectic { sign: Sign::Minus, n: 1 }).unwrap();
        assert_eq!(p.sizes[0], BigInt::zero());
        let c = weight_counts(&t, &p, 6).unwrap();
        assert_eq!(c.get(1), BigInt::zero());
        assert_eq!(
            c.counts,
            vec![big(1), big(0), big(30), big(40), big(90), big(60), big(22)]
        );
    }

    #[test]
    fn dual_weight_examples() {
        let t = f(1);
        let fam = CosetFamily::new(Sign::Minus, 1, 1).unwrap();
        assert_eq!(dual_weight(&t, &fam, t.elem(1)).unwrap(), big(3));
        assert!(dual_weight(&t, &fam, FieldElement::ZERO).is_err());
        let fam_plus = CosetFamily::new(Sign::Plus, 2, 1).unwrap();
        assert_eq!(dual_weight(&t, &fam_plus, t.elem(1)).unwrap(), big(1053));
    }

    #[test]
    fn dual_distribution_examples() {
        let t = f(1);
        let fam = CosetFamily::new(Sign::Minus, 1, 1).unwrap();
        let d = dual_distribution(&t, &fam).unwrap();
        assert_eq!(d.get(&BigInt::zero()), Some(&1));
        assert_eq!(d.get(&big(3)), Some(&2));
        assert_eq!(d.values().sum::<u64>(), 3);

        let t9 = f(2);
        let d9 = dual_distribution(&t9, &fam).unwrap();
        assert_eq!(d9.values().sum::<u64>(), 9);
        let length = big(72);
        assert!(d9.keys().all(|w| *w >= BigInt::zero() && *w <= length));
    }
}
