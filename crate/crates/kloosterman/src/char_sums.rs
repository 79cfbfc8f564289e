//! Kloosterman sums over F_q, their GL(t,q) generalization, the counting
//! function δ(m,q;β), complete and incomplete power moments, Salié's moment
//! recursion, and the nonsingular-symmetric-matrix character sums a_r.
//!
//! All sums are accumulated in Eisenstein integers and extracted to rational
//! integers only where the ω-component provably vanishes; no floating point
//! appears anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{CosetFamily, Sign, constants};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};

/// The four power-moment flavors: MK sums K(λ;a)^h over all a ≠ 0, SK over
/// square a only, and T0SK/T12SK sum K(λ;a²)^h over a ≠ 0 with trace-zero /
/// trace-nonzero a respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    MK,
    SK,
    T0SK,
    T12SK,
}

impl MomentKind {
    pub fn parse(s: &str) -> Result<MomentKind> {
        match s {
            "MK" => Ok(MomentKind::MK),
            "SK" => Ok(MomentKind::SK),
            "T0SK" => Ok(MomentKind::T0SK),
            "T12SK" => Ok(MomentKind::T12SK),
            other => Err(Error::parameter(format!(
                "unknown moment kind {other:?} (expected MK, SK, T0SK or T12SK)"
            ))),
        }
    }
}

/// The Kloosterman sum K(λ;a) = Σ_{α∈F_q^*} λ(α + aα⁻¹) for a ≠ 0.
///
/// The α ↦ −α pairing matches each term with its conjugate, so the sum is a
/// rational integer; the ω-component is asserted to vanish on extraction.
pub fn kloosterman(t: &FieldTable, a: FieldElement) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::parameter("kloosterman sum requires a nonzero argument"));
    }
    let mut sum = EisensteinInt::zero();
    for alpha in t.nonzero_elements() {
        sum += &t.canonical_char(t.add(alpha, t.mul(a, t.inv(alpha))));
    }
    Ok(sum.expect_rational("kloosterman sum"))
}

/// K(λ;a) for every a, indexed by element index (index 0 unused, set to 0).
pub fn kloosterman_all(t: &FieldTable) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t.q()];
    for a in t.nonzero_elements() {
        out[a.index()] = kloosterman(t, a).expect("nonzero argument");
    }
    out
}

/// The GL(t,q) Kloosterman sum K_{GL(deg,q)}(λ;a), via the recursion
/// K_{GL(t)} = q^{t−1} K_{GL(t−1)} K + q^{2t−2}(q^{t−1}−1) K_{GL(t−2)}
/// with K_{GL(0)} = 1 and K_{GL(1)} = K(λ;a).
pub fn kloosterman_gl(t: &FieldTable, deg: u32, a: FieldElement) -> Result<BigInt> {
    let k1 = kloosterman(t, a)?;
    let q = BigInt::from(t.q());
    let (mut prev, mut cur) = (BigInt::one(), k1.clone());
    if deg == 0 {
        return Ok(prev);
    }
    for d in 2..=deg {
        let next = q.pow(d - 1) * &cur * &k1 + q.pow(2 * d - 2) * (q.pow(d - 1) - 1) * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// δ(m,q;·): the number of m-tuples of nonzero elements whose α + α⁻¹ values
/// sum to each β, with δ(0,q;β) the indicator of β = 0. Tuples range over
/// nonzero elements only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTable {
    pub m: u32,
    /// Counts indexed by the element index of β.
    pub values: Vec<BigInt>,
}

impl DeltaTable {
    pub fn get(&self, beta: FieldElement) -> &BigInt {
        &self.values[beta.index()]
    }
}

/// Computes δ(m,q;·) by m-fold convolution of the distribution of α + α⁻¹
/// over α ∈ F_q^*.
pub fn delta_table(t: &FieldTable, m: u32) -> Result<DeltaTable> {
    if m > 6 {
        return Err(Error::parameter(format!("delta table order m={m} exceeds supported bound 6")));
    }
    let q = t.q();
    let mut base = vec![0u32; q];
    for alpha in t.nonzero_elements() {
        base[t.add(alpha, t.inv(alpha)).index()] += 1;
    }
    let mut cur = vec![BigInt::zero(); q];
    cur[0] = BigInt::one();
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); q];
        for b1 in 0..q {
            if cur[b1].is_zero() {
                continue;
            }
            for (b2, &count) in base.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let target = t.add(t.elem(b1), t.elem(b2)).index();
                next[target] += &cur[b1] * count;
            }
        }
        cur = next;
    }
    Ok(DeltaTable { m, values: cur })
}

/// Brute-force oracle for δ(m,q;·) by direct tuple enumeration; kept at tiny
/// scale to cross-check the convolution path.
pub fn delta_table_enumerate(t: &FieldTable, m: u32) -> Result<DeltaTable> {
    if m > 2 || t.q() > 9 {
        return Err(Error::ScaleExceeded(format!(
            "tuple enumeration supports m ≤ 2 and q ≤ 9 (got m={m}, q={})",
            t.q()
        )));
    }
    let q = t.q();
    let mut values = vec![BigInt::zero(); q];
    match m {
        0 => values[0] = BigInt::one(),
        1 => {
            for alpha in t.nonzero_elements() {
                values[t.add(alpha, t.inv(alpha)).index()] += 1;
            }
        }
        _ => {
            for a1 in t.nonzero_elements() {
                for a2 in t.nonzero_elements() {
                    let s = t.add(
                        t.add(a1, t.inv(a1)),
                        t.add(a2, t.inv(a2)),
                    );
                    values[s.index()] += 1;
                }
            }
        }
    }
    Ok(DeltaTable { m, values })
}

/// δ(1,q;β) from the square class of β²−1: 2 when β²−1 ≠ 0 is a square,
/// 1 when β²−1 = 0, 0 when β²−1 is a nonsquare. This is the number of roots
/// of x² − βx + 1.
pub fn delta1_via_squares(t: &FieldTable, beta: FieldElement) -> u8 {
    let disc = t.sub(t.mul(beta, beta), FieldElement::ONE);
    if disc.is_zero() {
        1
    } else if t.is_square(disc) {
        2
    } else {
        0
    }
}

/// The h-th power moment of the requested kind, by direct summation.
pub fn moment(t: &FieldTable, kind: MomentKind, h: u32) -> Result<BigInt> {
    if h > 12 {
        return Err(Error::parameter(format!("moment order h={h} exceeds supported bound 12")));
    }
    let k = kloosterman_all(t);
    let mut sum = BigInt::zero();
    for a in t.nonzero_elements() {
        let term = match kind {
            MomentKind::MK => Some(&k[a.index()]),
            MomentKind::SK => t.is_square(a).then(|| &k[a.index()]),
            MomentKind::T0SK => (t.trace(a) == 0).then(|| &k[t.mul(a, a).index()]),
            MomentKind::T12SK => (t.trace(a) != 0).then(|| &k[t.mul(a, a).index()]),
        };
        if let Some(v) = term {
            sum += v.pow(h);
        }
    }
    Ok(sum)
}

/// The tuple count M_h = #{(α₁,…,α_h) ∈ (F_q^*)^h : Σα_j = 1 = Σα_j⁻¹},
/// with M_0 = 0, computed by convolution over the joint value
/// (Σα_j, Σα_j⁻¹) rather than tuple enumeration.
pub fn salie_m(t: &FieldTable, h: u32) -> BigInt {
    let q = t.q();
    let mut state = vec![BigInt::zero(); q * q];
    state[0] = BigInt::one();
    for _ in 0..h {
        let mut next = vec![BigInt::zero(); q * q];
        for s1 in 0..q {
            for s2 in 0..q {
                let v = &state[s1 * q + s2];
                if v.is_zero() {
                    continue;
                }
                for alpha in t.nonzero_elements() {
                    let n1 = t.add(t.elem(s1), alpha).index();
                    let n2 = t.add(t.elem(s2), t.inv(alpha)).index();
                    next[n1 * q + n2] += v;
                }
            }
        }
        state = next;
    }
    state[q + 1].clone() // state (1, 1)
}

/// Checks Salié's recursion MK^h = q² M_{h−1} − (q−1)^{h−1} + 2(−1)^{h−1}
/// with M_{h−1} computed by [`salie_m`].
pub fn salie_check(t: &FieldTable, h: u32) -> Result<bool> {
    if h == 0 || h > 5 {
        return Err(Error::parameter(format!("salie check supports h in 1..=5 (got {h})")));
    }
    let q = BigInt::from(t.q());
    let lhs = moment(t, MomentKind::MK, h)?;
    let sign = if (h - 1) % 2 == 0 { 1 } else { -1 };
    let rhs = &q * &q * salie_m(t, h - 1) - (&q - BigInt::one()).pow(h - 1) + 2 * sign;
    Ok(lhs == rhs)
}

/// Closed form of a_r(λ) = Σ_{B nonsingular symmetric r×r} Σ_{h∈F_q^r} λ(ᵗhBh):
/// q^{r(r+2)/4} ∏_{j=1}^{r/2} (q^{2j−1}−1) for even r, and 0 for odd r.
pub fn a_r_formula(t: &FieldTable, r: u32) -> Result<BigInt> {
    if r > 8 {
        return Err(Error::parameter(format!("a_r formula supports r ≤ 8 (got {r})")));
    }
    if r % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let q = BigInt::from(t.q());
    let mut out = q.pow(r * (r + 2) / 4);
    for j in 1..=r / 2 {
        out *= q.pow(2 * j - 1) - 1;
    }
    Ok(out)
}

/// Brute-force a_r(λ) by enumerating nonsingular symmetric matrices and
/// vectors; restricted to r ≤ 2 and q ≤ 9.
pub fn a_r_bruteforce(t: &FieldTable, r: u32) -> Result<BigInt> {
    if !(1..=2).contains(&r) || t.q() > 9 {
        return Err(Error::ScaleExceeded(format!(
            "a_r enumeration supports r in 1..=2 and q ≤ 9 (got r={r}, q={})",
            t.q()
        )));
    }
    let mut sum = EisensteinInt::zero();
    if r == 1 {
        for b in t.nonzero_elements() {
            for h in t.elements() {
                sum += &t.canonical_char(t.mul(b, t.mul(h, h)));
            }
        }
    } else {
        for a in t.elements() {
            for b in t.elements() {
                for c in t.elements() {
                    let det = t.sub(t.mul(a, c), t.mul(b, b));
                    if det.is_zero() {
                        continue;
                    }
                    // quadratic form a·h₁² + 2b·h₁h₂ + c·h₂²
                    for h1 in t.elements() {
                        for h2 in t.elements() {
                            let v = t.add(
                                t.add(t.mul(a, t.mul(h1, h1)), t.mul(c, t.mul(h2, h2))),
                                t.mul(t.constant(2), t.mul(b, t.mul(h1, h2))),
                            );
                            sum += &t.canonical_char(v);
                        }
                    }
                }
            }
        }
    }
    Ok(sum.expect_rational("a_r enumeration"))
}

/// Checks Σ_{a∈F_q^*} λ(−aβ) K(λ;a²)^m = q·δ(m,q;β) − (q−1)^m exactly.
pub fn incomplete_moment_identity(t: &FieldTable, m: u32, beta: FieldElement) -> Result<bool> {
    if m > 4 {
        return Err(Error::parameter(format!("identity check supports m ≤ 4 (got {m})")));
    }
    let k = kloosterman_all(t);
    let mut lhs = EisensteinInt::zero();
    for a in t.nonzero_elements() {
        let km = k[t.mul(a, a).index()].pow(m);
        lhs += &t.canonical_char(t.neg(t.mul(a, beta))).scale(&km);
    }
    let lhs = lhs.expect_rational("incomplete moment identity");
    let q = BigInt::from(t.q());
    let delta = delta_table(t, m)?;
    let rhs = &q * delta.get(beta) - (&q - BigInt::one()).pow(m);
    Ok(lhs == rhs)
}

/// Checks Σ_{β∈F_q} δ(m,q;β) λ(aβ) = K(λ;a²)^m exactly, for a ≠ 0.
pub fn char_delta_identity(t: &FieldTable, m: u32, a: FieldElement) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::parameter("character-delta identity requires a nonzero argument"));
    }
    if m > 4 {
        return Err(Error::parameter(format!("identity check supports m ≤ 4 (got {m})")));
    }
    let delta = delta_table(t, m)?;
    let mut lhs = EisensteinInt::zero();
    for beta in t.elements() {
        lhs += &t.canonical_char(t.mul(a, beta)).scale(delta.get(beta));
    }
    let rhs = kloosterman(t, t.mul(a, a))?.pow(m);
    Ok(lhs == EisensteinInt::from(rhs))
}

/// Closed form of the exponential sum Σ_w ψ(Tr w) over the full Bruhat
/// stratum Qσ_rQ (or its ρ-twist) of the orthogonal group on 2n+1
/// coordinates, for ψ(x) = λ(ax):
///
///   ψ(±1) · q^{C(n+1,2)} · |B_r\Q| · q^{r(n−r−1)} · a_r · K_{GL(n−r,q)}(ψ;1)
///
/// which vanishes for odd r since a_r = 0 there. The ψ-twist enters through
/// K(ψ;1) = K(λ;a²), so the GL factor is the usual recursion seeded at a².
pub fn bruhat_exp_sum_closed_form(
    t: &FieldTable,
    n: u32,
    r: u32,
    a: FieldElement,
    rho_twist: bool,
) -> Result<EisensteinInt> {
    if a.is_zero() {
        return Err(Error::parameter("stratum exponential sum requires a nonzero character"));
    }
    if r > n {
        return Err(Error::parameter(format!("bruhat index r={r} out of range 0..={n}")));
    }
    if r % 2 == 1 {
        return Ok(EisensteinInt::zero());
    }
    let q = BigInt::from(t.q());
    let (cosets, _) = crate::combinat::bruhat_sizes(n, &q, r)?;
    let gl = kloosterman_gl(t, n - r, t.mul(a, a))?;
    // q-power exponent C(n+1,2) + r(n−r−1) may dip negative for r = n; the
    // product with a_r's positive q-power is always integral.
    let exponent = (n * (n + 1) / 2) as i64 + r as i64 * (n as i64 - r as i64 - 1);
    let magnitude_rat = num_rational::BigRational::from(cosets * a_r_formula(t, r)? * gl)
        * num_rational::BigRational::from(q).pow(exponent as i32);
    assert!(
        magnitude_rat.is_integer(),
        "internal consistency: stratum sum magnitude is not integral"
    );
    let magnitude = magnitude_rat.to_integer();
    let prefactor = if rho_twist {
        t.canonical_char(t.neg(a))
    } else {
        t.canonical_char(a)
    };
    Ok(prefactor.scale(&magnitude))
}

/// Closed form of the exponential sum Σ_{w∈DC} λ(a·Tr w) over a double-coset
/// family: λ(±a)·A·K(λ;a²) for the minus families and
/// λ(±a)·A·(K(λ;a²)² + q² − q) for the plus families, where the character
/// prefactor is λ(a) for i = 1 and λ(−a) for i = 2.
pub fn coset_exp_sum_closed_form(
    t: &FieldTable,
    fam: &CosetFamily,
    a: FieldElement,
) -> Result<EisensteinInt> {
    if a.is_zero() {
        return Err(Error::parameter("coset exponential sum requires a nonzero character"));
    }
    let c = constants(fam.sign, fam.n, &BigInt::from(t.q()))?;
    let k = kloosterman(t, t.mul(a, a))?;
    let q = BigInt::from(t.q());
    let magnitude = match fam.sign {
        Sign::Minus => c.a * k,
        Sign::Plus => c.a * (&k * &k + &q * &q - &q),
    };
    let prefactor = match fam.i {
        1 => t.canonical_char(a),
        _ => t.canonical_char(t.neg(a)),
    };
    Ok(prefactor.scale(&magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u32) -> FieldTable {
        FieldTable::new(r, None).unwrap()
    }

    #[test]
    fn kloosterman_on_f3() {
        let t = f(1);
        assert_eq!(kloosterman(&t, t.elem(1)).unwrap(), BigInt::from(-1));
        assert_eq!(kloosterman(&t, t.elem(2)).unwrap(), BigInt::from(2));
        assert!(kloosterman(&t, FieldElement::ZERO).is_err());
    }

    #[test]
    fn weil_bound_up_to_f243() {
        for r in 1..=5 {
            let t = f(r);
            let four_q = BigInt::from(4 * t.q());
            for a in t.nonzero_elements() {
                let k = kloosterman(&t, a).unwrap();
                assert!(&k * &k <= four_q, "q={} a={} K={}", t.q(), a.index(), k);
            }
        }
    }

    #[test]
    fn kloosterman_depends_only_on_square_of_argument() {
        let t = f(2);
        let k = kloosterman_all(&t);
        for a in t.nonzero_elements() {
            let b = t.neg(a);
            assert_eq!(k[t.mul(a, a).index()], k[t.mul(b, b).index()]);
        }
    }

    #[test]
    fn gl_kloosterman_values() {
        let t = f(1);
        let one = t.elem(1);
        assert_eq!(kloosterman_gl(&t, 0, one).unwrap(), BigInt::one());
        assert_eq!(kloosterman_gl(&t, 1, one).unwrap(), BigInt::from(-1));
        assert_eq!(kloosterman_gl(&t, 2, one).unwrap(), BigInt::from(21));
        // degree 2 closed form: q(K² + q² − q)
        for r in [1, 2] {
            let t = f(r);
            let q = BigInt::from(t.q());
            for a in t.nonzero_elements() {
                let k = kloosterman(&t, a).unwrap();
                assert_eq!(
                    kloosterman_gl(&t, 2, a).unwrap(),
                    &q * (&k * &k + &q * &q - &q)
                );
            }
        }
    }

    #[test]
    fn delta_tables_small() {
        let t = f(1);
        let d0 = delta_table(&t, 0).unwrap();
        assert_eq!(d0.values, vec![BigInt::one(), BigInt::zero(), BigInt::zero()]);
        let d1 = delta_table(&t, 1).unwrap();
        assert_eq!(d1.values, vec![BigInt::zero(), BigInt::one(), BigInt::one()]);
        let d2 = delta_table(&t, 2).unwrap();
        assert_eq!(d2.values, vec![BigInt::from(2), BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn delta_convolution_matches_enumeration() {
        for r in [1, 2] {
            let t = f(r);
            for m in 0..=2 {
                assert_eq!(
                    delta_table(&t, m).unwrap(),
                    delta_table_enumerate(&t, m).unwrap(),
                    "q={} m={m}",
                    t.q()
                );
            }
        }
        assert!(delta_table_enumerate(&f(3), 1).is_err());
    }

    #[test]
    fn delta_mass_and_symmetry() {
        for r in 1..=3 {
            let t = f(r);
            for m in 1..=4 {
                let d = delta_table(&t, m).unwrap();
                let total: BigInt = d.values.iter().sum();
                assert_eq!(total, BigInt::from(t.q() as i64 - 1).pow(m));
                for beta in t.elements() {
                    assert_eq!(d.get(beta), d.get(t.neg(beta)));
                }
            }
        }
    }

    #[test]
    fn delta1_square_classification() {
        let t = f(1);
        assert_eq!(delta1_via_squares(&t, t.elem(1)), 1);
        assert_eq!(delta1_via_squares(&t, t.elem(0)), 0);
        for r in 1..=5 {
            let t = f(r);
            let d1 = delta_table(&t, 1).unwrap();
            for beta in t.elements() {
                assert_eq!(
                    BigInt::from(delta1_via_squares(&t, beta)),
                    *d1.get(beta),
                    "q={} beta={}",
                    t.q(),
                    beta.index()
                );
            }
        }
    }

    #[test]
    fn moments_on_f3() {
        let t = f(1);
        assert_eq!(moment(&t, MomentKind::MK, 1).unwrap(), BigInt::one());
        for h in 0..=10 {
            let expected = if h % 2 == 0 { 2 } else { -2 };
            assert_eq!(moment(&t, MomentKind::T12SK, h).unwrap(), BigInt::from(expected));
            assert_eq!(moment(&t, MomentKind::T0SK, h).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn square_moment_splits_into_trace_classes() {
        for r in 1..=5 {
            let t = f(r);
            for h in 0..=10 {
                let sk = moment(&t, MomentKind::SK, h).unwrap();
                let t0 = moment(&t, MomentKind::T0SK, h).unwrap();
                let t12 = moment(&t, MomentKind::T12SK, h).unwrap();
                assert_eq!(BigInt::from(2) * sk, t0 + t12, "q={} h={h}", t.q());
            }
        }
    }

    #[test]
    fn salie_recursion_small_fields() {
        for r in 1..=3 {
            let t = f(r);
            for h in 1..=5 {
                assert!(salie_check(&t, h).unwrap(), "q={} h={h}", t.q());
            }
        }
    }

    #[test]
    fn salie_m_matches_tuple_enumeration_on_f3() {
        let t = f(1);
        for h in 0..=3u32 {
            // enumerate (F_3^*)^h directly
            let mut count = 0u32;
            let tuples = 2u32.pow(h);
            for mask in 0..tuples {
                let mut s1 = FieldElement::ZERO;
                let mut s2 = FieldElement::ZERO;
                for bit in 0..h {
                    let alpha = t.elem(1 + ((mask >> bit) & 1) as usize);
                    s1 = t.add(s1, alpha);
                    s2 = t.add(s2, t.inv(alpha));
                }
                if s1 == FieldElement::ONE && s2 == FieldElement::ONE {
                    count += 1;
                }
            }
            assert_eq!(salie_m(&t, h), BigInt::from(count), "h={h}");
        }
    }

    #[test]
    fn a_r_formula_vs_enumeration() {
        for r in [1, 2] {
            let t = f(r);
            assert_eq!(a_r_formula(&t, 1).unwrap(), BigInt::zero());
            assert_eq!(a_r_bruteforce(&t, 1).unwrap(), BigInt::zero());
            assert_eq!(a_r_bruteforce(&t, 2).unwrap(), a_r_formula(&t, 2).unwrap());
        }
        let t3 = f(1);
        assert_eq!(a_r_formula(&t3, 2).unwrap(), BigInt::from(18));
        let t9 = f(2);
        assert_eq!(a_r_formula(&t9, 2).unwrap(), BigInt::from(648));
        for r in [3, 5, 7] {
            assert_eq!(a_r_formula(&t3, r).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn stratum_sum_specializes_to_coset_closed_form() {
        // the double-coset families sit at r = n−1 (minus) and n−2 (plus)
        for r_field in [1, 2] {
            let t = f(r_field);
            for (sign, n) in [(Sign::Minus, 1u32), (Sign::Minus, 3), (Sign::Plus, 2), (Sign::Plus, 4)] {
                for i in [1u8, 2] {
                    let fam = CosetFamily::new(sign, n, i).unwrap();
                    for a in t.nonzero_elements() {
                        let general =
                            bruhat_exp_sum_closed_form(&t, n, fam.bruhat_r(), a, i == 2).unwrap();
                        let family = coset_exp_sum_closed_form(&t, &fam, a).unwrap();
                        assert_eq!(general, family, "{sign:?} n={n} i={i} a={}", a.index());
                    }
                }
            }
        }
    }

    #[test]
    fn odd_strata_have_vanishing_sums() {
        let t = f(2);
        for a in t.nonzero_elements() {
            assert!(bruhat_exp_sum_closed_form(&t, 1, 1, a, false).unwrap().is_zero());
            assert!(bruhat_exp_sum_closed_form(&t, 3, 1, a, true).unwrap().is_zero());
        }
    }

    #[test]
    fn incomplete_moment_identity_small() {
        let t3 = f(1);
        assert!(incomplete_moment_identity(&t3, 0, t3.elem(0)).unwrap());
        assert!(incomplete_moment_identity(&t3, 2, t3.elem(0)).unwrap());
        let t9 = f(2);
        for beta in t9.elements() {
            assert!(incomplete_moment_identity(&t9, 1, beta).unwrap());
        }
    }

    #[test]
    fn char_delta_identity_small() {
        let t3 = f(1);
        assert!(char_delta_identity(&t3, 2, t3.elem(1)).unwrap());
        assert!(char_delta_identity(&t3, 0, t3.elem(2)).unwrap());
        assert!(char_delta_identity(&t3, 1, FieldElement::ZERO).is_err());
        let t27 = f(3);
        for a in t27.nonzero_elements() {
            assert!(char_delta_identity(&t27, 3, a).unwrap());
        }
    }
}
