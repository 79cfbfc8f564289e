//! Exact arithmetic in F_{3^r} via dense lookup tables.
//!
//! Elements are indexed 0..q with index = Σ cᵢ·3^i for the coefficient vector
//! (c₀, …, c_{r−1}) of the residue modulo the defining polynomial. Indices
//! 0, 1, 2 are always the prime-subfield constants. A [`FieldTable`] holds
//! full addition/multiplication tables plus trace, inverse, Frobenius and
//! squareness data, so all downstream enumeration is O(1) per operation.
//! Tables are immutable after construction and safe to share across threads.

use serde::Serialize;

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};

/// One built-in irreducible polynomial per degree, little-endian
/// (c₀, …, c_r) with c_r = 1. These are the defaults used when a field spec
/// gives only the degree; every result in this crate is independent of the
/// choice (it depends only on the abstract field), which a regression test
/// checks by recomputing key sums under a second degree-2 modulus.
const DEFAULT_MODULI: [&[u8]; 6] = [
    &[0, 1],                // x
    &[1, 0, 1],             // x² + 1
    &[1, 2, 0, 1],          // x³ + 2x + 1
    &[2, 1, 0, 0, 1],       // x⁴ + x + 2
    &[1, 2, 0, 0, 0, 1],    // x⁵ + 2x + 1
    &[2, 1, 0, 0, 0, 0, 1], // x⁶ + x + 2
];

pub const MAX_EXTENSION_DEGREE: u32 = 6;

/// Degree and defining polynomial of an F_{3^r} instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub r: u32,
    pub q: usize,
    /// Little-endian coefficients (c₀, …, c_r), monic, irreducible over F_3.
    pub modulus: Vec<u8>,
}

/// An element of F_q, stored as its table index in [0, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Precomputed arithmetic for one instance of F_{3^r}.
///
/// Debug output shows only the parameters; the tables themselves are dense
/// q×q arrays.
pub struct FieldTable {
    params: FieldParams,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u8>,
    frob: Vec<u16>,
    square: Vec<bool>,
}

impl std::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTable").field("params", &self.params).finish_non_exhaustive()
    }
}

impl FieldTable {
    /// Builds the lookup tables for F_{3^r}. With `modulus = None` the
    /// built-in default polynomial for `r` is used; an explicit modulus must
    /// be monic of degree r, little-endian, and irreducible over F_3
    /// (checked by trial division against all monic polynomials of degree
    /// at most r/2).
    pub fn new(r: u32, modulus: Option<&[u8]>) -> Result<FieldTable> {
        if r < 1 || r > MAX_EXTENSION_DEGREE {
            return Err(Error::parameter(format!(
                "extension degree r={r} out of supported range 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let modulus: Vec<u8> = match modulus {
            Some(m) => m.to_vec(),
            None => DEFAULT_MODULI[(r - 1) as usize].to_vec(),
        };
        if modulus.len() != r as usize + 1 {
            return Err(Error::parameter(format!(
                "modulus must have degree {r} (got {} coefficients)",
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c > 2) {
            return Err(Error::parameter("modulus coefficients must lie in {0,1,2}".to_string()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::parameter("modulus must be monic".to_string()));
        }
        if let Some(factor) = find_factor(&modulus) {
            return Err(Error::ReducibleModulus { factor: poly_to_string(&factor) });
        }

        let q = 3usize.pow(r);
        let params = FieldParams { r, q, modulus };

        let mut add = vec![0u16; q * q];
        for x in 0..q {
            for y in 0..=x {
                let s = add_indices(x, y, r);
                add[x * q + y] = s;
                add[y * q + x] = s;
            }
        }
        let mut mul = vec![0u16; q * q];
        let mut inv = vec![0u16; q];
        for x in 0..q {
            for y in 0..=x {
                let p = mul_indices(x, y, &params);
                mul[x * q + y] = p;
                mul[y * q + x] = p;
                if p == 1 {
                    inv[x] = y as u16;
                    inv[y] = x as u16;
                }
            }
        }
        // −x = 2x in characteristic 3
        let neg: Vec<u16> = (0..q).map(|x| mul[x * q + 2]).collect();
        let frob: Vec<u16> = (0..q).map(|x| mul[mul[x * q + x] as usize * q + x]).collect();

        let mut trace = vec![0u8; q];
        for x in 0..q {
            let mut t = 0usize;
            let mut y = x;
            for _ in 0..r {
                t = add[t * q + y] as usize;
                y = frob[y] as usize;
            }
            assert!(t < 3, "internal consistency: trace of element {x} lies outside F_3");
            trace[x] = t as u8;
        }
        let mut square = vec![false; q];
        for x in 1..q {
            square[mul[x * q + x] as usize] = true;
        }

        let table = FieldTable { params, add, mul, neg, inv, trace, frob, square };
        table.check_invariants();
        Ok(table)
    }

    fn check_invariants(&self) {
        let q = self.q();
        assert_eq!(
            self.square.iter().filter(|&&s| s).count(),
            (q - 1) / 2,
            "internal consistency: square count"
        );
        let mut seen = [false; 3];
        for x in 0..q {
            seen[self.trace[x] as usize] = true;
        }
        assert!(seen.iter().all(|&s| s), "internal consistency: trace not surjective onto F_3");
        for x in 1..q {
            assert_eq!(
                self.mul[x * q + self.inv[x] as usize],
                1,
                "internal consistency: inverse table"
            );
        }
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn q(&self) -> usize {
        self.params.q
    }

    pub fn r(&self) -> u32 {
        self.params.r
    }

    /// Canonical spec string "3^r/c_r,...,c_0" with the modulus written
    /// most-significant coefficient first.
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> =
            self.params.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("3^{}/{}", self.params.r, coeffs.join(","))
    }

    pub fn elem(&self, index: usize) -> FieldElement {
        assert!(index < self.q(), "element index {index} out of range for q={}", self.q());
        FieldElement(index as u16)
    }

    /// The prime-subfield constant c ∈ {0, 1, 2} as a field element.
    pub fn constant(&self, c: u8) -> FieldElement {
        debug_assert!(c < 3);
        FieldElement(c as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q() as u16).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q() as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.add[x.index() * self.q() + y.index()])
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.mul[x.index() * self.q() + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg[x.index()])
    }

    /// Multiplicative inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        assert!(!x.is_zero(), "inverse of zero");
        FieldElement(self.inv[x.index()])
    }

    /// Field trace to F_3, returned as 0, 1 or 2.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u8 {
        self.trace[x.index()]
    }

    #[inline]
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.frob[x.index()])
    }

    /// Squareness of a nonzero element.
    #[inline]
    pub fn is_square(&self, x: FieldElement) -> bool {
        assert!(!x.is_zero(), "squareness is classified for nonzero elements only");
        self.square[x.index()]
    }

    /// The canonical additive character λ(x) = ω^{tr(x)}.
    pub fn canonical_char(&self, x: FieldElement) -> EisensteinInt {
        EisensteinInt::omega_pow(self.trace(x))
    }
}

fn digits(x: usize, r: u32) -> Vec<u8> {
    let mut x = x;
    (0..r)
        .map(|_| {
            let d = (x % 3) as u8;
            x /= 3;
            d
        })
        .collect()
}

fn add_indices(x: usize, y: usize, r: u32) -> u16 {
    let (dx, dy) = (digits(x, r), digits(y, r));
    let mut out = 0usize;
    let mut pow = 1usize;
    for i in 0..r as usize {
        out += ((dx[i] + dy[i]) % 3) as usize * pow;
        pow *= 3;
    }
    out as u16
}

fn mul_indices(x: usize, y: usize, params: &FieldParams) -> u16 {
    let r = params.r as usize;
    let (dx, dy) = (digits(x, params.r), digits(y, params.r));
    let mut prod = vec![0u8; 2 * r];
    for (i, &a) in dx.iter().enumerate() {
        for (j, &b) in dy.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % 3;
        }
    }
    // reduce modulo the (monic) defining polynomial
    for k in (r..2 * r).rev() {
        let c = prod[k];
        if c != 0 {
            prod[k] = 0;
            for (i, &m) in params.modulus.iter().enumerate().take(r) {
                let idx = k - r + i;
                prod[idx] = (prod[idx] + 3 - (c * m) % 3) % 3;
            }
        }
    }
    let mut out = 0usize;
    let mut pow = 1usize;
    for &d in prod.iter().take(r) {
        out += d as usize * pow;
        pow *= 3;
    }
    out as u16
}

/// Tries all monic polynomials of degree ≤ deg(m)/2 as divisors of `m` over
/// F_3; returns a nontrivial factor if one divides exactly.
fn find_factor(modulus: &[u8]) -> Option<Vec<u8>> {
    let r = modulus.len() - 1;
    for d in 1..=r / 2 {
        let mut tail = vec![0u8; d];
        loop {
            let mut div: Vec<u8> = tail.clone();
            div.push(1);
            if poly_rem(modulus, &div).is_empty() {
                return Some(div);
            }
            // next coefficient vector, base 3
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                tail[i] += 1;
                if tail[i] < 3 {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    None
}

/// Remainder of polynomial division over F_3 (both little-endian, divisor monic).
fn poly_rem(num: &[u8], den: &[u8]) -> Vec<u8> {
    let mut num: Vec<u8> = num.to_vec();
    let d = den.len() - 1;
    while num.len() > d {
        let k = num.len() - 1;
        let c = num[k];
        if c != 0 {
            for (i, &m) in den.iter().enumerate() {
                num[k - d + i] = (num[k - d + i] + 3 - (c * m) % 3) % 3;
            }
        }
        num.pop();
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    num
}

fn poly_to_string(p: &[u8]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
}

/// A parsed field specification: "3^r" for the default modulus, or
/// "3^r/c_r,...,c_0" with explicit coefficients most-significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub r: u32,
    pub modulus: Option<Vec<u8>>,
}

impl FieldSpec {
    pub fn parse(input: &str) -> Result<FieldSpec> {
        let bad = |reason: &str| Error::FieldSpec { input: input.to_string(), reason: reason.to_string() };
        let (base_part, mod_part) = match input.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (input, None),
        };
        let Some(r_str) = base_part.strip_prefix("3^") else {
            return Err(bad("expected the form 3^r"));
        };
        let r: u32 = r_str.parse().map_err(|_| bad("exponent is not a positive integer"))?;
        if r < 1 || r > MAX_EXTENSION_DEGREE {
            return Err(bad(&format!("exponent must be in 1..={MAX_EXTENSION_DEGREE}")));
        }
        let modulus = match mod_part {
            None => None,
            Some(m) => {
                let coeffs: std::result::Result<Vec<u8>, _> =
                    m.split(',').map(|c| c.trim().parse::<u8>()).collect();
                let mut coeffs = coeffs.map_err(|_| bad("modulus coefficients must be integers"))?;
                coeffs.reverse(); // to little-endian
                Some(coeffs)
            }
        };
        Ok(FieldSpec { r, modulus })
    }

    pub fn build(&self) -> Result<FieldTable> {
        FieldTable::new(self.r, self.modulus.as_deref())
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FieldSpec> {
        FieldSpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_trace_is_identity() {
        let t = FieldTable::new(1, None).unwrap();
        assert_eq!(t.q(), 3);
        for x in t.elements() {
            assert_eq!(t.trace(x) as usize, x.index());
        }
    }

    #[test]
    fn f9_has_four_nonzero_squares() {
        let t = FieldTable::new(2, None).unwrap();
        let squares = t.nonzero_elements().filter(|&x| t.is_square(x)).count();
        assert_eq!(squares, 4);
    }

    #[test]
    fn explicit_modulus_x2_plus_1_accepted() {
        let t = FieldTable::new(2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(t.q(), 9);
    }

    #[test]
    fn reducible_modulus_rejected_with_factor() {
        // x² + 2 = (x+1)(x+2) over F_3
        let err = FieldTable::new(2, Some(&[2, 0, 1])).unwrap_err();
        match err {
            Error::ReducibleModulus { factor } => assert!(factor.contains('x'), "{factor}"),
            other => panic!("expected reducible modulus error, got {other}"),
        }
    }

    #[test]
    fn degree_out_of_range_rejected() {
        assert!(FieldTable::new(0, None).is_err());
        assert!(FieldTable::new(7, None).is_err());
    }

    #[test]
    fn all_default_moduli_build() {
        for r in 1..=MAX_EXTENSION_DEGREE {
            let t = FieldTable::new(r, None).unwrap();
            assert_eq!(t.q(), 3usize.pow(r));
        }
    }

    #[test]
    fn canonical_char_small_values() {
        let t = FieldTable::new(1, None).unwrap();
        assert_eq!(t.canonical_char(t.elem(0)), EisensteinInt::new(1, 0));
        assert_eq!(t.canonical_char(t.elem(1)), EisensteinInt::new(0, 1));
        assert_eq!(t.canonical_char(t.elem(2)), EisensteinInt::new(-1, -1));
    }

    #[test]
    fn char_of_negation_is_conjugate() {
        for r in 1..=3 {
            let t = FieldTable::new(r, None).unwrap();
            for x in t.elements() {
                assert_eq!(t.canonical_char(t.neg(x)), t.canonical_char(x).conjugate());
            }
        }
    }

    #[test]
    fn complete_character_sum_vanishes() {
        for r in 1..=MAX_EXTENSION_DEGREE {
            let t = FieldTable::new(r, None).unwrap();
            let mut s = EisensteinInt::zero();
            for x in t.elements() {
                s += &t.canonical_char(x);
            }
            assert!(s.is_zero(), "character sum over F_{{3^{r}}} is {s}");
        }
    }

    #[test]
    fn character_is_additive() {
        for r in 1..=3 {
            let t = FieldTable::new(r, None).unwrap();
            for x in t.elements() {
                for y in t.elements() {
                    assert_eq!(
                        t.canonical_char(t.add(x, y)),
                        &t.canonical_char(x) * &t.canonical_char(y)
                    );
                }
            }
        }
    }

    #[test]
    fn squareness_is_multiplicative() {
        for r in [2, 3] {
            let t = FieldTable::new(r, None).unwrap();
            for x in t.nonzero_elements() {
                for y in t.nonzero_elements() {
                    assert_eq!(
                        t.is_square(t.mul(x, y)),
                        t.is_square(x) == t.is_square(y)
                    );
                }
            }
        }
    }

    #[test]
    fn trace_is_frobenius_invariant_and_linear() {
        for r in 1..=4 {
            let t = FieldTable::new(r, None).unwrap();
            for x in t.elements() {
                assert_eq!(t.trace(t.frobenius(x)), t.trace(x));
            }
            for x in t.elements() {
                for y in t.elements() {
                    assert_eq!(t.trace(t.add(x, y)), (t.trace(x) + t.trace(y)) % 3);
                }
            }
        }
    }

    #[test]
    fn trace_zero_count_is_q_over_3() {
        for r in 1..=5 {
            let t = FieldTable::new(r, None).unwrap();
            let zeros = t.elements().filter(|&x| t.trace(x) == 0).count();
            assert_eq!(zeros, t.q() / 3);
        }
    }

    #[test]
    fn field_axioms_sampled_on_f729() {
        let t = FieldTable::new(6, None).unwrap();
        let sample: Vec<FieldElement> = (0..t.q()).step_by(53).map(|i| t.elem(i)).collect();
        for &x in &sample {
            for &y in &sample {
                assert_eq!(t.mul(x, y), t.mul(y, x));
                assert_eq!(t.add(x, y), t.add(y, x));
                if !y.is_zero() {
                    assert_eq!(t.mul(t.mul(x, y), t.inv(y)), x);
                }
            }
        }
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("3^2").unwrap(), FieldSpec { r: 2, modulus: None });
        assert_eq!(
            FieldSpec::parse("3^2/1,0,1").unwrap(),
            FieldSpec { r: 2, modulus: Some(vec![1, 0, 1]) }
        );
        assert!(FieldSpec::parse("2^3").is_err());
        assert!(FieldSpec::parse("3^0").is_err());
        assert!(FieldSpec::parse("3^7").is_err());
        // non-monic explicit modulus fails at build time
        assert!(FieldSpec::parse("3^2/2,0,1").unwrap().build().is_err());
    }
}
