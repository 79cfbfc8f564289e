//! Brute-force ground truth: explicit matrix enumeration of the subgroup Q
//! of the odd orthogonal group, its double cosets, the full groups O(3,q),
//! and the tiny explicit codes — everything the closed-form modules must
//! agree with at small parameters.
//!
//! All scales are guarded: Q is enumerated for (n,q) ∈ {(1,3),(1,9),(2,3)},
//! full orthogonal groups for O(3,3) and O(3,9), and kernel codes only up to
//! length 8.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::combinat::{CosetFamily, Sign};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};

/// A square matrix over F_q, entries row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixGF {
    pub dim: usize,
    pub entries: Vec<u16>,
}

impl MatrixGF {
    pub fn zero(dim: usize) -> MatrixGF {
        MatrixGF { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> MatrixGF {
        let mut m = MatrixGF::zero(dim);
        for i in 0..dim {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        FieldElement(self.entries[row * self.dim + col])
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: FieldElement) {
        self.entries[row * self.dim + col] = v.0;
    }

    pub fn mul(&self, other: &MatrixGF, t: &FieldTable) -> MatrixGF {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = MatrixGF::zero(d);
        for i in 0..d {
            for j in 0..d {
                let mut s = FieldElement::ZERO;
                for k in 0..d {
                    s = t.add(s, t.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> MatrixGF {
        let d = self.dim;
        let mut out = MatrixGF::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self, t: &FieldTable) -> FieldElement {
        let mut s = FieldElement::ZERO;
        for i in 0..self.dim {
            s = t.add(s, self.get(i, i));
        }
        s
    }

    /// Whether ᵗw J w = J for the standard split form J.
    pub fn is_orthogonal(&self, t: &FieldTable) -> bool {
        let n = ((self.dim - 1) / 2) as u32;
        let j = j_form(n, t);
        self.transpose().mul(&j, t).mul(self, t) == j
    }
}

/// The split bilinear form matrix J = [[0, Iₙ, 0], [Iₙ, 0, 0], [0, 0, 1]]
/// on 2n+1 coordinates.
pub fn j_form(n: u32, _t: &FieldTable) -> MatrixGF {
    let n = n as usize;
    let mut j = MatrixGF::zero(2 * n + 1);
    for k in 0..n {
        j.set(k, n + k, FieldElement::ONE);
        j.set(n + k, k, FieldElement::ONE);
    }
    j.set(2 * n, 2 * n, FieldElement::ONE);
    j
}

/// The Bruhat representative σ_r: the identity with coordinates k and n+k
/// swapped for k < r.
pub fn sigma_matrix(n: u32, r: u32, _t: &FieldTable) -> MatrixGF {
    assert!(r <= n);
    let n = n as usize;
    let mut m = MatrixGF::zero(2 * n + 1);
    for k in 0..n {
        if k < r as usize {
            m.set(k, n + k, FieldElement::ONE);
            m.set(n + k, k, FieldElement::ONE);
        } else {
            m.set(k, k, FieldElement::ONE);
            m.set(n + k, n + k, FieldElement::ONE);
        }
    }
    m.set(2 * n, 2 * n, FieldElement::ONE);
    m
}

/// The reflection ρ = diag(1, …, 1, −1) whose coset distinguishes the i = 2
/// families.
pub fn rho_matrix(n: u32, t: &FieldTable) -> MatrixGF {
    let mut m = MatrixGF::identity(2 * n as usize + 1);
    m.set(2 * n as usize, 2 * n as usize, t.neg(FieldElement::ONE));
    m
}

fn check_scale(n: u32, q: usize, allowed: &[(u32, usize)], what: &str) -> Result<()> {
    if allowed.contains(&(n, q)) {
        Ok(())
    } else {
        Err(Error::ScaleExceeded(format!(
            "{what} supports (n,q) in {allowed:?}, got ({n},{q})"
        )))
    }
}

/// Enumerates GL(n,q) together with inverse transposes, for n ≤ 2.
fn gl_with_inverse_transpose(t: &FieldTable, n: u32) -> Vec<(MatrixGF, MatrixGF)> {
    let mut out = Vec::new();
    match n {
        1 => {
            for a in t.nonzero_elements() {
                let mut m = MatrixGF::zero(1);
                m.set(0, 0, a);
                let mut inv_t = MatrixGF::zero(1);
                inv_t.set(0, 0, t.inv(a));
                out.push((m, inv_t));
            }
        }
        2 => {
            for a in t.elements() {
                for b in t.elements() {
                    for c in t.elements() {
                        for d in t.elements() {
                            let det = t.sub(t.mul(a, d), t.mul(b, c));
                            if det.is_zero() {
                                continue;
                            }
                            let di = t.inv(det);
                            let mut m = MatrixGF::zero(2);
                            m.set(0, 0, a);
                            m.set(0, 1, b);
                            m.set(1, 0, c);
                            m.set(1, 1, d);
                            // adjugate inverse, then transpose
                            let mut inv = MatrixGF::zero(2);
                            inv.set(0, 0, t.mul(d, di));
                            inv.set(0, 1, t.mul(t.neg(b), di));
                            inv.set(1, 0, t.mul(t.neg(c), di));
                            inv.set(1, 1, t.mul(a, di));
                            out.push((m, inv.transpose()));
                        }
                    }
                }
            }
        }
        _ => unreachable!("GL enumeration is limited to n ≤ 2"),
    }
    out
}

/// Enumerates the subgroup Q(2n+1,q): all products
/// diag(A, ᵗA⁻¹, 1) · [[Iₙ, B, −ᵗh], [0, Iₙ, 0], [0, h, 1]] with A ∈ GL(n,q)
/// and B + ᵗB + ᵗh·h = 0. In characteristic 3 the constraint fixes the
/// diagonal of B to bᵢᵢ = hᵢ² and the lower triangle to bⱼᵢ = −bᵢⱼ − hᵢhⱼ,
/// so |Q| = |GL(n,q)|·q^{n(n+1)/2}. Every element is verified orthogonal.
/// The returned list is sorted by matrix entries.
pub fn build_q(t: &FieldTable, n: u32) -> Result<Vec<MatrixGF>> {
    check_scale(n, t.q(), &[(1, 3), (1, 9), (2, 3)], "Q enumeration")?;
    let nn = n as usize;
    let dim = 2 * nn + 1;
    let gl = gl_with_inverse_transpose(t, n);
    let q = t.q();

    // free coordinates: h ∈ F_q^n and the strict upper triangle of B
    let free = nn + nn * (nn - 1) / 2;
    let mut elements = Vec::with_capacity(gl.len() * q.pow(free as u32));
    let mut counter = vec![0usize; free];
    for (a_mat, a_inv_t) in &gl {
        let mut left = MatrixGF::zero(dim);
        for i in 0..nn {
            for j in 0..nn {
                left.set(i, j, a_mat.get(i, j));
                left.set(nn + i, nn + j, a_inv_t.get(i, j));
            }
        }
        left.set(2 * nn, 2 * nn, FieldElement::ONE);

        // odometer over h (first n slots) then upper-triangle entries of B
        for c in counter.iter_mut() {
            *c = 0;
        }
        loop {
            let h: Vec<FieldElement> = (0..nn).map(|i| t.elem(counter[i])).collect();
            let mut b = vec![vec![FieldElement::ZERO; nn]; nn];
            let mut slot = nn;
            for i in 0..nn {
                b[i][i] = t.mul(h[i], h[i]);
                for j in (i + 1)..nn {
                    let bij = t.elem(counter[slot]);
                    slot += 1;
                    b[i][j] = bij;
                    b[j][i] = t.neg(t.add(bij, t.mul(h[i], h[j])));
                }
            }
            let mut right = MatrixGF::identity(dim);
            for i in 0..nn {
                for j in 0..nn {
                    right.set(i, nn + j, b[i][j]);
                }
                right.set(i, 2 * nn, t.neg(h[i]));
                right.set(2 * nn, nn + i, h[i]);
            }
            let w = left.mul(&right, t);
            assert!(w.is_orthogonal(t), "internal consistency: Q element fails ᵗwJw = J");
            elements.push(w);

            // advance odometer
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                counter[i] += 1;
                if counter[i] < q {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    elements.sort();
    let before = elements.len();
    elements.dedup();
    assert_eq!(before, elements.len(), "internal consistency: Q enumeration produced duplicates");
    Ok(elements)
}

/// Trace histogram of a set of matrices, indexed by the element index of β.
pub fn trace_histogram(t: &FieldTable, elements: &[MatrixGF]) -> Vec<u64> {
    let mut hist = vec![0u64; t.q()];
    for w in elements {
        hist[w.trace(t).index()] += 1;
    }
    hist
}

/// Forms the deduplicated product set {x·σ·y : x,y ∈ q_elems}, optionally
/// left-multiplied by ρ.
pub fn double_coset_products(
    t: &FieldTable,
    q_elems: &[MatrixGF],
    sigma: &MatrixGF,
    rho_twist: bool,
) -> Vec<MatrixGF> {
    let n = (sigma.dim - 1) / 2;
    let rho = rho_matrix(n as u32, t);
    let mut set = BTreeSet::new();
    for x in q_elems {
        let mut xs = x.mul(sigma, t);
        if rho_twist {
            xs = rho.mul(&xs, t);
        }
        for y in q_elems {
            set.insert(xs.mul(y, t));
        }
    }
    set.into_iter().collect()
}

/// A fully enumerated double-coset family with its trace histogram.
#[derive(Clone, Debug)]
pub struct CosetEnumeration {
    pub fam: CosetFamily,
    /// Elements in sorted canonical order; this ordering is also the
    /// coordinate order of the associated code.
    pub elements: Vec<MatrixGF>,
    pub histogram: Vec<u64>,
}

/// Enumerates one double-coset family at oracle scale: (minus, n=1, q∈{3,9})
/// or (plus, n=2, q=3). Both use the Bruhat representative σ_0 = 1, so the
/// coset is Q itself (i = 1) or ρQ (i = 2); the generic product-set path is
/// exercised by [`double_coset_products`] for the σ_1 stratum in tests.
pub fn enumerate_double_coset(t: &FieldTable, fam: CosetFamily) -> Result<CosetEnumeration> {
    match fam.sign {
        Sign::Minus => check_scale(fam.n, t.q(), &[(1, 3), (1, 9)], "minus double-coset enumeration")?,
        Sign::Plus => check_scale(fam.n, t.q(), &[(2, 3)], "plus double-coset enumeration")?,
    }
    let q_elems = build_q(t, fam.n)?;
    let r = fam.bruhat_r();
    let mut elements = if r == 0 {
        if fam.i == 1 {
            q_elems
        } else {
            let rho = rho_matrix(fam.n, t);
            q_elems.iter().map(|w| rho.mul(w, t)).collect()
        }
    } else {
        let sigma = sigma_matrix(fam.n, r, t);
        double_coset_products(t, &q_elems, &sigma, fam.i == 2)
    };
    elements.sort();
    for w in &elements {
        assert!(w.is_orthogonal(t), "internal consistency: coset element fails ᵗwJw = J");
    }
    let histogram = trace_histogram(t, &elements);
    Ok(CosetEnumeration { fam, elements, histogram })
}

/// Scans all of O(3,q) = {w : ᵗwJw = J}, partitioned by first row for
/// parallelism. Row k of a candidate satisfies the same bilinear constraints
/// as column k (ᵗwJw = J and wJᵗw = J are equivalent since J² = 1), which
/// prunes the q⁹ raw candidates to a handful of row triples; each survivor
/// is still verified against ᵗwJw = J directly.
pub fn enumerate_o3(t: &FieldTable) -> Result<Vec<MatrixGF>> {
    if t.q() > 9 {
        return Err(Error::ScaleExceeded(format!(
            "O(3,q) scan supports q in {{3,9}}, got {}",
            t.q()
        )));
    }
    let q = t.q();
    let vecs: Vec<[FieldElement; 3]> = (0..q)
        .flat_map(|x| (0..q).flat_map(move |y| (0..q).map(move |z| (x, y, z))))
        .map(|(x, y, z)| {
            [FieldElement(x as u16), FieldElement(y as u16), FieldElement(z as u16)]
        })
        .collect();
    // B(x,y) = x₁y₂ + x₂y₁ + x₃y₃
    let form = |x: &[FieldElement; 3], y: &[FieldElement; 3]| {
        t.add(
            t.add(t.mul(x[0], y[1]), t.mul(x[1], y[0])),
            t.mul(x[2], y[2]),
        )
    };

    let mut out: Vec<MatrixGF> = vecs
        .par_iter()
        .flat_map_iter(|r1| {
            let mut found = Vec::new();
            if !form(r1, r1).is_zero() {
                return found.into_iter();
            }
            for r2 in &vecs {
                if !form(r2, r2).is_zero() || form(r1, r2) != FieldElement::ONE {
                    continue;
                }
                for r3 in &vecs {
                    if form(r3, r3) == FieldElement::ONE
                        && form(r1, r3).is_zero()
                        && form(r2, r3).is_zero()
                    {
                        let mut m = MatrixGF::zero(3);
                        for (row, v) in [r1, r2, r3].into_iter().enumerate() {
                            for col in 0..3 {
                                m.set(row, col, v[col]);
                            }
                        }
                        if m.is_orthogonal(t) {
                            found.push(m);
                        }
                    }
                }
            }
            found.into_iter()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Termwise exponential sum Σ_w λ(a·Tr w) over an enumerated coset.
pub fn coset_exp_sum(
    t: &FieldTable,
    enumeration: &CosetEnumeration,
    a: FieldElement,
) -> Result<EisensteinInt> {
    if a.is_zero() {
        return Err(Error::parameter("coset exponential sum requires a nonzero character"));
    }
    let mut sum = EisensteinInt::zero();
    for w in &enumeration.elements {
        sum += &t.canonical_char(t.mul(a, w.trace(t)));
    }
    Ok(sum)
}

/// Kernel-side data of an explicit code, available when 3^length is
/// enumerable (length ≤ 8).
#[derive(Clone, Debug)]
pub struct KernelData {
    pub word_count: u64,
    /// Complete weight distribution, indexed by weight 0..=length.
    pub weight_counts: Vec<u64>,
    /// Whether the brute-force ternary dual of the kernel code equals the
    /// trace-lift words exactly (each checked orthogonal to every codeword).
    pub delsarte_consistent: bool,
}

/// The explicit code attached to an enumerated double coset: coordinates are
/// the coset elements in sorted order, codewords are ternary vectors
/// orthogonal (in F_q) to the vector of traces, and the dual consists of the
/// q trace-lift words a ↦ (tr(a·Tr g₁), …).
#[derive(Clone, Debug)]
pub struct ExplicitCode {
    pub fam: CosetFamily,
    pub length: usize,
    pub trace_vector: Vec<FieldElement>,
    /// Dual words indexed by the element index of a (so index 0 is the zero
    /// word), entries in {0,1,2}.
    pub dual_words: Vec<Vec<u8>>,
    pub dual_distinct: bool,
    /// Histogram weight → count over all q dual words.
    pub dual_histogram: BTreeMap<usize, u64>,
    pub kernel: Option<KernelData>,
}

pub fn explicit_code(t: &FieldTable, fam: CosetFamily) -> Result<ExplicitCode> {
    let enumeration = enumerate_double_coset(t, fam)?;
    let trace_vector: Vec<FieldElement> =
        enumeration.elements.iter().map(|w| w.trace(t)).collect();
    let length = trace_vector.len();

    let mut dual_words = Vec::with_capacity(t.q());
    for a in t.elements() {
        let word: Vec<u8> = trace_vector.iter().map(|&g| t.trace(t.mul(a, g))).collect();
        dual_words.push(word);
    }
    let dual_distinct = dual_words.iter().collect::<BTreeSet<_>>().len() == t.q();
    let mut dual_histogram = BTreeMap::new();
    for word in &dual_words {
        let w = word.iter().filter(|&&x| x != 0).count();
        *dual_histogram.entry(w).or_insert(0u64) += 1;
    }

    let kernel = if length <= 8 {
        Some(enumerate_kernel(t, &trace_vector, &dual_words))
    } else {
        None
    };

    Ok(ExplicitCode {
        fam,
        length,
        trace_vector,
        dual_words,
        dual_distinct,
        dual_histogram,
        kernel,
    })
}

fn enumerate_kernel(
    t: &FieldTable,
    trace_vector: &[FieldElement],
    dual_words: &[Vec<u8>],
) -> KernelData {
    let len = trace_vector.len();
    let mut kernel_words: Vec<Vec<u8>> = Vec::new();
    let mut weight_counts = vec![0u64; len + 1];
    let mut u = vec![0u8; len];
    loop {
        // dot product in F_q with the ternary word embedded as constants
        let mut dot = FieldElement::ZERO;
        for (&c, &v) in u.iter().zip(trace_vector) {
            dot = t.add(dot, t.mul(t.constant(c), v));
        }
        if dot.is_zero() {
            weight_counts[u.iter().filter(|&&x| x != 0).count()] += 1;
            kernel_words.push(u.clone());
        }
        let mut i = 0;
        loop {
            if i == len {
                break;
            }
            u[i] += 1;
            if u[i] < 3 {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }

    // brute-force ternary dual of the kernel code, compared against the
    // trace-lift words as sets
    let expected: BTreeSet<Vec<u8>> = dual_words.iter().cloned().collect();
    let mut brute_dual = BTreeSet::new();
    let mut w = vec![0u8; len];
    loop {
        let orthogonal = kernel_words.iter().all(|u| {
            let dot: u32 = u.iter().zip(&w).map(|(&a, &b)| (a * b) as u32).sum();
            dot % 3 == 0
        });
        if orthogonal {
            brute_dual.insert(w.clone());
        }
        let mut i = 0;
        loop {
            if i == len {
                break;
            }
            w[i] += 1;
            if w[i] < 3 {
                break;
            }
            w[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    KernelData {
        word_count: kernel_words.len() as u64,
        weight_counts,
        delsarte_consistent: brute_dual == expected,
    }
}

/// Checks the six block relations of an orthogonal matrix partitioned as
/// [[A, B, e], [C, D, f], [g, h, i]] with n×n corners:
/// ᵗAC+ᵗCA+ᵗgg = 0, ᵗBD+ᵗDB+ᵗhh = 0, ᵗAD+ᵗCB+ᵗgh = 1,
/// ᵗef+ᵗfe+i² = 1, ᵗAf+ᵗCe+ᵗg·i = 0, ᵗBf+ᵗDe+ᵗh·i = 0.
pub fn block_relations_hold(t: &FieldTable, w: &MatrixGF) -> bool {
    let n = (w.dim - 1) / 2;
    let sub = |r0: usize, c0: usize, rows: usize, cols: usize| -> Vec<Vec<FieldElement>> {
        (0..rows).map(|i| (0..cols).map(|j| w.get(r0 + i, c0 + j)).collect()).collect()
    };
    let a = sub(0, 0, n, n);
    let b = sub(0, n, n, n);
    let e = sub(0, 2 * n, n, 1);
    let c = sub(n, 0, n, n);
    let d = sub(n, n, n, n);
    let f = sub(n, 2 * n, n, 1);
    let g = sub(2 * n, 0, 1, n);
    let h = sub(2 * n, n, 1, n);
    let ii = w.get(2 * n, 2 * n);

    let mt = |m: &Vec<Vec<FieldElement>>| -> Vec<Vec<FieldElement>> {
        if m.is_empty() || m[0].is_empty() {
            return vec![];
        }
        (0..m[0].len()).map(|j| (0..m.len()).map(|i| m[i][j]).collect()).collect()
    };
    let mmul = |x: &Vec<Vec<FieldElement>>, y: &Vec<Vec<FieldElement>>| -> Vec<Vec<FieldElement>> {
        let rows = x.len();
        let inner = y.len();
        let cols = if inner == 0 { 0 } else { y[0].len() };
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let mut s = FieldElement::ZERO;
                        for k in 0..inner {
                            s = t.add(s, t.mul(x[i][k], y[k][j]));
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    };
    let madd = |x: &Vec<Vec<FieldElement>>, y: &Vec<Vec<FieldElement>>| -> Vec<Vec<FieldElement>> {
        x.iter()
            .zip(y)
            .map(|(rx, ry)| rx.iter().zip(ry).map(|(&u, &v)| t.add(u, v)).collect())
            .collect()
    };
    let is_zero = |m: &Vec<Vec<FieldElement>>| m.iter().flatten().all(|x| x.is_zero());
    let is_id = |m: &Vec<Vec<FieldElement>>| {
        m.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &x)| {
                if i == j { x == FieldElement::ONE } else { x.is_zero() }
            })
        })
    };

    let r1 = madd(&madd(&mmul(&mt(&a), &c), &mmul(&mt(&c), &a)), &mmul(&mt(&g), &g));
    let r2 = madd(&madd(&mmul(&mt(&b), &d), &mmul(&mt(&d), &b)), &mmul(&mt(&h), &h));
    let r3 = madd(&madd(&mmul(&mt(&a), &d), &mmul(&mt(&c), &b)), &mmul(&mt(&g), &h));
    let r4 = {
        let ef = mmul(&mt(&e), &f);
        let fe = mmul(&mt(&f), &e);
        t.add(t.add(ef[0][0], fe[0][0]), t.mul(ii, ii)) == FieldElement::ONE
    };
    let gi: Vec<Vec<FieldElement>> = mt(&g).iter().map(|row| vec![t.mul(row[0], ii)]).collect();
    let hi: Vec<Vec<FieldElement>> = mt(&h).iter().map(|row| vec![t.mul(row[0], ii)]).collect();
    let r5 = madd(&madd(&mmul(&mt(&a), &f), &mmul(&mt(&c), &e)), &gi);
    let r6 = madd(&madd(&mmul(&mt(&b), &f), &mmul(&mt(&d), &e)), &hi);

    is_zero(&r1) && is_zero(&r2) && is_id(&r3) && r4 && is_zero(&r5) && is_zero(&r6)
}
