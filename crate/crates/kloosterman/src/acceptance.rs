//! The exact-identity acceptance suite: every check the artifact must pass,
//! runnable both from the `acceptance` integration test and from the CLI's
//! `verify all`. All comparisons are exact; there are no tolerances anywhere.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::char_sums::{
    a_r_bruteforce, a_r_formula, char_delta_identity, coset_exp_sum_closed_form, delta1_via_squares,
    delta_table, incomplete_moment_identity, kloosterman, salie_check,
};
use crate::combinat::{bruhat_sizes, CosetFamily, Sign};
use crate::error::Result;
use crate::field::FieldTable;
use crate::oracle::{build_q, coset_exp_sum, enumerate_double_coset, enumerate_o3, explicit_code};
use crate::recursion::{pless_check, sk_identity, t12sk_chain_minus, t12sk_chain_plus, LowerOrder};
use crate::weight_dist::{cell_profile, dual_distribution, dual_weight, weight_counts, CodeSpec};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = std::result::Result<String, String>;

fn field(r: u32) -> Result<FieldTable> {
    FieldTable::new(r, None)
}

fn criterion_1_odd_recursion() -> Check {
    let mut steps = 0;
    for r in [1u32, 2, 3] {
        let t = field(r).map_err(|e| e.to_string())?;
        for n in [1u32, 3] {
            for i in [1u8, 2] {
                let reports =
                    t12sk_chain_minus(&t, n, i, 6, LowerOrder::Solved).map_err(|e| e.to_string())?;
                for rep in reports {
                    if !rep.matched {
                        return Err(format!(
                            "q={} n={n} i={i} h={}: solved {} but direct moment is {}",
                            t.q(),
                            rep.h,
                            rep.t12sk_solved,
                            rep.t12sk_direct
                        ));
                    }
                    steps += 1;
                }
            }
        }
    }
    Ok(format!("{steps} odd-family recursion steps matched the direct moments exactly"))
}

fn criterion_2_even_recursion() -> Check {
    let mut steps = 0;
    for r in [1u32, 2] {
        let t = field(r).map_err(|e| e.to_string())?;
        for n in [2u32, 4] {
            for i in [1u8, 2] {
                let reports =
                    t12sk_chain_plus(&t, n, i, 4, LowerOrder::Solved).map_err(|e| e.to_string())?;
                for rep in reports {
                    if !rep.matched {
                        return Err(format!(
                            "q={} n={n} i={i} h={}: solved {} but direct moment is {}",
                            t.q(),
                            rep.h,
                            rep.t12sk_solved,
                            rep.t12sk_direct
                        ));
                    }
                    steps += 1;
                }
            }
        }
    }
    Ok(format!("{steps} even-family recursion steps matched the direct moments exactly"))
}

fn criterion_3_sk_identities() -> Check {
    let mut steps = 0;
    for r in [1u32, 2] {
        let t = field(r).map_err(|e| e.to_string())?;
        for (sign, ns) in [(Sign::Minus, vec![1u32, 3]), (Sign::Plus, vec![2u32])] {
            for n in ns {
                for h in 1..=4 {
                    let rep = sk_identity(&t, sign, n, h).map_err(|e| e.to_string())?;
                    if !rep.matched {
                        return Err(format!(
                            "{sign} n={n} q={} h={h}: lhs {} != rhs {}",
                            t.q(),
                            rep.lhs,
                            rep.rhs
                        ));
                    }
                    steps += 1;
                }
            }
        }
    }
    Ok(format!("{steps} square-moment identities held exactly"))
}

fn criterion_4_oracle_suite() -> Check {
    let t3 = field(1).map_err(|e| e.to_string())?;
    let t9 = field(2).map_err(|e| e.to_string())?;

    let q33 = build_q(&t3, 1).map_err(|e| e.to_string())?;
    if q33.len() != 6 {
        return Err(format!("|Q(3,3)| = {} != 6", q33.len()));
    }
    let o33 = enumerate_o3(&t3).map_err(|e| e.to_string())?;
    if o33.len() != 48 {
        return Err(format!("|O(3,3)| = {} != 48", o33.len()));
    }
    let q53 = build_q(&t3, 2).map_err(|e| e.to_string())?;
    if q53.len() != 1296 {
        return Err(format!("|Q(5,3)| = {} != 1296", q53.len()));
    }

    let o39 = enumerate_o3(&t9).map_err(|e| e.to_string())?;
    let expected: BigInt = (0..=1u32)
        .map(|r| BigInt::from(2) * bruhat_sizes(1, &BigInt::from(9), r).unwrap().1)
        .sum();
    if BigInt::from(o39.len()) != expected {
        return Err(format!("|O(3,9)| = {} != {expected}", o39.len()));
    }

    let mut checked = 0;
    for (sign, n, t) in [(Sign::Minus, 1u32, &t3), (Sign::Minus, 1, &t9), (Sign::Plus, 2, &t3)] {
        for i in [1u8, 2] {
            let fam = CosetFamily::new(sign, n, i).map_err(|e| e.to_string())?;
            let e = enumerate_double_coset(t, fam).map_err(|e| e.to_string())?;
            let profile = cell_profile(t, &CodeSpec::Orthogonal(fam)).map_err(|e| e.to_string())?;
            for beta in t.elements() {
                if BigInt::from(e.histogram[beta.index()]) != profile.sizes[beta.index()] {
                    return Err(format!(
                        "{sign} n={n} i={i} q={}: histogram[{}] = {} != closed form {}",
                        t.q(),
                        beta.index(),
                        e.histogram[beta.index()],
                        profile.sizes[beta.index()]
                    ));
                }
            }
            for a in t.nonzero_elements() {
                let termwise = coset_exp_sum(t, &e, a).map_err(|e| e.to_string())?;
                let closed = coset_exp_sum_closed_form(t, &fam, a).map_err(|e| e.to_string())?;
                if termwise != closed {
                    return Err(format!(
                        "{sign} n={n} i={i} q={} a={}: exp sum {termwise} != closed form {closed}",
                        t.q(),
                        a.index()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "group orders 6/48/1296 and |O(3,9)|={} verified; all histograms cell-exact; {checked} exponential sums matched",
        o39.len()
    ))
}

fn criterion_5_code_ground_truth() -> Check {
    let t = field(1).map_err(|e| e.to_string())?;
    for i in [1u8, 2] {
        let fam = CosetFamily::new(Sign::Minus, 1, i).map_err(|e| e.to_string())?;
        let code = explicit_code(&t, fam).map_err(|e| e.to_string())?;
        let kernel = code.kernel.as_ref().ok_or("kernel enumeration missing")?;
        let closed = weight_counts(
            &t,
            &cell_profile(&t, &CodeSpec::Orthogonal(fam)).map_err(|e| e.to_string())?,
            6,
        )
        .map_err(|e| e.to_string())?;
        for j in 0..=6usize {
            if BigInt::from(kernel.weight_counts[j]) != closed.get(j) {
                return Err(format!(
                    "i={i} j={j}: brute-force count {} != closed form {}",
                    kernel.weight_counts[j],
                    closed.get(j)
                ));
            }
        }
        if !kernel.delsarte_consistent {
            return Err(format!("i={i}: dual of kernel code != trace-lift words"));
        }

        let expected_w = dual_weight(&t, &fam, t.elem(1)).map_err(|e| e.to_string())?;
        let w = expected_w.to_usize().unwrap();
        let expected_hist = BTreeMap::from([(0usize, 1u64), (w, 2u64)]);
        if code.dual_histogram != expected_hist {
            return Err(format!("i={i}: dual histogram {:?} != {expected_hist:?}", code.dual_histogram));
        }
        let dual_dist = dual_distribution(&t, &fam).map_err(|e| e.to_string())?;
        if dual_dist != BTreeMap::from([(BigInt::from(0), 1u64), (expected_w.clone(), 2u64)]) {
            return Err(format!("i={i}: closed-form dual distribution mismatch"));
        }

        // Pless identity on the explicit pair, in both orientations
        let code_weights: BTreeMap<usize, BigInt> = kernel
            .weight_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (j, BigInt::from(c)))
            .collect();
        let dual_weights: BTreeMap<usize, BigInt> =
            code.dual_histogram.iter().map(|(&j, &c)| (j, BigInt::from(c))).collect();
        for h in 0..=4 {
            if !pless_check(&dual_weights, &code_weights, 1, 6, h, 3).map_err(|e| e.to_string())? {
                return Err(format!("i={i} h={h}: power moment identity failed (dual side)"));
            }
            if !pless_check(&code_weights, &dual_weights, 5, 6, h, 3).map_err(|e| e.to_string())? {
                return Err(format!("i={i} h={h}: power moment identity failed (code side)"));
            }
        }
    }
    Ok("243-word kernel codes, dual distributions and power moment identities all exact".to_string())
}

fn criterion_6_char_sum_identities() -> Check {
    let mut checked = 0;
    for r in [1u32, 2, 3] {
        let t = field(r).map_err(|e| e.to_string())?;
        for m in 0..=4 {
            for beta in t.elements() {
                if !incomplete_moment_identity(&t, m, beta).map_err(|e| e.to_string())? {
                    return Err(format!("incomplete moment identity failed at q={} m={m} beta={}", t.q(), beta.index()));
                }
                checked += 1;
            }
            for a in t.nonzero_elements() {
                if !char_delta_identity(&t, m, a).map_err(|e| e.to_string())? {
                    return Err(format!("character-delta identity failed at q={} m={m} a={}", t.q(), a.index()));
                }
                checked += 1;
            }
        }
    }
    for r in 1..=5u32 {
        let t = field(r).map_err(|e| e.to_string())?;
        let d1 = delta_table(&t, 1).map_err(|e| e.to_string())?;
        for beta in t.elements() {
            if BigInt::from(delta1_via_squares(&t, beta)) != *d1.get(beta) {
                return Err(format!("square classification of delta(1,q) failed at q={} beta={}", t.q(), beta.index()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} character-sum identity instances held exactly"))
}

fn criterion_7_salie() -> Check {
    for r in [1u32, 2, 3] {
        let t = field(r).map_err(|e| e.to_string())?;
        for h in 1..=5 {
            if !salie_check(&t, h).map_err(|e| e.to_string())? {
                return Err(format!("moment recursion failed at q={} h={h}", t.q()));
            }
        }
    }
    Ok("complete-moment recursion held for h=1..=5 over q=3,9,27".to_string())
}

fn criterion_8_a_r() -> Check {
    for r in [1u32, 2] {
        let t = field(r).map_err(|e| e.to_string())?;
        let brute1 = a_r_bruteforce(&t, 1).map_err(|e| e.to_string())?;
        if brute1 != BigInt::from(0) || a_r_formula(&t, 1).unwrap() != BigInt::from(0) {
            return Err(format!("a_1 != 0 at q={}", t.q()));
        }
        let brute2 = a_r_bruteforce(&t, 2).map_err(|e| e.to_string())?;
        let formula2 = a_r_formula(&t, 2).map_err(|e| e.to_string())?;
        if brute2 != formula2 {
            return Err(format!("a_2 mismatch at q={}: enumeration {brute2} vs formula {formula2}", t.q()));
        }
    }
    Ok("symmetric-matrix character sums: formula = enumeration for r=1,2 over q=3,9".to_string())
}

fn criterion_9_weil_bound() -> Check {
    let mut checked = 0;
    for r in 1..=5u32 {
        let t = field(r).map_err(|e| e.to_string())?;
        let four_q = BigInt::from(4 * t.q());
        for a in t.nonzero_elements() {
            let k = kloosterman(&t, a).map_err(|e| e.to_string())?;
            if &k * &k > four_q {
                return Err(format!("Weil bound violated at q={} a={}: K={k}", t.q(), a.index()));
            }
            checked += 1;
        }
    }
    Ok(format!("K(λ;a)² ≤ 4q for all {checked} arguments over q=3..243"))
}

fn criterion_10_dual_injectivity() -> Check {
    let t3 = field(1).map_err(|e| e.to_string())?;
    let t9 = field(2).map_err(|e| e.to_string())?;
    for (sign, n, t) in [(Sign::Minus, 1u32, &t3), (Sign::Minus, 1, &t9), (Sign::Plus, 2, &t3)] {
        for i in [1u8, 2] {
            let fam = CosetFamily::new(sign, n, i).map_err(|e| e.to_string())?;
            let code = explicit_code(t, fam).map_err(|e| e.to_string())?;
            if !code.dual_distinct {
                return Err(format!("{sign} n={n} i={i} q={}: trace lift is not injective", t.q()));
            }
        }
    }
    Ok("q distinct dual codewords at every oracle scale".to_string())
}

/// Runs the complete acceptance suite, in criterion order. Criteria are
/// independent and evaluated in parallel; the report order is fixed.
pub fn run_all() -> Vec<CriterionResult> {
    let criteria: Vec<(u32, &str, fn() -> Check)> = vec![
        (1, "odd-family moment recursion (n=1,3; q=3,9,27; h=1..6)", criterion_1_odd_recursion),
        (2, "even-family moment recursion (n=2,4; q=3,9; h=1..4)", criterion_2_even_recursion),
        (3, "square-moment identities (minus n=1,3; plus n=2; q=3,9; h=1..4)", criterion_3_sk_identities),
        (4, "group oracle: orders, trace histograms, exponential sums", criterion_4_oracle_suite),
        (5, "explicit 243-word codes: weights, duals, power moment identity", criterion_5_code_ground_truth),
        (6, "incomplete-moment and character-delta identities (m=0..4)", criterion_6_char_sum_identities),
        (7, "complete-moment recursion with convolution oracle (h=1..5)", criterion_7_salie),
        (8, "symmetric-matrix character sums: formula vs enumeration", criterion_8_a_r),
        (9, "Weil bound over q=3..243", criterion_9_weil_bound),
        (10, "dual-code injectivity at oracle scales", criterion_10_dual_injectivity),
    ];
    criteria
        .into_par_iter()
        .map(|(id, name, run)| {
            let start = Instant::now();
            let outcome = run();
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CriterionResult { id, name: name.to_string(), passed: true, detail, millis },
                Err(detail) => CriterionResult { id, name: name.to_string(), passed: false, detail, millis },
            }
        })
        .collect()
}
