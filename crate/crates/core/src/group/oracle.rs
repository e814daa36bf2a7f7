//! Exhaustive and sampled oracles for the two additive-combinatorics
//! statements the analyzer leans on. Each oracle reports the number of cases
//! it decided and a minimal reproducer for every counterexample (expected:
//! none). The fast route is bitmask enumeration; a seeded sample of cases is
//! re-checked through the `GroupSet` route so the two implementations police
//! each other.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::finab::FinAbGroup;
use super::mask;
use super::{check_lemma_ab, check_lev_conclusion, lev_hypothesis_holds, stabilizer, GroupSet,
            LemmaAbVerdict};

/// Outcome of an oracle sweep.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub name: String,
    pub cases: u64,
    /// Cases where the hypothesis held and the conclusion was asserted.
    pub asserted: u64,
    pub counterexamples: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every A ⊆ Z_k (2 <= |A|, 1 <= k <= k_max): whenever the golden-ratio
/// hypothesis holds, A +. A must equal A + A.
pub fn lev_exhaustive(k_max: u32) -> OracleReport {
    let mut report = OracleReport {
        name: format!("restricted-sumset criterion, exhaustive over Z_k, k <= {k_max}"),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    for k in 1..=k_max {
        let l = mask::doubling(k);
        for a in 0u64..(1u64 << k) {
            if a.count_ones() < 2 {
                continue;
            }
            report.cases += 1;
            let s = mask::restricted_sumset(a, k);
            if mask::lev_hypothesis(s.count_ones() as u64, a.count_ones() as u64, l) {
                report.asserted += 1;
                let full = mask::sumset(a, a, k);
                if s != full {
                    report.counterexamples.push(format!("k={k} A={a:#b}"));
                }
            }
        }
    }
    report
}

/// Seeded random subsets of Z_k for larger k.
pub fn lev_sampled(k_lo: u32, k_hi: u32, per_k: u32, seed: u64) -> OracleReport {
    let mut report = OracleReport {
        name: format!("restricted-sumset criterion, sampled over Z_k, {k_lo} <= k <= {k_hi}"),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in k_lo..=k_hi.min(63) {
        let l = mask::doubling(k);
        for _ in 0..per_k {
            let a = rng.gen::<u64>() & ((1u64 << k) - 1);
            if a.count_ones() < 2 {
                continue;
            }
            report.cases += 1;
            let s = mask::restricted_sumset(a, k);
            if mask::lev_hypothesis(s.count_ones() as u64, a.count_ones() as u64, l) {
                report.asserted += 1;
                if s != mask::sumset(a, a, k) {
                    report.counterexamples.push(format!("k={k} A={a:#b}"));
                }
            }
        }
    }
    report
}

/// For every pair A1, A2 ⊆ Z_k (k <= k_max) meeting the size hypotheses
/// |A1| >= |A2| >= (3/4)|A1| and |A1+A2| < (3/2)|A1|: the sumset must be a
/// single coset of its stabilizer and each Ai must lie in one coset of it.
pub fn lemma_ab_exhaustive(k_max: u32) -> OracleReport {
    let mut report = OracleReport {
        name: format!("sumset-coset lemma, exhaustive over Z_k, k <= {k_max}"),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    for k in 1..=k_max {
        let full = 1u64 << k;
        // bucket subsets by size so the size filter prunes pairs up front
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); k as usize + 1];
        for a in 1..full {
            by_size[a.count_ones() as usize].push(a);
        }
        for n1 in 1..=k as usize {
            for n2 in (3 * n1).div_ceil(4)..=n1 {
                for &a1 in &by_size[n1] {
                    for &a2 in &by_size[n2] {
                        report.cases += 1;
                        let s = mask::sumset(a1, a2, k);
                        if 2 * s.count_ones() as usize >= 3 * n1 {
                            continue;
                        }
                        report.asserted += 1;
                        if let Some(detail) = lemma_ab_mask_violation(a1, a2, s, k) {
                            report
                                .counterexamples
                                .push(format!("k={k} A1={a1:#b} A2={a2:#b}: {detail}"));
                        }
                    }
                }
            }
        }
    }
    report
}

fn lemma_ab_mask_violation(a1: u64, a2: u64, s: u64, k: u32) -> Option<String> {
    let h = mask::stabilizer(s, k);
    if s.count_ones() != h.count_ones() {
        return Some("sumset is not a single stabilizer coset".into());
    }
    let s0 = s.trailing_zeros();
    if mask::rotate(h, s0, k) != s {
        return Some("sumset is not offset+H".into());
    }
    for (name, a) in [("A1", a1), ("A2", a2)] {
        let a0 = a.trailing_zeros();
        // shift A by -a0 and check containment in H
        let shifted = mask::rotate(a, k - a0 % k, k);
        if shifted & !h != 0 {
            return Some(format!("{name} is not inside one coset of H"));
        }
    }
    None
}

/// Seeded cross-check: the bitmask route and the GroupSet route must agree
/// on sumsets, restricted sumsets, stabilizers and both gate verdicts.
pub fn mask_vs_sets(k_max: u32, samples: u32, seed: u64) -> OracleReport {
    let mut report = OracleReport {
        name: format!("bitmask route vs set route, sampled, k <= {k_max}"),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let k = rng.gen_range(2..=k_max.min(20));
        let full = (1u64 << k) - 1;
        let a1 = rng.gen::<u64>() & full;
        let a2 = rng.gen::<u64>() & full;
        if a1.count_ones() < 2 || a2.count_ones() < 1 {
            continue;
        }
        report.cases += 1;
        let g = FinAbGroup::cyclic(k as u64);
        let to_set = |m: u64| {
            GroupSet::new(
                g.clone(),
                (0..k as u64).filter(|i| m >> i & 1 == 1).map(|i| g.elem(&[i])),
            )
            .expect("in-range residues")
        };
        let to_mask = |s: &GroupSet<FinAbGroup>| -> u64 {
            s.iter().fold(0u64, |m, e| m | 1 << e.residues()[0])
        };
        let s1 = to_set(a1);
        let s2 = to_set(a2);

        let mut problems: Vec<&str> = Vec::new();
        if to_mask(&s1.sumset(&s2).unwrap()) != mask::sumset(a1, a2, k) {
            problems.push("sumset");
        }
        if to_mask(&s1.restricted_sumset().unwrap()) != mask::restricted_sumset(a1, k) {
            problems.push("restricted sumset");
        }
        let stab_mask = {
            let h = stabilizer(&s1).unwrap();
            h.iter().fold(0u64, |m, e| m | 1 << e.residues()[0])
        };
        if stab_mask != mask::stabilizer(a1, k) {
            problems.push("stabilizer");
        }
        let lev_set = lev_hypothesis_holds(&s1).unwrap();
        let lev_bits = mask::lev_hypothesis(
            mask::restricted_sumset(a1, k).count_ones() as u64,
            a1.count_ones() as u64,
            mask::doubling(k),
        );
        if lev_set != lev_bits {
            problems.push("hypothesis verdict");
        }
        if lev_set && !check_lev_conclusion(&s1).unwrap() {
            problems.push("conclusion");
        }
        // lemma verdict equivalence on the "asserted" side
        let set_verdict = check_lemma_ab(&s1, &s2).unwrap();
        let n1 = a1.count_ones() as usize;
        let n2 = a2.count_ones() as usize;
        let sum = mask::sumset(a1, a2, k);
        let bits_applicable =
            n1 >= n2 && 4 * n2 >= 3 * n1 && 2 * (sum.count_ones() as usize) < 3 * n1;
        match (&set_verdict, bits_applicable) {
            (LemmaAbVerdict::Holds { .. }, true) => {
                report.asserted += 1;
                if lemma_ab_mask_violation(a1, a2, sum, k).is_some() {
                    problems.push("lemma conclusion");
                }
            }
            (LemmaAbVerdict::HypothesisNotMet { .. }, false) => {}
            _ => problems.push("lemma applicability"),
        }
        for what in problems {
            report
                .counterexamples
                .push(format!("k={k} A1={a1:#b} A2={a2:#b}: {what} disagrees"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lev_small_exhaustive_clean() {
        let r = lev_exhaustive(10);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.cases > 0 && r.asserted > 0);
    }

    #[test]
    fn lemma_small_exhaustive_clean() {
        let r = lemma_ab_exhaustive(8);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.asserted > 0);
    }

    #[test]
    fn routes_agree() {
        let r = mask_vs_sets(12, 300, 7);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.cases > 100);
    }
}
