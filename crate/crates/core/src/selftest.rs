//! The oracle suites behind `pierce selftest`: exhaustive and sampled checks
//! of the sumset machinery, the conic collinearity bridge, and the curve
//! group law. Exit contract: pass only with zero counterexamples, and every
//! counterexample comes with a minimal reproducer.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::conic::{gt_collinear_check, ConicKind, GtElement, TanAngle};
use crate::cubic::WeierstrassCurve;
use crate::field::{rat, FpElem, Rat};
use crate::group::oracle::{self, OracleReport};
use crate::plane::collinear;

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    pub lev_bound: u32,
    pub lemma_bound: u32,
    pub gt_samples: u32,
    /// Negate the geometric determinant in the bridge suite: the suite must
    /// then fail, proving it can catch a broken implementation.
    pub inject_mutant: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { lev_bound: 18, lemma_bound: 12, gt_samples: 1000, inject_mutant: false }
    }
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub suites: Vec<OracleReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(OracleReport::passed)
    }
}

pub fn run(opts: &SelftestOptions) -> SelftestReport {
    let mut suites = Vec::new();
    suites.push(oracle::lev_exhaustive(opts.lev_bound));
    suites.push(oracle::lev_sampled(opts.lev_bound + 1, 40, 400, 0xA11CE));
    suites.push(oracle::lemma_ab_exhaustive(opts.lemma_bound));
    suites.push(oracle::mask_vs_sets(16, 400, 0xB0B));
    suites.push(gt_bridge_suite(opts.gt_samples, 0xC0FFEE, opts.inject_mutant));
    suites.push(ec_suite());
    SelftestReport { suites }
}

fn sample_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.gen_range(-12i64..=12);
    let d = rng.gen_range(1i64..=8);
    rat(n, d)
}

fn sample_elem(rng: &mut ChaCha8Rng, kind: ConicKind) -> GtElement {
    match kind {
        ConicKind::Parabola => GtElement::Parabola(sample_rat(rng)),
        ConicKind::Hyperbola => loop {
            let s = sample_rat(rng);
            if let Ok(e) = GtElement::hyperbola(s) {
                return e;
            }
        },
        ConicKind::Ellipse => {
            if rng.gen_ratio(1, 20) {
                GtElement::Ellipse(TanAngle::Inf)
            } else {
                GtElement::Ellipse(TanAngle::Fin(sample_rat(rng)))
            }
        }
    }
}

/// Seeded random triples per conic kind; the group-zero and geometric
/// verdicts must agree exactly. Half the triples are built to close to the
/// identity so both verdict polarities are exercised.
fn gt_bridge_suite(samples: u32, seed: u64, inject_mutant: bool) -> OracleReport {
    let mut report = OracleReport {
        name: format!(
            "conic collinearity bridge, {samples} seeded samples per kind{}",
            if inject_mutant { " (mutant injected)" } else { "" }
        ),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for kind in [ConicKind::Ellipse, ConicKind::Parabola, ConicKind::Hyperbola] {
        let mut done = 0;
        while done < samples {
            let x = sample_elem(&mut rng, kind);
            let y = sample_elem(&mut rng, kind);
            if x == y {
                continue;
            }
            let z = if done % 2 == 0 {
                x.compose(&y).expect("same kind").inverse()
            } else {
                sample_elem(&mut rng, kind)
            };
            done += 1;
            report.cases += 1;
            let (group_zero, mut geometric) =
                gt_collinear_check(&x, &y, &z).expect("valid sample triple");
            if inject_mutant {
                geometric = !geometric;
            }
            if group_zero == geometric {
                report.asserted += 1;
            } else {
                report.counterexamples.push(format!(
                    "{} x={x:?} y={y:?} z={z:?}: group={group_zero} geometric={geometric}",
                    kind.tag()
                ));
                if report.counterexamples.len() >= 5 {
                    return report;
                }
            }
        }
    }
    report
}

/// Exhaustive associativity, collinearity-bridge and tangent-count checks
/// over two small curves.
fn ec_suite() -> OracleReport {
    let mut report = OracleReport {
        name: "curve group law, exhaustive over two small prime-field curves".into(),
        cases: 0,
        asserted: 0,
        counterexamples: Vec::new(),
    };
    let curves = [
        WeierstrassCurve::new(FpElem::new(7, 0), FpElem::new(7, 1)).expect("nonsingular"),
        WeierstrassCurve::new(FpElem::new(5, -1), FpElem::new(5, 0)).expect("nonsingular"),
    ];
    for curve in &curves {
        let pts = curve.enumerate_points().expect("small prime");
        for p in &pts {
            for q in &pts {
                for r in &pts {
                    report.cases += 1;
                    let left = curve.add(&curve.add(p, q).unwrap(), r).unwrap();
                    let right = curve.add(p, &curve.add(q, r).unwrap()).unwrap();
                    if left == right {
                        report.asserted += 1;
                    } else {
                        report
                            .counterexamples
                            .push(format!("associativity: {p} {q} {r}"));
                    }
                }
            }
            // chord through p and q, third point, planar collinearity
            for q in &pts {
                if p == q {
                    continue;
                }
                report.cases += 1;
                let third = curve.chord_third(p, q).unwrap();
                let ok = collinear(&curve.to_proj(p), &curve.to_proj(q), &curve.to_proj(&third))
                    .unwrap();
                if ok {
                    report.asserted += 1;
                } else {
                    report
                        .counterexamples
                        .push(format!("collinearity bridge: {p} {q} {third}"));
                }
            }
            report.cases += 1;
            let tangents = curve.tangent_count_through(&curve.to_proj(p)).unwrap();
            if tangents <= 6 {
                report.asserted += 1;
            } else {
                report
                    .counterexamples
                    .push(format!("tangent count {tangents} through {p}"));
            }
        }
    }
    report
}
