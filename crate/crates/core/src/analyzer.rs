//! Structure recovery for pierced configurations, run at the group level:
//! piercing verdicts, the ratio and restricted-sumset gates, coset recovery,
//! direction censuses, and an exact minimum-piercing search for tiny planar
//! instances.
//!
//! The pipelines never assume a hypothesis: every gate is evaluated and its
//! outcome recorded in the report diagnostics, because the extremal
//! constructions sit exactly on the gate boundaries and must be diagnosed
//! rather than mis-asserted. Subgroup recovery itself (the subgroup generated
//! by differences) does not depend on the gates, so round-tripping a coset
//! instance recovers its subgroup even when the instance is too small for
//! the sumset machinery.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::conic::{finite_subgroup_obstruction, ConicKind, SubgroupBound};
use crate::field::Rat;
use crate::group::angle::AngleElem;
use crate::group::{
    check_lemma_ab, lev_hypothesis_holds, minimal_containing_coset, AbelianGroup, GroupSet,
    LemmaAbVerdict, MinimalCoset, Subgroup, DEFAULT_CLOSURE_CAP,
};
use crate::plane::{determined_lines, is_general_position, meet, ProjPoint};
use crate::{Error, Result};

/// Recovered subgroup, serialized with its elements for small groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub elements: Vec<String>,
}

/// Analyzer output. Field meanings:
///
/// * `pierced` — group-level piercing: every relevant pair sum lies in -R.
/// * `ratio_gate` — |R| < (3/2) n.
/// * `restricted_size` — |P +. P| (unipartite) or |B + G| (bipartite).
/// * `lev_applicable` — the golden-ratio hypothesis verdict (unipartite
///   pipeline only; absent for bipartite).
/// * `restricted_equals_full` — whether P +. P = P + P (absent when not
///   computed).
/// * `h`, `coset_offset` — the recovered subgroup with every analyzed point
///   inside `coset_offset + H`; absent when the difference set generates an
///   infinite subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub pierced: bool,
    pub n: usize,
    pub r_size: usize,
    pub ratio_gate: bool,
    pub restricted_size: usize,
    pub lev_applicable: Option<bool>,
    pub restricted_equals_full: Option<bool>,
    pub h: Option<SubgroupSummary>,
    pub coset_offset: Option<String>,
    pub h_size_le_r: Option<bool>,
    pub diagnostics: Vec<String>,
}

fn summarize<G: AbelianGroup>(h: &Subgroup<G>) -> SubgroupSummary {
    SubgroupSummary {
        order: h.order(),
        elements: h.iter().map(|e| e.to_string()).collect(),
    }
}

/// Run the unipartite pipeline: P +. P against -R, the ratio and
/// restricted-sumset gates, then coset recovery from differences.
pub fn analyze_unipartite<G: AbelianGroup>(
    p: &GroupSet<G>,
    r: &GroupSet<G>,
) -> Result<StructureReport> {
    if p.len() < 2 {
        return Err(Error::Degenerate("analysis needs at least two points".into()));
    }
    let mut diagnostics = Vec::new();
    let restricted = p.restricted_sumset()?;
    let neg_r = r.negated();
    let pierced = restricted.is_subset(&neg_r);
    if !pierced {
        if let Some(miss) = restricted.iter().find(|s| !neg_r.contains(s)) {
            diagnostics.push(format!("unpierced pair sum {miss}"));
        }
    }
    let n = p.len();
    let r_size = r.len();
    let ratio_gate = 2 * r_size < 3 * n;
    if !ratio_gate {
        diagnostics.push(format!("ratio gate fails: 2|R| = {} >= 3n = {}", 2 * r_size, 3 * n));
    }
    let lev = lev_hypothesis_holds(p)?;
    let full = p.sumset(p)?;
    let restricted_equals_full = restricted == full;
    if lev {
        assert!(
            restricted_equals_full,
            "restricted-sumset criterion violated: the hypothesis held but P+.P != P+P"
        );
    } else {
        diagnostics.push(format!(
            "restricted-sumset gate fails: |P+.P| = {} exceeds the golden-ratio bound for n = {n}, L = {}",
            restricted.len(),
            p.group().doubling_constant()
        ));
    }
    match check_lemma_ab(p, p)? {
        LemmaAbVerdict::Holds { stabilizer, .. } => {
            diagnostics.push(format!(
                "sumset-coset lemma holds with stabilizer of order {}",
                stabilizer.order()
            ));
        }
        LemmaAbVerdict::HypothesisNotMet { reason } => {
            diagnostics.push(format!("sumset-coset lemma inapplicable: {reason}"));
        }
        LemmaAbVerdict::Counterexample { detail } => {
            panic!("sumset-coset lemma violated: {detail}");
        }
    }
    let (h, coset_offset, h_size_le_r) = recover_coset(p, r_size, &mut diagnostics)?;
    Ok(StructureReport {
        pierced,
        n,
        r_size,
        ratio_gate,
        restricted_size: restricted.len(),
        lev_applicable: Some(lev),
        restricted_equals_full: Some(restricted_equals_full),
        h,
        coset_offset,
        h_size_le_r,
        diagnostics,
    })
}

fn recover_coset<G: AbelianGroup>(
    pts: &GroupSet<G>,
    r_size: usize,
    diagnostics: &mut Vec<String>,
) -> Result<(Option<SubgroupSummary>, Option<String>, Option<bool>)> {
    match minimal_containing_coset(pts, DEFAULT_CLOSURE_CAP)? {
        MinimalCoset::Finite { subgroup, offset } => {
            assert!(
                subgroup.coset_contains_all(pts.group(), &offset, pts.iter()),
                "recovered coset fails membership re-verification"
            );
            let le = subgroup.order() <= r_size;
            if !le {
                diagnostics.push(format!(
                    "recovered subgroup order {} exceeds |R| = {r_size}",
                    subgroup.order()
                ));
            }
            Ok((Some(summarize(&subgroup)), Some(offset.to_string()), Some(le)))
        }
        MinimalCoset::Infinite => {
            diagnostics.push("minimal containing coset: infinite".into());
            Ok((None, None, None))
        }
    }
}

/// Run the bipartite pipeline: B + G against -R, the ratio gate, the
/// sumset-coset lemma with A1 = B, A2 = G, and the short full-coset argument
/// when |R| = n.
pub fn analyze_bipartite<G: AbelianGroup>(
    b: &GroupSet<G>,
    g: &GroupSet<G>,
    r: &GroupSet<G>,
) -> Result<StructureReport> {
    if b.len() != g.len() {
        return Err(Error::Usage(format!(
            "bipartite analysis needs |B| = |G|, got {} and {}",
            b.len(),
            g.len()
        )));
    }
    if b.is_empty() {
        return Err(Error::Degenerate("bipartite analysis of empty sets".into()));
    }
    let mut diagnostics = Vec::new();
    let sum = b.sumset(g)?;
    let neg_r = r.negated();
    let pierced = sum.is_subset(&neg_r);
    if !pierced {
        if let Some(miss) = sum.iter().find(|s| !neg_r.contains(s)) {
            diagnostics.push(format!("unpierced pair sum {miss}"));
        }
    }
    let n = b.len();
    let r_size = r.len();
    let ratio_gate = 2 * r_size < 3 * n;
    if !ratio_gate {
        diagnostics.push(format!("ratio gate fails: 2|R| = {} >= 3n = {}", 2 * r_size, 3 * n));
    }

    let mut h: Option<Subgroup<G>> = None;
    let mut offset: Option<G::Elem> = None;
    match check_lemma_ab(b, g)? {
        LemmaAbVerdict::Holds { stabilizer, a1_offset, .. } => {
            diagnostics.push(format!(
                "sumset-coset lemma holds with stabilizer of order {}",
                stabilizer.order()
            ));
            offset = Some(a1_offset);
            h = Some(stabilizer);
        }
        LemmaAbVerdict::HypothesisNotMet { reason } => {
            diagnostics.push(format!("sumset-coset lemma inapplicable: {reason}"));
        }
        LemmaAbVerdict::Counterexample { detail } => {
            panic!("sumset-coset lemma violated: {detail}");
        }
    }

    if pierced && r_size == n {
        // short argument: with |R| = n the piercing forces -R = B + G, and
        // B' = -B + b0, G' = -G + g0 satisfy B' = G' = B' + G' =: H, making
        // B, G and R full cosets of the subgroup H
        let b0 = b.iter().next().expect("nonempty").clone();
        let g0 = g.iter().next().expect("nonempty").clone();
        let bb = b.negated().translated(&b0);
        let gg = g.negated().translated(&g0);
        let bg = bb.sumset(&gg)?;
        if bb == gg && bb == bg {
            let subgroup = Subgroup::from_elements(b.group(), bb.iter().cloned())?;
            let grp = b.group();
            // R must be the coset H - (b0 + g0)
            let minus = grp.neg(&grp.add(&b0, &g0));
            let expected_r: BTreeSet<G::Elem> =
                subgroup.iter().map(|x| grp.add(x, &minus)).collect();
            if expected_r == *r.elems() {
                diagnostics.push(format!(
                    "|R| = n: B, G and R are full cosets of a subgroup of order {}",
                    subgroup.order()
                ));
                offset = Some(b0);
                h = Some(subgroup);
            } else {
                diagnostics.push("|R| = n but R is not the forced coset".into());
            }
        } else {
            diagnostics.push("|R| = n but the translated sets do not close to a subgroup".into());
        }
    }

    let (h_summary, offset_str, h_le) = match h {
        Some(subgroup) => {
            let off = offset.expect("offset set with subgroup");
            assert!(
                subgroup.coset_contains_all(b.group(), &off, b.iter()),
                "B fails membership in the recovered coset"
            );
            let le = subgroup.order() <= r_size;
            (Some(summarize(&subgroup)), Some(off.to_string()), Some(le))
        }
        None => {
            // record the per-color minimal cosets in the diagnosis
            for (name, set) in [("B", b), ("G", g)] {
                match minimal_containing_coset(set, DEFAULT_CLOSURE_CAP)? {
                    MinimalCoset::Finite { subgroup, .. } => diagnostics.push(format!(
                        "minimal containing coset of {name}: order {}",
                        subgroup.order()
                    )),
                    MinimalCoset::Infinite => {
                        diagnostics.push(format!("minimal containing coset of {name}: infinite"))
                    }
                }
            }
            (None, None, None)
        }
    };

    Ok(StructureReport {
        pierced,
        n,
        r_size,
        ratio_gate,
        restricted_size: sum.len(),
        lev_applicable: None,
        restricted_equals_full: None,
        h: h_summary,
        coset_offset: offset_str,
        h_size_le_r: h_le,
        diagnostics,
    })
}

/// Census of chord direction classes with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionCensus {
    pub classes: BTreeMap<AngleElem, usize>,
}

impl DirectionCensus {
    pub fn distinct_count(&self) -> usize {
        self.classes.len()
    }
}

/// Census over unordered pairs of one set.
pub fn direction_census(s: &BTreeSet<AngleElem>) -> Result<DirectionCensus> {
    if s.len() < 2 {
        return Err(Error::Degenerate("census needs at least two points".into()));
    }
    let v: Vec<&AngleElem> = s.iter().collect();
    let mut classes: BTreeMap<AngleElem, usize> = BTreeMap::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            *classes.entry(v[i].add(v[j])).or_default() += 1;
        }
    }
    Ok(DirectionCensus { classes })
}

/// Census over pairs from two disjoint sets.
pub fn cross_direction_census(
    b: &BTreeSet<AngleElem>,
    g: &BTreeSet<AngleElem>,
) -> Result<DirectionCensus> {
    if b.is_empty() || g.is_empty() {
        return Err(Error::Degenerate("census needs nonempty sets".into()));
    }
    let mut classes: BTreeMap<AngleElem, usize> = BTreeMap::new();
    for x in b {
        for y in g {
            *classes.entry(x.add(y)).or_default() += 1;
        }
    }
    Ok(DirectionCensus { classes })
}

/// Result of the exact minimum-piercing search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinPiercing {
    Exact(usize),
    /// No piercing set within the requested limit.
    ExceedsLimit(usize),
}

/// Cost guard: the search is exponential in the worst case.
pub const MAX_PIERCING_POINTS: usize = 8;

/// Exact minimum size of a piercing set disjoint from `points`, over the
/// rational projective plane.
///
/// Any pierce point covering two or more determined lines is an intersection
/// vertex of the line arrangement, and a line always has fresh rational
/// points available for single-line piercing, so branch and bound over
/// arrangement vertices plus per-line singletons is exhaustive. The counting
/// bound ceil(C(n,2) / floor(n/2)) is asserted on every run.
pub fn min_piercing_number(points: &[ProjPoint<Rat>], limit: usize) -> Result<MinPiercing> {
    if points.len() > MAX_PIERCING_POINTS {
        return Err(Error::Usage(format!(
            "minimum-piercing search is capped at {MAX_PIERCING_POINTS} points"
        )));
    }
    if !is_general_position(points)? {
        return Err(Error::Usage("points must be in general position".into()));
    }
    let lines: Vec<_> = determined_lines(points)?.into_iter().collect();
    let line_count = lines.len();
    assert!(line_count <= 64, "line mask overflow");

    // arrangement vertices off P; each covers every line through it, not
    // just the pair that produced it
    let mut vertices: BTreeSet<ProjPoint<Rat>> = BTreeSet::new();
    for i in 0..line_count {
        for j in i + 1..line_count {
            let v = meet(&lines[i], &lines[j]).expect("distinct lines");
            if !points.contains(&v) {
                vertices.insert(v);
            }
        }
    }
    let mut candidates: Vec<u64> = Vec::new();
    for v in &vertices {
        let mut mask = 0u64;
        for (i, l) in lines.iter().enumerate() {
            if l.contains(v) {
                mask |= 1 << i;
            }
        }
        if mask.count_ones() >= 2 {
            candidates.push(mask);
        }
    }
    candidates.sort();
    candidates.dedup();

    let all = if line_count == 64 { u64::MAX } else { (1u64 << line_count) - 1 };
    let n = points.len();
    let per_point = (n / 2).max(1);
    let lower = line_count.div_ceil(per_point);

    for budget in lower..=limit {
        if search(all, budget, &candidates, per_point) {
            assert!(budget >= lower);
            return Ok(MinPiercing::Exact(budget));
        }
    }
    Ok(MinPiercing::ExceedsLimit(limit))
}

fn search(uncovered: u64, budget: usize, candidates: &[u64], per_point: usize) -> bool {
    if uncovered == 0 {
        return true;
    }
    if budget == 0 {
        return false;
    }
    if (uncovered.count_ones() as usize).div_ceil(per_point) > budget {
        return false;
    }
    // branch on the uncovered line with the fewest covering vertices
    let mut best_line = None;
    let mut best_count = usize::MAX;
    let mut rest = uncovered;
    while rest != 0 {
        let line = rest.trailing_zeros();
        rest &= rest - 1;
        let count = candidates.iter().filter(|c| *c & (1u64 << line) != 0).count();
        if count < best_count {
            best_count = count;
            best_line = Some(line);
        }
    }
    let line = best_line.expect("uncovered nonempty");
    let bit = 1u64 << line;
    for c in candidates.iter().filter(|c| *c & bit != 0) {
        if search(uncovered & !c, budget - 1, candidates, per_point) {
            return true;
        }
    }
    // or pierce this line alone with a fresh point on it
    search(uncovered & !bit, budget - 1, candidates, per_point)
}

/// A configuration hosted on a quadric-plus-line cubic, expressed in the
/// quadric group. Blockers are stored as group preimages under the map to
/// the line at infinity (for circle configurations built from direction
/// classes, that is the negated class).
#[derive(Debug, Clone)]
pub struct ConicLineConfig<G: AbelianGroup> {
    pub kind: ConicKind,
    pub roles: ConicRoles<G>,
    /// Role points placed on the line component instead of the quadric.
    pub role_points_on_line: usize,
    /// Blockers on the line, as group elements.
    pub blockers: GroupSet<G>,
    /// Blockers placed on the quadric itself.
    pub blockers_on_quadric: usize,
}

#[derive(Debug, Clone)]
pub enum ConicRoles<G: AbelianGroup> {
    Unipartite(GroupSet<G>),
    Bipartite(GroupSet<G>, GroupSet<G>),
}

/// Outcome of the reducible-cubic preliminary checks.
#[derive(Debug, Clone)]
pub enum GateDiagnosis {
    /// The configuration cannot satisfy the piercing-plus-ratio hypotheses
    /// (or no quadric group can carry its coset structure).
    Rejected { reason: String },
    /// Checks passed; the group pipeline ran.
    Dispatched { notes: Vec<String>, report: StructureReport },
}

/// Preliminary checks for quadric-plus-line hosted configurations, then
/// dispatch into the group pipeline.
///
/// * A role point on the line forces (n-2)+(n-3) blockers in the unipartite
///   case and (n-1)+(n-2) in the bipartite case, which collides with the
///   (3/2)n blocker bound: rejected with the counts.
/// * Blockers on the quadric can pierce nothing (three quadric points are
///   never collinear) and are dropped with a note.
/// * When the piercing and ratio hypotheses hold, the structure conclusion
///   needs a finite subgroup of order >= n; the parabola and hyperbola
///   groups carry none beyond order 2, so those quadrics are rejected —
///   the quadric must be an ellipse.
pub fn reducible_case_gate<G: AbelianGroup>(cfg: &ConicLineConfig<G>) -> Result<GateDiagnosis> {
    let mut notes = Vec::new();
    let (n, bipartite) = match &cfg.roles {
        ConicRoles::Unipartite(p) => (p.len(), false),
        ConicRoles::Bipartite(b, g) => {
            if b.len() != g.len() {
                return Err(Error::Usage("bipartite roles must have equal size".into()));
            }
            (b.len(), true)
        }
    };
    let r_total = cfg.blockers.len() + cfg.blockers_on_quadric;
    if cfg.role_points_on_line > 0 {
        let forced = if bipartite {
            n.saturating_sub(1) + n.saturating_sub(2)
        } else {
            n.saturating_sub(2) + n.saturating_sub(3)
        };
        return Ok(GateDiagnosis::Rejected {
            reason: format!(
                "{} role point(s) on the line force at least {forced} blockers, \
                 but the ratio bound allows |R| < {}.{} (|R| here: {r_total})",
                cfg.role_points_on_line,
                3 * n / 2,
                if 3 * n % 2 == 0 { "0" } else { "5" },
            ),
        });
    }
    if cfg.blockers_on_quadric > 0 {
        notes.push(format!(
            "{} blocker(s) on the quadric pierce no chord and are ignored",
            cfg.blockers_on_quadric
        ));
    }
    let report = match &cfg.roles {
        ConicRoles::Unipartite(p) => analyze_unipartite(p, &cfg.blockers)?,
        ConicRoles::Bipartite(b, g) => analyze_bipartite(b, g, &cfg.blockers)?,
    };
    if let SubgroupBound::AtMost(m) = finite_subgroup_obstruction(cfg.kind) {
        if report.pierced && report.ratio_gate && n as u64 > m {
            return Ok(GateDiagnosis::Rejected {
                reason: format!(
                    "coset structure would need a finite subgroup of order >= {n}, but the \
                     {} group has none of order > {m}: the quadric must be an ellipse",
                    cfg.kind.tag()
                ),
            });
        }
    }
    Ok(GateDiagnosis::Dispatched { notes, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        bipartite_construction, circle_coset_instance, complete_quadrilateral, fp_coset_instance,
        regular_mgon, rotated_union,
    };
    use crate::cubic::{EcGroup, EcPoint, WeierstrassCurve};
    use crate::field::{rat, FpElem};
    use crate::group::angle::CircleGroup;
    use crate::group::finab::FinAbGroup;
    use crate::group::subgroup_generated;
    use crate::plane::Role;

    /// Adapter used by tests and the CLI: blocking classes from an angle
    /// configuration become group blockers by negation.
    fn blockers_from_classes(classes: &BTreeSet<AngleElem>) -> GroupSet<CircleGroup> {
        GroupSet::new(CircleGroup, classes.iter().map(AngleElem::neg)).unwrap()
    }

    #[test]
    fn census_counts() {
        assert_eq!(direction_census(&regular_mgon(6).unwrap()).unwrap().distinct_count(), 6);
        let cfg = rotated_union(4).unwrap();
        assert_eq!(
            direction_census(cfg.role(Role::P).unwrap()).unwrap().distinct_count(),
            12
        );
        let two: BTreeSet<AngleElem> =
            [AngleElem::new(rat(0, 1), 0), AngleElem::new(rat(1, 3), 0)].into();
        assert_eq!(direction_census(&two).unwrap().distinct_count(), 1);
    }

    #[test]
    fn census_shift_invariance() {
        let s = regular_mgon(5).unwrap();
        let c0 = direction_census(&s).unwrap();
        for r in [AngleElem::new(rat(1, 7), 1), AngleElem::new(rat(1, 2), 0)] {
            let shifted: BTreeSet<AngleElem> = s.iter().map(|a| a.add(&r)).collect();
            let c1 = direction_census(&shifted).unwrap();
            assert_eq!(c0.distinct_count(), c1.distinct_count());
            // classes shift by 2r
            let mapped: BTreeSet<AngleElem> =
                c0.classes.keys().map(|c| c.add(&r.double())).collect();
            assert_eq!(mapped, c1.classes.keys().cloned().collect());
        }
    }

    #[test]
    fn analyze_circle_coset() {
        let off = AngleElem::new(rat(1, 6), 1);
        let (p, r) = circle_coset_instance(3, &off).unwrap();
        let report = analyze_unipartite(&p, &r).unwrap();
        assert!(report.pierced);
        assert!(report.ratio_gate);
        let h = report.h.expect("finite subgroup recovered");
        assert_eq!(h.order, 3);
        assert_eq!(report.h_size_le_r, Some(true));
        assert_eq!(report.restricted_equals_full, Some(true));
    }

    #[test]
    fn analyze_rotated_union_diagnoses_boundary() {
        let cfg = rotated_union(5).unwrap();
        let p = GroupSet::new(CircleGroup, cfg.role(Role::P).unwrap().iter().cloned()).unwrap();
        let r = blockers_from_classes(cfg.directions());
        let report = analyze_unipartite(&p, &r).unwrap();
        assert!(report.pierced);
        // |R| = 3m = (3/2)n exactly: the strict ratio gate fails
        assert!(!report.ratio_gate);
        assert_eq!(report.lev_applicable, Some(false));
        assert!(report.h.is_none());
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("infinite")));
    }

    #[test]
    fn analyze_fp_coset_recovers_subgroup() {
        let curve = WeierstrassCurve::new(FpElem::new(7, 0), FpElem::new(7, 1)).unwrap();
        let group = EcGroup::new(curve.clone());
        let t = EcPoint::Affine(FpElem::new(7, 0), FpElem::new(7, 1));
        let h = subgroup_generated(&group, &[t], 100).unwrap();
        let g = curve
            .enumerate_points()
            .unwrap()
            .into_iter()
            .find(|p| !h.contains(p))
            .unwrap();
        let inst = fp_coset_instance(&curve, &h, &g).unwrap();
        let report = analyze_unipartite(&inst.points, &inst.blockers).unwrap();
        assert!(report.pierced);
        let rec = report.h.expect("subgroup recovered");
        assert_eq!(rec.order, 3);
        assert_eq!(report.h_size_le_r, Some(true));
        // recovered elements are exactly H
        let expected: Vec<String> = h.iter().map(|e| e.to_string()).collect();
        assert_eq!(rec.elements, expected);
    }

    #[test]
    fn analyze_bipartite_full_cosets() {
        // B = G = coset of the order-5 subgroup of Z_15
        let g15 = FinAbGroup::cyclic(15);
        let h: Vec<u64> = vec![0, 3, 6, 9, 12];
        let b = GroupSet::new(g15.clone(), h.iter().map(|&x| g15.elem(&[x + 1]))).unwrap();
        let sum = b.sumset(&b).unwrap();
        let r = sum.negated();
        let report = analyze_bipartite(&b, &b, &r).unwrap();
        assert!(report.pierced);
        assert!(report.ratio_gate);
        let rec = report.h.expect("subgroup recovered");
        assert_eq!(rec.order, 5);
        assert_eq!(report.h_size_le_r, Some(true));
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("full cosets")));
    }

    #[test]
    fn analyze_bipartite_tightness_boundary() {
        let built = bipartite_construction(3).unwrap();
        let b = GroupSet::new(
            CircleGroup,
            built.config.role(Role::B).unwrap().iter().cloned(),
        )
        .unwrap();
        let g = GroupSet::new(
            CircleGroup,
            built.config.role(Role::G).unwrap().iter().cloned(),
        )
        .unwrap();
        let r = blockers_from_classes(built.config.directions());
        let report = analyze_bipartite(&b, &g, &r).unwrap();
        assert!(report.pierced);
        assert!(!report.ratio_gate);
        assert!(report.h.is_none());
        let infinite_notes = report
            .diagnostics
            .iter()
            .filter(|d| d.contains("infinite"))
            .count();
        assert_eq!(infinite_notes, 2);
    }

    #[test]
    fn analyze_single_collinear_triple() {
        // n = 1 bipartite: one blue, one gray, one blocker
        let g = FinAbGroup::cyclic(9);
        let b = GroupSet::new(g.clone(), [g.elem(&[1])]).unwrap();
        let gg = GroupSet::new(g.clone(), [g.elem(&[2])]).unwrap();
        let r = GroupSet::new(g.clone(), [g.elem(&[6])]).unwrap();
        let report = analyze_bipartite(&b, &gg, &r).unwrap();
        assert!(report.pierced);
        let h = report.h.expect("trivial subgroup");
        assert_eq!(h.order, 1);
    }

    #[test]
    fn min_piercing_triangle_and_square() {
        let triangle = vec![
            ProjPoint::affine(rat(0, 1), rat(0, 1)),
            ProjPoint::affine(rat(1, 1), rat(0, 1)),
            ProjPoint::affine(rat(0, 1), rat(1, 1)),
        ];
        assert_eq!(min_piercing_number(&triangle, 5).unwrap(), MinPiercing::Exact(3));

        let cfg = complete_quadrilateral();
        assert_eq!(
            min_piercing_number(cfg.role(Role::P), 5).unwrap(),
            MinPiercing::Exact(3)
        );
    }

    #[test]
    fn min_piercing_respects_limit() {
        let triangle = vec![
            ProjPoint::affine(rat(0, 1), rat(0, 1)),
            ProjPoint::affine(rat(1, 1), rat(0, 1)),
            ProjPoint::affine(rat(0, 1), rat(1, 1)),
        ];
        assert_eq!(
            min_piercing_number(&triangle, 2).unwrap(),
            MinPiercing::ExceedsLimit(2)
        );
    }

    #[test]
    fn min_piercing_guards() {
        let many: Vec<_> = (0..9)
            .map(|i| ProjPoint::affine(rat(i, 1), rat(i * i, 1)))
            .collect();
        assert!(min_piercing_number(&many, 3).is_err());
        let collinear3 = vec![
            ProjPoint::affine(rat(0, 1), rat(0, 1)),
            ProjPoint::affine(rat(1, 1), rat(1, 1)),
            ProjPoint::affine(rat(2, 1), rat(2, 1)),
        ];
        assert!(min_piercing_number(&collinear3, 3).is_err());
    }

    #[test]
    fn gate_rejects_role_point_on_line() {
        // n = 10 points, one of them on the line: forced blocker count
        // (n-2)+(n-3) = 15 exceeds what the ratio bound allows
        let g = FinAbGroup::cyclic(40);
        let p = GroupSet::new(g.clone(), (0..10u64).map(|i| g.elem(&[i * 3]))).unwrap();
        let r = GroupSet::new(g.clone(), (0..12u64).map(|i| g.elem(&[i]))).unwrap();
        let cfg = ConicLineConfig {
            kind: ConicKind::Ellipse,
            roles: ConicRoles::Unipartite(p),
            role_points_on_line: 1,
            blockers: r,
            blockers_on_quadric: 0,
        };
        match reducible_case_gate(&cfg).unwrap() {
            GateDiagnosis::Rejected { reason } => {
                assert!(reason.contains("15"), "reason: {reason}");
            }
            GateDiagnosis::Dispatched { .. } => panic!("expected rejection"),
        }
    }

    #[test]
    fn gate_rejects_parabola_coset_attempt() {
        // an arithmetic progression on the parabola: pierced with few
        // blockers, so the coset conclusion would need |H| >= 3
        let g = crate::conic::ParabolaGroup;
        let p = GroupSet::new(g, [rat(0, 1), rat(1, 1), rat(2, 1)]).unwrap();
        let r = GroupSet::new(g, [rat(-1, 1), rat(-2, 1), rat(-3, 1)]).unwrap();
        let cfg = ConicLineConfig {
            kind: ConicKind::Parabola,
            roles: ConicRoles::Unipartite(p),
            role_points_on_line: 0,
            blockers: r,
            blockers_on_quadric: 0,
        };
        match reducible_case_gate(&cfg).unwrap() {
            GateDiagnosis::Rejected { reason } => {
                assert!(reason.contains("ellipse"), "reason: {reason}");
            }
            GateDiagnosis::Dispatched { .. } => panic!("expected rejection"),
        }
    }

    #[test]
    fn gate_dispatches_rotated_union() {
        let cfg = rotated_union(4).unwrap();
        let p = GroupSet::new(CircleGroup, cfg.role(Role::P).unwrap().iter().cloned()).unwrap();
        let r = blockers_from_classes(cfg.directions());
        let conic_cfg = ConicLineConfig {
            kind: ConicKind::Ellipse,
            roles: ConicRoles::Unipartite(p),
            role_points_on_line: 0,
            blockers: r,
            blockers_on_quadric: 0,
        };
        match reducible_case_gate(&conic_cfg).unwrap() {
            GateDiagnosis::Dispatched { report, .. } => assert!(report.pierced),
            GateDiagnosis::Rejected { reason } => panic!("unexpected rejection: {reason}"),
        }
    }

    #[test]
    fn lower_bound_asserted() {
        // counting bound for the square: ceil(6 / 2) = 3 and the search
        // result equals it
        let cfg = complete_quadrilateral();
        match min_piercing_number(cfg.role(Role::P), 6).unwrap() {
            MinPiercing::Exact(k) => assert!(k >= 3),
            MinPiercing::ExceedsLimit(_) => panic!("square is pierceable"),
        }
    }
}
