//! Generators for the configurations the toolkit studies: regular polygon
//! angle sets, the rotated-union family whose chords take exactly (3/2)n
//! directions, the bipartite family saturating the same bound, the two small
//! sporadic planar instances with |R| = n - 1, a three-line bipartite
//! instance, and curve-coset instances over prime fields.

use std::collections::{BTreeMap, BTreeSet};

use crate::cubic::{EcGroup, EcPoint, WeierstrassCurve};
use crate::field::{rat, FpElem, Rat};
use crate::group::angle::{AngleElem, CircleGroup};
use crate::group::{GroupSet, Subgroup};
use crate::plane::{PointConfig, ProjPoint, Role};
use crate::{Error, Result};

/// Circle-hosted configuration: role angle sets plus the direction classes
/// that pierce every chord between role points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleConfig {
    roles: BTreeMap<Role, BTreeSet<AngleElem>>,
    directions: BTreeSet<AngleElem>,
}

impl AngleConfig {
    /// Validates role disjointness and that `directions` covers the full
    /// chord-class census of the roles (within P, or across B and G).
    pub fn new(
        roles: BTreeMap<Role, BTreeSet<AngleElem>>,
        directions: BTreeSet<AngleElem>,
    ) -> Result<Self> {
        let mut seen: BTreeSet<&AngleElem> = BTreeSet::new();
        for (role, set) in &roles {
            if *role == Role::R {
                return Err(Error::Usage(
                    "blocking directions go in the directions field, not a role".into(),
                ));
            }
            for a in set {
                if !seen.insert(a) {
                    return Err(Error::Usage(format!("roles are not disjoint: {a}")));
                }
            }
        }
        let config = AngleConfig { roles, directions };
        if let Some(missing) = config.uncovered_class() {
            return Err(Error::Usage(format!(
                "direction set misses the chord class {missing}"
            )));
        }
        Ok(config)
    }

    pub fn role(&self, role: Role) -> Option<&BTreeSet<AngleElem>> {
        self.roles.get(&role)
    }

    pub fn roles(&self) -> &BTreeMap<Role, BTreeSet<AngleElem>> {
        &self.roles
    }

    pub fn directions(&self) -> &BTreeSet<AngleElem> {
        &self.directions
    }

    pub fn is_bipartite(&self) -> bool {
        self.roles.contains_key(&Role::B)
    }

    /// First chord class not covered by the direction set, if any.
    pub fn uncovered_class(&self) -> Option<AngleElem> {
        let classes = match (self.roles.get(&Role::P), self.roles.get(&Role::B), self.roles.get(&Role::G)) {
            (Some(p), _, _) => pair_classes(p),
            (None, Some(b), Some(g)) => cross_classes(b, g),
            _ => BTreeSet::new(),
        };
        classes.into_iter().find(|c| !self.directions.contains(c))
    }
}

/// Classes of chords within one angle set: {a + a' : a != a'}.
pub fn pair_classes(s: &BTreeSet<AngleElem>) -> BTreeSet<AngleElem> {
    let v: Vec<&AngleElem> = s.iter().collect();
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.insert(v[i].add(v[j]));
        }
    }
    out
}

/// Classes of chords between two disjoint angle sets: {b + g}.
pub fn cross_classes(b: &BTreeSet<AngleElem>, g: &BTreeSet<AngleElem>) -> BTreeSet<AngleElem> {
    let mut out = BTreeSet::new();
    for x in b {
        for y in g {
            out.insert(x.add(y));
        }
    }
    out
}

/// Vertices of the regular m-gon as angle elements {j/m}.
pub fn regular_mgon(m: u64) -> Result<BTreeSet<AngleElem>> {
    if m < 3 {
        return Err(Error::Degenerate(format!("polygon needs m >= 3, got {m}")));
    }
    Ok((0..m)
        .map(|j| AngleElem::rational(rat(j as i64, m as i64)))
        .collect())
}

fn shifted(s: &BTreeSet<AngleElem>, by: &AngleElem) -> BTreeSet<AngleElem> {
    s.iter().map(|a| a.add(by)).collect()
}

/// A regular m-gon together with its generic rotation: 2m points whose
/// chords fall in exactly 3m direction classes, yet the set lies in no
/// finite coset of the circle group.
pub fn rotated_union(m: u64) -> Result<AngleConfig> {
    let base = regular_mgon(m)?;
    let theta = AngleElem::new(rat(0, 1), 1);
    let rotated = shifted(&base, &theta);
    let p: BTreeSet<AngleElem> = base.union(&rotated).cloned().collect();
    // chord classes: within the m-gon {j/m}, across {j/m + theta},
    // within the rotated copy {j/m + 2*theta}
    let mut directions = base.clone();
    directions.extend(shifted(&base, &theta));
    directions.extend(shifted(&base, &theta.double()));
    let mut roles = BTreeMap::new();
    roles.insert(Role::P, p);
    AngleConfig::new(roles, directions)
}

/// The bipartite tightness construction for odd k, with the four k-gon
/// families kept accessible for census comparisons.
#[derive(Debug, Clone)]
pub struct BipartiteAngles {
    pub config: AngleConfig,
    /// Z = vertices of the regular k-gon.
    pub z: BTreeSet<AngleElem>,
    /// Z' = generic rotation of Z.
    pub z_rot: BTreeSet<AngleElem>,
    /// -Z = point reflection of Z (half-turn shift).
    pub neg_z: BTreeSet<AngleElem>,
    /// -Z' = point reflection of Z'.
    pub neg_z_rot: BTreeSet<AngleElem>,
}

/// B = Z ∪ (-Z'), G = (-Z) ∪ Z': 2k blue and 2k gray points whose cross
/// chords take exactly 3k directions. Planar negation is the half-turn
/// shift, which is what makes the (-Z', -Z) and (Z, Z') censuses literally
/// equal.
pub fn bipartite_construction(k: u64) -> Result<BipartiteAngles> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Degenerate(format!("construction needs odd k >= 3, got {k}")));
    }
    let z = regular_mgon(k)?;
    let theta = AngleElem::new(rat(0, 1), 1);
    let half = AngleElem::new(rat(1, 2), 0);
    let z_rot = shifted(&z, &theta);
    let neg_z = shifted(&z, &half);
    let neg_z_rot = shifted(&z_rot, &half);

    let b: BTreeSet<AngleElem> = z.union(&neg_z_rot).cloned().collect();
    let g: BTreeSet<AngleElem> = neg_z.union(&z_rot).cloned().collect();

    // Z x (-Z) gives {j/k + 1/2}; Z x Z' and (-Z') x (-Z) both give
    // {j/k + theta}; (-Z') x Z' gives {j/k + 2*theta + 1/2}
    let mut directions = shifted(&z, &half);
    directions.extend(shifted(&z, &theta));
    let two_theta_half = theta.double().add(&half);
    directions.extend(shifted(&z, &two_theta_half));

    let mut roles = BTreeMap::new();
    roles.insert(Role::B, b);
    roles.insert(Role::G, g);
    let config = AngleConfig::new(roles, directions)?;
    Ok(BipartiteAngles { config, z, z_rot, neg_z, neg_z_rot })
}

fn q(x: i64, y: i64) -> ProjPoint<Rat> {
    ProjPoint::affine(rat(x, 1), rat(y, 1))
}

/// Two collinear points pierced by one third point: n = 2, |R| = 1.
pub fn two_point() -> PointConfig<Rat> {
    let mut roles = BTreeMap::new();
    roles.insert(Role::P, vec![q(0, 0), q(1, 0)]);
    roles.insert(Role::R, vec![q(2, 0)]);
    PointConfig::new(roles).expect("valid by construction")
}

/// The unit square with its three diagonal points: two at infinity, one in
/// the center. n = 4, |R| = 3.
pub fn complete_quadrilateral() -> PointConfig<Rat> {
    let mut roles = BTreeMap::new();
    roles.insert(Role::P, vec![q(0, 0), q(1, 0), q(0, 1), q(1, 1)]);
    roles.insert(
        Role::R,
        vec![
            ProjPoint::at_infinity(rat(1, 1), rat(0, 1)).expect("direction"),
            ProjPoint::at_infinity(rat(0, 1), rat(1, 1)).expect("direction"),
            ProjPoint::affine(rat(1, 2), rat(1, 2)),
        ],
    );
    PointConfig::new(roles).expect("valid by construction")
}

/// Bipartite instance on three horizontal lines: 3 + 3 + 3 points with all
/// nine cross lines pierced. On the lines y = 0, 1, 2 a triple
/// (x0,0),(x1,1),(x2,2) is collinear exactly when x0 + x2 = 2 x1, which is
/// the relation the coordinates below were solved from.
pub fn three_line_bipartite() -> PointConfig<Rat> {
    let mut roles = BTreeMap::new();
    roles.insert(
        Role::B,
        vec![q(0, 0), ProjPoint::affine(rat(-1, 2), rat(1, 1)), q(3, 2)],
    );
    roles.insert(Role::G, vec![q(7, 0), q(-4, 1), q(10, 2)]);
    roles.insert(Role::R, vec![q(-11, 0), q(5, 1), q(-8, 2)]);
    PointConfig::new(roles).expect("valid by construction")
}

/// A coset instance on a Weierstrass curve over F_p: P = g + H and
/// R = -(P +. P), which pierces every chord through two points of P.
#[derive(Debug, Clone)]
pub struct FpCosetInstance {
    pub curve: WeierstrassCurve<FpElem>,
    pub subgroup: Subgroup<EcGroup<FpElem>>,
    pub offset: EcPoint<FpElem>,
    pub points: GroupSet<EcGroup<FpElem>>,
    pub blockers: GroupSet<EcGroup<FpElem>>,
}

/// Build P = g + H on the curve. Requires 3g not in H (equivalently
/// 0 not in 3g + H): that rules out collinear triples inside the coset, so P
/// is automatically in general position, and keeps R disjoint from P.
pub fn fp_coset_instance(
    curve: &WeierstrassCurve<FpElem>,
    subgroup: &Subgroup<EcGroup<FpElem>>,
    g: &EcPoint<FpElem>,
) -> Result<FpCosetInstance> {
    let group = EcGroup::new(curve.clone());
    if !curve.contains(g) {
        return Err(Error::OffCurve);
    }
    let three_g = curve.scalar_mul(3, g)?;
    if subgroup.contains(&three_g) {
        return Err(Error::Usage(format!(
            "offset {g} has 3g inside H; the coset contains collinear triples or meets R"
        )));
    }
    let points = GroupSet::new(
        group.clone(),
        subgroup.iter().map(|h| curve.add(g, h).expect("on-curve")),
    )?;
    let blockers = if points.len() >= 2 {
        points.restricted_sumset()?.negated()
    } else {
        GroupSet::new(group, std::iter::empty())?
    };
    debug_assert!(points.iter().all(|p| !blockers.contains(p)));
    Ok(FpCosetInstance {
        curve: curve.clone(),
        subgroup: subgroup.clone(),
        offset: g.clone(),
        points,
        blockers,
    })
}

/// P on the circle in a coset of the order-k rotation subgroup, with the
/// blocking classes -(P +. P); the angle-world analogue of
/// [`fp_coset_instance`].
pub fn circle_coset_instance(k: u64, offset: &AngleElem) -> Result<(GroupSet<CircleGroup>, GroupSet<CircleGroup>)> {
    let base = regular_mgon(k)?;
    let p = GroupSet::new(CircleGroup, shifted(&base, offset))?;
    let r = p.restricted_sumset()?.negated();
    Ok((p, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{minimal_containing_coset, MinimalCoset, DEFAULT_CLOSURE_CAP};
    use crate::plane::{check_piercing, check_piercing_bipartite, is_general_position};

    #[test]
    fn mgon_census_is_m() {
        for m in [3u64, 4, 12] {
            let s = regular_mgon(m).unwrap();
            assert_eq!(s.len() as u64, m);
            assert_eq!(pair_classes(&s).len() as u64, m);
        }
        assert!(regular_mgon(2).is_err());
    }

    #[test]
    fn mgon_4_explicit_classes() {
        let s = regular_mgon(4).unwrap();
        let classes = pair_classes(&s);
        let expected: BTreeSet<AngleElem> =
            (0..4).map(|j| AngleElem::rational(rat(j, 4))).collect();
        assert_eq!(classes, expected);
    }

    #[test]
    fn rotated_union_counts() {
        for m in [3u64, 5] {
            let cfg = rotated_union(m).unwrap();
            let p = cfg.role(Role::P).unwrap();
            assert_eq!(p.len() as u64, 2 * m);
            assert_eq!(cfg.directions().len() as u64, 3 * m);
            // directions are exactly the census, not just a superset
            assert_eq!(&pair_classes(p), cfg.directions());
        }
    }

    #[test]
    fn rotated_union_families_are_disjoint() {
        let cfg = rotated_union(4).unwrap();
        // the three class families have theta coefficients 0, 1, 2
        let mut by_c: BTreeMap<i64, usize> = BTreeMap::new();
        for d in cfg.directions() {
            *by_c.entry(d.theta_coeff()).or_default() += 1;
        }
        assert_eq!(by_c, BTreeMap::from([(0, 4), (1, 4), (2, 4)]));
    }

    #[test]
    fn rotated_union_not_in_finite_coset() {
        let cfg = rotated_union(5).unwrap();
        let p = GroupSet::new(CircleGroup, cfg.role(Role::P).unwrap().iter().cloned()).unwrap();
        assert_eq!(
            minimal_containing_coset(&p, DEFAULT_CLOSURE_CAP).unwrap(),
            MinimalCoset::Infinite
        );
    }

    #[test]
    fn cross_census_shift_invariance() {
        // for P1 = {j/m}, P2 = {j/m + r}: the cross census has exactly m
        // classes whatever the rotation r is
        let base = regular_mgon(6).unwrap();
        for r in [
            AngleElem::new(rat(1, 7), 0),
            AngleElem::new(rat(0, 1), 1),
            AngleElem::new(rat(3, 5), 2),
        ] {
            let rotated = shifted(&base, &r);
            assert_eq!(cross_classes(&base, &rotated).len(), 6);
        }
    }

    #[test]
    fn bipartite_counts_and_coincidence() {
        for k in [3u64, 5] {
            let built = bipartite_construction(k).unwrap();
            let b = built.config.role(Role::B).unwrap();
            let g = built.config.role(Role::G).unwrap();
            assert_eq!(b.len() as u64, 2 * k);
            assert_eq!(g.len() as u64, 2 * k);
            assert_eq!(built.config.directions().len() as u64, 3 * k);
            assert_eq!(&cross_classes(b, g), built.config.directions());
            // the two "parallel family" censuses coincide exactly
            assert_eq!(
                cross_classes(&built.neg_z_rot, &built.neg_z),
                cross_classes(&built.z, &built.z_rot)
            );
        }
        assert!(bipartite_construction(4).is_err());
        assert!(bipartite_construction(1).is_err());
    }

    #[test]
    fn bipartite_roles_not_in_finite_coset() {
        let built = bipartite_construction(3).unwrap();
        for role in [Role::B, Role::G] {
            let s = GroupSet::new(
                CircleGroup,
                built.config.role(role).unwrap().iter().cloned(),
            )
            .unwrap();
            assert_eq!(
                minimal_containing_coset(&s, DEFAULT_CLOSURE_CAP).unwrap(),
                MinimalCoset::Infinite
            );
        }
    }

    #[test]
    fn two_point_pierced() {
        let cfg = two_point();
        let v = check_piercing(cfg.role(Role::P), cfg.role(Role::R)).unwrap();
        assert!(v.pierced);
        assert_eq!(cfg.role(Role::R).len(), cfg.role(Role::P).len() - 1);
    }

    #[test]
    fn quadrilateral_pierced() {
        let cfg = complete_quadrilateral();
        assert!(is_general_position(cfg.role(Role::P)).unwrap());
        let v = check_piercing(cfg.role(Role::P), cfg.role(Role::R)).unwrap();
        assert!(v.pierced);
        assert_eq!(cfg.role(Role::R).len(), 3);
    }

    #[test]
    fn three_line_instance() {
        let cfg = three_line_bipartite();
        let (b, g, r) = (cfg.role(Role::B), cfg.role(Role::G), cfg.role(Role::R));
        let union: Vec<_> = b.iter().chain(g.iter()).cloned().collect();
        assert!(is_general_position(&union).unwrap());
        assert!(check_piercing_bipartite(b, g, r).unwrap().pierced);
        // all nine points lie on the three lines y = 0, 1, 2
        for p in b.iter().chain(g.iter()).chain(r.iter()) {
            let (_, y) = p.to_affine().unwrap();
            assert!([rat(0, 1), rat(1, 1), rat(2, 1)].contains(&y));
        }
    }

    fn f7_curve() -> WeierstrassCurve<FpElem> {
        WeierstrassCurve::new(FpElem::new(7, 0), FpElem::new(7, 1)).unwrap()
    }

    #[test]
    fn fp_coset_order3() {
        let curve = f7_curve();
        let group = EcGroup::new(curve.clone());
        // the unique order-3 subgroup {O, (0,1), (0,-1)}
        let t = EcPoint::Affine(FpElem::new(7, 0), FpElem::new(7, 1));
        let h = crate::group::subgroup_generated(&group, &[t], 100).unwrap();
        assert_eq!(h.order(), 3);
        // any g outside H works here
        let g = curve
            .enumerate_points()
            .unwrap()
            .into_iter()
            .find(|p| !h.contains(p))
            .unwrap();
        let inst = fp_coset_instance(&curve, &h, &g).unwrap();
        assert_eq!(inst.points.len(), 3);
        assert_eq!(inst.blockers.len(), 3);
        // planar check through the projective embedding
        let p_pts: Vec<_> = inst.points.iter().map(|p| curve.to_proj(p)).collect();
        let r_pts: Vec<_> = inst.blockers.iter().map(|p| curve.to_proj(p)).collect();
        assert!(is_general_position(&p_pts).unwrap());
        assert!(check_piercing(&p_pts, &r_pts).unwrap().pierced);
    }

    #[test]
    fn fp_coset_trivial_subgroup() {
        let curve = f7_curve();
        let group = EcGroup::new(curve.clone());
        let h = Subgroup::from_elements(&group, [EcPoint::Infinity]).unwrap();
        let g = curve
            .enumerate_points()
            .unwrap()
            .into_iter()
            .find(|p| {
                *p != EcPoint::Infinity && curve.scalar_mul(3, p).unwrap() != EcPoint::Infinity
            })
            .unwrap();
        let inst = fp_coset_instance(&curve, &h, &g).unwrap();
        assert_eq!(inst.points.len(), 1);
        assert!(inst.blockers.is_empty());
    }

    #[test]
    fn fp_coset_rejects_bad_offset() {
        let curve = f7_curve();
        let group = EcGroup::new(curve.clone());
        // H = whole group: 3g always lands in H
        let all = curve.enumerate_points().unwrap();
        let h = Subgroup::from_elements(&group, all.clone()).unwrap();
        for g in all {
            assert!(fp_coset_instance(&curve, &h, &g).is_err());
        }
    }

    #[test]
    fn circle_coset_roundtrip_shape() {
        let off = AngleElem::new(rat(1, 6), 1);
        let (p, r) = circle_coset_instance(3, &off).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(r.len(), 3);
        // R = -(P +. P) = -(2*offset + H)
        let two_off = off.double();
        for e in r.iter() {
            assert_eq!(e.theta_coeff(), two_off.neg().theta_coeff());
        }
    }
}
