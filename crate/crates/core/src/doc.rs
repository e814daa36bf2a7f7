//! The JSON configuration format: schema, validation, canonical emission,
//! and the verify / analyze / construct entry points shared by the CLI and
//! the C API.
//!
//! Exactness contract: rationals travel as "num/den" strings, never as JSON
//! numbers, and the formal rotation is serialized as its integer coefficient
//! only. Emission is canonical (sorted sets, fixed key order), so identical
//! inputs produce byte-identical documents and reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analyzer::{
    analyze_bipartite, analyze_unipartite, min_piercing_number, MinPiercing, StructureReport,
};
use crate::constructions::{
    bipartite_construction, complete_quadrilateral, fp_coset_instance, regular_mgon,
    rotated_union, three_line_bipartite, two_point, AngleConfig,
};
use crate::cubic::{EcGroup, EcPoint, WeierstrassCurve};
use crate::field::{parse_rat, rat_to_string, ExactField, Field, FpElem, Rat};
use crate::group::angle::{AngleElem, CircleGroup};
use crate::group::finab::{FinAbElem, FinAbGroup};
use crate::group::{all_subgroups, GroupSet};
use crate::plane::{
    check_piercing, check_piercing_bipartite, is_general_position, PointConfig, ProjPoint, Role,
};
use crate::{Error, Result};

pub const DOCUMENT_VERSION: u32 = 1;

/// On-disk configuration document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub version: u32,
    /// "rational" or "fp:<p>".
    pub field: String,
    pub representation: Representation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_orders: Option<Vec<u64>>,
    /// Role tag -> encoded elements. For angle documents the R entry holds
    /// blocking direction classes rather than points.
    pub sets: BTreeMap<String, Vec<ElementRepr>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Planar,
    Angle,
    Ec,
    Group,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weierstrass: Option<WeierstrassCoeffs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassCoeffs {
    pub a: String,
    pub b: String,
}

/// One encoded element. The variants are shape-distinguishable in JSON:
/// a string, {q, c}, {x, y}, an array of integers, an array of strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Name(String),
    Angle { q: String, c: i64 },
    EcAffine { x: String, y: String },
    Residues(Vec<u64>),
    Homogeneous(Vec<String>),
}

/// A document parsed into exact in-memory values.
#[derive(Debug, Clone)]
pub enum LoadedConfig {
    PlanarRat(PointConfig<Rat>),
    PlanarFp(u64, PointConfig<FpElem>),
    Angle(AngleConfig),
    EcRat {
        curve: WeierstrassCurve<Rat>,
        roles: BTreeMap<Role, Vec<EcPoint<Rat>>>,
    },
    EcFp {
        curve: WeierstrassCurve<FpElem>,
        roles: BTreeMap<Role, Vec<EcPoint<FpElem>>>,
    },
    Group {
        group: FinAbGroup,
        roles: BTreeMap<Role, Vec<FinAbElem>>,
    },
}

pub fn parse_document(json: &str) -> Result<ConfigDocument> {
    let doc: ConfigDocument =
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    if doc.version != DOCUMENT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported document version {} (expected {DOCUMENT_VERSION})",
            doc.version
        )));
    }
    Ok(doc)
}

pub fn canonical_json(doc: &ConfigDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

fn roles_of<T>(sets: &BTreeMap<String, Vec<T>>) -> Result<BTreeMap<Role, &Vec<T>>> {
    let mut out = BTreeMap::new();
    for (tag, elems) in sets {
        out.insert(Role::parse(tag)?, elems);
    }
    Ok(out)
}

fn parse_rat_elem(e: &ElementRepr) -> Result<Vec<Rat>> {
    match e {
        ElementRepr::Homogeneous(coords) if coords.len() == 3 => {
            coords.iter().map(|s| parse_rat(s)).collect()
        }
        other => Err(Error::Schema(format!(
            "expected a homogeneous triple of rationals, got {other:?}"
        ))),
    }
}

fn parse_fp_scalar(p: u64, s: &str) -> Result<FpElem> {
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Schema(format!("bad residue {s:?} for F_{p}")))?;
    Ok(FpElem::new(p, v))
}

/// Validate a document and build the exact in-memory configuration.
pub fn load(doc: &ConfigDocument) -> Result<LoadedConfig> {
    let field = ExactField::parse(&doc.field)?;
    match doc.representation {
        Representation::Planar => match field {
            ExactField::Rational => {
                let mut roles = BTreeMap::new();
                for (role, elems) in roles_of(&doc.sets)? {
                    let pts: Result<Vec<ProjPoint<Rat>>> = elems
                        .iter()
                        .map(|e| {
                            let c = parse_rat_elem(e)?;
                            ProjPoint::new(c[0].clone(), c[1].clone(), c[2].clone())
                        })
                        .collect();
                    roles.insert(role, pts?);
                }
                Ok(LoadedConfig::PlanarRat(PointConfig::new(roles)?))
            }
            ExactField::Prime(p) => {
                let mut roles = BTreeMap::new();
                for (role, elems) in roles_of(&doc.sets)? {
                    let pts: Result<Vec<ProjPoint<FpElem>>> = elems
                        .iter()
                        .map(|e| match e {
                            ElementRepr::Homogeneous(c) if c.len() == 3 => {
                                let x = parse_fp_scalar(p, &c[0])?;
                                let y = parse_fp_scalar(p, &c[1])?;
                                let z = parse_fp_scalar(p, &c[2])?;
                                ProjPoint::new(x, y, z)
                            }
                            other => Err(Error::Schema(format!(
                                "expected a homogeneous triple of residues, got {other:?}"
                            ))),
                        })
                        .collect();
                    roles.insert(role, pts?);
                }
                Ok(LoadedConfig::PlanarFp(p, PointConfig::new(roles)?))
            }
        },
        Representation::Angle => {
            if field != ExactField::Rational {
                return Err(Error::Schema("angle documents use the rational field".into()));
            }
            let mut roles = BTreeMap::new();
            let mut directions = std::collections::BTreeSet::new();
            for (role, elems) in roles_of(&doc.sets)? {
                let parsed: Result<Vec<AngleElem>> = elems
                    .iter()
                    .map(|e| match e {
                        ElementRepr::Angle { q, c } => Ok(AngleElem::new(parse_rat(q)?, *c)),
                        other => {
                            Err(Error::Schema(format!("expected an angle {{q, c}}, got {other:?}")))
                        }
                    })
                    .collect();
                let parsed = parsed?;
                if role == Role::R {
                    directions = parsed.into_iter().collect();
                } else {
                    roles.insert(role, parsed.into_iter().collect());
                }
            }
            Ok(LoadedConfig::Angle(AngleConfig::new(roles, directions)?))
        }
        Representation::Ec => {
            let coeffs = doc
                .curve
                .as_ref()
                .and_then(|c| c.weierstrass.as_ref())
                .ok_or_else(|| Error::Schema("ec documents need a weierstrass curve".into()))?;
            match field {
                ExactField::Rational => {
                    let curve =
                        WeierstrassCurve::new(parse_rat(&coeffs.a)?, parse_rat(&coeffs.b)?)?;
                    let roles = load_ec_roles(&doc.sets, &curve, |s| parse_rat(s))?;
                    Ok(LoadedConfig::EcRat { curve, roles })
                }
                ExactField::Prime(p) => {
                    let curve = WeierstrassCurve::new(
                        parse_fp_scalar(p, &coeffs.a)?,
                        parse_fp_scalar(p, &coeffs.b)?,
                    )?;
                    let roles = load_ec_roles(&doc.sets, &curve, |s| parse_fp_scalar(p, s))?;
                    Ok(LoadedConfig::EcFp { curve, roles })
                }
            }
        }
        Representation::Group => {
            let orders = doc
                .group_orders
                .as_ref()
                .ok_or_else(|| Error::Schema("group documents need group_orders".into()))?;
            if orders.is_empty() || orders.iter().any(|&o| o == 0) {
                return Err(Error::Schema("group_orders must be positive".into()));
            }
            let group = FinAbGroup::product(orders);
            let mut roles = BTreeMap::new();
            for (role, elems) in roles_of(&doc.sets)? {
                let parsed: Result<Vec<FinAbElem>> = elems
                    .iter()
                    .map(|e| match e {
                        ElementRepr::Residues(r) if r.len() == orders.len() => {
                            let elem = group.elem(r);
                            if r.iter().zip(orders).any(|(&x, &o)| x >= o) {
                                return Err(Error::Schema(format!(
                                    "residue tuple {r:?} out of range for orders {orders:?}"
                                )));
                            }
                            Ok(elem)
                        }
                        other => Err(Error::Schema(format!(
                            "expected a residue tuple of length {}, got {other:?}",
                            orders.len()
                        ))),
                    })
                    .collect();
                let parsed = parsed?;
                let mut seen = std::collections::BTreeSet::new();
                for e in &parsed {
                    if !seen.insert(e.clone()) {
                        return Err(Error::Schema(format!("duplicate element {e}")));
                    }
                }
                roles.insert(role, parsed);
            }
            for (a, av) in &roles {
                for (b, bv) in &roles {
                    if a < b {
                        if let Some(shared) = av.iter().find(|e| bv.contains(e)) {
                            return Err(Error::Usage(format!(
                                "roles {} and {} share the element {shared}",
                                a.tag(),
                                b.tag()
                            )));
                        }
                    }
                }
            }
            Ok(LoadedConfig::Group { group, roles })
        }
    }
}

fn load_ec_roles<F: Field, P: Fn(&str) -> Result<F>>(
    sets: &BTreeMap<String, Vec<ElementRepr>>,
    curve: &WeierstrassCurve<F>,
    parse: P,
) -> Result<BTreeMap<Role, Vec<EcPoint<F>>>> {
    let mut roles = BTreeMap::new();
    for (role, elems) in roles_of(sets)? {
        let pts: Result<Vec<EcPoint<F>>> = elems
            .iter()
            .map(|e| {
                let pt = match e {
                    ElementRepr::Name(n) if n == "O" => EcPoint::Infinity,
                    ElementRepr::EcAffine { x, y } => EcPoint::Affine(parse(x)?, parse(y)?),
                    other => {
                        return Err(Error::Schema(format!(
                            "expected \"O\" or {{x, y}}, got {other:?}"
                        )))
                    }
                };
                if !curve.contains(&pt) {
                    return Err(Error::Schema(format!("{pt} is not on the curve")));
                }
                Ok(pt)
            })
            .collect();
        roles.insert(role, pts?);
    }
    // distinctness and disjointness via the planar embedding
    let mut planar: BTreeMap<Role, Vec<ProjPoint<F>>> = BTreeMap::new();
    for (role, pts) in &roles {
        planar.insert(*role, pts.iter().map(|p| curve.to_proj(p)).collect());
    }
    PointConfig::new(planar)?;
    Ok(roles)
}

fn angle_repr(a: &AngleElem) -> ElementRepr {
    ElementRepr::Angle { q: rat_to_string(a.q()), c: a.theta_coeff() }
}

/// Canonical document for a loaded configuration: sorted sets, explicit
/// denominators, stable key order.
pub fn to_document(cfg: &LoadedConfig) -> ConfigDocument {
    match cfg {
        LoadedConfig::PlanarRat(pc) => {
            let mut sets = BTreeMap::new();
            for (role, pts) in pc.roles() {
                let mut sorted = pts.clone();
                sorted.sort();
                sets.insert(
                    role.tag().to_string(),
                    sorted
                        .iter()
                        .map(|p| {
                            let (x, y, z) = p.coords();
                            ElementRepr::Homogeneous(vec![
                                rat_to_string(x),
                                rat_to_string(y),
                                rat_to_string(z),
                            ])
                        })
                        .collect(),
                );
            }
            ConfigDocument {
                version: DOCUMENT_VERSION,
                field: "rational".into(),
                representation: Representation::Planar,
                curve: None,
                group_orders: None,
                sets,
            }
        }
        LoadedConfig::PlanarFp(p, pc) => {
            let mut sets = BTreeMap::new();
            for (role, pts) in pc.roles() {
                let mut sorted = pts.clone();
                sorted.sort();
                sets.insert(
                    role.tag().to_string(),
                    sorted
                        .iter()
                        .map(|pt| {
                            let (x, y, z) = pt.coords();
                            ElementRepr::Homogeneous(vec![
                                x.to_string(),
                                y.to_string(),
                                z.to_string(),
                            ])
                        })
                        .collect(),
                );
            }
            ConfigDocument {
                version: DOCUMENT_VERSION,
                field: format!("fp:{p}"),
                representation: Representation::Planar,
                curve: None,
                group_orders: None,
                sets,
            }
        }
        LoadedConfig::Angle(ac) => {
            let mut sets = BTreeMap::new();
            for (role, elems) in ac.roles() {
                sets.insert(role.tag().to_string(), elems.iter().map(angle_repr).collect());
            }
            sets.insert(
                Role::R.tag().to_string(),
                ac.directions().iter().map(angle_repr).collect(),
            );
            ConfigDocument {
                version: DOCUMENT_VERSION,
                field: "rational".into(),
                representation: Representation::Angle,
                curve: Some(CurveDescriptor { weierstrass: None, conic: Some("ellipse".into()) }),
                group_orders: None,
                sets,
            }
        }
        LoadedConfig::EcRat { curve, roles } => ec_document(
            "rational".into(),
            WeierstrassCoeffs { a: rat_to_string(curve.a()), b: rat_to_string(curve.b()) },
            roles,
        ),
        LoadedConfig::EcFp { curve, roles } => ec_document(
            format!("fp:{}", curve.a().characteristic()),
            WeierstrassCoeffs { a: curve.a().to_string(), b: curve.b().to_string() },
            roles,
        ),
        LoadedConfig::Group { group, roles } => {
            let mut sets = BTreeMap::new();
            for (role, elems) in roles {
                let mut sorted = elems.clone();
                sorted.sort();
                sets.insert(
                    role.tag().to_string(),
                    sorted
                        .iter()
                        .map(|e| ElementRepr::Residues(e.residues().to_vec()))
                        .collect(),
                );
            }
            ConfigDocument {
                version: DOCUMENT_VERSION,
                field: "rational".into(),
                representation: Representation::Group,
                curve: None,
                group_orders: Some(group.orders().to_vec()),
                sets,
            }
        }
    }
}

fn ec_document<F: Field>(
    field: String,
    coeffs: WeierstrassCoeffs,
    roles: &BTreeMap<Role, Vec<EcPoint<F>>>,
) -> ConfigDocument
where
    F: std::fmt::Display,
{
    let mut sets = BTreeMap::new();
    for (role, pts) in roles {
        let mut sorted = pts.clone();
        sorted.sort();
        sets.insert(
            role.tag().to_string(),
            sorted
                .iter()
                .map(|p| match p {
                    EcPoint::Infinity => ElementRepr::Name("O".into()),
                    EcPoint::Affine(x, y) => {
                        ElementRepr::EcAffine { x: x.to_string(), y: y.to_string() }
                    }
                })
                .collect(),
        );
    }
    ConfigDocument {
        version: DOCUMENT_VERSION,
        field,
        representation: Representation::Ec,
        curve: Some(CurveDescriptor { weierstrass: Some(coeffs), conic: None }),
        group_orders: None,
        sets,
    }
}

/// One verification check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<VerifyCheck>,
}

fn check(name: &str, passed: bool, detail: Option<String>) -> VerifyCheck {
    VerifyCheck { name: name.into(), passed, detail }
}

fn planar_checks<F: Field>(pc: &PointConfig<F>) -> Result<Vec<VerifyCheck>> {
    let mut checks = Vec::new();
    let p = pc.role(Role::P);
    let b = pc.role(Role::B);
    let g = pc.role(Role::G);
    let r = pc.role(Role::R);
    if !p.is_empty() {
        let gp = is_general_position(p)?;
        checks.push(check("general position of P", gp, None));
        if p.len() >= 2 {
            let v = check_piercing(p, r)?;
            checks.push(check(
                "every determined line pierced",
                v.pierced,
                v.witness.map(|(a, b)| format!("unpierced pair {a}, {b}")),
            ));
        }
    } else if !b.is_empty() || !g.is_empty() {
        let union: Vec<ProjPoint<F>> = b.iter().chain(g.iter()).cloned().collect();
        let gp = is_general_position(&union)?;
        checks.push(check("general position of B ∪ G", gp, None));
        let v = check_piercing_bipartite(b, g, r)?;
        checks.push(check(
            "every cross line pierced",
            v.pierced,
            v.witness.map(|(a, b)| format!("unpierced pair {a}, {b}")),
        ));
    } else {
        checks.push(check("roles present", false, Some("no P or B/G sets".into())));
    }
    Ok(checks)
}

/// Run the representation-appropriate hypothesis checks.
pub fn verify(cfg: &LoadedConfig) -> Result<VerifyReport> {
    let checks = match cfg {
        LoadedConfig::PlanarRat(pc) => planar_checks(pc)?,
        LoadedConfig::PlanarFp(_, pc) => planar_checks(pc)?,
        LoadedConfig::Angle(ac) => {
            let mut checks = vec![check(
                "general position of circle-hosted sets",
                true,
                Some("a line meets the circle at most twice".into()),
            )];
            match ac.uncovered_class() {
                None => checks.push(check("every chord class covered", true, None)),
                Some(c) => checks.push(check(
                    "every chord class covered",
                    false,
                    Some(format!("class {c} is not blocked")),
                )),
            }
            checks
        }
        LoadedConfig::EcRat { curve, roles } => ec_checks(curve, roles)?,
        LoadedConfig::EcFp { curve, roles } => ec_checks(curve, roles)?,
        LoadedConfig::Group { group, roles } => {
            let sets = group_sets(group, roles)?;
            let empty: GroupSet<FinAbGroup> =
                GroupSet::new(group.clone(), std::iter::empty::<FinAbElem>())?;
            let neg_r = sets.get(&Role::R).unwrap_or(&empty).negated();
            let mut checks = Vec::new();
            if let Some(p) = sets.get(&Role::P) {
                if p.len() >= 2 {
                    let restricted = p.restricted_sumset()?;
                    let missing = restricted.iter().find(|s| !neg_r.contains(s)).cloned();
                    checks.push(check(
                        "P +. P inside -R",
                        missing.is_none(),
                        missing.map(|m| format!("pair sum {m} unblocked")),
                    ));
                }
            } else if let (Some(b), Some(g)) = (sets.get(&Role::B), sets.get(&Role::G)) {
                let sum = b.sumset(g)?;
                let missing = sum.iter().find(|s| !neg_r.contains(s)).cloned();
                checks.push(check(
                    "B + G inside -R",
                    missing.is_none(),
                    missing.map(|m| format!("pair sum {m} unblocked")),
                ));
            } else {
                checks.push(check("roles present", false, Some("no P or B/G sets".into())));
            }
            checks
        }
    };
    Ok(VerifyReport { passed: checks.iter().all(|c| c.passed), checks })
}

fn ec_checks<F: Field>(
    curve: &WeierstrassCurve<F>,
    roles: &BTreeMap<Role, Vec<EcPoint<F>>>,
) -> Result<Vec<VerifyCheck>> {
    let mut planar: BTreeMap<Role, Vec<ProjPoint<F>>> = BTreeMap::new();
    for (role, pts) in roles {
        planar.insert(*role, pts.iter().map(|p| curve.to_proj(p)).collect());
    }
    let mut checks = vec![check("all points on the curve", true, None)];
    checks.extend(planar_checks(&PointConfig::new(planar)?)?);
    Ok(checks)
}

fn group_sets(
    group: &FinAbGroup,
    roles: &BTreeMap<Role, Vec<FinAbElem>>,
) -> Result<BTreeMap<Role, GroupSet<FinAbGroup>>> {
    let mut out = BTreeMap::new();
    for (role, elems) in roles {
        out.insert(*role, GroupSet::new(group.clone(), elems.iter().cloned())?);
    }
    Ok(out)
}

/// Run the structure-recovery pipeline for group-representable documents.
pub fn analyze(cfg: &LoadedConfig) -> Result<StructureReport> {
    match cfg {
        LoadedConfig::PlanarRat(_) | LoadedConfig::PlanarFp(..) => Err(Error::Usage(
            "analysis requires a group representation (angle, ec or group)".into(),
        )),
        LoadedConfig::Angle(ac) => {
            // blocking classes c correspond to group elements z = -c under
            // the map to the line at infinity
            let blockers = GroupSet::new(
                CircleGroup,
                ac.directions().iter().map(AngleElem::neg),
            )?;
            if let Some(p) = ac.role(Role::P) {
                let p = GroupSet::new(CircleGroup, p.iter().cloned())?;
                analyze_unipartite(&p, &blockers)
            } else if let (Some(b), Some(g)) = (ac.role(Role::B), ac.role(Role::G)) {
                let b = GroupSet::new(CircleGroup, b.iter().cloned())?;
                let g = GroupSet::new(CircleGroup, g.iter().cloned())?;
                analyze_bipartite(&b, &g, &blockers)
            } else {
                Err(Error::Usage("no P or B/G sets to analyze".into()))
            }
        }
        LoadedConfig::EcRat { curve, roles } => analyze_ec(curve, roles),
        LoadedConfig::EcFp { curve, roles } => analyze_ec(curve, roles),
        LoadedConfig::Group { group, roles } => {
            let sets = group_sets(group, roles)?;
            let empty: GroupSet<FinAbGroup> =
                GroupSet::new(group.clone(), std::iter::empty::<FinAbElem>())?;
            let r = sets.get(&Role::R).unwrap_or(&empty);
            if let Some(p) = sets.get(&Role::P) {
                analyze_unipartite(p, r)
            } else if let (Some(b), Some(g)) = (sets.get(&Role::B), sets.get(&Role::G)) {
                analyze_bipartite(b, g, r)
            } else {
                Err(Error::Usage("no P or B/G sets to analyze".into()))
            }
        }
    }
}

fn analyze_ec<F: Field>(
    curve: &WeierstrassCurve<F>,
    roles: &BTreeMap<Role, Vec<EcPoint<F>>>,
) -> Result<StructureReport> {
    let group = EcGroup::new(curve.clone());
    let empty: GroupSet<EcGroup<F>> =
        GroupSet::new(group.clone(), std::iter::empty::<EcPoint<F>>())?;
    let mut sets: BTreeMap<Role, GroupSet<EcGroup<F>>> = BTreeMap::new();
    for (role, pts) in roles {
        sets.insert(*role, GroupSet::new(group.clone(), pts.iter().cloned())?);
    }
    let r = sets.get(&Role::R).unwrap_or(&empty);
    if let Some(p) = sets.get(&Role::P) {
        analyze_unipartite(p, r)
    } else if let (Some(b), Some(g)) = (sets.get(&Role::B), sets.get(&Role::G)) {
        analyze_bipartite(b, g, r)
    } else {
        Err(Error::Usage("no P or B/G sets to analyze".into()))
    }
}

/// Exact minimum piercing for planar rational documents.
pub fn min_piercing(cfg: &LoadedConfig, limit: usize) -> Result<MinPiercing> {
    match cfg {
        LoadedConfig::PlanarRat(pc) => {
            let p = pc.role(Role::P);
            if p.is_empty() {
                return Err(Error::Usage("minimum piercing needs a P set".into()));
            }
            min_piercing_number(p, limit)
        }
        _ => Err(Error::Usage(
            "minimum piercing runs on planar rational documents only".into(),
        )),
    }
}

/// Parameters for [`construct`]; unused fields are ignored by each name.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ConstructParams {
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub p: Option<u64>,
    pub b: Option<i64>,
    pub order: Option<u64>,
    #[serde(default)]
    pub subgroup_index: usize,
}

fn need(name: &str, value: Option<u64>, flag: &str) -> Result<u64> {
    value.ok_or_else(|| Error::Usage(format!("construct {name} needs --{flag}")))
}

/// Build one of the named configurations as a document.
pub fn construct(name: &str, params: &ConstructParams) -> Result<ConfigDocument> {
    let cfg = match name {
        "regular-mgon" => {
            let m = need(name, params.m, "m")?;
            let pts = regular_mgon(m)?;
            let classes = crate::constructions::pair_classes(&pts);
            let mut roles = BTreeMap::new();
            roles.insert(Role::P, pts);
            LoadedConfig::Angle(AngleConfig::new(roles, classes)?)
        }
        "rotated-union" => {
            let m = need(name, params.m, "m")?;
            LoadedConfig::Angle(rotated_union(m)?)
        }
        "bipartite" => {
            let k = need(name, params.k, "k")?;
            LoadedConfig::Angle(bipartite_construction(k)?.config)
        }
        "quadrilateral" => LoadedConfig::PlanarRat(complete_quadrilateral()),
        "two-point" => LoadedConfig::PlanarRat(two_point()),
        "three-line" => LoadedConfig::PlanarRat(three_line_bipartite()),
        "fp-coset" => {
            let p = need(name, params.p, "p")?;
            let b = params.b.ok_or_else(|| Error::Usage("construct fp-coset needs --b".into()))?;
            let order = need(name, params.order, "order")?;
            ExactField::prime(p)?;
            let curve = WeierstrassCurve::new(FpElem::new(p, 0), FpElem::new(p, b))?;
            let group = EcGroup::new(curve.clone());
            let mut subgroups: Vec<_> = all_subgroups(&group)?
                .into_iter()
                .filter(|h| h.order() as u64 == order)
                .collect();
            subgroups.sort_by(|a, b| {
                a.iter().cloned().collect::<Vec<_>>().cmp(&b.iter().cloned().collect::<Vec<_>>())
            });
            let h = subgroups.get(params.subgroup_index).ok_or_else(|| {
                Error::Usage(format!(
                    "curve has {} subgroup(s) of order {order}; index {} is out of range",
                    subgroups.len(),
                    params.subgroup_index
                ))
            })?;
            let g = curve
                .enumerate_points()?
                .into_iter()
                .find(|g| !h.contains(&curve.scalar_mul(3, g).expect("on curve")))
                .ok_or_else(|| {
                    Error::Usage(format!(
                        "no valid offset: every point has 3g inside the chosen order-{order} subgroup"
                    ))
                })?;
            let inst = fp_coset_instance(&curve, h, &g)?;
            let mut roles = BTreeMap::new();
            roles.insert(Role::P, inst.points.iter().cloned().collect::<Vec<_>>());
            roles.insert(Role::R, inst.blockers.iter().cloned().collect::<Vec<_>>());
            LoadedConfig::EcFp { curve, roles }
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown construction {other:?}; expected one of regular-mgon, rotated-union, \
                 bipartite, quadrilateral, three-line, fp-coset, two-point"
            )))
        }
    };
    Ok(to_document(&cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_canonical() {
        for (name, params) in [
            ("rotated-union", ConstructParams { m: Some(5), ..Default::default() }),
            ("bipartite", ConstructParams { k: Some(3), ..Default::default() }),
            ("quadrilateral", ConstructParams::default()),
            ("two-point", ConstructParams::default()),
            ("three-line", ConstructParams::default()),
            (
                "fp-coset",
                ConstructParams {
                    p: Some(7),
                    b: Some(1),
                    order: Some(3),
                    ..Default::default()
                },
            ),
        ] {
            let doc = construct(name, &params).unwrap();
            let json = canonical_json(&doc);
            let reparsed = parse_document(&json).unwrap();
            assert_eq!(doc, reparsed, "{name}");
            let reloaded = load(&reparsed).unwrap();
            assert_eq!(canonical_json(&to_document(&reloaded)), json, "{name}");
        }
    }

    #[test]
    fn constructed_documents_verify() {
        for (name, params) in [
            ("regular-mgon", ConstructParams { m: Some(6), ..Default::default() }),
            ("rotated-union", ConstructParams { m: Some(4), ..Default::default() }),
            ("bipartite", ConstructParams { k: Some(5), ..Default::default() }),
            ("quadrilateral", ConstructParams::default()),
            ("two-point", ConstructParams::default()),
            ("three-line", ConstructParams::default()),
            (
                "fp-coset",
                ConstructParams {
                    p: Some(13),
                    b: Some(1),
                    order: Some(3),
                    ..Default::default()
                },
            ),
        ] {
            let doc = construct(name, &params).unwrap();
            let report = verify(&load(&doc).unwrap()).unwrap();
            assert!(report.passed, "{name}: {report:?}");
        }
    }

    #[test]
    fn verify_fails_with_witness() {
        let mut doc = construct("quadrilateral", &ConstructParams::default()).unwrap();
        // strip the blockers down to one direction
        let r = doc.sets.get_mut("R").unwrap();
        r.truncate(1);
        let report = verify(&load(&doc).unwrap()).unwrap();
        assert!(!report.passed);
        let failing = report.checks.iter().find(|c| !c.passed).unwrap();
        assert!(failing.detail.as_ref().unwrap().contains("unpierced"));
    }

    #[test]
    fn analyze_rejects_planar() {
        let doc = construct("quadrilateral", &ConstructParams::default()).unwrap();
        let err = analyze(&load(&doc).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn analyze_fp_coset_document() {
        let doc = construct(
            "fp-coset",
            &ConstructParams { p: Some(7), b: Some(1), order: Some(3), ..Default::default() },
        )
        .unwrap();
        let report = analyze(&load(&doc).unwrap()).unwrap();
        assert!(report.pierced);
        assert_eq!(report.h.unwrap().order, 3);
        assert_eq!(report.h_size_le_r, Some(true));
    }

    #[test]
    fn analyze_rotated_union_document() {
        let doc =
            construct("rotated-union", &ConstructParams { m: Some(4), ..Default::default() })
                .unwrap();
        let report = analyze(&load(&doc).unwrap()).unwrap();
        assert!(report.pierced);
        assert!(report.h.is_none());
        assert!(report.diagnostics.iter().any(|d| d.contains("infinite")));
    }

    #[test]
    fn schema_errors() {
        assert!(parse_document("not json").is_err());
        assert!(parse_document("{\"version\": 99}").is_err());
        let doc = ConfigDocument {
            version: 1,
            field: "fp:6".into(),
            representation: Representation::Planar,
            curve: None,
            group_orders: None,
            sets: BTreeMap::new(),
        };
        assert!(load(&doc).is_err());
    }

    #[test]
    fn group_document_loads_and_analyzes() {
        let json = r#"{
            "version": 1,
            "field": "rational",
            "representation": "group",
            "group_orders": [15],
            "sets": {
                "B": [[1], [4], [7], [10], [13]],
                "G": [[1], [4], [7], [10], [13]],
                "R": [[13], [10], [7], [4], [1]]
            }
        }"#;
        let doc = parse_document(json).unwrap();
        let err = load(&doc).unwrap_err();
        // B and G coincide: roles must be disjoint
        assert!(matches!(err, Error::Usage(_)), "{err:?}");
    }

    #[test]
    fn group_document_unipartite() {
        // P = 1 + {0,4,8,12,16} in Z_20, R = -(P +. P) = {2,6,10,14,18}
        let json = r#"{
            "version": 1,
            "field": "rational",
            "representation": "group",
            "group_orders": [20],
            "sets": {
                "P": [[1], [5], [9], [13], [17]],
                "R": [[2], [6], [10], [14], [18]]
            }
        }"#;
        let doc = parse_document(json).unwrap();
        let loaded = load(&doc).unwrap();
        let report = analyze(&loaded).unwrap();
        assert!(report.pierced);
        assert_eq!(report.h.unwrap().order, 5);
        assert_eq!(report.h_size_le_r, Some(true));
    }
}
