//! Reducible cubics: a quadric plus the line at infinity, with the group
//! structure that makes "three collinear points sum to zero" hold across the
//! two components.
//!
//! Canonical quadrics and their groups:
//!
//! * ellipse — unit circle x^2 + y^2 = 1, group = angles mod one full turn.
//!   Two parametrizations are kept side by side: [`AngleElem`] (exact group
//!   reasoning, numeric embedding only for rendering) and the rational
//!   tan-half-angle chart [`TanAngle`] (exact embedding, exact collinearity).
//! * parabola — y = x^2, group = (Q, +): the chord through parameters s, t
//!   has slope s + t.
//! * hyperbola — x y = 1, group = (Q*, *): the chord through s, t has slope
//!   -1/(st), so the group identity is 1 and "zero sum" means x*y*z = 1.
//!
//! The map to the line at infinity sends z to the direction of slope -z for
//! the parabola and hyperbola, and to (u_{-z} : 1 : 0)-style direction for
//! the circle; with these choices x + y + z = 0 iff phi_Q(x), phi_Q(y),
//! phi_ell(z) are collinear, which the property tests verify in exact
//! arithmetic.

use std::fmt;

use num::{One, Zero};

use crate::field::{Field, Rat};
use crate::group::angle::AngleElem;
use crate::group::AbelianGroup;
use crate::plane::ProjPoint;
use crate::{Error, Result};

/// The three canonical quadrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
}

impl ConicKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ConicKind::Ellipse => "ellipse",
            ConicKind::Parabola => "parabola",
            ConicKind::Hyperbola => "hyperbola",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ellipse" => Ok(ConicKind::Ellipse),
            "parabola" => Ok(ConicKind::Parabola),
            "hyperbola" => Ok(ConicKind::Hyperbola),
            _ => Err(Error::Schema(format!("unknown conic kind {s:?}"))),
        }
    }
}

/// Largest finite subgroup the quadric's group can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupBound {
    AtMost(u64),
    Unbounded,
}

/// The parabola and hyperbola groups carry no finite subgroup of size
/// greater than 2; the circle carries one of every order.
pub fn finite_subgroup_obstruction(kind: ConicKind) -> SubgroupBound {
    match kind {
        ConicKind::Ellipse => SubgroupBound::Unbounded,
        ConicKind::Parabola | ConicKind::Hyperbola => SubgroupBound::AtMost(2),
    }
}

/// Angle on the unit circle in the rational tan-half-angle chart:
/// `Fin(u)` is the angle t with u = tan(pi t); `Inf` is the half turn.
///
/// Addition of angles becomes the tangent addition law, exact over Q.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TanAngle {
    Fin(Rat),
    Inf,
}

impl TanAngle {
    pub fn from_int(n: i64) -> Self {
        TanAngle::Fin(Rat::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        TanAngle::Fin(Rat::zero())
    }

    pub fn add(&self, rhs: &TanAngle) -> TanAngle {
        match (self, rhs) {
            (TanAngle::Inf, TanAngle::Inf) => TanAngle::Fin(Rat::zero()),
            (TanAngle::Inf, TanAngle::Fin(u)) | (TanAngle::Fin(u), TanAngle::Inf) => {
                if u.is_zero() {
                    TanAngle::Inf
                } else {
                    // tan(t + 1/2 turn-half) = -1/tan t
                    TanAngle::Fin(-u.recip())
                }
            }
            (TanAngle::Fin(a), TanAngle::Fin(b)) => {
                let denom = Rat::one() - a * b;
                if denom.is_zero() {
                    TanAngle::Inf
                } else {
                    TanAngle::Fin((a + b) / denom)
                }
            }
        }
    }

    pub fn neg(&self) -> TanAngle {
        match self {
            TanAngle::Inf => TanAngle::Inf,
            TanAngle::Fin(u) => TanAngle::Fin(-u),
        }
    }

    /// The circle point (cos, sin) of this angle, exact over Q.
    pub fn circle_point(&self) -> ProjPoint<Rat> {
        match self {
            TanAngle::Inf => ProjPoint::affine(-Rat::one(), Rat::zero()),
            TanAngle::Fin(u) => {
                let u2 = u * u;
                let denom = Rat::one() + &u2;
                ProjPoint::affine((Rat::one() - &u2) / &denom, (u + u) / &denom)
            }
        }
    }
}

impl fmt::Display for TanAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TanAngle::Inf => write!(f, "inf"),
            TanAngle::Fin(u) => write!(f, "{u}"),
        }
    }
}

/// Element of the quadric's group, tagged by conic kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GtElement {
    /// Circle angle in the tan-half-angle chart.
    Ellipse(TanAngle),
    /// Parabola parameter in (Q, +).
    Parabola(Rat),
    /// Hyperbola parameter in (Q*, *); never zero.
    Hyperbola(Rat),
}

impl GtElement {
    pub fn kind(&self) -> ConicKind {
        match self {
            GtElement::Ellipse(_) => ConicKind::Ellipse,
            GtElement::Parabola(_) => ConicKind::Parabola,
            GtElement::Hyperbola(_) => ConicKind::Hyperbola,
        }
    }

    pub fn hyperbola(s: Rat) -> Result<GtElement> {
        if s.is_zero() {
            return Err(Error::Degenerate("hyperbola parameter must be nonzero".into()));
        }
        Ok(GtElement::Hyperbola(s))
    }

    fn require_kind(&self, other: &GtElement) -> Result<()> {
        if self.kind() != other.kind() {
            return Err(Error::Usage(format!(
                "mixed conic kinds: {} vs {}",
                self.kind().tag(),
                other.kind().tag()
            )));
        }
        Ok(())
    }

    /// Group operation of the kind's group.
    pub fn compose(&self, rhs: &GtElement) -> Result<GtElement> {
        self.require_kind(rhs)?;
        Ok(match (self, rhs) {
            (GtElement::Ellipse(a), GtElement::Ellipse(b)) => GtElement::Ellipse(a.add(b)),
            (GtElement::Parabola(a), GtElement::Parabola(b)) => GtElement::Parabola(a + b),
            (GtElement::Hyperbola(a), GtElement::Hyperbola(b)) => GtElement::Hyperbola(a * b),
            _ => unreachable!("kinds checked above"),
        })
    }

    pub fn inverse(&self) -> GtElement {
        match self {
            GtElement::Ellipse(a) => GtElement::Ellipse(a.neg()),
            GtElement::Parabola(a) => GtElement::Parabola(-a),
            GtElement::Hyperbola(a) => GtElement::Hyperbola(a.recip()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GtElement::Ellipse(a) => *a == TanAngle::zero(),
            GtElement::Parabola(a) => a.is_zero(),
            GtElement::Hyperbola(a) => a.is_one(),
        }
    }
}

/// The map from the group onto the quadric.
pub fn phi_q(t: &GtElement) -> ProjPoint<Rat> {
    match t {
        GtElement::Ellipse(u) => u.circle_point(),
        GtElement::Parabola(s) => ProjPoint::affine(s.clone(), s * s),
        GtElement::Hyperbola(s) => ProjPoint::affine(s.clone(), s.recip()),
    }
}

/// The map from the group onto the line at infinity.
pub fn phi_ell(z: &GtElement) -> ProjPoint<Rat> {
    match z {
        GtElement::Ellipse(u) => match u {
            TanAngle::Inf => ProjPoint::at_infinity(Rat::one(), Rat::zero()).expect("direction"),
            TanAngle::Fin(u) => {
                ProjPoint::at_infinity(u.clone(), Rat::one()).expect("direction")
            }
        },
        GtElement::Parabola(z) | GtElement::Hyperbola(z) => {
            ProjPoint::at_infinity(Rat::one(), -z).expect("direction")
        }
    }
}

/// The two sides of the collinearity bridge, computed independently: the
/// group verdict x+y+z = 0 and the geometric verdict that phi_Q(x), phi_Q(y),
/// phi_ell(z) are collinear. They must always agree.
pub fn gt_collinear_check(
    x: &GtElement,
    y: &GtElement,
    z: &GtElement,
) -> Result<(bool, bool)> {
    x.require_kind(y)?;
    x.require_kind(z)?;
    if x == y {
        return Err(Error::Degenerate("chord needs two distinct conic points".into()));
    }
    let group_zero = x.compose(y)?.compose(z)?.is_identity();
    let geometric = crate::plane::collinear(&phi_q(x), &phi_q(y), &phi_ell(z))?;
    Ok((group_zero, geometric))
}

/// Direction class of the chord through circle angles a and b: a + b mod 1.
/// Two chords are parallel exactly when their classes coincide. `tangent`
/// flags the degenerate a = b case (the class is then the tangent direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordClass {
    pub class: AngleElem,
    pub tangent: bool,
}

pub fn direction_class_of_chord(a: &AngleElem, b: &AngleElem) -> ChordClass {
    ChordClass { class: a.add(b), tangent: a == b }
}

/// The additive group (Q, +) carried by the parabola.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParabolaGroup;

impl AbelianGroup for ParabolaGroup {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn neg(&self, a: &Rat) -> Rat {
        -a
    }

    fn contains(&self, _a: &Rat) -> bool {
        true
    }

    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }

    fn element_order(&self, a: &Rat) -> Option<u64> {
        if a.is_zero() {
            Some(1)
        } else {
            None
        }
    }

    fn doubling_constant(&self) -> u64 {
        1
    }

    fn finite_subgroup_bound(&self) -> Option<u64> {
        Some(2)
    }
}

/// The multiplicative group (Q*, *) carried by the hyperbola.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperbolaGroup;

impl AbelianGroup for HyperbolaGroup {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::one()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn neg(&self, a: &Rat) -> Rat {
        a.recip()
    }

    fn contains(&self, a: &Rat) -> bool {
        !a.is_zero()
    }

    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }

    fn element_order(&self, a: &Rat) -> Option<u64> {
        if a.is_one() {
            Some(1)
        } else if (-a).is_one() {
            Some(2)
        } else {
            None
        }
    }

    // z*z = 1 has exactly the solutions 1 and -1
    fn doubling_constant(&self) -> u64 {
        2
    }

    fn finite_subgroup_bound(&self) -> Option<u64> {
        Some(2)
    }
}
