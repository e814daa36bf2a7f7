//! Irreducible cubics in short Weierstrass form y^2 = x^3 + a x + b with the
//! chord–tangent group law, over the rationals or a prime field.
//!
//! Three distinct curve points are collinear exactly when they sum to the
//! identity; a line tangent at B through A gives A + B + B = 0. The bridge to
//! [`crate::plane`] goes through [`EcPoint::to_proj`] with the identity at
//! (0 : 1 : 0).

use std::collections::BTreeSet;
use std::fmt;

use crate::field::Field;
use crate::group::{AbelianGroup, Subgroup, DEFAULT_CLOSURE_CAP};
use crate::plane::ProjPoint;
use crate::{Error, Result};

/// Largest prime modulus accepted for full point enumeration.
pub const MAX_ENUM_PRIME: u64 = 50_000;

/// y^2 = x^3 + a x + b, nonsingular, over a field of characteristic != 2, 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve<F: Field> {
    a: F,
    b: F,
}

/// Point of a Weierstrass curve: the identity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EcPoint<F: Field> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> fmt::Display for EcPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EcPoint::Infinity => write!(f, "O"),
            EcPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        if !a.same_field(&b) {
            return Err(Error::MixedFields);
        }
        let ch = a.characteristic();
        if ch == 2 || ch == 3 {
            return Err(Error::Usage(
                "short Weierstrass form needs characteristic other than 2 and 3".into(),
            ));
        }
        // 4a^3 + 27b^2 != 0
        let four = small(&a, 4);
        let twenty_seven = small(&a, 27);
        let disc = four.mul(&a.mul(&a).mul(&a)).add(&twenty_seven.mul(&b.mul(&b)));
        if disc.is_zero() {
            return Err(Error::Usage("singular curve: 4a^3 + 27b^2 = 0".into()));
        }
        Ok(WeierstrassCurve { a, b })
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn contains(&self, p: &EcPoint<F>) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => {
                x.same_field(&self.a)
                    && y.same_field(&self.a)
                    && y.mul(y) == x.mul(x).mul(x).add(&self.a.mul(x)).add(&self.b)
            }
        }
    }

    fn require_on_curve(&self, p: &EcPoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn neg(&self, p: &EcPoint<F>) -> EcPoint<F> {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), y.neg()),
        }
    }

    /// Chord–tangent sum of two points.
    pub fn add(&self, p: &EcPoint<F>, q: &EcPoint<F>) -> Result<EcPoint<F>> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EcPoint<F>, q: &EcPoint<F>) -> EcPoint<F> {
        let (x1, y1) = match p {
            EcPoint::Infinity => return q.clone(),
            EcPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            EcPoint::Infinity => return p.clone(),
            EcPoint::Affine(x, y) => (x, y),
        };
        let slope = if x1 == x2 {
            if *y1 == y2.neg() {
                return EcPoint::Infinity;
            }
            // tangent: (3x^2 + a) / 2y
            let num = small(x1, 3).mul(&x1.mul(x1)).add(&self.a);
            let den = small(y1, 2).mul(y1);
            num.mul(&den.inv().expect("2y != 0 since p != -p"))
        } else {
            let num = y2.sub(y1);
            let den = x2.sub(x1);
            num.mul(&den.inv().expect("x1 != x2"))
        };
        let x3 = slope.mul(&slope).sub(x1).sub(x2);
        let y3 = slope.mul(&x1.sub(&x3)).sub(y1);
        EcPoint::Affine(x3, y3)
    }

    /// The unique r with p + q + r = 0, i.e. the third intersection of the
    /// chord through two distinct points.
    pub fn chord_third(&self, p: &EcPoint<F>, q: &EcPoint<F>) -> Result<EcPoint<F>> {
        if p == q {
            return Err(Error::Degenerate(
                "chord needs distinct points; use tangent_third".into(),
            ));
        }
        Ok(self.neg(&self.add(p, q)?))
    }

    /// The r with 2p + r = 0: the third intersection of the tangent at p.
    pub fn tangent_third(&self, p: &EcPoint<F>) -> Result<EcPoint<F>> {
        Ok(self.neg(&self.add(p, p)?))
    }

    pub fn scalar_mul(&self, n: i64, p: &EcPoint<F>) -> Result<EcPoint<F>> {
        self.require_on_curve(p)?;
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut acc = EcPoint::Infinity;
        for _ in 0..n.unsigned_abs() {
            acc = self.add_unchecked(&acc, &base);
        }
        Ok(acc)
    }

    /// All points of the curve, identity included, over a small prime field.
    pub fn enumerate_points(&self) -> Result<Vec<EcPoint<F>>> {
        let p = self.a.characteristic();
        if p == 0 {
            return Err(Error::Unsupported(
                "point enumeration needs a prime field".into(),
            ));
        }
        if p > MAX_ENUM_PRIME {
            return Err(Error::Unsupported(format!(
                "prime {p} exceeds the enumeration bound {MAX_ENUM_PRIME}"
            )));
        }
        let elems = self.a.enumerate_field().expect("prime fields enumerate");
        let mut points = vec![EcPoint::Infinity];
        for x in &elems {
            let rhs = x.mul(x).mul(x).add(&self.a.mul(x)).add(&self.b);
            for y in &elems {
                if y.mul(y) == rhs {
                    points.push(EcPoint::Affine(x.clone(), y.clone()));
                }
            }
        }
        Ok(points)
    }

    /// Embed into the projective plane; the identity is the point (0 : 1 : 0).
    pub fn to_proj(&self, p: &EcPoint<F>) -> ProjPoint<F> {
        match p {
            EcPoint::Infinity => {
                ProjPoint::at_infinity(self.a.zero_like(), self.a.one_like())
                    .expect("(0:1:0) is a valid point")
            }
            EcPoint::Affine(x, y) => ProjPoint::affine(x.clone(), y.clone()),
        }
    }

    /// Inverse of [`Self::to_proj`]; errors when the plane point is not on
    /// the curve.
    pub fn from_proj(&self, p: &ProjPoint<F>) -> Result<EcPoint<F>> {
        let candidate = match p.to_affine() {
            Some((x, y)) => EcPoint::Affine(x, y),
            None => {
                let (x, _, _) = p.coords();
                if x.is_zero() {
                    EcPoint::Infinity
                } else {
                    return Err(Error::OffCurve);
                }
            }
        };
        self.require_on_curve(&candidate)?;
        Ok(candidate)
    }

    /// The points of order dividing 2 (the identity and the y = 0 points).
    pub fn two_torsion(&self) -> Vec<EcPoint<F>> {
        let mut out = vec![EcPoint::Infinity];
        for root in F::cubic_roots(&self.a, &self.b) {
            out.push(EcPoint::Affine(root.clone(), root.zero_like()));
        }
        out
    }

    /// Number of curve points x with x + x = -a, i.e. tangency points of
    /// lines through `a`. Exhaustive over prime fields; over the rationals
    /// the count is taken inside the capped subgroup generated by `a` and
    /// the 2-torsion, which contains every solution reachable at desk scale.
    pub fn tangent_count_through(&self, a: &ProjPoint<F>) -> Result<usize> {
        let a_ec = self.from_proj(a)?;
        let target = self.neg(&a_ec);
        let count = if self.a.characteristic() != 0 {
            self.enumerate_points()?
                .iter()
                .filter(|x| self.add_unchecked(x, x) == target)
                .count()
        } else {
            let mut gens = self.two_torsion();
            gens.push(a_ec);
            let group = EcGroup::new(self.clone());
            match crate::group::subgroup_generated(&group, &gens, DEFAULT_CLOSURE_CAP) {
                Some(h) => h
                    .iter()
                    .filter(|x| self.add_unchecked(x, x) == target)
                    .count(),
                None => {
                    return Err(Error::Unsupported(
                        "tangent search closure exceeded the cap".into(),
                    ))
                }
            }
        };
        // solutions of 2x = c form at most one 2-torsion coset; the cubic
        // bound for tangents through a point is 6
        assert!(count <= 6, "tangent count {count} exceeds the cubic bound");
        Ok(count)
    }
}

fn small<F: Field>(witness: &F, n: u64) -> F {
    let one = witness.one_like();
    let mut acc = witness.zero_like();
    for _ in 0..n {
        acc = acc.add(&one);
    }
    acc
}

/// Closure of a point set under the group law, or `None` past the cap.
pub fn subgroup_generated_on_curve<F: Field>(
    curve: &WeierstrassCurve<F>,
    gens: &[EcPoint<F>],
    cap: usize,
) -> Result<Option<Subgroup<EcGroup<F>>>> {
    for g in gens {
        curve.require_on_curve(g)?;
    }
    let group = EcGroup::new(curve.clone());
    Ok(crate::group::subgroup_generated(&group, gens, cap))
}

/// The abelian group of a Weierstrass curve, for [`crate::group`] machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcGroup<F: Field> {
    curve: WeierstrassCurve<F>,
}

impl<F: Field> EcGroup<F> {
    pub fn new(curve: WeierstrassCurve<F>) -> Self {
        EcGroup { curve }
    }

    pub fn curve(&self) -> &WeierstrassCurve<F> {
        &self.curve
    }
}

impl<F: Field> AbelianGroup for EcGroup<F> {
    type Elem = EcPoint<F>;

    fn zero(&self) -> EcPoint<F> {
        EcPoint::Infinity
    }

    fn add(&self, a: &EcPoint<F>, b: &EcPoint<F>) -> EcPoint<F> {
        debug_assert!(self.curve.contains(a) && self.curve.contains(b));
        self.curve.add_unchecked(a, b)
    }

    fn neg(&self, a: &EcPoint<F>) -> EcPoint<F> {
        self.curve.neg(a)
    }

    fn contains(&self, a: &EcPoint<F>) -> bool {
        self.curve.contains(a)
    }

    fn elements(&self) -> Option<Vec<EcPoint<F>>> {
        self.curve.enumerate_points().ok()
    }

    fn element_order(&self, a: &EcPoint<F>) -> Option<u64> {
        // Over the rationals non-torsion points blow up in coordinate size
        // very quickly, so the order search stops early; rational torsion at
        // desk scale is far below this cap.
        let cap: u64 = if self.curve.a().characteristic() == 0 { 64 } else { 100_000 };
        let mut acc = a.clone();
        let mut k = 1u64;
        while acc != EcPoint::Infinity {
            if k >= cap {
                return None;
            }
            acc = self.curve.add_unchecked(&acc, a);
            k += 1;
        }
        Some(k)
    }

    fn doubling_constant(&self) -> u64 {
        self.curve.two_torsion().len() as u64
    }

    fn finite_subgroup_bound(&self) -> Option<u64> {
        None
    }
}
