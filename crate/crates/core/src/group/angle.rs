//! The circle group R/Z extended by a formal generic rotation.
//!
//! An [`AngleElem`] is q + c*theta with q a rational in [0,1) and theta a
//! formal transcendental: no relation c*theta in Q holds for c != 0, so
//! equality is componentwise and "generic rotation" statements become exactly
//! decidable instead of floating-point approximations.

use std::fmt;

use num::{BigRational, One, Signed, Zero};

use super::AbelianGroup;
use crate::field::Rat;

/// q + c*theta in the circle group, q canonical in [0,1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AngleElem {
    q: Rat,
    c: i64,
}

impl AngleElem {
    pub fn new(q: Rat, c: i64) -> Self {
        AngleElem { q: canonical_mod_one(q), c }
    }

    pub fn rational(q: Rat) -> Self {
        AngleElem::new(q, 0)
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn theta_coeff(&self) -> i64 {
        self.c
    }

    pub fn add(&self, rhs: &AngleElem) -> AngleElem {
        AngleElem::new(&self.q + &rhs.q, self.c + rhs.c)
    }

    pub fn neg(&self) -> AngleElem {
        AngleElem::new(-&self.q, -self.c)
    }

    pub fn sub(&self, rhs: &AngleElem) -> AngleElem {
        self.add(&rhs.neg())
    }

    pub fn double(&self) -> AngleElem {
        self.add(self)
    }

    /// Half-turn shift; planar point reflection through the circle center.
    pub fn antipode(&self) -> AngleElem {
        AngleElem::new(&self.q + Rat::new(1.into(), 2.into()), self.c)
    }

    /// Numeric value q + c*theta_value, for rendering only.
    pub fn to_f64(&self, theta_value: f64) -> f64 {
        let q = approx_rat(&self.q);
        (q + self.c as f64 * theta_value).rem_euclid(1.0)
    }
}

fn canonical_mod_one(q: Rat) -> Rat {
    let f = q.floor();
    q - f
}

fn approx_rat(q: &Rat) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl fmt::Display for AngleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.c) {
            (true, 0) => write!(f, "0"),
            (true, c) => write!(f, "{}", theta_part(c)),
            (false, 0) => write!(f, "{}", self.q),
            (false, c) if c < 0 => write!(f, "{}{}", self.q, theta_part(c)),
            (false, c) => write!(f, "{}+{}", self.q, theta_part(c)),
        }
    }
}

fn theta_part(c: i64) -> String {
    match c {
        1 => "θ".to_string(),
        -1 => "-θ".to_string(),
        c => format!("{c}θ"),
    }
}

/// The circle group carrying [`AngleElem`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGroup;

impl AbelianGroup for CircleGroup {
    type Elem = AngleElem;

    fn zero(&self) -> AngleElem {
        AngleElem::new(Rat::zero(), 0)
    }

    fn add(&self, a: &AngleElem, b: &AngleElem) -> AngleElem {
        a.add(b)
    }

    fn neg(&self, a: &AngleElem) -> AngleElem {
        a.neg()
    }

    fn contains(&self, a: &AngleElem) -> bool {
        !a.q.is_negative() && a.q < BigRational::one()
    }

    fn elements(&self) -> Option<Vec<AngleElem>> {
        None
    }

    fn element_order(&self, a: &AngleElem) -> Option<u64> {
        if a.c != 0 {
            return None;
        }
        // order of n/d in Q/Z is d
        a.q.denom().try_into().ok()
    }

    fn doubling_constant(&self) -> u64 {
        2
    }

    fn finite_subgroup_bound(&self) -> Option<u64> {
        None
    }
}
