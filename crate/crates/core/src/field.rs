//! Exact fields: arbitrary-precision rationals and prime fields F_p.
//!
//! All geometry and group arithmetic in this crate is parameterized over
//! [`Field`]. The two implementations are [`Rat`] (an alias for
//! `num::BigRational`) and [`FpElem`] (a residue carrying its modulus, so
//! mixed-modulus arithmetic is detectable at runtime).

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number.
pub type Rat = BigRational;

/// Element of an exact field with decidable equality.
///
/// Implementations must make all four field operations exact. `self` acts as
/// a witness for the field it belongs to (`zero_like`, `one_like`), which is
/// what lets prime-field elements carry their modulus as a value.
pub trait Field: Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Whether `self` and `rhs` live in the same field instance.
    fn same_field(&self, rhs: &Self) -> bool;
    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;
    /// All field elements, when the field is finite.
    fn enumerate_field(&self) -> Option<Vec<Self>>;
    /// The distinct roots of x^3 + a x + b in the field.
    fn cubic_roots(a: &Self, b: &Self) -> Vec<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn same_field(&self, _rhs: &Self) -> bool {
        true
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn enumerate_field(&self) -> Option<Vec<Self>> {
        None
    }

    fn cubic_roots(a: &Self, b: &Self) -> Vec<Self> {
        rational_cubic_roots(a, b)
    }
}

/// Roots of x^3 + a x + b over Q by the rational root theorem.
///
/// A reduced root u/v of D x^3 + (aD) x + (bD) (D clearing all denominators)
/// must have u | bD and v | D, so both ranges are finite and small for the
/// desk-scale curves this crate works with.
fn rational_cubic_roots(a: &Rat, b: &Rat) -> Vec<Rat> {
    let mut roots: Vec<Rat> = Vec::new();
    if Zero::is_zero(b) {
        // x (x^2 + a) = 0
        roots.push(Rat::zero());
        let minus_a = -a;
        if let Some(r) = rational_sqrt(&minus_a) {
            if !Zero::is_zero(&r) {
                roots.push(r.clone());
                roots.push(-r);
            }
        }
        roots.sort();
        roots.dedup();
        return roots;
    }
    let d = a.denom().lcm(b.denom());
    let big_a = (a * Rat::from_integer(d.clone())).to_integer();
    let big_b = (b * Rat::from_integer(d.clone())).to_integer();
    let u_divs = divisors(&big_b.abs());
    let v_divs = divisors(&d.abs());
    for u_abs in &u_divs {
        for v in &v_divs {
            if u_abs.gcd(v) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                let u = u_abs * BigInt::from(sign);
                let x = Rat::new(u, v.clone());
                // x^3 + a x + b
                let val = &x * &x * &x + a * &x + b;
                if Zero::is_zero(&val) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// All positive divisors of |n| by trial division (n must be nonnegative).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        // Every integer divides 0; callers never hit this (b = 0 is
        // special-cased), but return the only sensible finite answer.
        return vec![BigInt::one()];
    }
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if n.is_multiple_of(&i) {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Element of the prime field F_p, carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpElem {
    p: u64,
    v: u64,
}

impl FpElem {
    /// Reduce `v` into F_p. `p` must be a prime (validated by
    /// [`ExactField::prime`]); this constructor only requires `p >= 2`.
    pub fn new(p: u64, v: i64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let m = v.rem_euclid(p as i64) as u64;
        FpElem { p, v: m }
    }

    pub fn from_residue(p: u64, v: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        FpElem { p, v: v % p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn residue(&self) -> u64 {
        self.v
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed moduli: F_{} vs F_{}", self.p, rhs.p);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = FpElem { p: self.p, v: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for FpElem {
    fn zero_like(&self) -> Self {
        FpElem { p: self.p, v: 0 }
    }

    fn one_like(&self) -> Self {
        FpElem { p: self.p, v: 1 % self.p }
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.v as u128 + rhs.v as u128) % self.p as u128;
        FpElem { p: self.p, v: s as u64 }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.v as u128 * rhs.v as u128) % self.p as u128;
        FpElem { p: self.p, v: s as u64 }
    }

    fn neg(&self) -> Self {
        FpElem { p: self.p, v: if self.v == 0 { 0 } else { self.p - self.v } }
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn same_field(&self, rhs: &Self) -> bool {
        self.p == rhs.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn enumerate_field(&self) -> Option<Vec<Self>> {
        Some((0..self.p).map(|v| FpElem { p: self.p, v }).collect())
    }

    fn cubic_roots(a: &Self, b: &Self) -> Vec<Self> {
        a.check(b);
        let mut roots = Vec::new();
        for v in 0..a.p {
            let x = FpElem { p: a.p, v };
            let val = x.mul(&x).mul(&x).add(&a.mul(&x)).add(b);
            if val.is_zero() {
                roots.push(x);
            }
        }
        roots
    }
}

/// Descriptor for the base field of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactField {
    Rational,
    Prime(u64),
}

impl ExactField {
    /// A validated prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        Ok(ExactField::Prime(p))
    }

    /// Parse "rational" or "fp:<p>".
    pub fn parse(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(ExactField::Rational);
        }
        if let Some(ps) = s.strip_prefix("fp:") {
            let p: u64 = ps
                .parse()
                .map_err(|_| Error::Schema(format!("bad field tag {s:?}")))?;
            return ExactField::prime(p).map_err(|_| Error::Schema(format!("{p} is not prime")));
        }
        Err(Error::Schema(format!("unknown field tag {s:?}")))
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactField::Rational => write!(f, "rational"),
            ExactField::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Parse an exact rational from "n/d" or "n".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Schema(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical "n/d" form with explicit denominator and the sign on the numerator.
pub fn rat_to_string(x: &Rat) -> String {
    let (n, d) = (x.numer(), x.denom());
    debug_assert_ne!(d.sign(), Sign::Minus);
    format!("{n}/{d}")
}

/// Integer rational shorthand used all over the tests.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let x = parse_rat("-6/4").unwrap();
        assert_eq!(x, rat(-3, 2));
        assert_eq!(rat_to_string(&x), "-3/2");
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let a = FpElem::new(7, 5);
        let b = FpElem::new(7, 4);
        assert_eq!(a.add(&b).residue(), 2);
        assert_eq!(a.mul(&b).residue(), 6);
        assert_eq!(a.sub(&b).residue(), 1);
        assert_eq!(a.inv().unwrap().mul(&a).residue(), 1);
        assert!(FpElem::new(7, 0).inv().is_none());
        assert_eq!(FpElem::new(7, -3).residue(), 4);
    }

    #[test]
    #[should_panic(expected = "mixed moduli")]
    fn fp_mixed_moduli_panics() {
        let _ = FpElem::new(5, 1).add(&FpElem::new(7, 1));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn cubic_roots_fp() {
        // x^3 + 1 factors as (x+1)(x-3)(x-5) over F_7.
        let one = FpElem::new(7, 1);
        let zero = FpElem::new(7, 0);
        let roots = FpElem::cubic_roots(&zero, &one);
        let vals: Vec<u64> = roots.iter().map(|r| r.residue()).collect();
        assert_eq!(vals, vec![3, 5, 6]);
    }

    #[test]
    fn cubic_roots_rational() {
        // x^3 - x = x(x-1)(x+1)
        assert_eq!(
            rational_cubic_roots(&rat(-1, 1), &rat(0, 1)),
            vec![rat(-1, 1), rat(0, 1), rat(1, 1)]
        );
        // x^3 + 1 has the single rational root -1
        assert_eq!(rational_cubic_roots(&rat(0, 1), &rat(1, 1)), vec![rat(-1, 1)]);
        // x^3 - 2 has no rational root
        assert!(rational_cubic_roots(&rat(0, 1), &rat(-2, 1)).is_empty());
        // 8x^3 - 6x + 1 scaled monic: x^3 - (3/4)x + 1/8, roots are not rational
        assert!(rational_cubic_roots(&rat(-3, 4), &rat(1, 8)).is_empty());
        // x^3 - (7/4)x + 3/4 = (x-1)(x+3/2)(x-1/2)
        assert_eq!(
            rational_cubic_roots(&rat(-7, 4), &rat(3, 4)),
            vec![rat(-3, 2), rat(1, 2), rat(1, 1)]
        );
    }
}
