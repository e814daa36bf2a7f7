//! Bitmask arithmetic for subsets of Z_k (k <= 63): the fast enumeration
//! route behind the exhaustive self-test oracles. Deliberately implemented
//! without the [`super::GroupSet`] machinery so the two routes stay
//! independent and can be cross-checked against each other.

/// Rotate a k-bit subset mask by r positions (adding r to every element).
pub fn rotate(mask: u64, r: u32, k: u32) -> u64 {
    debug_assert!(k >= 1 && k <= 63);
    let r = r % k;
    let all = (1u64 << k) - 1;
    if r == 0 {
        mask & all
    } else {
        ((mask << r) | (mask >> (k - r))) & all
    }
}

/// A + B as subset masks of Z_k.
pub fn sumset(a: u64, b: u64, k: u32) -> u64 {
    let mut out = 0u64;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        out |= rotate(b, i, k);
    }
    out
}

/// A +. A (sums of distinct pairs) as a subset mask of Z_k.
pub fn restricted_sumset(a: u64, k: u32) -> u64 {
    let mut out = 0u64;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        out |= rotate(a & !(1u64 << i), i, k);
    }
    out
}

/// Stabilizer {x : x + S = S} of a subset mask, as a mask.
pub fn stabilizer(s: u64, k: u32) -> u64 {
    let mut out = 0u64;
    for x in 0..k {
        if rotate(s, x, k) == s {
            out |= 1u64 << x;
        }
    }
    out
}

/// Doubling constant of Z_k.
pub fn doubling(k: u32) -> u64 {
    if k % 2 == 0 {
        2
    } else {
        1
    }
}

/// The golden-ratio hypothesis s <= phi*n - (l+2), via u128 squaring.
/// Written independently from the GroupSet route on purpose.
pub fn lev_hypothesis(s: u64, n: u64, l: u64) -> bool {
    let lhs2 = 2 * (s + l + 2);
    if lhs2 <= n {
        return true;
    }
    let t = (lhs2 - n) as u128;
    t * t <= 5 * (n as u128) * (n as u128)
}
