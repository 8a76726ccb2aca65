//! Exact 2-adic arithmetic on binomial coefficients.
//!
//! Parity uses the bit test `a & !b == 0`, valuations use Kummer's carry
//! count. Negative upper indices go through the reflection
//! `C(u, v) = (-1)^v C(v - u - 1, v)`.

use serde::Serialize;
use thiserror::Error;

/// Largest argument accepted by the fallible operations.
pub const MAX_ARG: u64 = 1 << 20;

/// Largest `n` accepted by [`kappa`] and [`s0`] (no binomials involved).
pub const MAX_KAPPA_N: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Parity2Error {
    #[error("lower index {a} exceeds upper index {b}")]
    LowerExceedsUpper { b: u64, a: u64 },
    #[error("argument {0} outside supported range")]
    OutOfRange(u64),
}

/// Parity of `C(b, a)`; zero when `a < 0` or `a > b`.
#[inline]
pub fn binom_parity(b: u64, a: i64) -> u8 {
    if a < 0 {
        return 0;
    }
    let a = a as u64;
    if a > b {
        return 0;
    }
    (a & !b == 0) as u8
}

/// 2-adic valuation of `C(b, a)` for `0 <= a <= b`.
pub fn binom_val2(b: u64, a: u64) -> Result<u32, Parity2Error> {
    if b > MAX_ARG {
        return Err(Parity2Error::OutOfRange(b));
    }
    if a > b {
        return Err(Parity2Error::LowerExceedsUpper { b, a });
    }
    Ok(a.count_ones() + (b - a).count_ones() - b.count_ones())
}

/// Parity of the analytic binomial `u (u-1) ... (u-v+1) / v!`.
#[inline]
pub fn binom_parity_int(u: i64, v: u64) -> u8 {
    if u >= 0 {
        return binom_parity(u as u64, v as i64);
    }
    // the sign is irrelevant mod 2
    let upper = v as i128 - u as i128 - 1;
    debug_assert!(upper >= 0 && upper <= u64::MAX as i128);
    binom_parity(upper as u64, v as i64)
}

/// Exponent of the largest power of two dividing `s` (`s > 0`).
#[inline]
pub fn two_adic(s: u64) -> u32 {
    debug_assert!(s > 0);
    s.trailing_zeros()
}

/// Number of `0 < s <= m` with `s mod 8` in `{0, 1, 2, 4}`.
pub fn phi(m: u64) -> u64 {
    let full = (m / 8) * 4;
    let rem = m % 8;
    let part = [0u64, 1, 2, 2, 3, 3, 3, 3][rem as usize];
    full + part
}

/// Greatest `s >= 1` with `2^(s-1) C(m+1, s)` not divisible by `2^phi(m)`, or 0.
///
/// The search stops at `min(m + 1, phi(m))`: the binomial vanishes beyond
/// `m + 1`, and `s - 1 >= phi(m)` already forces divisibility.
pub fn r_exp(m: u64) -> Result<u64, Parity2Error> {
    if m + 1 > MAX_ARG {
        return Err(Parity2Error::OutOfRange(m));
    }
    let p = phi(m);
    let hi = (m + 1).min(p);
    for s in (1..=hi).rev() {
        let v = binom_val2(m + 1, s)? as u64;
        if v + s - 1 < p {
            return Ok(s);
        }
    }
    Ok(0)
}

/// `max { 0 < s < 2^(n-1) : s - R(s) < 2^(n-1) - n }`, or 0 if the set is empty.
pub fn kappa(n: u32) -> Result<u64, Parity2Error> {
    if !(2..=MAX_KAPPA_N).contains(&n) {
        return Err(Parity2Error::OutOfRange(n as u64));
    }
    let half = 1u64 << (n - 1);
    let bound = half as i64 - n as i64;
    for s in (1..half).rev() {
        if (s as i64 - two_adic(s) as i64) < bound {
            return Ok(s);
        }
    }
    Ok(0)
}

/// `2^(n-1) - 2^min{ r : r + 2^r > n }`.
pub fn s0(n: u32) -> Result<u64, Parity2Error> {
    if !(2..=MAX_KAPPA_N).contains(&n) {
        return Err(Parity2Error::OutOfRange(n as u64));
    }
    let mut r = 0u32;
    while r as u64 + (1u64 << r) <= n as u64 {
        r += 1;
    }
    Ok((1u64 << (n - 1)) - (1u64 << r))
}

/// K-theoretic data attached to the projective space of dimension `2^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KTheoryProfile {
    pub n: u32,
    /// `phi(2^n - 1)`
    pub phi: u64,
    pub kappa: u64,
    /// `r(2^n - 1)`
    pub r_exp: u64,
    pub s0: u64,
}

pub fn ktheory_profile(n: u32) -> Result<KTheoryProfile, Parity2Error> {
    if !(2..=20).contains(&n) {
        return Err(Parity2Error::OutOfRange(n as u64));
    }
    let m = (1u64 << n) - 1;
    let prof = KTheoryProfile {
        n,
        phi: phi(m),
        kappa: kappa(n)?,
        r_exp: r_exp(m)?,
        s0: s0(n)?,
    };
    if n >= 4 {
        assert_eq!(prof.kappa, prof.r_exp, "kappa(n) = r(2^n - 1) failed at n = {n}");
    }
    debug_assert!(prof.s0 <= prof.kappa || n < 4);
    Ok(prof)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_13_classes() {
        assert_eq!(binom_parity(14, 5), 0);
        assert_eq!(binom_parity(14, 6), 1);
        assert_eq!(binom_parity(5, 7), 0);
        assert_eq!(binom_parity(9, -1), 0);
        for b in 0..100 {
            assert_eq!(binom_parity(b, 0), 1);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(binom_val2(16, 6), Ok(3));
        assert_eq!(binom_val2(9, 0), Ok(0));
        assert!(binom_val2(3, 4).is_err());
        assert!(binom_val2(MAX_ARG + 1, 1).is_err());
        for n in 2..12u32 {
            for s in 1..(1u64 << (n - 1)) {
                assert_eq!(binom_val2(1 << n, s).unwrap(), n - two_adic(s));
            }
        }
    }

    #[test]
    fn negative_upper() {
        for v in 0..50 {
            assert_eq!(binom_parity_int(-1, v), 1);
        }
        assert_eq!(binom_parity_int(-2, 1), 0);
        assert_eq!(binom_parity_int(-3, 2), 0); // 6
        assert_eq!(binom_parity_int(-4, 3), 0); // -20
        assert_eq!(binom_parity_int(-2, 2), 1); // 3
    }

    #[test]
    fn phi_small() {
        assert_eq!(phi(7), 3);
        assert_eq!(phi(0), 0);
        assert_eq!(phi(8), 4);
        for n in 3..20u32 {
            assert_eq!(phi((1 << n) - 1), (1 << (n - 1)) - 1);
        }
    }

    #[test]
    fn r_exp_parallelizable() {
        assert_eq!(r_exp(3), Ok(0));
        assert_eq!(r_exp(7), Ok(0));
    }
}
