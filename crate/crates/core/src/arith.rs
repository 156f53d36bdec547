//! Exact arithmetic kernel: the Syracuse and Collatz steps, the 2-adic
//! valuation, and the affine maps `V(m) = 4m + 1`, `U(m) = (m - 1) / 4`,
//! `Q(t) = 4t + 2` together with their closed-form powers.
//!
//! Everything here is unbounded precision. Powers of `V` grow like `4^p`, so
//! fixed-width integers are only used by the `fast` helpers, which report
//! overflow instead of wrapping.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// A positive odd integer, an element of `{1, 3, 5, ...}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BigUint", into = "BigUint")]
pub struct PosOdd(BigUint);

/// A positive integer, an element of `{1, 2, 3, ...}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BigUint", into = "BigUint")]
pub struct PosInt(BigUint);

impl PosOdd {
    pub fn new(value: impl Into<BigUint>) -> Result<Self, ArithError> {
        let value = value.into();
        if value.is_zero() {
            return Err(ArithError::Zero);
        }
        if value.is_even() {
            return Err(ArithError::NotOdd(value));
        }
        Ok(PosOdd(value))
    }

    /// The trivial-cycle anchor `1`.
    pub fn one() -> Self {
        PosOdd(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Wraps a value already known to be odd and positive.
    pub(crate) fn new_unchecked(value: BigUint) -> Self {
        debug_assert!(value.is_odd(), "{value} is not a positive odd integer");
        PosOdd(value)
    }
}

impl PosInt {
    pub fn new(value: impl Into<BigUint>) -> Result<Self, ArithError> {
        let value = value.into();
        if value.is_zero() {
            return Err(ArithError::Zero);
        }
        Ok(PosInt(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }

    /// Returns the value as a [`PosOdd`] when it is odd.
    pub fn to_odd(&self) -> Option<PosOdd> {
        self.is_odd().then(|| PosOdd(self.0.clone()))
    }
}

impl From<PosOdd> for PosInt {
    fn from(n: PosOdd) -> Self {
        PosInt(n.0)
    }
}

impl From<PosOdd> for BigUint {
    fn from(n: PosOdd) -> Self {
        n.0
    }
}

impl From<PosInt> for BigUint {
    fn from(n: PosInt) -> Self {
        n.0
    }
}

impl TryFrom<BigUint> for PosOdd {
    type Error = ArithError;
    fn try_from(value: BigUint) -> Result<Self, Self::Error> {
        PosOdd::new(value)
    }
}

impl TryFrom<BigUint> for PosInt {
    type Error = ArithError;
    fn try_from(value: BigUint) -> Result<Self, Self::Error> {
        PosInt::new(value)
    }
}

impl TryFrom<u64> for PosOdd {
    type Error = ArithError;
    fn try_from(value: u64) -> Result<Self, Self::Error> {
        PosOdd::new(value)
    }
}

impl TryFrom<u64> for PosInt {
    type Error = ArithError;
    fn try_from(value: u64) -> Result<Self, Self::Error> {
        PosInt::new(value)
    }
}

impl fmt::Display for PosOdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for PosInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses a decimal literal, or hexadecimal with a `0x` prefix.
pub fn parse_natural(s: &str) -> Result<BigUint, ArithError> {
    let s = s.trim();
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        BigUint::parse_bytes(hex.as_bytes(), 16)
    } else {
        BigUint::parse_bytes(s.as_bytes(), 10)
    };
    parsed.ok_or_else(|| ArithError::Parse(s.to_string()))
}

impl FromStr for PosInt {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosInt::new(parse_natural(s)?)
    }
}

impl FromStr for PosOdd {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosOdd::new(parse_natural(s)?)
    }
}

/// Largest `d` with `2^d | n`.
pub fn v2(n: &PosInt) -> u64 {
    n.0.trailing_zeros().expect("positive integer has a lowest set bit")
}

/// The odd part `n / 2^v2(n)`.
pub fn odd_part(n: &PosInt) -> PosOdd {
    let d = v2(n);
    PosOdd(&n.0 >> d)
}

/// `Syr(n)`: the odd part of `3n + 1`.
pub fn syr(n: &PosOdd) -> PosOdd {
    let mut m = &n.0 * 3u32;
    m += 1u32;
    let d = m.trailing_zeros().expect("3n+1 is positive");
    PosOdd(m >> d)
}

/// `Col(n)`: `3n + 1` for odd `n`, `n / 2` for even `n`.
pub fn col_step(n: &PosInt) -> PosInt {
    if n.0.is_odd() {
        PosInt(&n.0 * 3u32 + 1u32)
    } else {
        PosInt(&n.0 >> 1u32)
    }
}

/// `S_a(t) = Syr(8t + a)` for `a` in `{1, 3, 5, 7}`.
pub fn s(a: u8, t: &BigUint) -> Result<PosOdd, ArithError> {
    if !matches!(a, 1 | 3 | 5 | 7) {
        return Err(ArithError::InvalidResidue(a));
    }
    let n = t * 8u32 + a as u32;
    Ok(syr(&PosOdd(n)))
}

/// `V(m) = 4m + 1`.
pub fn v(m: &BigUint) -> BigUint {
    (m << 2u32) + 1u32
}

/// `Q(t) = 4t + 2`.
pub fn q(t: &BigUint) -> BigUint {
    (t << 2u32) + 2u32
}

/// `U(m) = (m - 1) / 4`, the inverse of `V`, defined when `m = 1 (mod 4)`.
pub fn u(m: &BigUint) -> Result<BigUint, ArithError> {
    if (m & BigUint::from(3u32)) != BigUint::one() {
        return Err(ArithError::NotReducible {
            value: m.clone(),
            step: 0,
        });
    }
    Ok(m >> 2u32)
}

/// `4^p` as a big integer.
pub fn pow4(p: u32) -> BigUint {
    BigUint::one() << (2 * p as u64)
}

/// Exact division that panics when the remainder is non-zero.
///
/// Closed forms below have denominators that are cleared algebraically; a
/// non-zero remainder means an arithmetic bug, never a domain error.
pub(crate) fn exact_div(num: BigUint, den: u32, what: &str) -> BigUint {
    let (quot, rem) = num.div_rem(&BigUint::from(den));
    assert!(rem.is_zero(), "{what}: numerator not divisible by {den}");
    quot
}

/// `V^p(m) = ((3m + 1) 4^p - 1) / 3`.
pub fn vp(m: &BigUint, p: u32) -> BigUint {
    let num = (m * 3u32 + 1u32) * pow4(p) - 1u32;
    exact_div(num, 3, "V^p closed form")
}

/// `Q^p(t) = ((3t + 2) 4^p - 2) / 3`.
pub fn qp(t: &BigUint, p: u32) -> BigUint {
    let num = (t * 3u32 + 2u32) * pow4(p) - 2u32;
    exact_div(num, 3, "Q^p closed form")
}

/// `U^p(m)`, unrolled one step at a time so that each intermediate value is
/// checked for reducibility.
pub fn up(m: &BigUint, p: u32) -> Result<BigUint, ArithError> {
    let mut cur = m.clone();
    for step in 0..p {
        cur = u(&cur).map_err(|_| ArithError::NotReducible {
            value: m.clone(),
            step,
        })?;
    }
    Ok(cur)
}

/// Fixed-width helpers for sweeps. Each returns `None` on overflow so the
/// caller can fall back to [`BigUint`]; results are identical where defined.
pub mod fast {
    /// `Syr(n)` for odd `n`, or `None` when `3n + 1` overflows.
    #[inline]
    pub fn syr_u128(n: u128) -> Option<u128> {
        debug_assert!(n & 1 == 1);
        let m = n.checked_mul(3)?.checked_add(1)?;
        Some(m >> m.trailing_zeros())
    }

    #[inline]
    pub fn col_step_u128(n: u128) -> Option<u128> {
        if n & 1 == 1 {
            n.checked_mul(3)?.checked_add(1)
        } else {
            Some(n >> 1)
        }
    }

    #[inline]
    pub fn v2_u128(n: u128) -> u32 {
        debug_assert!(n != 0);
        n.trailing_zeros()
    }
}

/// Converts to `u128` when the value fits.
pub fn to_u128(n: &BigUint) -> Option<u128> {
    n.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(n: u64) -> PosOdd {
        PosOdd::try_from(n).unwrap()
    }

    fn int(n: u64) -> PosInt {
        PosInt::try_from(n).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn constructors_enforce_domain() {
        assert!(matches!(PosOdd::try_from(0), Err(ArithError::Zero)));
        assert!(matches!(PosOdd::try_from(4), Err(ArithError::NotOdd(_))));
        assert!(matches!(PosInt::try_from(0), Err(ArithError::Zero)));
        assert!(PosInt::try_from(4).is_ok());
    }

    #[test]
    fn parse_decimal_and_hex() {
        assert_eq!("35".parse::<PosOdd>().unwrap(), odd(35));
        assert_eq!("0x23".parse::<PosOdd>().unwrap(), odd(35));
        assert!("0x".parse::<PosInt>().is_err());
        assert!("-3".parse::<PosInt>().is_err());
        let huge: PosInt = "340282366920938463463374607431768211457".parse().unwrap();
        assert!(huge.value() > &big(u64::MAX));
    }

    #[test]
    fn v2_examples() {
        assert_eq!(v2(&int(1)), 0);
        assert_eq!(v2(&int(160)), 5);
        assert_eq!(v2(&int(106)), 1);
        assert_eq!(odd_part(&int(106)), odd(53));
    }

    #[test]
    fn syr_examples() {
        assert_eq!(syr(&odd(1)), odd(1));
        assert_eq!(syr(&odd(3)), odd(5));
        assert_eq!(syr(&odd(35)), odd(53));
        assert_eq!(syr(&odd(5)), odd(1));
        assert_eq!(syr(&odd(21)), odd(1));
    }

    #[test]
    fn col_step_examples() {
        assert_eq!(col_step(&int(1)), int(4));
        assert_eq!(col_step(&int(35)), int(106));
        assert_eq!(col_step(&int(40)), int(20));
    }

    #[test]
    fn affine_map_examples() {
        assert_eq!(vp(&big(1), 3), big(85));
        assert_eq!(up(&big(53), 2).unwrap(), big(3));
        assert_eq!(qp(&big(0), 2), big(10));
        assert_eq!(v(&big(3)), big(13));
        assert_eq!(q(&big(0)), big(2));
        assert_eq!(vp(&big(7), 0), big(7));
    }

    #[test]
    fn up_rejects_irreducible() {
        // 53 -> 13 -> 3, and 3 is not 1 mod 4.
        match up(&big(53), 3) {
            Err(ArithError::NotReducible { step, .. }) => assert_eq!(step, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(u(&big(7)).is_err());
        assert!(u(&big(0)).is_err());
        assert_eq!(u(&big(1)).unwrap(), big(0));
    }

    #[test]
    fn s_examples() {
        let s = |a, t: u64| super::s(a, &big(t)).unwrap();
        assert_eq!(
            (s(1, 0), s(3, 0), s(5, 0), s(7, 0)),
            (odd(1), odd(5), odd(1), odd(11))
        );
        assert_eq!(s(5, 1), odd(5));
        assert_eq!(s(1, 2), odd(13));
        assert!(matches!(
            super::s(2, &big(0)),
            Err(ArithError::InvalidResidue(2))
        ));
    }

    #[test]
    fn residue_shortcuts_hold() {
        for q in 0..100_000u64 {
            assert_eq!(syr(&odd(4 * q + 3)), odd(6 * q + 5));
            assert_eq!(syr(&odd(8 * q + 1)), odd(6 * q + 1));
        }
    }

    #[test]
    fn lemma_partition_identities() {
        let s = |a, t: u64| super::s(a, &big(t)).unwrap();
        for t in 0..20_000u64 {
            assert_eq!(s(5, 4 * t), s(1, t));
            assert_eq!(s(5, 4 * t + 1), s(3, t));
            assert_eq!(s(5, 4 * t + 2), s(5, t));
            assert_eq!(s(5, 4 * t + 3), s(7, t));
        }
    }

    #[test]
    fn closed_forms_match_iteration() {
        for m in (0..10_000u64).step_by(7) {
            let mut it = big(m);
            let mut qt = big(m);
            for p in 0..=10 {
                assert_eq!(vp(&big(m), p), it, "V^{p}({m})");
                assert_eq!(qp(&big(m), p), qt, "Q^{p}({m})");
                it = v(&it);
                qt = q(&qt);
            }
        }
    }

    #[test]
    fn q_powers_preserve_s5() {
        for t in 0..5_000u64 {
            let base = super::s(5, &big(t)).unwrap();
            for p in 0..=8 {
                assert_eq!(super::s(5, &qp(&big(t), p)).unwrap(), base);
            }
        }
    }

    #[test]
    fn v_powers_preserve_syr() {
        for m in (1..20_000u64).step_by(2) {
            let base = syr(&odd(m));
            for p in 0..=8 {
                assert_eq!(syr(&PosOdd::new(vp(&big(m), p)).unwrap()), base);
            }
        }
    }

    #[test]
    fn fast_paths_agree_and_report_overflow() {
        for n in (1..10_001u64).step_by(2) {
            let got = fast::syr_u128(n as u128).unwrap();
            assert_eq!(BigUint::from(got), syr(&odd(n)).into_inner());
        }
        assert_eq!(fast::syr_u128(u128::MAX), None);
        assert_eq!(fast::col_step_u128(u128::MAX - 1), Some((u128::MAX - 1) / 2));
        assert_eq!(fast::v2_u128(160), 5);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn u_inverts_v(m in any::<u64>()) {
                prop_assert_eq!(u(&v(&big(m))).unwrap(), big(m));
            }

            #[test]
            fn up_inverts_vp(m in any::<u64>(), p in 0u32..24) {
                prop_assert_eq!(up(&vp(&big(m), p), p).unwrap(), big(m));
            }

            #[test]
            fn vp_inverts_up_when_defined(m in any::<u64>(), p in 0u32..6) {
                if let Ok(r) = up(&big(m), p) {
                    prop_assert_eq!(vp(&r, p), big(m));
                }
            }

            #[test]
            fn v2_strips_exactly(n in 1u64..) {
                let d = v2(&int(n));
                prop_assert_eq!(d, n.trailing_zeros() as u64);
                prop_assert!(odd_part(&int(n)).value().is_odd());
            }

            #[test]
            fn syr_is_odd(n in any::<u64>()) {
                let n = odd(n | 1);
                prop_assert!(syr(&n).value().is_odd());
            }
        }
    }
}
