//! The incoming-term matrices `I_1(p, q)` and `I_5(p, q)` and the connection
//! matrices `J_ab(x, q)`.
//!
//! Row 0 of the matrices is `I_1(0, q) = 8q + 1` and `I_5(0, q) = 4q + 3`; each
//! later row applies `V(m) = 4m + 1`. Every entry of column `(a, q)` has the
//! Syracuse image `6q + a`. Both matrices together hold every positive odd
//! integer exactly once, which is what makes [`locate`] well defined.
//!
//! Nothing is materialised; every access goes through a closed form.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, pow4, PosOdd};
use crate::error::ArithError;

/// Which matrix a column belongs to; also the residue mod 6 of the column's
/// Syracuse image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub enum Branch {
    One,
    Five,
}

impl Branch {
    pub const ALL: [Branch; 2] = [Branch::One, Branch::Five];

    pub fn value(self) -> u32 {
        match self {
            Branch::One => 1,
            Branch::Five => 5,
        }
    }
}

impl TryFrom<u64> for Branch {
    type Error = ArithError;
    fn try_from(a: u64) -> Result<Self, Self::Error> {
        match a {
            1 => Ok(Branch::One),
            5 => Ok(Branch::Five),
            other => Err(ArithError::InvalidBranch(other)),
        }
    }
}

impl From<Branch> for u64 {
    fn from(b: Branch) -> Self {
        b.value() as u64
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Coordinate `(a, p, q)` of a cell in `I_a(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub a: Branch,
    pub p: u32,
    pub q: BigUint,
}

impl Coord {
    pub fn new(a: Branch, p: u32, q: impl Into<BigUint>) -> Self {
        Coord { a, p, q: q.into() }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}({},{})", self.a, self.p, self.q)
    }
}

/// Residue class of an odd integer mod 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Residue6 {
    #[serde(rename = "r1")]
    R1,
    #[serde(rename = "r3")]
    R3,
    #[serde(rename = "r5")]
    R5,
}

impl Residue6 {
    /// The branch that connects into an entry of this class; `None` for
    /// multiples of 3, which only occur as seeds.
    pub fn branch(self) -> Option<Branch> {
        match self {
            Residue6::R1 => Some(Branch::One),
            Residue6::R3 => None,
            Residue6::R5 => Some(Branch::Five),
        }
    }
}

impl fmt::Display for Residue6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Residue6::R1 => "r1",
            Residue6::R3 => "r3",
            Residue6::R5 => "r5",
        };
        f.write_str(s)
    }
}

/// `I_a(p, q)`.
///
/// `I_1(p, q) = ((6q + 1) 4^(p+1) - 1) / 3` and
/// `I_5(p, q) = ((6q + 5) 4^(p+1) - 2) / 6`.
pub fn entry(c: &Coord) -> PosOdd {
    let scale = pow4(c.p + 1);
    let value = match c.a {
        Branch::One => exact_div((&c.q * 6u32 + 1u32) * scale - 1u32, 3, "I_1 closed form"),
        Branch::Five => exact_div((&c.q * 6u32 + 5u32) * scale - 2u32, 6, "I_5 closed form"),
    };
    PosOdd::new_unchecked(value)
}

/// Row-0 value of a column: `8q + 1` or `4q + 3`.
pub fn row0(a: Branch, q: &BigUint) -> BigUint {
    match a {
        Branch::One => q * 8u32 + 1u32,
        Branch::Five => q * 4u32 + 3u32,
    }
}

/// The unique coordinate holding `n`.
///
/// Strips `V` while the value is `5 (mod 8)`, then reads the column off the
/// row-0 form.
pub fn locate(n: &PosOdd) -> Coord {
    let mut m = n.value().clone();
    let mut p = 0u32;
    while low_bits(&m, 7) == 5 {
        m >>= 2u32;
        p += 1;
    }
    if low_bits(&m, 7) == 1 {
        Coord {
            a: Branch::One,
            p,
            q: m >> 3u32,
        }
    } else {
        debug_assert_eq!(low_bits(&m, 3), 3);
        Coord {
            a: Branch::Five,
            p,
            q: m >> 2u32,
        }
    }
}

#[inline]
fn low_bits(m: &BigUint, mask: u64) -> u64 {
    m.iter_u64_digits().next().unwrap_or(0) & mask
}

/// `Syr(n)` read from the matrix: `6q + a` for `(a, p, q) = locate(n)`.
pub fn syr_via_matrix(n: &PosOdd) -> PosOdd {
    let c = locate(n);
    PosOdd::new_unchecked(c.q * 6u32 + c.a.value())
}

pub fn residue6(n: &PosOdd) -> Residue6 {
    let r = (n.value() % 6u32).to_u32().expect("residue fits");
    match r {
        1 => Residue6::R1,
        3 => Residue6::R3,
        5 => Residue6::R5,
        _ => unreachable!("odd integer has odd residue mod 6"),
    }
}

/// A cell of a connection matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connection {
    /// Column index `m` of the child component `I_child(., m)`.
    Defined(BigUint),
    /// The parent entry has a different residue mod 6 (or is a multiple of 3).
    Undefined,
}

impl Connection {
    pub fn defined(&self) -> Option<&BigUint> {
        match self {
            Connection::Defined(m) => Some(m),
            Connection::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Connection::Defined(_))
    }
}

/// `J_{child,parent}(x, q)`: the column `m` such that component
/// `I_child(., m)` attaches to `I_parent(x, q)`, i.e.
/// `m = (I_parent(x, q) - child) / 6` when the residues match.
///
/// Evaluated with the closed forms, writing `q = 3k + y`:
///
/// * `J_11 = 4^(x+1) k + 2((6y+1) 4^x - 1) / 9`
/// * `J_51 = 4^(x+1) k + 2((6y+1) 4^x - 4) / 9`
/// * `J_15 = 2 4^x k + ((6y+5) 4^x - 2) / 9`
/// * `J_55 = 2 4^x k + ((6y+5) 4^x - 8) / 9`
///
/// The cell is defined exactly when the numerator is divisible by 9.
pub fn connection(child: Branch, parent: Branch, x: u32, q: &BigUint) -> Connection {
    let (k, y) = q.div_rem(&BigUint::from(3u32));
    let y = y.to_u32().expect("y < 3");
    let scale = BigInt::from(pow4(x));
    let (base, numerator): (BigUint, BigInt) = match (child, parent) {
        (Branch::One, Branch::One) => (
            pow4(x + 1) * &k,
            (&scale * (6 * y + 1) - 1) * 2,
        ),
        (Branch::Five, Branch::One) => (
            pow4(x + 1) * &k,
            (&scale * (6 * y + 1) - 4) * 2,
        ),
        (Branch::One, Branch::Five) => (
            pow4(x) * &k * 2u32,
            &scale * (6 * y + 5) - 2,
        ),
        (Branch::Five, Branch::Five) => (
            pow4(x) * &k * 2u32,
            &scale * (6 * y + 5) - 8,
        ),
    };
    let (quot, rem) = numerator.div_rem(&BigInt::from(9));
    if !rem.is_zero() {
        return Connection::Undefined;
    }
    let value = BigInt::from(base) + quot;
    Connection::Defined(
        value
            .to_biguint()
            .expect("defined connection cell is non-negative"),
    )
}

/// Iterates `(p, I_a(p, q))` for `p = 0, 1, ...` while `p <= max_p` and the
/// entry does not exceed `max_value`.
pub fn column_entries<'a>(
    a: Branch,
    q: &BigUint,
    max_p: u32,
    max_value: Option<&'a BigUint>,
) -> impl Iterator<Item = (u32, PosOdd)> + 'a {
    let first = PosOdd::new_unchecked(row0(a, q));
    std::iter::successors(Some((0u32, first)), |(p, n)| {
        Some((p + 1, PosOdd::new_unchecked(crate::arith::v(n.value()))))
    })
    .take_while(move |(p, _)| *p <= max_p)
    .take_while(move |(_, n)| max_value.is_none_or(|cap| n.value() <= cap))
}

/// `true` when `n` sits in row `p >= 1`, i.e. `n = 5 (mod 8)`.
pub fn is_lifted(n: &PosOdd) -> bool {
    low_bits(n.value(), 7) == 5
}

/// Column index of the child component attached at an entry, if any.
pub fn child_column(n: &PosOdd) -> Option<(Branch, BigUint)> {
    let branch = residue6(n).branch()?;
    if n.is_one() {
        return None;
    }
    let q = (n.value() - branch.value()) / 6u32;
    Some((branch, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(n: u64) -> PosOdd {
        PosOdd::try_from(n).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn e(a: u64, p: u32, q: u64) -> u64 {
        entry(&Coord::new(Branch::try_from(a).unwrap(), p, q))
            .value()
            .to_u64()
            .unwrap()
    }

    fn j(a: u64, b: u64, x: u32, q: u64) -> Option<u64> {
        connection(
            Branch::try_from(a).unwrap(),
            Branch::try_from(b).unwrap(),
            x,
            &big(q),
        )
        .defined()
        .map(|m| m.to_u64().unwrap())
    }

    #[test]
    fn entry_examples() {
        assert_eq!(
            [e(1, 0, 0), e(1, 1, 0), e(1, 2, 0), e(1, 3, 0)],
            [1, 5, 21, 85]
        );
        assert_eq!(e(5, 0, 0), 3);
        assert_eq!(e(5, 2, 0), 53);
        assert_eq!(e(5, 4, 0), 853);
        assert_eq!(e(1, 0, 14), 113);
    }

    #[test]
    fn locate_examples() {
        assert_eq!(locate(&odd(35)), Coord::new(Branch::Five, 0, 8u32));
        assert_eq!(locate(&odd(53)), Coord::new(Branch::Five, 2, 0u32));
        assert_eq!(locate(&odd(5)), Coord::new(Branch::One, 1, 0u32));
        assert_eq!(locate(&odd(1)), Coord::new(Branch::One, 0, 0u32));
    }

    #[test]
    fn syr_via_matrix_examples() {
        assert_eq!(syr_via_matrix(&odd(35)), odd(53));
        assert_eq!(syr_via_matrix(&odd(85)), odd(1));
        assert_eq!(syr_via_matrix(&odd(13)), odd(5));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue6(&odd(85)), Residue6::R1);
        assert_eq!(residue6(&odd(21)), Residue6::R3);
        assert_eq!(residue6(&odd(341)), Residue6::R5);
    }

    #[test]
    fn connection_examples() {
        assert_eq!(j(1, 1, 3, 0), Some(14));
        assert_eq!(j(5, 1, 2, 1), Some(24));
        assert_eq!(j(5, 5, 1, 4), Some(12));
        assert_eq!(j(1, 5, 0, 4), Some(3));
        // I_1(0,0) = 1 is r1, so J_11(0,0) = 0 and J_51(0,0) is empty.
        assert_eq!(j(1, 1, 0, 0), Some(0));
        assert_eq!(j(5, 1, 0, 0), None);
        // I_5(0,0) = 3 is a multiple of 3.
        assert_eq!(j(1, 5, 0, 0), None);
        assert_eq!(j(5, 5, 0, 0), None);
    }

    #[test]
    fn row_one_and_up_is_five_mod_eight() {
        for a in Branch::ALL {
            for p in 1..10 {
                for q in 0..200u64 {
                    let n = entry(&Coord::new(a, p, q));
                    assert_eq!(n.value() % 8u32, big(5), "I_{a}({p},{q})");
                }
            }
        }
    }

    #[test]
    fn entries_follow_v_recurrence() {
        for a in Branch::ALL {
            for q in 0..100u64 {
                let mut expect = row0(a, &big(q));
                for p in 0..12 {
                    assert_eq!(entry(&Coord::new(a, p, q)).into_inner(), expect);
                    expect = crate::arith::v(&expect);
                }
            }
        }
    }

    #[test]
    fn column_entries_respect_limits() {
        let got: Vec<u64> = column_entries(Branch::One, &big(0), 10, Some(&big(100)))
            .map(|(_, n)| n.value().to_u64().unwrap())
            .collect();
        assert_eq!(got, vec![1, 5, 21, 85]);
        assert_eq!(column_entries(Branch::Five, &big(0), 2, None).count(), 3);
    }

    #[test]
    fn child_column_skips_anchor_and_multiples_of_three() {
        assert_eq!(child_column(&odd(1)), None);
        assert_eq!(child_column(&odd(21)), None);
        assert_eq!(child_column(&odd(85)), Some((Branch::One, big(14))));
        assert_eq!(child_column(&odd(5)), Some((Branch::Five, big(0))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn locate_round_trips(n in any::<u64>()) {
                let n = odd(n | 1);
                prop_assert_eq!(entry(&locate(&n)), n);
            }

            #[test]
            fn entry_round_trips(a in prop::sample::select(vec![1u64, 5]), p in 0u32..40, q in any::<u64>()) {
                let c = Coord::new(Branch::try_from(a).unwrap(), p, q);
                prop_assert_eq!(locate(&entry(&c)), c);
            }

            #[test]
            fn matrix_image_is_syracuse(n in any::<u128>()) {
                let n = PosOdd::new(BigUint::from(n | 1)).unwrap();
                prop_assert_eq!(syr_via_matrix(&n), crate::arith::syr(&n));
            }
        }
    }
}
