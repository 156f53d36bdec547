//! Syracuse and Collatz sequences.
//!
//! [`syrgen`] produces Syracuse terms through the incoming-term matrices
//! (reduce by `U` while the term is `5 mod 8`, read off the column, emit
//! `6q + a`). [`syr_seq_oracle`] iterates `Syr` directly and is kept as the
//! reference the generator is tested against.
//!
//! Sequences stop at the first 1. A budget that runs out before reaching 1
//! marks the sequence truncated; it is never treated as convergence.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{self, fast, PosInt, PosOdd};
use crate::error::SequenceError;
use crate::matrices::locate;

/// Default per-seed budget, counted in Collatz steps.
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyrSequence {
    pub seed: PosOdd,
    pub terms: Vec<BigUint>,
    pub truncated: bool,
}

impl SyrSequence {
    pub fn steps(&self) -> u64 {
        self.terms.len() as u64 - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColSequence {
    pub seed: PosInt,
    pub terms: Vec<BigUint>,
    pub truncated: bool,
}

impl ColSequence {
    pub fn steps(&self) -> u64 {
        self.terms.len() as u64 - 1
    }

    /// Odd terms in order.
    pub fn odd_terms(&self) -> impl Iterator<Item = &BigUint> {
        self.terms.iter().filter(|t| t.is_odd())
    }
}

/// Direct iteration of `Syr` from `n` until 1 or `max_steps` steps.
pub fn syr_seq_oracle(n: &PosOdd, max_steps: u64) -> SyrSequence {
    iterate_odd(n, max_steps, arith::syr)
}

/// Syracuse sequence generated through the connection model.
///
/// Each term `n_i` is reduced by `U` while it is `5 (mod 8)`; the remaining
/// row-0 value identifies the column `(a, q)` and the next term is `6q + a`.
pub fn syrgen(n: &PosOdd, max_steps: u64) -> SyrSequence {
    iterate_odd(n, max_steps, syrgen_step)
}

/// One step of [`syrgen`].
pub fn syrgen_step(n: &PosOdd) -> PosOdd {
    let c = locate(n);
    PosOdd::new(c.q * 6u32 + c.a.value()).expect("6q + a is odd")
}

fn iterate_odd(n: &PosOdd, max_steps: u64, step: impl Fn(&PosOdd) -> PosOdd) -> SyrSequence {
    let mut terms = vec![n.value().clone()];
    let mut cur = n.clone();
    let mut steps = 0u64;
    while !cur.is_one() {
        if steps == max_steps {
            return SyrSequence {
                seed: n.clone(),
                terms,
                truncated: true,
            };
        }
        cur = step(&cur);
        terms.push(cur.value().clone());
        steps += 1;
    }
    SyrSequence {
        seed: n.clone(),
        terms,
        truncated: false,
    }
}

/// Expands a complete Syracuse sequence into the Collatz sequence by
/// inserting `3n + 1` and its halvings between consecutive odd terms.
pub fn collatz_expand(s: &SyrSequence) -> Result<ColSequence, SequenceError> {
    if s.truncated {
        return Err(SequenceError::Truncated {
            seed: s.seed.value().clone(),
            steps: s.steps(),
        });
    }
    let mut terms = Vec::with_capacity(s.terms.len() * 4);
    terms.push(s.terms[0].clone());
    for pair in s.terms.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let mut even = from * 3u32 + 1u32;
        while &even != to {
            debug_assert!(even.is_even(), "{to} is not the odd part of 3*{from}+1");
            terms.push(even.clone());
            even >>= 1u32;
        }
        terms.push(to.clone());
    }
    Ok(ColSequence {
        seed: PosInt::new(s.terms[0].clone()).expect("seed is positive"),
        terms,
        truncated: false,
    })
}

/// Collatz sequence of any positive seed, with `max_steps` counted in
/// Collatz steps.
///
/// Even seeds are halved down to their odd part first; the odd part then
/// follows the connection model, each Syracuse step expanded into its
/// `3n + 1` and halving steps.
pub fn col_seq(n: &PosInt, max_steps: u64) -> ColSequence {
    let mut terms = vec![n.value().clone()];
    let finish = |terms: Vec<BigUint>, truncated| ColSequence {
        seed: n.clone(),
        terms,
        truncated,
    };

    let mut cur = n.value().clone();
    while cur.is_even() {
        if terms.len() as u64 > max_steps {
            return finish(terms, true);
        }
        cur >>= 1u32;
        terms.push(cur.clone());
    }
    // terms.len() - 1 steps taken so far.
    let mut odd = PosOdd::new(cur).expect("odd part is odd");
    while !odd.is_one() {
        let next = syrgen_step(&odd);
        let mut even = odd.value() * 3u32 + 1u32;
        loop {
            if terms.len() as u64 > max_steps {
                return finish(terms, true);
            }
            if &even == next.value() {
                terms.push(even);
                break;
            }
            terms.push(even.clone());
            even >>= 1u32;
        }
        odd = next;
    }
    finish(terms, false)
}

/// Stopping time, largest term and odd-step count of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqStats {
    /// Index of the first 1; `None` when the sequence was truncated first.
    pub stopping_time: Option<u64>,
    pub max_term: BigUint,
    /// Odd terms before the first 1.
    pub odd_steps: u64,
}

pub trait Trajectory {
    fn terms(&self) -> &[BigUint];
}

impl Trajectory for SyrSequence {
    fn terms(&self) -> &[BigUint] {
        &self.terms
    }
}

impl Trajectory for ColSequence {
    fn terms(&self) -> &[BigUint] {
        &self.terms
    }
}

pub fn stats(s: &impl Trajectory) -> SeqStats {
    let terms = s.terms();
    let first_one = terms.iter().position(|t| t.is_one());
    let prefix = match first_one {
        Some(i) => &terms[..i],
        None => terms,
    };
    SeqStats {
        stopping_time: first_one.map(|i| i as u64),
        max_term: terms.iter().max().cloned().unwrap_or_default(),
        odd_steps: prefix.iter().filter(|t| t.is_odd()).count() as u64,
    }
}

/// [`stats`] of `col_seq(n, max_steps)` without materialising the terms.
///
/// Runs on `u128` and falls back to [`BigUint`] from the first step that
/// would overflow; the result is identical to the materialising path.
pub fn col_stats(n: &PosInt, max_steps: u64) -> SeqStats {
    let mut steps = 0u64;
    let mut odd_steps = 0u64;
    if let Some(mut x) = arith::to_u128(n.value()) {
        let mut max = x;
        loop {
            if x == 1 {
                return SeqStats {
                    stopping_time: Some(steps),
                    max_term: BigUint::from(max),
                    odd_steps,
                };
            }
            if steps == max_steps {
                return SeqStats {
                    stopping_time: None,
                    max_term: BigUint::from(max),
                    odd_steps: odd_steps + (x & 1) as u64,
                };
            }
            match fast::col_step_u128(x) {
                Some(next) => {
                    odd_steps += (x & 1) as u64;
                    x = next;
                    max = max.max(x);
                    steps += 1;
                }
                None => {
                    return col_stats_big(BigUint::from(x), steps, odd_steps, BigUint::from(max), max_steps);
                }
            }
        }
    }
    col_stats_big(n.value().clone(), 0, 0, n.value().clone(), max_steps)
}

fn col_stats_big(
    mut x: BigUint,
    mut steps: u64,
    mut odd_steps: u64,
    mut max: BigUint,
    max_steps: u64,
) -> SeqStats {
    loop {
        if x.is_one() {
            return SeqStats {
                stopping_time: Some(steps),
                max_term: max,
                odd_steps,
            };
        }
        if steps == max_steps {
            // A truncated sequence counts its last term too.
            return SeqStats {
                stopping_time: None,
                max_term: max,
                odd_steps: odd_steps + x.is_odd() as u64,
            };
        }
        if x.is_odd() {
            odd_steps += 1;
            x = x * 3u32 + 1u32;
            if x > max {
                max = x.clone();
            }
        } else {
            x >>= 1u32;
        }
        steps += 1;
    }
}

/// Serialisable per-seed summary used for JSON lines and CSV output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub seed: String,
    pub kind: String,
    pub stopping_time: Option<u64>,
    pub max_term: String,
    pub odd_steps: u64,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<String>>,
}

impl SequenceRecord {
    pub fn from_syr(s: &SyrSequence, with_terms: bool) -> Self {
        Self::build(s.seed.value(), "syr", s, s.truncated, with_terms)
    }

    pub fn from_col(s: &ColSequence, with_terms: bool) -> Self {
        Self::build(s.seed.value(), "col", s, s.truncated, with_terms)
    }

    fn build(
        seed: &BigUint,
        kind: &str,
        s: &impl Trajectory,
        truncated: bool,
        with_terms: bool,
    ) -> Self {
        let st = stats(s);
        SequenceRecord {
            seed: seed.to_string(),
            kind: kind.to_string(),
            stopping_time: st.stopping_time,
            max_term: st.max_term.to_string(),
            odd_steps: st.odd_steps,
            truncated,
            terms: with_terms.then(|| s.terms().iter().map(|t| t.to_string()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn odd(n: u64) -> PosOdd {
        PosOdd::try_from(n).unwrap()
    }

    fn int(n: u64) -> PosInt {
        PosInt::try_from(n).unwrap()
    }

    fn vals(terms: &[BigUint]) -> Vec<u64> {
        terms.iter().map(|t| t.to_u64().unwrap()).collect()
    }

    /// Naive Collatz iteration, independent of the expansion path.
    fn naive_col(n: u64) -> Vec<u64> {
        let mut out = vec![n];
        let mut x = n;
        while x != 1 {
            x = if x % 2 == 1 { 3 * x + 1 } else { x / 2 };
            out.push(x);
        }
        out
    }

    const COL35: [u64; 14] = [35, 106, 53, 160, 80, 40, 20, 10, 5, 16, 8, 4, 2, 1];

    #[test]
    fn oracle_examples() {
        assert_eq!(vals(&syr_seq_oracle(&odd(35), 100).terms), vec![35, 53, 5, 1]);
        assert_eq!(vals(&syr_seq_oracle(&odd(1), 100).terms), vec![1]);
        let s27 = syr_seq_oracle(&odd(27), 1000);
        assert_eq!(s27.steps(), 41);
        assert!(!s27.truncated);
    }

    #[test]
    fn syrgen_examples() {
        assert_eq!(vals(&syrgen(&odd(35), 100).terms), vec![35, 53, 5, 1]);
        assert_eq!(vals(&syrgen(&odd(5), 100).terms), vec![5, 1]);
        assert_eq!(
            vals(&syrgen(&odd(9), 100).terms),
            vec![9, 7, 11, 17, 13, 5, 1]
        );
    }

    #[test]
    fn truncation() {
        let s = syrgen(&odd(27), 5);
        assert!(s.truncated);
        assert_eq!(s.steps(), 5);
        assert_eq!(stats(&s).stopping_time, None);
        assert!(collatz_expand(&s).is_err());
        let s = syrgen(&odd(1), 0);
        assert!(!s.truncated);
        let c = col_seq(&int(27), 10);
        assert!(c.truncated);
        assert_eq!(c.steps(), 10);
        assert_eq!(vals(&c.terms), naive_col(27)[..11].to_vec());
        let c = col_seq(&int(64), 3);
        assert!(c.truncated);
        assert_eq!(vals(&c.terms), vec![64, 32, 16, 8]);
    }

    #[test]
    fn expand_examples() {
        let e = collatz_expand(&syrgen(&odd(35), 100)).unwrap();
        assert_eq!(vals(&e.terms), COL35.to_vec());
        let e = collatz_expand(&syrgen(&odd(1), 100)).unwrap();
        assert_eq!(vals(&e.terms), vec![1]);
        let e = collatz_expand(&syrgen(&odd(13), 100)).unwrap();
        assert_eq!(vals(&e.terms), vec![13, 40, 20, 10, 5, 16, 8, 4, 2, 1]);
    }

    #[test]
    fn col_seq_examples() {
        assert_eq!(
            vals(&col_seq(&int(40), DEFAULT_BUDGET).terms),
            vec![40, 20, 10, 5, 16, 8, 4, 2, 1]
        );
        assert_eq!(vals(&col_seq(&int(1), DEFAULT_BUDGET).terms), vec![1]);
        assert_eq!(
            vals(&col_seq(&int(64), DEFAULT_BUDGET).terms),
            vec![64, 32, 16, 8, 4, 2, 1]
        );
        assert_eq!(vals(&col_seq(&int(35), DEFAULT_BUDGET).terms), COL35.to_vec());
    }

    #[test]
    fn stats_examples() {
        let c = col_seq(&int(35), DEFAULT_BUDGET);
        let st = stats(&c);
        assert_eq!(st.stopping_time, Some(13));
        assert_eq!(st.max_term, BigUint::from(160u32));
        assert_eq!(st.odd_steps, 3);

        let st = stats(&col_seq(&int(1), DEFAULT_BUDGET));
        assert_eq!(st.stopping_time, Some(0));
        assert_eq!(st.max_term, BigUint::one());

        let st = stats(&col_seq(&int(27), DEFAULT_BUDGET));
        assert_eq!(st.stopping_time, Some(111));
        assert_eq!(st.max_term, BigUint::from(9232u32));
    }

    #[test]
    fn col_seq_matches_naive_iteration() {
        for n in 1..5_000u64 {
            let c = col_seq(&int(n), DEFAULT_BUDGET);
            assert_eq!(vals(&c.terms), naive_col(n), "seed {n}");
            assert_eq!(col_stats(&int(n), DEFAULT_BUDGET), stats(&c), "seed {n}");
        }
    }

    #[test]
    fn col_stats_falls_back_past_u128() {
        // 2^128 - 1 overflows on the first 3n+1.
        let n = PosInt::new(BigUint::from(u128::MAX)).unwrap();
        let fast = col_stats(&n, 2_000);
        let slow = stats(&col_seq(&n, 2_000));
        assert_eq!(fast, slow);
        // Truncated budgets agree too.
        assert_eq!(col_stats(&n, 50), stats(&col_seq(&n, 50)));
        assert_eq!(col_stats(&int(27), 50), stats(&col_seq(&int(27), 50)));
    }

    #[test]
    fn odd_subsequence_is_syracuse() {
        for n in (1..3_000u64).step_by(2) {
            let c = col_seq(&int(n), DEFAULT_BUDGET);
            let odds: Vec<_> = c.odd_terms().cloned().collect();
            assert_eq!(odds, syrgen(&odd(n), DEFAULT_BUDGET).terms);
        }
        for n in (2..3_000u64).step_by(2) {
            let c = col_seq(&int(n), DEFAULT_BUDGET);
            let r = n.trailing_zeros() as usize;
            let tail = col_seq(&int(n >> r), DEFAULT_BUDGET);
            assert_eq!(c.terms[r..], tail.terms[..]);
        }
    }

    #[test]
    fn records_serialise() {
        let rec = SequenceRecord::from_syr(&syrgen(&odd(35), 100), true);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"seed":"35","kind":"syr","stopping_time":3,"max_term":"53","odd_steps":3,"truncated":false,"terms":["35","53","5","1"]}"#
        );
        let rec = SequenceRecord::from_col(&col_seq(&int(1), 10), false);
        assert!(rec.terms.is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn syrgen_matches_oracle(n in any::<u64>()) {
                let n = odd(n | 1);
                prop_assert_eq!(syrgen(&n, DEFAULT_BUDGET), syr_seq_oracle(&n, DEFAULT_BUDGET));
            }

            #[test]
            fn expansion_steps_are_collatz_steps(n in 1u64..1_000_000) {
                let c = col_seq(&int(n), DEFAULT_BUDGET);
                for w in c.terms.windows(2) {
                    let from = PosInt::new(w[0].clone()).unwrap();
                    prop_assert_eq!(arith::col_step(&from).into_inner(), w[1].clone());
                }
                prop_assert_eq!(c.terms.iter().filter(|t| t.is_one()).count(), 1);
            }
        }
    }
}
