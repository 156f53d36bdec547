use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("expected an odd integer, got {0}")]
    NotOdd(BigUint),
    #[error("{value} is not reducible by U at step {step}: value is not 1 mod 4")]
    NotReducible { value: BigUint, step: u32 },
    #[error("residue {0} is not one of 1, 3, 5, 7")]
    InvalidResidue(u8),
    #[error("branch {0} is not one of 1, 5")]
    InvalidBranch(u64),
    #[error("cannot parse {0:?} as a natural number")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("cannot expand a truncated Syracuse sequence (seed {seed}, {steps} steps)")]
    Truncated { seed: BigUint, steps: u64 },
}
