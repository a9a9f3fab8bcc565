use thiserror::Error;

use crate::free_words::{Alphabet, GenSym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("cannot combine words over alphabets {left:?} and {right:?}")]
    MixedAlphabet { left: Alphabet, right: Alphabet },

    #[error("generator index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("no image given for generator {0}")]
    MissingImage(GenSym),

    #[error("invalid range ({i}, {j}) for n = {n}")]
    InvalidRange { i: usize, j: usize, n: usize },

    #[error("rank {n} is not supported here (need at least {min})")]
    RankTooSmall { n: usize, min: usize },

    #[error("strand count mismatch: expected {expected}, found {found}")]
    StrandMismatch { expected: usize, found: usize },

    #[error("fiber word does not belong to {expected}")]
    FiberMismatch { expected: &'static str },

    #[error("group flavors differ")]
    FlavorMismatch,

    #[error("operation {op} is not defined for {flavor}")]
    UnsupportedFlavor { op: &'static str, flavor: String },

    #[error("illegal exponent {exponent} for factor {factor}")]
    IllegalExponent { factor: usize, exponent: i64 },

    #[error("enumeration needs {needed} words, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("centre is not preserved: image of the central generator is {0}")]
    CenterViolated(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
