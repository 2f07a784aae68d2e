use crate::root_data::{AlgebraType, Weight};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported algebra {series}{rank}")]
    UnsupportedAlgebra { series: char, rank: usize },

    #[error("weight {weight} has length {got}, expected rank {expected}")]
    RankMismatch {
        weight: Weight,
        got: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch {
        left: AlgebraType,
        right: AlgebraType,
    },

    #[error("division is not exact: {0}")]
    NonDivisible(String),

    #[error("Q_{m}({node}) is not an exact quotient: {detail}")]
    NonDivisibleAt { m: u32, node: usize, detail: String },

    #[error("node {node} is out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("pair ({a}, {b}) is not admissible for {algebra}")]
    Inadmissible {
        algebra: AlgebraType,
        a: usize,
        b: usize,
    },

    #[error("column height {k} out of range 1..={n}")]
    HeightOutOfRange { k: usize, n: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
