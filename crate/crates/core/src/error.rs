use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("run-length word must be nonempty")]
    EmptyRunLengths,

    #[error("run-length entry {0} outside 1..=3")]
    InvalidRunLength(u8),

    #[error("depth must be at least 1")]
    InvalidDepth,

    #[error("word {word} generated twice at level {level}")]
    Collision { word: Word, level: usize },

    #[error("word set is not factor-free: {0} is a factor of {1}")]
    NotFactorFree(Word, Word),

    #[error("word set contains the empty word")]
    EmptyWordInSet,

    #[error("brute-force enumeration limited to length 24, got {0}")]
    TooLarge(usize),

    #[error("monomial list is empty")]
    EmptyList,

    #[error("denominator is constant; no asymptotic information")]
    DegenerateDenominator,

    #[error("invalid counts: min {min}, max {max}, length {n}")]
    InvalidCounts { min: usize, max: usize, n: usize },

    #[error("no word of length {0} avoids the set")]
    NoWordsOfLength(usize),

    #[error("profile has no terms of positive length")]
    EmptyProfile,

    #[error("no quasi-polynomial fit with modulus <= {0}")]
    NoFitFound(usize),

    #[error("sequence of length {len} too short for modulus search up to {max_modulus}")]
    SequenceTooShort { len: usize, max_modulus: usize },

    #[error("estimated cost {cost} exceeds the ceiling {ceiling}; pass --force to run anyway")]
    CostCeiling { cost: usize, ceiling: usize },

    #[error("unsupported report depth {0}; expected 1..=6")]
    UnsupportedDepth(usize),

    #[error("computation cancelled")]
    Cancelled,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
