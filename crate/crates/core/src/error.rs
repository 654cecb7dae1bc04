//! Error type shared by every module.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown type {0:?}")]
    UnknownType(String),
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: char, rank: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("sign vector dimension {0} exceeds 64")]
    SignDimension(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid diagram automorphism: {0}")]
    InvalidDiagram(String),
    #[error("invalid inner twist: {0}")]
    InvalidInner(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("no valid lift for extra node of component {0}")]
    NoLift(usize),
    #[error("{0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
