use thiserror::Error;

/// A witness that a binary relation fails one of the equivalence laws.
///
/// Witnesses are reported in a fixed scan order: reflexivity over single
/// elements, then symmetry over pairs, then transitivity over triples,
/// each in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceViolation {
    NotReflexive { x: usize },
    NotSymmetric { x: usize, y: usize },
    NotTransitive { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for EquivalenceViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquivalenceViolation::NotReflexive { x } => {
                write!(f, "({x}, {x}) is missing, so the relation is not reflexive")
            }
            EquivalenceViolation::NotSymmetric { x, y } => {
                write!(
                    f,
                    "({x}, {y}) is present but ({y}, {x}) is not, so the relation is not symmetric"
                )
            }
            EquivalenceViolation::NotTransitive { x, y, z } => {
                write!(
                    f,
                    "({x}, {y}) and ({y}, {z}) are present but ({x}, {z}) is not, so the relation is not transitive"
                )
            }
        }
    }
}

/// Errors produced by kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {value} is out of range for a carrier of size {size}")]
    OutOfRange { value: usize, size: usize },

    #[error("carrier mismatch: expected size {expected}, found size {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("coordinate {coord} is out of range for arity {arity}")]
    CoordinateOutOfRange { coord: usize, arity: usize },

    #[error("relation of shape {rows}x{cols} is not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("relation is not an equivalence: {0}")]
    NotEquivalence(EquivalenceViolation),

    #[error("block {block} is empty")]
    EmptyBlock { block: usize },

    #[error("element {element} appears in more than one block")]
    OverlappingBlocks { element: usize },

    #[error("element {element} is not covered by any block")]
    UncoveredElement { element: usize },

    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("arity mismatch for `{symbol}`: expected {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("algebras do not share a signature")]
    SignatureMismatch,

    #[error("carrier or table size exceeds the supported maximum")]
    SizeOverflow,

    #[error("carrier size {size} exceeds the enumeration bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },

    #[error("partition is not a congruence: `{symbol}` maps the related tuples {u:?} and {v:?} into different blocks")]
    NotACongruence {
        symbol: String,
        u: Vec<usize>,
        v: Vec<usize>,
    },

    #[error("congruence belongs to a different algebra")]
    CongruenceMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
