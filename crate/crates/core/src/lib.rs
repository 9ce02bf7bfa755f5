//! A computational kernel for finite universal algebra.
//!
//! Everything is finite and everything is decided by exhaustive checking:
//! carriers are index sets `0..n`, functions and operations are lookup
//! tables, relations are boolean matrices or explicit tuple sets, and
//! equivalence relations are canonical partitions. On top of these sit
//! signatures, algebras, products, congruences, and quotient algebras.
//!
//! All values are immutable after construction and all operations are
//! pure, so everything can be shared freely across threads.

pub mod algebra;
pub mod congruence;
pub mod error;
pub mod function;
pub mod multirel;
pub mod operation;
pub mod partition;
pub mod product;
pub mod relation;
pub mod subset;
pub mod tuple;

pub use algebra::{
    dep_compatible, validate_algebra, AlgebraViolation, CompatibilityFailure,
    ContCompatibilityFailure, FinAlgebra, Signature,
};
pub use congruence::{
    all_congruences, all_congruences_bounded, check_congruence, generated_congruence,
    generated_congruence_bounded, quotient_algebra, quotient_zero, zero_congruence, Congruence,
    DEFAULT_SIZE_BOUND,
};
pub use error::{EquivalenceViolation, Error, Result};
pub use function::{disjoint_union, Carrier, FiniteFunction};
pub use multirel::{
    cont_compatible_op, cont_compatible_op_counterexample, dep_compatible_ops, ContRelation,
    DepRelation, MatrixWitness,
};
pub use operation::FiniteOperation;
pub use partition::{relation_properties, Partition, Partitions, RelationProperties};
pub use product::{class_product, decode_element, encode_element, product};
pub use relation::{compatible_op, compatible_op_counterexample, ker, BinaryRelation};
pub use subset::{image_in, Subset};
