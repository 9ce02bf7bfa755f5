//! Signatures and finite algebras: named operation symbols with arities,
//! and carriers equipped with one interpreted operation per symbol.

use crate::error::{Error, Result};
use crate::function::Carrier;
use crate::multirel::{
    cont_compatible_op_counterexample, dep_compatible_ops, ContRelation, DepRelation,
};
use crate::operation::FiniteOperation;
use crate::relation::{compatible_op_counterexample, BinaryRelation};
use crate::tuple;

/// An ordered list of operation symbols with arities.
///
/// Symbol order is significant: interpretations, serialization, and all
/// iteration follow declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(seen, _)| seen == name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn empty() -> Self {
        Signature {
            symbols: Vec::new(),
        }
    }

    /// The monoid signature: a nullary unit `e` and a binary `·`.
    pub fn monoid() -> Self {
        Signature {
            symbols: vec![("e".to_string(), 0), ("·".to_string(), 2)],
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols
            .iter()
            .map(|(name, arity)| (name.as_str(), *arity))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn arity_of(&self, symbol: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(name, _)| name == symbol)
            .map(|&(_, arity)| arity)
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|(name, _)| name == symbol)
    }

    pub fn symbol_at(&self, index: usize) -> (&str, usize) {
        let (name, arity) = &self.symbols[index];
        (name, *arity)
    }
}

/// One reason a proposed algebra is not well formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    UnknownOperation {
        symbol: String,
    },
    DuplicateOperation {
        symbol: String,
    },
    MissingOperation {
        symbol: String,
    },
    WrongTableSize {
        symbol: String,
        expected: usize,
        found: usize,
    },
    ValueOutOfRange {
        symbol: String,
        entry: usize,
        value: usize,
    },
    WrongArity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    WrongCarrier {
        symbol: String,
    },
    NullaryOnEmptyCarrier {
        symbol: String,
    },
    TableTooLarge {
        symbol: String,
    },
}

impl std::fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraViolation::UnknownOperation { symbol } => {
                write!(f, "operation `{symbol}` is not in the signature")
            }
            AlgebraViolation::DuplicateOperation { symbol } => {
                write!(f, "operation `{symbol}` is defined more than once")
            }
            AlgebraViolation::MissingOperation { symbol } => {
                write!(f, "operation `{symbol}` has no interpretation")
            }
            AlgebraViolation::WrongTableSize {
                symbol,
                expected,
                found,
            } => {
                write!(
                    f,
                    "table for `{symbol}` has {found} entries, expected {expected}"
                )
            }
            AlgebraViolation::ValueOutOfRange {
                symbol,
                entry,
                value,
            } => {
                write!(
                    f,
                    "table for `{symbol}` has out-of-range value {value} at entry {entry}"
                )
            }
            AlgebraViolation::WrongArity {
                symbol,
                expected,
                found,
            } => {
                write!(
                    f,
                    "operation `{symbol}` has arity {found}, expected {expected}"
                )
            }
            AlgebraViolation::WrongCarrier { symbol } => {
                write!(f, "operation `{symbol}` is defined on a different carrier")
            }
            AlgebraViolation::NullaryOnEmptyCarrier { symbol } => {
                write!(
                    f,
                    "nullary operation `{symbol}` requires a nonempty carrier"
                )
            }
            AlgebraViolation::TableTooLarge { symbol } => {
                write!(f, "table for `{symbol}` would not fit in memory")
            }
        }
    }
}

/// Check raw operation tables against a signature and carrier. Each entry
/// pairs a symbol with its flat table in the layout of [`crate::tuple`].
pub fn validate_algebra(
    signature: &Signature,
    carrier: Carrier,
    ops: &[(String, Vec<usize>)],
) -> Vec<AlgebraViolation> {
    let mut violations = Vec::new();
    for (i, (symbol, table)) in ops.iter().enumerate() {
        if ops[..i].iter().any(|(seen, _)| seen == symbol) {
            violations.push(AlgebraViolation::DuplicateOperation {
                symbol: symbol.clone(),
            });
            continue;
        }
        let Some(arity) = signature.arity_of(symbol) else {
            violations.push(AlgebraViolation::UnknownOperation {
                symbol: symbol.clone(),
            });
            continue;
        };
        if arity == 0 && carrier.size() == 0 {
            violations.push(AlgebraViolation::NullaryOnEmptyCarrier {
                symbol: symbol.clone(),
            });
            continue;
        }
        let Some(expected) = tuple::count_uniform(carrier.size(), arity) else {
            violations.push(AlgebraViolation::TableTooLarge {
                symbol: symbol.clone(),
            });
            continue;
        };
        if table.len() != expected {
            violations.push(AlgebraViolation::WrongTableSize {
                symbol: symbol.clone(),
                expected,
                found: table.len(),
            });
            continue;
        }
        for (entry, &value) in table.iter().enumerate() {
            if !carrier.contains(value) {
                violations.push(AlgebraViolation::ValueOutOfRange {
                    symbol: symbol.clone(),
                    entry,
                    value,
                });
            }
        }
    }
    for (symbol, _) in signature.symbols() {
        if !ops.iter().any(|(name, _)| name == symbol) {
            violations.push(AlgebraViolation::MissingOperation {
                symbol: symbol.to_string(),
            });
        }
    }
    violations
}

/// A finite algebra: a named carrier with one interpreted operation per
/// signature symbol, stored in signature order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    name: String,
    signature: Signature,
    carrier: Carrier,
    interp: Vec<FiniteOperation>,
}

impl FinAlgebra {
    /// Build from raw tables, in any order; fails with the full list of
    /// violations if the tables do not fit the signature.
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        carrier: Carrier,
        ops: Vec<(String, Vec<usize>)>,
    ) -> std::result::Result<Self, Vec<AlgebraViolation>> {
        let violations = validate_algebra(&signature, carrier, &ops);
        if !violations.is_empty() {
            return Err(violations);
        }
        let interp = signature
            .symbols()
            .map(|(symbol, arity)| {
                let table = ops
                    .iter()
                    .find(|(name, _)| name == symbol)
                    .map(|(_, table)| table.clone())
                    .expect("validated: no missing operations");
                FiniteOperation::new(carrier, arity, table).expect("validated table")
            })
            .collect();
        Ok(FinAlgebra {
            name: name.into(),
            signature,
            carrier,
            interp,
        })
    }

    /// Build from interpreted operations aligned positionally with the
    /// signature symbols.
    pub fn from_operations(
        name: impl Into<String>,
        signature: Signature,
        carrier: Carrier,
        interp: Vec<FiniteOperation>,
    ) -> std::result::Result<Self, Vec<AlgebraViolation>> {
        let mut violations = Vec::new();
        if interp.len() != signature.len() {
            for (symbol, _) in signature.symbols().skip(interp.len()) {
                violations.push(AlgebraViolation::MissingOperation {
                    symbol: symbol.to_string(),
                });
            }
        }
        for (op, (symbol, arity)) in interp.iter().zip(signature.symbols()) {
            if op.arity() != arity {
                violations.push(AlgebraViolation::WrongArity {
                    symbol: symbol.to_string(),
                    expected: arity,
                    found: op.arity(),
                });
            }
            if op.carrier() != carrier {
                violations.push(AlgebraViolation::WrongCarrier {
                    symbol: symbol.to_string(),
                });
            }
            if arity == 0 && carrier.size() == 0 {
                violations.push(AlgebraViolation::NullaryOnEmptyCarrier {
                    symbol: symbol.to_string(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(FinAlgebra {
            name: name.into(),
            signature,
            carrier,
            interp,
        })
    }

    pub(crate) fn from_parts_unchecked(
        name: String,
        signature: Signature,
        carrier: Carrier,
        interp: Vec<FiniteOperation>,
    ) -> Self {
        debug_assert_eq!(interp.len(), signature.len());
        FinAlgebra {
            name,
            signature,
            carrier,
            interp,
        }
    }

    /// The two-element monoid with addition mod 2 and unit 0.
    pub fn z2_monoid() -> Self {
        FinAlgebra::new(
            "Z2",
            Signature::monoid(),
            Carrier::new(2),
            vec![
                ("e".to_string(), vec![0]),
                ("·".to_string(), vec![0, 1, 1, 0]),
            ],
        )
        .expect("built-in example is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// Interpreted operations in signature order.
    pub fn operations(&self) -> &[FiniteOperation] {
        &self.interp
    }

    pub fn op(&self, symbol: &str) -> Option<&FiniteOperation> {
        self.signature.index_of(symbol).map(|i| &self.interp[i])
    }

    /// Interpret `symbol` at an argument tuple.
    pub fn interpret(&self, symbol: &str, args: &[usize]) -> Result<usize> {
        let index = self
            .signature
            .index_of(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        let op = &self.interp[index];
        if args.len() != op.arity() {
            return Err(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: op.arity(),
                found: args.len(),
            });
        }
        op.apply(args)
    }

    /// True when every basic operation is compatible with `r`.
    pub fn compatible(&self, r: &BinaryRelation) -> Result<bool> {
        Ok(self.compatibility_counterexample(r)?.is_none())
    }

    /// The first operation (in signature order) that breaks compatibility,
    /// with the lexicographically first failing tuple pair.
    pub fn compatibility_counterexample(
        &self,
        r: &BinaryRelation,
    ) -> Result<Option<CompatibilityFailure>> {
        for ((symbol, _), op) in self.signature.symbols().zip(&self.interp) {
            if let Some((u, v)) = compatible_op_counterexample(op, r)? {
                return Ok(Some(CompatibilityFailure {
                    symbol: symbol.to_string(),
                    u,
                    v,
                }));
            }
        }
        Ok(None)
    }

    /// True when every basic operation is compatible with the `k`-ary
    /// relation `r`.
    pub fn cont_compatible(&self, r: &ContRelation) -> Result<bool> {
        Ok(self.cont_compatibility_counterexample(r)?.is_none())
    }

    /// The first operation that breaks continuous compatibility, with the
    /// offending member columns and escaped image tuple.
    pub fn cont_compatibility_counterexample(
        &self,
        r: &ContRelation,
    ) -> Result<Option<ContCompatibilityFailure>> {
        for ((symbol, _), op) in self.signature.symbols().zip(&self.interp) {
            if let Some((columns, image)) = cont_compatible_op_counterexample(op, r)? {
                return Ok(Some(ContCompatibilityFailure {
                    symbol: symbol.to_string(),
                    columns,
                    image,
                }));
            }
        }
        Ok(None)
    }
}

/// An operation, the member columns it was fed, and the image tuple that
/// escaped the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContCompatibilityFailure {
    pub symbol: String,
    pub columns: Vec<Vec<usize>>,
    pub image: Vec<usize>,
}

/// An operation and a pair of componentwise related tuples it maps to
/// unrelated elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityFailure {
    pub symbol: String,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl std::fmt::Display for CompatibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "`{}` maps the related tuples {:?} and {:?} to unrelated elements",
            self.symbol, self.u, self.v
        )
    }
}

/// Compatibility of a relation over a family of carriers with a family of
/// algebras over one signature, one algebra per coordinate.
pub fn dep_compatible(algebras: &[&FinAlgebra], r: &DepRelation) -> Result<bool> {
    let Some(first) = algebras.first() else {
        return Err(Error::SignatureMismatch);
    };
    if algebras.iter().any(|a| a.signature() != first.signature()) {
        return Err(Error::SignatureMismatch);
    }
    if algebras.len() != r.arity() {
        return Err(Error::LengthMismatch {
            expected: r.arity(),
            found: algebras.len(),
        });
    }
    for i in 0..first.signature().len() {
        let fs: Vec<FiniteOperation> = algebras.iter().map(|a| a.operations()[i].clone()).collect();
        if !dep_compatible_ops(&fs, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}
