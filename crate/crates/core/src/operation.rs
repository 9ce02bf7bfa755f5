//! Total finitary operations on a carrier, stored as flat tables.

use crate::error::{Error, Result};
use crate::function::Carrier;
use crate::tuple::{self, Tuples};

/// A `k`-ary operation on a finite carrier.
///
/// The table holds one entry per argument tuple, indexed by the mixed-radix
/// encoding of [`crate::tuple`] (coordinate 0 least significant). An arity-0
/// operation has a single-entry table holding the designated constant. The
/// table layout is part of the persisted format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOperation {
    carrier: Carrier,
    arity: usize,
    table: Vec<usize>,
}

impl FiniteOperation {
    pub fn new(carrier: Carrier, arity: usize, table: Vec<usize>) -> Result<Self> {
        let expected = tuple::count_uniform(carrier.size(), arity).ok_or(Error::SizeOverflow)?;
        if table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: table.len(),
            });
        }
        for &value in &table {
            carrier.check(value)?;
        }
        Ok(FiniteOperation {
            carrier,
            arity,
            table,
        })
    }

    /// Tabulate `f` over every argument tuple.
    pub fn from_fn(carrier: Carrier, arity: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        tuple::count_uniform(carrier.size(), arity).ok_or(Error::SizeOverflow)?;
        let mut table = Vec::new();
        for args in Tuples::index_order(vec![carrier.size(); arity]) {
            let value = f(&args);
            carrier.check(value)?;
            table.push(value);
        }
        Ok(FiniteOperation {
            carrier,
            arity,
            table,
        })
    }

    /// The arity-0 operation designating `value`.
    pub fn constant(carrier: Carrier, value: usize) -> Result<Self> {
        carrier.check(value)?;
        Ok(FiniteOperation {
            carrier,
            arity: 0,
            table: vec![value],
        })
    }

    /// The `arity`-ary operation returning its `coord`-th argument.
    pub fn projection(carrier: Carrier, arity: usize, coord: usize) -> Result<Self> {
        if coord >= arity {
            return Err(Error::CoordinateOutOfRange { coord, arity });
        }
        Self::from_fn(carrier, arity, |args| args[coord])
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Apply to an argument tuple, checking arity and ranges.
    pub fn apply(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for &a in args {
            self.carrier.check(a)?;
        }
        Ok(self.eval(args))
    }

    /// Apply to a tuple that is known to be in range.
    pub(crate) fn eval(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[tuple::encode_uniform(args, self.carrier.size())]
    }

    /// All argument tuples, in table index order.
    pub fn arg_tuples(&self) -> Tuples {
        Tuples::index_order(vec![self.carrier.size(); self.arity])
    }
}
