//! Relations of arbitrary finite arity over one carrier, and relations over
//! a family of carriers, with the lifted evaluation and compatibility
//! predicates for each.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::function::Carrier;
use crate::operation::FiniteOperation;
use crate::relation::BinaryRelation;
use crate::tuple::Tuples;

/// A `k`-ary relation on a single carrier: a set of `k`-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContRelation {
    carrier: Carrier,
    arity: usize,
    members: BTreeSet<Vec<usize>>,
}

impl ContRelation {
    pub fn new(
        carrier: Carrier,
        arity: usize,
        members: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for tuple in members {
            if tuple.len() != arity {
                return Err(Error::LengthMismatch {
                    expected: arity,
                    found: tuple.len(),
                });
            }
            for &x in &tuple {
                carrier.check(x)?;
            }
            set.insert(tuple);
        }
        Ok(ContRelation {
            carrier,
            arity,
            members: set,
        })
    }

    pub fn empty(carrier: Carrier, arity: usize) -> Self {
        ContRelation {
            carrier,
            arity,
            members: BTreeSet::new(),
        }
    }

    pub fn full(carrier: Carrier, arity: usize) -> Self {
        ContRelation {
            carrier,
            arity,
            members: Tuples::index_order(vec![carrier.size(); arity]).collect(),
        }
    }

    /// View a square binary relation as a 2-ary relation.
    pub fn from_binary(r: &BinaryRelation) -> Result<Self> {
        r.check_square()?;
        Ok(ContRelation {
            carrier: r.dom_a(),
            arity: 2,
            members: r.pairs().map(|(a, b)| vec![a, b]).collect(),
        })
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.members.contains(tuple)
    }

    /// Member tuples in lexicographic order.
    pub fn members(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Evaluate over a matrix with one row per coordinate: true when every
    /// column is a member tuple. An arity-0 relation evaluates over the
    /// empty matrix, which has no columns.
    pub fn eval_matrix(&self, rows: &[Vec<usize>]) -> Result<bool> {
        let width = check_matrix_shape(rows, self.arity, |_| self.carrier)?;
        Ok((0..width).all(|j| {
            let column: Vec<usize> = rows.iter().map(|row| row[j]).collect();
            self.contains(&column)
        }))
    }
}

/// A relation over a family of carriers, one per coordinate: a set of mixed
/// tuples with `tuple[i]` drawn from `family[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepRelation {
    family: Vec<Carrier>,
    members: BTreeSet<Vec<usize>>,
}

impl DepRelation {
    pub fn new(
        family: Vec<Carrier>,
        members: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for tuple in members {
            if tuple.len() != family.len() {
                return Err(Error::LengthMismatch {
                    expected: family.len(),
                    found: tuple.len(),
                });
            }
            for (&x, carrier) in tuple.iter().zip(&family) {
                carrier.check(x)?;
            }
            set.insert(tuple);
        }
        Ok(DepRelation {
            family,
            members: set,
        })
    }

    pub fn empty(family: Vec<Carrier>) -> Self {
        DepRelation {
            family,
            members: BTreeSet::new(),
        }
    }

    pub fn full(family: Vec<Carrier>) -> Self {
        let members = Tuples::index_order(family.iter().map(Carrier::size).collect()).collect();
        DepRelation { family, members }
    }

    /// View a single-carrier relation as a relation over the constant family.
    pub fn from_cont(r: &ContRelation) -> Self {
        DepRelation {
            family: vec![r.carrier(); r.arity()],
            members: r.members().map(<[usize]>::to_vec).collect(),
        }
    }

    pub fn family(&self) -> &[Carrier] {
        &self.family
    }

    pub fn arity(&self) -> usize {
        self.family.len()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.members.contains(tuple)
    }

    pub fn members(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Evaluate over one row of arguments per coordinate: true when every
    /// column is a member tuple.
    pub fn eval_matrix(&self, rows: &[Vec<usize>]) -> Result<bool> {
        let width = check_matrix_shape(rows, self.family.len(), |i| self.family[i])?;
        Ok((0..width).all(|j| {
            let column: Vec<usize> = rows.iter().map(|row| row[j]).collect();
            self.contains(&column)
        }))
    }
}

fn check_matrix_shape(
    rows: &[Vec<usize>],
    arity: usize,
    carrier_of: impl Fn(usize) -> Carrier,
) -> Result<usize> {
    if rows.len() != arity {
        return Err(Error::LengthMismatch {
            expected: arity,
            found: rows.len(),
        });
    }
    let width = rows.first().map_or(0, Vec::len);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                found: row.len(),
            });
        }
        for &x in row {
            carrier_of(i).check(x)?;
        }
    }
    Ok(width)
}

/// Compatibility of an `m`-ary operation with a `k`-ary relation: whenever
/// the `m` columns of a `k x m` matrix are all member tuples, applying the
/// operation to each row yields a member tuple.
///
/// Compatibility with an arity-0 relation is defined to hold always.
pub fn cont_compatible_op(f: &FiniteOperation, r: &ContRelation) -> Result<bool> {
    Ok(cont_compatible_op_counterexample(f, r)?.is_none())
}

/// Member columns fed to an operation and the image tuple that escaped
/// the relation.
pub type MatrixWitness = (Vec<Vec<usize>>, Vec<usize>);

/// The first failing matrix, if compatibility fails: the selected member
/// columns and the image tuple that escapes the relation.
pub fn cont_compatible_op_counterexample(
    f: &FiniteOperation,
    r: &ContRelation,
) -> Result<Option<MatrixWitness>> {
    f.carrier().check_same(r.carrier())?;
    if r.arity() == 0 {
        return Ok(None);
    }
    let columns: Vec<&[usize]> = r.members().collect();
    let m = f.arity();
    for selection in Tuples::index_order(vec![columns.len(); m]) {
        let picked: Vec<&[usize]> = selection.iter().map(|&j| columns[j]).collect();
        let image: Vec<usize> = (0..r.arity())
            .map(|i| {
                let row: Vec<usize> = picked.iter().map(|col| col[i]).collect();
                f.eval(&row)
            })
            .collect();
        if !r.contains(&image) {
            return Ok(Some((
                picked.into_iter().map(<[usize]>::to_vec).collect(),
                image,
            )));
        }
    }
    Ok(None)
}

/// Compatibility of a tuple of operations (one per coordinate, all of one
/// arity) with a relation over the family of their carriers.
pub fn dep_compatible_ops(fs: &[FiniteOperation], r: &DepRelation) -> Result<bool> {
    if fs.len() != r.arity() {
        return Err(Error::LengthMismatch {
            expected: r.arity(),
            found: fs.len(),
        });
    }
    for (f, &carrier) in fs.iter().zip(r.family()) {
        f.carrier().check_same(carrier)?;
    }
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let m = first.arity();
    for f in fs {
        if f.arity() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                found: f.arity(),
            });
        }
    }
    let columns: Vec<&[usize]> = r.members().collect();
    for selection in Tuples::index_order(vec![columns.len(); m]) {
        let picked: Vec<&[usize]> = selection.iter().map(|&j| columns[j]).collect();
        let image: Vec<usize> = fs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let row: Vec<usize> = picked.iter().map(|col| col[i]).collect();
                f.eval(&row)
            })
            .collect();
        if !r.contains(&image) {
            return Ok(false);
        }
    }
    Ok(true)
}
