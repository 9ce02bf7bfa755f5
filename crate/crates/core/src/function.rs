//! Finite carriers and total functions between them.
//!
//! A function is stored as its full lookup table, so equality of functions
//! is pointwise equality of tables: extensionality holds by representation
//! rather than by axiom. Surjectivity, injectivity, and bijectivity are all
//! decided by inspecting fibers.

use crate::error::{Error, Result};
use crate::tuple::Tuples;

/// A finite set whose elements are the indices `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Carrier {
    size: usize,
}

impl Carrier {
    pub fn new(size: usize) -> Self {
        Carrier { size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub(crate) fn check(&self, x: usize) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                value: x,
                size: self.size,
            })
        }
    }

    pub(crate) fn check_same(&self, other: Carrier) -> Result<()> {
        if *self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                expected: self.size,
                found: other.size,
            })
        }
    }
}

impl std::fmt::Display for Carrier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{0..{}}}", self.size)
    }
}

/// A total function between finite carriers, stored as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFunction {
    dom: Carrier,
    cod: Carrier,
    table: Vec<usize>,
}

impl FiniteFunction {
    /// Build a function from its value table; `table[x]` is the value at `x`.
    pub fn new(dom: Carrier, cod: Carrier, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::LengthMismatch {
                expected: dom.size(),
                found: table.len(),
            });
        }
        for &b in &table {
            cod.check(b)?;
        }
        Ok(FiniteFunction { dom, cod, table })
    }

    pub fn from_fn(dom: Carrier, cod: Carrier, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(dom, cod, dom.elements().map(f).collect())
    }

    pub fn identity(carrier: Carrier) -> Self {
        FiniteFunction {
            dom: carrier,
            cod: carrier,
            table: carrier.elements().collect(),
        }
    }

    pub fn constant(dom: Carrier, cod: Carrier, value: usize) -> Result<Self> {
        cod.check(value)?;
        Ok(FiniteFunction {
            dom,
            cod,
            table: vec![value; dom.size()],
        })
    }

    pub fn dom(&self) -> Carrier {
        self.dom
    }

    pub fn cod(&self) -> Carrier {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Evaluate at `x`. Panics if `x` is outside the domain.
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// All domain elements mapped to `b`, in ascending order.
    pub fn fiber(&self, b: usize) -> Result<Vec<usize>> {
        self.cod.check(b)?;
        Ok(self
            .dom
            .elements()
            .filter(|&x| self.table[x] == b)
            .collect())
    }

    /// The smallest preimage of `b`, if `b` is in the image.
    ///
    /// When present, the witness `a` satisfies the right-inverse law
    /// `f(a) = b`.
    pub fn image_witness(&self, b: usize) -> Result<Option<usize>> {
        self.cod.check(b)?;
        Ok(self.dom.elements().find(|&x| self.table[x] == b))
    }

    /// A right inverse `g` with `f(g(b)) = b` for every `b`, which exists
    /// exactly when `f` is surjective. Each `g(b)` is the smallest preimage.
    pub fn right_inverse(&self) -> Option<FiniteFunction> {
        let mut table = Vec::with_capacity(self.cod.size());
        for b in self.cod.elements() {
            table.push(self.image_witness(b).expect("b ranges over cod")?);
        }
        Some(FiniteFunction {
            dom: self.cod,
            cod: self.dom,
            table,
        })
    }

    /// True when distinct arguments never share a value.
    pub fn is_monic(&self) -> bool {
        for a1 in self.dom.elements() {
            for a2 in 0..a1 {
                if self.table[a1] == self.table[a2] {
                    return false;
                }
            }
        }
        true
    }

    /// True when every fiber has at most one element.
    pub fn is_embedding(&self) -> bool {
        self.fiber_counts().into_iter().all(|count| count <= 1)
    }

    /// True when every fiber has exactly one element.
    pub fn is_bijective(&self) -> bool {
        self.fiber_counts().into_iter().all(|count| count == 1)
    }

    fn fiber_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.cod.size()];
        for &b in &self.table {
            counts[b] += 1;
        }
        counts
    }

    /// Enumerate every function from `dom` to `cod`, in table index order.
    pub fn all(dom: Carrier, cod: Carrier) -> impl Iterator<Item = FiniteFunction> {
        Tuples::index_order(vec![cod.size(); dom.size()]).map(move |table| FiniteFunction {
            dom,
            cod,
            table,
        })
    }
}

/// Disjoint union of two carriers, with the left and right injections.
///
/// Elements of `a` keep their indices and elements of `b` are shifted up
/// by `a.size()`, so the injections are monic with disjoint images that
/// cover the sum.
pub fn disjoint_union(a: Carrier, b: Carrier) -> (Carrier, FiniteFunction, FiniteFunction) {
    let sum = Carrier::new(a.size() + b.size());
    let inj1 = FiniteFunction {
        dom: a,
        cod: sum,
        table: a.elements().collect(),
    };
    let inj2 = FiniteFunction {
        dom: b,
        cod: sum,
        table: b.elements().map(|y| a.size() + y).collect(),
    };
    (sum, inj1, inj2)
}
