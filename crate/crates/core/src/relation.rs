//! Binary relations between finite carriers, function kernels, and
//! compatibility of operations with binary relations.

use crate::error::{Error, Result};
use crate::function::{Carrier, FiniteFunction};
use crate::operation::FiniteOperation;
use crate::subset::Subset;
use crate::tuple::Tuples;

/// A relation between two carriers, stored as a dense boolean matrix.
///
/// When the carriers coincide the relation is square and supports the
/// kernel, pullback, and compatibility machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    dom_a: Carrier,
    dom_b: Carrier,
    cells: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(dom_a: Carrier, dom_b: Carrier) -> Self {
        BinaryRelation {
            dom_a,
            dom_b,
            cells: vec![false; dom_a.size() * dom_b.size()],
        }
    }

    pub fn full(dom_a: Carrier, dom_b: Carrier) -> Self {
        BinaryRelation {
            dom_a,
            dom_b,
            cells: vec![true; dom_a.size() * dom_b.size()],
        }
    }

    /// The identity relation: `(x, y)` related exactly when `x = y`.
    pub fn diagonal(carrier: Carrier) -> Self {
        Self::from_fn(carrier, carrier, |x, y| x == y)
    }

    pub fn from_fn(dom_a: Carrier, dom_b: Carrier, rel: impl Fn(usize, usize) -> bool) -> Self {
        let mut cells = vec![false; dom_a.size() * dom_b.size()];
        for a in dom_a.elements() {
            for b in dom_b.elements() {
                cells[a + b * dom_a.size()] = rel(a, b);
            }
        }
        BinaryRelation {
            dom_a,
            dom_b,
            cells,
        }
    }

    pub fn from_pairs(
        dom_a: Carrier,
        dom_b: Carrier,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rel = Self::empty(dom_a, dom_b);
        for (a, b) in pairs {
            dom_a.check(a)?;
            dom_b.check(b)?;
            rel.cells[a + b * dom_a.size()] = true;
        }
        Ok(rel)
    }

    pub fn dom_a(&self) -> Carrier {
        self.dom_a
    }

    pub fn dom_b(&self) -> Carrier {
        self.dom_b
    }

    pub fn is_square(&self) -> bool {
        self.dom_a == self.dom_b
    }

    pub(crate) fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.dom_a.size(),
                cols: self.dom_b.size(),
            })
        }
    }

    pub fn contains(&self, a: usize, b: usize) -> Result<bool> {
        self.dom_a.check(a)?;
        self.dom_b.check(b)?;
        Ok(self.get(a, b))
    }

    pub(crate) fn get(&self, a: usize, b: usize) -> bool {
        self.cells[a + b * self.dom_a.size()]
    }

    /// Related pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dom_a.elements().flat_map(move |a| {
            self.dom_b
                .elements()
                .filter_map(move |b| self.get(a, b).then_some((a, b)))
        })
    }

    /// The same relation as a subset of the pair-encoded carrier, with
    /// `(a, b)` encoded as `a + b * |A|`.
    pub fn to_pair_subset(&self) -> Subset {
        let pairs = Carrier::new(self.dom_a.size() * self.dom_b.size());
        Subset::from_elements(pairs, self.pairs().map(|(a, b)| a + b * self.dom_a.size()))
            .expect("encoded pairs are in range")
    }

    /// Pull a square relation on the codomain of `g` back along `g`:
    /// `(x, y)` is related exactly when `self(g(x), g(y))`.
    pub fn pullback(&self, g: &FiniteFunction) -> Result<BinaryRelation> {
        self.check_square()?;
        self.dom_a.check_same(g.cod())?;
        Ok(Self::from_fn(g.dom(), g.dom(), |x, y| {
            self.get(g.apply(x), g.apply(y))
        }))
    }

    /// Pointwise implication: every pair of `self` is a pair of `other`.
    pub fn implies(&self, other: &BinaryRelation) -> Result<bool> {
        self.dom_a.check_same(other.dom_a)?;
        self.dom_b.check_same(other.dom_b)?;
        Ok(self.cells.iter().zip(&other.cells).all(|(&p, &q)| !p || q))
    }

    /// Implication under a map: `self` on `A` implies `other` pulled back
    /// along `g : A -> B`.
    pub fn implies_under(&self, g: &FiniteFunction, other: &BinaryRelation) -> Result<bool> {
        self.implies(&other.pullback(g)?)
    }

    /// Lift to tuples: true when `self(u[i], v[i])` for every coordinate.
    pub fn eval_rel(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        for (&x, &y) in u.iter().zip(v) {
            self.dom_a.check(x)?;
            self.dom_b.check(y)?;
        }
        Ok(u.iter().zip(v).all(|(&x, &y)| self.get(x, y)))
    }
}

/// The kernel of a function: `x` and `y` are related exactly when
/// `f(x) = f(y)`.
pub fn ker(f: &FiniteFunction) -> BinaryRelation {
    BinaryRelation::from_fn(f.dom(), f.dom(), |x, y| f.apply(x) == f.apply(y))
}

/// Compatibility of an operation with a square binary relation on its
/// carrier: componentwise related argument tuples map to related results.
pub fn compatible_op(f: &FiniteOperation, r: &BinaryRelation) -> Result<bool> {
    Ok(compatible_op_counterexample(f, r)?.is_none())
}

/// The lexicographically first pair of componentwise related argument
/// tuples whose images are unrelated, if compatibility fails.
pub fn compatible_op_counterexample(
    f: &FiniteOperation,
    r: &BinaryRelation,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    r.check_square()?;
    f.carrier().check_same(r.dom_a())?;
    let n = f.carrier().size();

    // Related partners of each element, ascending; restricting the inner
    // search to these reproduces the naive quantifier over all tuple pairs.
    let partners: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| r.get(x, y)).collect())
        .collect();

    for u in Tuples::lex_order(vec![n; f.arity()]) {
        let fu = f.eval(&u);
        let choice_sizes: Vec<usize> = u.iter().map(|&x| partners[x].len()).collect();
        for choice in Tuples::lex_order(choice_sizes) {
            let v: Vec<usize> = u
                .iter()
                .zip(&choice)
                .map(|(&x, &c)| partners[x][c])
                .collect();
            if !r.get(fu, f.eval(&v)) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}
