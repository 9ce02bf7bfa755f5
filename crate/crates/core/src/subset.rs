//! Subsets of a finite carrier, represented as membership masks.
//!
//! Because a subset is exactly its mask, mutual inclusion implies value
//! equality: predicate extensionality is a property of the representation.

use crate::error::Result;
use crate::function::{Carrier, FiniteFunction};

/// A subset of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    carrier: Carrier,
    bits: Vec<bool>,
}

impl Subset {
    pub fn empty(carrier: Carrier) -> Self {
        Subset {
            carrier,
            bits: vec![false; carrier.size()],
        }
    }

    pub fn full(carrier: Carrier) -> Self {
        Subset {
            carrier,
            bits: vec![true; carrier.size()],
        }
    }

    pub fn singleton(carrier: Carrier, x: usize) -> Result<Self> {
        carrier.check(x)?;
        let mut bits = vec![false; carrier.size()];
        bits[x] = true;
        Ok(Subset { carrier, bits })
    }

    pub fn from_elements(
        carrier: Carrier,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut bits = vec![false; carrier.size()];
        for x in elements {
            carrier.check(x)?;
            bits[x] = true;
        }
        Ok(Subset { carrier, bits })
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn member(&self, x: usize) -> Result<bool> {
        self.carrier.check(x)?;
        Ok(self.bits[x])
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        self.carrier.check_same(other.carrier)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b))
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.carrier.check_same(other.carrier)?;
        Ok(Subset {
            carrier: self.carrier,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a || b)
                .collect(),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(x, &b)| b.then_some(x))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }
}

/// True when the image of `f` is contained in `s`.
pub fn image_in(f: &FiniteFunction, s: &Subset) -> Result<bool> {
    f.cod().check_same(s.carrier())?;
    Ok(f.table().iter().all(|&b| s.bits[b]))
}
