//! Product algebras over finite families of factors.

use crate::algebra::{FinAlgebra, Signature};
use crate::error::{Error, Result};
use crate::function::Carrier;
use crate::operation::FiniteOperation;
use crate::tuple;

/// Largest allowed product carrier; element indices stay within 32 bits.
pub const MAX_PRODUCT_CARRIER: u64 = 1 << 32;

/// The product of the given factors, all of which must share `signature`.
///
/// The product carrier has one element per tuple of factor elements, in the
/// mixed-radix encoding of [`crate::tuple`] (factor 0 least significant),
/// and every symbol is interpreted coordinatewise: decode the arguments,
/// apply each factor's table, and encode the results. The empty product is
/// the one-element algebra.
pub fn product(signature: &Signature, factors: &[&FinAlgebra]) -> Result<FinAlgebra> {
    for factor in factors {
        if factor.signature() != signature {
            return Err(Error::SignatureMismatch);
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.carrier().size()).collect();
    let total = tuple::count(&sizes).ok_or(Error::SizeOverflow)?;
    if total as u64 > MAX_PRODUCT_CARRIER {
        return Err(Error::SizeOverflow);
    }
    let carrier = Carrier::new(total);

    let mut interp = Vec::with_capacity(signature.len());
    for (index, (_, arity)) in signature.symbols().enumerate() {
        let table_len = tuple::count_uniform(total, arity).ok_or(Error::SizeOverflow)?;
        let mut table = Vec::with_capacity(table_len);
        for flat in 0..table_len {
            let args = tuple::decode_uniform(flat, total, arity);
            let decoded: Vec<Vec<usize>> = args.iter().map(|&a| tuple::decode(a, &sizes)).collect();
            let mut result = Vec::with_capacity(factors.len());
            for (j, factor) in factors.iter().enumerate() {
                let coords: Vec<usize> = decoded.iter().map(|d| d[j]).collect();
                result.push(factor.operations()[index].eval(&coords));
            }
            table.push(tuple::encode(&result, &sizes));
        }
        interp.push(
            FiniteOperation::new(carrier, arity, table).expect("coordinatewise table is total"),
        );
    }

    let name = if factors.is_empty() {
        "trivial".to_string()
    } else {
        factors
            .iter()
            .map(|f| f.name())
            .collect::<Vec<_>>()
            .join("_x_")
    };
    Ok(FinAlgebra::from_parts_unchecked(
        name,
        signature.clone(),
        carrier,
        interp,
    ))
}

/// The product of an enumerated class of algebras. Tags stand for the
/// membership evidence that picks out each factor and do not influence the
/// result.
pub fn class_product(signature: &Signature, members: &[(&FinAlgebra, &str)]) -> Result<FinAlgebra> {
    let factors: Vec<&FinAlgebra> = members.iter().map(|&(algebra, _)| algebra).collect();
    product(signature, &factors)
}

/// Decode a product element into one coordinate per factor size.
pub fn decode_element(element: usize, factor_sizes: &[usize]) -> Vec<usize> {
    tuple::decode(element, factor_sizes)
}

/// Encode factor coordinates into a product element.
pub fn encode_element(coords: &[usize], factor_sizes: &[usize]) -> usize {
    tuple::encode(coords, factor_sizes)
}
