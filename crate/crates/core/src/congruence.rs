//! Congruences of finite algebras: checking, enumeration, generation, and
//! quotient algebras.

use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::function::Carrier;
use crate::operation::FiniteOperation;
use crate::partition::Partition;
use crate::tuple::Tuples;

/// Default ceiling on carrier size for congruence enumeration and
/// generation; Bell numbers grow too fast to go much further.
pub const DEFAULT_SIZE_BOUND: usize = 10;

/// An equivalence relation compatible with every basic operation of an
/// algebra. Values can only be obtained through a check, so holding a
/// `Congruence` is evidence that the check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    algebra: Arc<FinAlgebra>,
    partition: Partition,
}

impl Congruence {
    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Whether `u` and `v` fall in the same block. Block identity and
    /// relatedness coincide: this is both the introduction and the
    /// elimination view of the quotient.
    pub fn related(&self, u: usize, v: usize) -> Result<bool> {
        self.partition.related(u, v)
    }
}

/// Check that a partition of the algebra's carrier is a congruence. On
/// failure the error names the first operation in signature order that
/// breaks compatibility, with the lexicographically first tuple pair.
pub fn check_congruence(algebra: &FinAlgebra, partition: &Partition) -> Result<Congruence> {
    algebra.carrier().check_same(partition.carrier())?;
    if let Some(failure) = algebra.compatibility_counterexample(&partition.to_relation())? {
        return Err(Error::NotACongruence {
            symbol: failure.symbol,
            u: failure.u,
            v: failure.v,
        });
    }
    Ok(Congruence {
        algebra: Arc::new(algebra.clone()),
        partition: partition.clone(),
    })
}

/// The discrete partition as a congruence. Equal argument tuples give equal
/// results, so this never fails, for any algebra.
pub fn zero_congruence(algebra: &FinAlgebra) -> Congruence {
    Congruence {
        algebra: Arc::new(algebra.clone()),
        partition: Partition::discrete(algebra.carrier()),
    }
}

/// Every congruence of the algebra, in lexicographic restricted-growth-string
/// order of the underlying partitions. Uses the default size bound.
pub fn all_congruences(algebra: &FinAlgebra) -> Result<Vec<Congruence>> {
    all_congruences_bounded(algebra, DEFAULT_SIZE_BOUND)
}

/// As [`all_congruences`], with an explicit carrier-size bound.
pub fn all_congruences_bounded(algebra: &FinAlgebra, bound: usize) -> Result<Vec<Congruence>> {
    check_bound(algebra.carrier(), bound)?;
    let shared = Arc::new(algebra.clone());
    Ok(Partition::all(algebra.carrier())
        .filter(|p| {
            algebra
                .operations()
                .iter()
                .all(|op| partition_respects(p, op))
        })
        .map(|partition| Congruence {
            algebra: Arc::clone(&shared),
            partition,
        })
        .collect())
}

/// The smallest congruence relating every given pair. Uses the default
/// size bound.
pub fn generated_congruence(algebra: &FinAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    generated_congruence_bounded(algebra, pairs, DEFAULT_SIZE_BOUND)
}

/// As [`generated_congruence`], with an explicit carrier-size bound.
///
/// Starts from the equivalence generated by the pairs and closes under
/// one-coordinate substitution: whenever `a ~ b`, any operation applied to
/// tuples differing only in `a` versus `b` must give related results, so
/// those results are merged. Transitivity extends the single-coordinate
/// steps to full componentwise compatibility, making the fixpoint the
/// least congruence containing the pairs.
pub fn generated_congruence_bounded(
    algebra: &FinAlgebra,
    pairs: &[(usize, usize)],
    bound: usize,
) -> Result<Congruence> {
    let carrier = algebra.carrier();
    check_bound(carrier, bound)?;
    let mut uf = UnionFind::new(carrier.size());
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        carrier.check(a)?;
        carrier.check(b)?;
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for op in algebra.operations() {
            let arity = op.arity();
            for coord in 0..arity {
                let mut context_sizes = vec![carrier.size(); arity];
                context_sizes[coord] = 1;
                for mut args in Tuples::index_order(context_sizes) {
                    args[coord] = a;
                    let left = op.eval(&args);
                    args[coord] = b;
                    let right = op.eval(&args);
                    if uf.union(left, right) {
                        queue.push((left, right));
                    }
                }
            }
        }
    }
    let labels: Vec<usize> = (0..carrier.size()).map(|x| uf.find(x)).collect();
    let partition = Partition::from_assignment(carrier, &labels)?;
    debug_assert!(algebra
        .operations()
        .iter()
        .all(|op| partition_respects(&partition, op)));
    Ok(Congruence {
        algebra: Arc::new(algebra.clone()),
        partition,
    })
}

/// The quotient algebra: one carrier element per block, with each symbol
/// interpreted by applying the original table to the block representatives
/// (minimum elements) and returning the block of the result. Compatibility
/// makes the choice of representatives irrelevant.
pub fn quotient_algebra(algebra: &FinAlgebra, theta: &Congruence) -> Result<FinAlgebra> {
    if theta.algebra() != algebra {
        return Err(Error::CongruenceMismatch);
    }
    let partition = theta.partition();
    let carrier = Carrier::new(partition.block_count());
    let interp = algebra
        .operations()
        .iter()
        .map(|op| {
            FiniteOperation::from_fn(carrier, op.arity(), |blocks| {
                let reps: Vec<usize> = blocks.iter().map(|&b| partition.blocks()[b][0]).collect();
                partition.block_of()[op.eval(&reps)]
            })
            .expect("quotient table is total")
        })
        .collect();
    Ok(FinAlgebra::from_parts_unchecked(
        format!("{}_quotient", algebra.name()),
        algebra.signature().clone(),
        carrier,
        interp,
    ))
}

/// The zero congruence of the quotient algebra.
pub fn quotient_zero(algebra: &FinAlgebra, theta: &Congruence) -> Result<Congruence> {
    Ok(zero_congruence(&quotient_algebra(algebra, theta)?))
}

fn check_bound(carrier: Carrier, bound: usize) -> Result<()> {
    if carrier.size() > bound {
        return Err(Error::SizeBoundExceeded {
            size: carrier.size(),
            bound,
        });
    }
    Ok(())
}

/// Decide compatibility of an equivalence with one operation by checking
/// one-coordinate substitutions only; transitivity recovers the full
/// componentwise condition, so this agrees with the naive quantifier.
fn partition_respects(partition: &Partition, op: &FiniteOperation) -> bool {
    let block_of = partition.block_of();
    let n = partition.carrier().size();
    let arity = op.arity();
    for block in partition.blocks() {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                for coord in 0..arity {
                    let mut context_sizes = vec![n; arity];
                    context_sizes[coord] = 1;
                    for mut args in Tuples::index_order(context_sizes) {
                        args[coord] = a;
                        let left = op.eval(&args);
                        args[coord] = b;
                        let right = op.eval(&args);
                        if block_of[left] != block_of[right] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge the classes of `x` and `y`; true if they were distinct.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::relation::compatible_op;

    fn cyclic(n: usize) -> FinAlgebra {
        let sig = Signature::new(vec![("add".to_string(), 2)]).unwrap();
        let add = FiniteOperation::from_fn(Carrier::new(n), 2, |a| (a[0] + a[1]) % n).unwrap();
        FinAlgebra::from_operations(format!("Z{n}"), sig, Carrier::new(n), vec![add]).unwrap()
    }

    fn even_odd() -> Partition {
        Partition::from_blocks(Carrier::new(4), vec![vec![0, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn check_congruence_examples() {
        let z4 = cyclic(4);
        assert!(check_congruence(&z4, &even_odd()).is_ok());
        assert!(check_congruence(&z4, &Partition::discrete(Carrier::new(4))).is_ok());

        let z3 = cyclic(3);
        let split = Partition::from_blocks(Carrier::new(3), vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(
            check_congruence(&z3, &split),
            Err(Error::NotACongruence {
                symbol: "add".to_string(),
                u: vec![1, 1],
                v: vec![1, 2],
            })
        );
    }

    #[test]
    fn zero_congruence_examples() {
        let z4 = cyclic(4);
        assert_eq!(zero_congruence(&z4).partition().block_count(), 4);

        let one = FinAlgebra::from_operations("one", Signature::empty(), Carrier::new(1), vec![])
            .unwrap();
        assert_eq!(zero_congruence(&one).partition().block_count(), 1);

        let id = crate::function::FiniteFunction::identity(Carrier::new(4));
        assert_eq!(
            zero_congruence(&z4).partition(),
            &Partition::from_kernel(&id)
        );
    }

    #[test]
    fn z4_has_three_congruences() {
        let z4 = cyclic(4);
        let congruences = all_congruences(&z4).unwrap();
        let partitions: Vec<&Partition> = congruences.iter().map(Congruence::partition).collect();
        assert_eq!(partitions.len(), 3);
        assert!(partitions.contains(&&Partition::discrete(Carrier::new(4))));
        assert!(partitions.contains(&&Partition::single_block(Carrier::new(4))));
        assert!(partitions.contains(&&even_odd()));
    }

    #[test]
    fn z3_is_simple() {
        let congruences = all_congruences(&cyclic(3)).unwrap();
        assert_eq!(congruences.len(), 2);
    }

    #[test]
    fn z6_congruences_follow_the_divisor_lattice() {
        let z6 = cyclic(6);
        let partitions: Vec<Partition> = all_congruences(&z6)
            .unwrap()
            .into_iter()
            .map(|c| c.partition().clone())
            .collect();
        let c6 = Carrier::new(6);
        let mod2 =
            Partition::from_blocks(c6, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        let mod3 =
            Partition::from_blocks(c6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        assert_eq!(partitions.len(), 4);
        assert!(partitions.contains(&Partition::discrete(c6)));
        assert!(partitions.contains(&mod2));
        assert!(partitions.contains(&mod3));
        assert!(partitions.contains(&Partition::single_block(c6)));
    }

    #[test]
    fn chain_semilattice_congruences_are_interval_partitions() {
        // For min on the chain 0 < 1 < .. < n-1, congruences are exactly
        // the partitions into intervals: 2^(n-1) of them.
        for n in 1..=5usize {
            let sig = Signature::new(vec![("meet".to_string(), 2)]).unwrap();
            let meet =
                FiniteOperation::from_fn(Carrier::new(n), 2, |a| a[0].min(a[1])).unwrap();
            let chain =
                FinAlgebra::from_operations("chain", sig, Carrier::new(n), vec![meet]).unwrap();
            let congruences = all_congruences(&chain).unwrap();
            assert_eq!(congruences.len(), 1 << (n - 1));
            for theta in &congruences {
                for block in theta.partition().blocks() {
                    let lo = block[0];
                    let hi = *block.last().unwrap();
                    assert_eq!(block.len(), hi - lo + 1, "block {block:?} is not an interval");
                }
            }
        }
    }

    #[test]
    fn empty_signature_admits_all_partitions() {
        let free = FinAlgebra::from_operations("free", Signature::empty(), Carrier::new(4), vec![])
            .unwrap();
        assert_eq!(all_congruences(&free).unwrap().len(), 15);
    }

    #[test]
    fn size_bound_is_enforced() {
        let big = FinAlgebra::from_operations("big", Signature::empty(), Carrier::new(11), vec![])
            .unwrap();
        assert_eq!(
            all_congruences(&big),
            Err(Error::SizeBoundExceeded {
                size: 11,
                bound: 10
            })
        );
        assert!(generated_congruence(&big, &[]).is_err());
        assert!(generated_congruence_bounded(&big, &[(0, 10)], 11).is_ok());

        let z5 = cyclic(5);
        assert!(all_congruences_bounded(&z5, 4).is_err());
        assert_eq!(all_congruences_bounded(&z5, 5).unwrap().len(), 2);
    }

    #[test]
    fn fast_respects_check_agrees_with_naive_compatibility() {
        for n in 0..=3 {
            let add =
                FiniteOperation::from_fn(Carrier::new(n), 2, |a| (a[0] + a[1]) % n.max(1)).unwrap();
            let mul =
                FiniteOperation::from_fn(Carrier::new(n), 2, |a| (a[0] * a[1]) % n.max(1)).unwrap();
            for p in Partition::all(Carrier::new(n)) {
                let r = p.to_relation();
                for op in [&add, &mul] {
                    assert_eq!(partition_respects(&p, op), compatible_op(op, &r).unwrap());
                }
            }
        }
    }

    #[test]
    fn generated_congruence_examples() {
        let z4 = cyclic(4);
        assert_eq!(
            generated_congruence(&z4, &[]).unwrap().partition(),
            zero_congruence(&z4).partition()
        );
        assert_eq!(
            generated_congruence(&z4, &[(0, 2)]).unwrap().partition(),
            &even_odd()
        );

        let z3 = cyclic(3);
        assert_eq!(
            generated_congruence(&z3, &[(0, 1)]).unwrap().partition(),
            &Partition::single_block(Carrier::new(3))
        );
    }

    #[test]
    fn generated_congruence_is_minimal() {
        let z4 = cyclic(4);
        for pairs in [vec![(0, 2)], vec![(1, 3)], vec![(0, 1)], vec![(2, 2)]] {
            let generated = generated_congruence(&z4, &pairs).unwrap();
            let candidates: Vec<Congruence> = all_congruences(&z4)
                .unwrap()
                .into_iter()
                .filter(|c| {
                    pairs
                        .iter()
                        .all(|&(a, b)| c.partition().related(a, b).unwrap())
                })
                .collect();
            for candidate in &candidates {
                assert!(generated
                    .partition()
                    .refines(candidate.partition())
                    .unwrap());
            }
            assert!(candidates
                .iter()
                .any(|c| c.partition() == generated.partition()));
        }
    }

    #[test]
    fn quotient_of_z4_by_even_odd_is_mod2_addition() {
        let z4 = cyclic(4);
        let theta = check_congruence(&z4, &even_odd()).unwrap();
        let q = quotient_algebra(&z4, &theta).unwrap();
        assert_eq!(q.carrier().size(), 2);
        assert_eq!(q.op("add").unwrap().table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn quotient_by_zero_keeps_tables() {
        let z4 = cyclic(4);
        let q = quotient_algebra(&z4, &zero_congruence(&z4)).unwrap();
        assert_eq!(q.operations(), z4.operations());
    }

    #[test]
    fn quotient_by_full_is_trivial() {
        let z4 = cyclic(4);
        let full = check_congruence(&z4, &Partition::single_block(Carrier::new(4))).unwrap();
        let q = quotient_algebra(&z4, &full).unwrap();
        assert_eq!(q.carrier().size(), 1);
        assert!(q.op("add").unwrap().table().iter().all(|&v| v == 0));
    }

    #[test]
    fn quotient_rejects_foreign_congruences() {
        let z4 = cyclic(4);
        let z3 = cyclic(3);
        let theta = zero_congruence(&z3);
        assert_eq!(
            quotient_algebra(&z4, &theta),
            Err(Error::CongruenceMismatch)
        );
    }

    #[test]
    fn quotient_zero_examples() {
        let z4 = cyclic(4);
        let theta = check_congruence(&z4, &even_odd()).unwrap();
        let zero = quotient_zero(&z4, &theta).unwrap();
        assert_eq!(zero.partition().block_count(), 2);
        assert_eq!(
            zero.partition(),
            zero_congruence(&quotient_algebra(&z4, &theta).unwrap()).partition()
        );

        let full = check_congruence(&z4, &Partition::single_block(Carrier::new(4))).unwrap();
        assert_eq!(
            quotient_zero(&z4, &full).unwrap().partition().block_count(),
            1
        );
    }

    #[test]
    fn quotient_elimination_examples() {
        let z4 = cyclic(4);
        let theta = check_congruence(&z4, &even_odd()).unwrap();
        assert!(theta.related(0, 2).unwrap());
        assert!(theta.related(1, 1).unwrap());
        assert!(!zero_congruence(&z4).related(0, 1).unwrap());
        assert!(theta.related(0, 4).is_err());
    }
}
