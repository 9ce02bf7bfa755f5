//! Mixed-radix encoding of argument tuples.
//!
//! Coordinate 0 is the least significant digit: the tuple `(t0, t1, ..)`
//! over coordinate sizes `(n0, n1, ..)` is encoded as `t0 + t1*n0 + t2*n0*n1 + ...`.
//! Operation tables and product carriers both use this encoding, and it is
//! part of the persisted format.

/// Encode a tuple as a flat index. Digits must be in range.
pub fn encode(digits: &[usize], sizes: &[usize]) -> usize {
    debug_assert_eq!(digits.len(), sizes.len());
    let mut index = 0;
    for (&d, &n) in digits.iter().zip(sizes).rev() {
        debug_assert!(d < n);
        index = index * n + d;
    }
    index
}

/// Decode a flat index back into a tuple.
pub fn decode(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut digits = Vec::with_capacity(sizes.len());
    for &n in sizes {
        digits.push(index % n);
        index /= n;
    }
    digits
}

/// Encode a tuple whose coordinates all range over `0..size`.
pub fn encode_uniform(digits: &[usize], size: usize) -> usize {
    let mut index = 0;
    for &d in digits.iter().rev() {
        debug_assert!(d < size);
        index = index * size + d;
    }
    index
}

/// Decode a flat index into an `arity`-tuple over `0..size`.
pub fn decode_uniform(mut index: usize, size: usize, arity: usize) -> Vec<usize> {
    let mut digits = Vec::with_capacity(arity);
    for _ in 0..arity {
        digits.push(index % size);
        index /= size;
    }
    digits
}

/// Number of tuples over the given coordinate sizes, if it fits in `usize`.
pub fn count(sizes: &[usize]) -> Option<usize> {
    sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n))
}

/// `size^arity`, if it fits in `usize`.
pub fn count_uniform(size: usize, arity: usize) -> Option<usize> {
    (0..arity).try_fold(1usize, |acc, _| acc.checked_mul(size))
}

/// Iterator over every tuple with `tuple[i] < sizes[i]`.
///
/// `index_order` steps coordinate 0 fastest, matching the flat encoding;
/// `lex_order` steps the last coordinate fastest, yielding tuples in
/// lexicographic order. Counterexample searches use the latter so that
/// reported witnesses are lexicographically first.
#[derive(Debug, Clone)]
pub struct Tuples {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
    lex: bool,
}

impl Tuples {
    pub fn index_order(sizes: Vec<usize>) -> Self {
        Self::new(sizes, false)
    }

    pub fn lex_order(sizes: Vec<usize>) -> Self {
        Self::new(sizes, true)
    }

    fn new(sizes: Vec<usize>, lex: bool) -> Self {
        let next = if sizes.iter().all(|&n| n > 0) {
            Some(vec![0; sizes.len()])
        } else {
            None
        };
        Tuples { sizes, next, lex }
    }

    fn advance(&mut self) {
        let Some(current) = self.next.as_mut() else {
            return;
        };
        let k = current.len();
        let positions: Box<dyn Iterator<Item = usize>> = if self.lex {
            Box::new((0..k).rev())
        } else {
            Box::new(0..k)
        };
        for i in positions {
            if current[i] + 1 < self.sizes[i] {
                current[i] += 1;
                return;
            }
            current[i] = 0;
        }
        self.next = None;
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let item = self.next.clone()?;
        self.advance();
        Some(item)
    }
}
