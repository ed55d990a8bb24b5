//! Enumeration primitives and exact integer/rational combinatorial functions.
//!
//! The enumerators are lazy iterators so that the brute-force sums can walk
//! through millions of ordered set partitions without materializing them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("binomial({n}, {k}) called with negative upper argument")]
    NegativeBinomial { n: i64, k: i64 },
    #[error("Bernoulli number requested for negative index {0}")]
    NegativeBernoulli(i64),
    #[error("Faber constant requires g >= 2, got {0}")]
    GenusTooSmall(i64),
}

/// An ordered tuple of disjoint nonempty blocks covering `{1, ..., n}`.
///
/// Blocks are sorted lists of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Checks the covering and disjointness invariants against `n`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        if self.blocks.is_empty() || self.blocks.len() > n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for block in &self.blocks {
            if block.is_empty() || !block.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &i in block {
                if i == 0 || i > n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen[1..].iter().all(|&s| s)
    }
}

/// Lazy enumeration of ordered set partitions of `{1, ..., n}` into exactly `k` blocks.
///
/// Walks the restricted growth strings with exactly `k` labels and, for each,
/// every ordering of the blocks. Yields `k! * S(n, k)` items.
#[derive(Debug, Clone)]
pub struct OrderedSetPartitions {
    n: usize,
    k: usize,
    rgs: Vec<usize>,
    perm: Vec<usize>,
    done: bool,
}

pub fn ordered_set_partitions(n: usize, k: usize) -> OrderedSetPartitions {
    let done = k == 0 || k > n;
    let rgs = if done {
        Vec::new()
    } else {
        let mut rgs = vec![0; n - k + 1];
        rgs.extend(1..k);
        rgs
    };
    OrderedSetPartitions {
        n,
        k,
        rgs,
        perm: (0..k).collect(),
        done,
    }
}

impl OrderedSetPartitions {
    fn current(&self) -> OrderedSetPartition {
        let mut unordered = vec![Vec::new(); self.k];
        for (i, &label) in self.rgs.iter().enumerate() {
            unordered[label].push(i + 1);
        }
        let blocks = self.perm.iter().map(|&p| unordered[p].clone()).collect();
        OrderedSetPartition { blocks }
    }

    fn advance_rgs(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        for i in (1..n).rev() {
            let bumped = self.rgs[i] + 1;
            if bumped > prefix_max[i] + 1 || bumped > k - 1 {
                continue;
            }
            let top = prefix_max[i].max(bumped);
            let remaining = n - 1 - i;
            let missing = k - 1 - top;
            if missing > remaining {
                continue;
            }
            self.rgs[i] = bumped;
            let zeros = remaining - missing;
            for j in 0..zeros {
                self.rgs[i + 1 + j] = 0;
            }
            for j in 0..missing {
                self.rgs[i + 1 + zeros + j] = top + 1 + j;
            }
            return true;
        }
        false
    }
}

/// Lexicographic successor; returns false (leaving `xs` untouched) at the last permutation.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

impl Iterator for OrderedSetPartitions {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        if self.done {
            return None;
        }
        let item = self.current();
        if !next_permutation(&mut self.perm) {
            self.perm = (0..self.k).collect();
            if !self.advance_rgs() {
                self.done = true;
            }
        }
        Some(item)
    }
}

/// A weak composition: `k` nonnegative parts summing to `total`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Lazy enumeration of weak compositions of `total` into `k` parts, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

pub fn compositions(total: usize, k: usize) -> Compositions {
    let current = (k > 0).then(|| {
        let mut parts = vec![0; k];
        parts[k - 1] = total;
        parts
    });
    Compositions { current }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let parts = self.current.take()?;
        let k = parts.len();
        let mut next = parts.clone();
        let mut suffix = 0;
        for i in (0..k.saturating_sub(1)).rev() {
            suffix += next[i + 1];
            if suffix > 0 {
                next[i] += 1;
                for p in &mut next[i + 1..] {
                    *p = 0;
                }
                next[k - 1] = suffix - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(Composition { parts })
    }
}

/// `(2d-1)!! / (2d+1-2m)!!` read as the product `prod_{j=1}^{m-1} (2d - 2j + 1)`.
///
/// This is the factor produced by applying `((1/y) d/dy)^(m-1)` to `y^(2d-1)`, and
/// stays meaningful when the denominator's argument is negative.
pub fn odd_falling_product(d: usize, m: usize) -> BigInt {
    assert!(m >= 1, "odd_falling_product needs m >= 1");
    let d = d as i64;
    (1..m as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * d - 2 * j + 1))
}

/// Double factorial with `(-1)!! = 1`; `None` below `-1`.
pub fn double_factorial(n: i64) -> Option<BigInt> {
    if n < -1 {
        return None;
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Some(acc)
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt, CombinatoricsError> {
    if n < 0 {
        return Err(CombinatoricsError::NegativeBinomial { n, k });
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Generalized binomial `s (s-1) ... (s-j+1) / j!` for rational `s`.
pub fn rational_binomial(s: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (s - Rational::from_integer(BigInt::from(i))) / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Bernoulli numbers `B_0, ..., B_m` from `sum_{j=0}^{m} C(m+1, j) B_j = 0` (so `B_1 = -1/2`).
pub fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(m + 1);
    table.push(Rational::one());
    for i in 1..=m {
        if i > 1 && i.is_odd() {
            table.push(Rational::zero());
            continue;
        }
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = binomial(i as i64 + 1, j as i64).expect("nonnegative");
            sum += b * Rational::from_integer(c);
        }
        table.push(-sum / Rational::from_integer(BigInt::from(i + 1)));
    }
    table
}

pub fn bernoulli(m: i64) -> Result<Rational, CombinatoricsError> {
    if m < 0 {
        return Err(CombinatoricsError::NegativeBernoulli(m));
    }
    Ok(bernoulli_table(m as usize).pop().expect("table is nonempty"))
}

/// Bernoulli number via the Akiyama–Tanigawa transform.
///
/// This route shares nothing with [`bernoulli_table`] and serves as a cross-check.
/// It produces `B_1 = +1/2`; all other values agree.
pub fn bernoulli_akiyama_tanigawa(m: usize) -> Rational {
    let mut row: Vec<Rational> = (0..=m)
        .map(|i| Rational::new(BigInt::one(), BigInt::from(i + 1)))
        .collect();
    for len in (1..=m).rev() {
        for j in 0..len {
            let diff = &row[j] - &row[j + 1];
            row[j] = diff * Rational::from_integer(BigInt::from(j + 1));
        }
    }
    row.swap_remove(0)
}

fn faber_constant_from(g: i64, b2g: &Rational) -> Rational {
    let denom = (BigInt::one() << (2 * g as usize - 1)) * factorial(2 * g as usize);
    b2g.abs() / Rational::from_integer(denom)
}

/// `C_g = |B_{2g}| / (2^{2g-1} (2g)!)`.
pub fn faber_constant(g: i64) -> Result<Rational, CombinatoricsError> {
    if g < 2 {
        return Err(CombinatoricsError::GenusTooSmall(g));
    }
    Ok(faber_constant_from(g, &bernoulli(2 * g)?))
}

/// Same constant, with the Bernoulli number taken from the Akiyama–Tanigawa route.
pub fn faber_constant_cross_check(g: i64) -> Result<Rational, CombinatoricsError> {
    if g < 2 {
        return Err(CombinatoricsError::GenusTooSmall(g));
    }
    Ok(faber_constant_from(g, &bernoulli_akiyama_tanigawa(2 * g as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn stirling2(n: usize, k: usize) -> u64 {
        let mut table = vec![vec![0u64; k + 1]; n + 1];
        table[0][0] = 1;
        for i in 1..=n {
            for j in 1..=k.min(i) {
                table[i][j] = j as u64 * table[i - 1][j] + table[i - 1][j - 1];
            }
        }
        table[n][k]
    }

    fn fubini(n: usize) -> u64 {
        let mut f = vec![1u64; n + 1];
        for m in 1..=n {
            f[m] = (1..=m)
                .map(|j| binomial(m as i64, j as i64).unwrap().try_into().unwrap_or(0u64) * f[m - j])
                .sum();
        }
        f[n]
    }

    #[test]
    fn two_singletons() {
        let parts: Vec<_> = ordered_set_partitions(2, 2).map(|p| p.blocks().to_vec()).collect();
        assert_eq!(parts, vec![vec![vec![1], vec![2]], vec![vec![2], vec![1]]]);
        let one: Vec<_> = ordered_set_partitions(1, 1).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].blocks(), &[vec![1]]);
    }

    #[test]
    fn out_of_range_block_counts_are_empty() {
        assert_eq!(ordered_set_partitions(3, 0).count(), 0);
        assert_eq!(ordered_set_partitions(3, 4).count(), 0);
        assert_eq!(ordered_set_partitions(0, 1).count(), 0);
    }

    #[test]
    fn three_set_has_thirteen() {
        let total: usize = (1..=3).map(|k| ordered_set_partitions(3, k).count()).sum();
        assert_eq!(total, 13);
    }

    #[test]
    fn counts_match_fubini_and_stirling() {
        for n in 1..=6 {
            let mut total = 0;
            for k in 1..=n {
                let items: Vec<_> = ordered_set_partitions(n, k).collect();
                let expected = factorial(k) * BigInt::from(stirling2(n, k));
                assert_eq!(BigInt::from(items.len()), expected, "n={n} k={k}");
                let distinct: BTreeSet<_> = items.iter().cloned().collect();
                assert_eq!(distinct.len(), items.len());
                assert!(items.iter().all(|p| p.is_valid_for(n) && p.num_blocks() == k));
                total += items.len() as u64;
            }
            assert_eq!(total, fubini(n), "n={n}");
        }
    }

    #[test]
    fn small_compositions() {
        let parts: Vec<_> = compositions(2, 2).map(|c| c.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let zero: Vec<_> = compositions(0, 3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(zero, vec![vec![0, 0, 0]]);
        assert_eq!(compositions(5, 3).count(), 21);
        assert_eq!(compositions(4, 1).map(|c| c.parts().to_vec()).collect::<Vec<_>>(), vec![vec![4]]);
        assert_eq!(compositions(4, 0).count(), 0);
    }

    #[test]
    fn composition_counts() {
        for total in 0..=12 {
            for k in 1..=6 {
                let items: Vec<_> = compositions(total, k).collect();
                assert_eq!(
                    BigInt::from(items.len()),
                    binomial((total + k - 1) as i64, (k - 1) as i64).unwrap()
                );
                assert!(items.iter().all(|c| c.total() == total && c.parts().len() == k));
                assert!(items.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn odd_falling_product_values() {
        assert_eq!(odd_falling_product(3, 1), BigInt::from(1));
        assert_eq!(odd_falling_product(2, 2), BigInt::from(3));
        assert_eq!(odd_falling_product(0, 2), BigInt::from(-1));
        assert_eq!(odd_falling_product(1, 3), BigInt::from(-1));
    }

    #[test]
    fn odd_falling_product_matches_double_factorials() {
        for d in 0..=10usize {
            for m in 1..=10usize {
                let lower = 2 * d as i64 + 1 - 2 * m as i64;
                if lower < -1 {
                    continue;
                }
                let lhs = odd_falling_product(d, m) * double_factorial(lower).unwrap();
                assert_eq!(lhs, double_factorial(2 * d as i64 - 1).unwrap(), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial(3, 4).unwrap(), BigInt::zero());
        assert_eq!(binomial(3, -1).unwrap(), BigInt::zero());
        assert_eq!(binomial(6, 3).unwrap(), BigInt::from(20));
        assert!(binomial(-1, 0).is_err());
    }

    #[test]
    fn rational_binomial_values() {
        assert_eq!(rational_binomial(&q(1, 2), 2), q(-1, 8));
        assert_eq!(rational_binomial(&q(-2, 1), 3), q(-4, 1));
        assert_eq!(rational_binomial(&q(7, 3), 0), q(1, 1));
        assert_eq!(rational_binomial(&q(5, 1), 2), q(10, 1));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(8).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert_eq!(bernoulli(7).unwrap(), q(0, 1));
        assert!(bernoulli(-2).is_err());
    }

    #[test]
    fn bernoulli_recurrence_up_to_forty() {
        let table = bernoulli_table(40);
        for m in (2..=40).step_by(2) {
            let sum: Rational = (0..=m)
                .map(|j| &table[j] * Rational::from_integer(binomial(m as i64 + 1, j as i64).unwrap()))
                .sum();
            assert!(sum.is_zero(), "m={m}");
            assert_eq!(table[m], bernoulli_akiyama_tanigawa(m), "m={m}");
        }
    }

    #[test]
    fn faber_constants() {
        assert_eq!(faber_constant(2).unwrap(), q(1, 5760));
        assert_eq!(faber_constant(3).unwrap(), q(1, 967680));
        assert_eq!(faber_constant(4).unwrap(), q(1, 154828800));
        assert!(faber_constant(1).is_err());
        for g in 2..=8 {
            assert_eq!(faber_constant(g).unwrap(), faber_constant_cross_check(g).unwrap());
        }
    }
}
