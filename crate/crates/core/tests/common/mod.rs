#![allow(dead_code)]

use std::sync::Arc;

use faber_core::series::{Exponent, Series, TruncationPolicy};
use faber_core::Rational;
use num_bigint::BigInt;
use rand::Rng;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// Two generators truncated at total degree 2.
pub fn small_policy() -> Arc<TruncationPolicy> {
    Arc::new(TruncationPolicy::generic(2, 2))
}

fn random_eps<R: Rng>(rng: &mut R, generators: usize, max_degree: u32, min_degree: u32) -> Vec<u32> {
    loop {
        let eps: Vec<u32> = (0..generators).map(|_| rng.gen_range(0..=max_degree)).collect();
        let d: u32 = eps.iter().sum();
        if d >= min_degree && d <= max_degree {
            return eps;
        }
    }
}

/// Up to six terms, `v`/`y` exponents in `[-3, 3]`, generator degree at most 2,
/// coefficients in `{-3, ..., 3}`.
pub fn random_series<R: Rng>(rng: &mut R, policy: &Arc<TruncationPolicy>) -> Series {
    let count = rng.gen_range(0..=6);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let eps = random_eps(rng, policy.generators(), 2, 0);
            let e = Exponent::new(&eps, rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            (e, int(rng.gen_range(-3..=3)))
        })
        .collect();
    Series::from_terms(policy, terms)
}

/// Like [`random_series`] but every term has generator degree at least one.
pub fn random_infinitesimal<R: Rng>(rng: &mut R, policy: &Arc<TruncationPolicy>) -> Series {
    let count = rng.gen_range(1..=5);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let eps = random_eps(rng, policy.generators(), 2, 1);
            let e = Exponent::new(&eps, rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            (e, int(rng.gen_range(-3..=3)))
        })
        .collect();
    Series::from_terms(policy, terms)
}

/// Random integer weight for each nonempty subset, keyed by bitmask.
pub fn random_subset_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    (0..1usize << n).map(|_| rng.gen_range(-5..=5)).collect()
}

pub fn mask_of(block: &[usize]) -> usize {
    block.iter().map(|&i| 1usize << (i - 1)).sum()
}
