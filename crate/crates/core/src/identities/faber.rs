//! The combinatorial identity equivalent to Faber's conjecture, evaluated by brute
//! force and through the generating series `S(v, y)`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lagrange::build_t_explicit;
use super::polyspec::PolySpec;
use super::IdentityError;
use crate::combinatorics::{
    binomial, compositions, factorial, odd_falling_product, ordered_set_partitions, rational_binomial,
};
use crate::report::{params, CheckReport, ParamValue};
use crate::series::{Exponent, Series, TruncationPolicy};
use crate::Rational;

/// Parameters `(g, n, a_1..a_n)` with `a_1 + ... + a_n = 2g - 3 + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaberInstance {
    g: usize,
    a: Vec<usize>,
}

impl FaberInstance {
    pub fn new(g: usize, a: Vec<usize>) -> Result<Self, IdentityError> {
        let n = a.len();
        if g < 2 {
            return Err(IdentityError::InvalidInstance(format!("g must be >= 2, got {g}")));
        }
        if n < 2 {
            return Err(IdentityError::InvalidInstance(format!("n must be >= 2, got {n}")));
        }
        let sum: usize = a.iter().sum();
        if sum != 2 * g - 3 + n {
            return Err(IdentityError::InvalidInstance(format!(
                "a sums to {sum}, expected 2g-3+n = {}",
                2 * g - 3 + n
            )));
        }
        Ok(FaberInstance { g, a })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// Total of the `d_j`: `g - 2 + n`.
    pub fn d_total(&self) -> usize {
        self.g - 2 + self.n()
    }

    fn params(&self) -> Vec<(String, ParamValue)> {
        params([("g", self.g.into()), ("n", self.n().into()), ("a", self.a.as_slice().into())])
    }
}

/// Every valid instance for fixed `(g, n)`, in lexicographic order of `a`.
pub fn a_vectors(g: usize, n: usize) -> impl Iterator<Item = FaberInstance> {
    let total = if g >= 2 && n >= 2 { Some(2 * g - 3 + n) } else { None };
    total
        .into_iter()
        .flat_map(move |t| compositions(t, n))
        .map(move |c| FaberInstance { g, a: c.parts().to_vec() })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DirectSumStats {
    pub partitions: u64,
    pub partition_composition_pairs: u64,
}

/// `(-1)^k (2g-3+k)! / k!`, an integer.
fn block_weight(g: usize, k: usize) -> BigInt {
    let w = factorial(2 * g - 3 + k) / factorial(k);
    let w = if k % 2 == 1 { -w } else { w };
    debug_assert_eq!(
        Rational::from_integer(w.clone()),
        rational_binomial(&Rational::from_integer(BigInt::from(2 - 2 * g as i64)), k)
            * Rational::from_integer(factorial(2 * g - 3)),
    );
    w
}

pub fn direct_faber_sum(inst: &FaberInstance) -> Rational {
    direct_faber_sum_with_stats(inst).0
}

/// Brute-force evaluation over ordered set partitions and compositions.
pub fn direct_faber_sum_with_stats(inst: &FaberInstance) -> (Rational, DirectSumStats) {
    let n = inst.n();
    let d_total = inst.d_total();
    let mut stats = DirectSumStats::default();
    let mut total = BigInt::zero();
    for k in 1..=n {
        let mut inner = BigInt::zero();
        for partition in ordered_set_partitions(n, k) {
            stats.partitions += 1;
            // factors[j][d] = C(2 a_{I_j} + 1, 2d) * (2d-1)!!/(2d+1-2|I_j|)!!
            let factors: Vec<Vec<BigInt>> = partition
                .blocks()
                .iter()
                .map(|block| {
                    let a_sum: usize = block.iter().map(|&l| inst.a[l - 1]).sum();
                    (0..=d_total)
                        .map(|d| {
                            let b = binomial(2 * a_sum as i64 + 1, 2 * d as i64).expect("nonnegative");
                            if b.is_zero() {
                                b
                            } else {
                                b * odd_falling_product(d, block.len())
                            }
                        })
                        .collect()
                })
                .collect();
            for comp in compositions(d_total, k) {
                stats.partition_composition_pairs += 1;
                let mut prod = BigInt::one();
                for (f, &d) in factors.iter().zip(comp.parts()) {
                    if f[d].is_zero() {
                        prod = BigInt::zero();
                        break;
                    }
                    prod *= &f[d];
                }
                inner += prod;
            }
        }
        total += block_weight(inst.g, k) * inner;
    }
    (Rational::from_integer(total), stats)
}

pub fn faber_sum_check(inst: &FaberInstance) -> CheckReport {
    let start = Instant::now();
    let (value, stats) = direct_faber_sum_with_stats(inst);
    CheckReport::from_rationals("faber", inst.params(), &Rational::zero(), &value)
        .with_metric("ordered_partitions", stats.partitions)
        .with_metric("partition_composition_pairs", stats.partition_composition_pairs)
        .with_elapsed(start.elapsed())
}

/// The `r`-th summand shape shared by `S`: `((1+y) Q_+^r + (1-y) Q_-^r) / (2y)`.
fn symmetrized_power(plus: &Series, minus: &Series, r: u32) -> Series {
    let policy = plus.policy();
    let one = Series::one(policy);
    let y = Series::y(policy);
    let lhs = &(&one + &y) * &plus.pow(r);
    let rhs = &(&one - &y) * &minus.pow(r);
    (&lhs + &rhs).shift(0, -1).scale(&Rational::new(BigInt::one(), BigInt::from(2)))
}

/// `S(v, y) = y + sum_{r=1}^{n} (1/r!) ((1/y) d/dy)^{r-1} [((1+y) P_+^r + (1-y) P_-^r) / (2y)]`
/// with `P_± = P(v (1 ± y)^2)` and square-zero `x_l`.
pub fn build_s(inst: &FaberInstance) -> Series {
    let spec = PolySpec::faber(&inst.a);
    let policy = spec.policy();
    let plus = spec.evaluate(&policy, 1, 0).expect("faber generators fit the policy");
    let minus = spec.evaluate(&policy, -1, 0).expect("faber generators fit the policy");
    let mut s = Series::y(&policy);
    for r in 1..=inst.n() {
        let mut term = symmetrized_power(&plus, &minus, r as u32);
        for _ in 1..r {
            term = term.dy_operator();
        }
        s = &s + &term.scale(&Rational::new(BigInt::one(), factorial(r)));
    }
    s
}

fn gf_faber_value_with_terms(inst: &FaberInstance) -> (Rational, u64) {
    let g = inst.g as i32;
    let n = inst.n();
    let s = build_s(inst);
    let u = &s.shift(0, -1) - &Series::one(s.policy());
    let exponent = Rational::from_integer(BigInt::from(2 - 2 * g));
    let power = u.one_plus_pow(&exponent).expect("S / y - 1 is infinitesimal");
    // [y^-2] y^{2-2g} (1+u)^{2-2g} = [y^{2g-4}] (1+u)^{2-2g}
    let target = Exponent::new(&vec![1; n], 2 * g + n as i32 - 3, 2 * g - 4);
    let c = power.coeff(&target);
    (c * Rational::from_integer(factorial(2 * inst.g - 3)), power.len() as u64)
}

/// `(2g-3)! [x_1...x_n v^{2g+n-3} y^{-2}] S^{2-2g}`.
pub fn gf_faber_value(inst: &FaberInstance) -> Rational {
    gf_faber_value_with_terms(inst).0
}

pub fn proposition_check(inst: &FaberInstance) -> CheckReport {
    let start = Instant::now();
    let (direct, stats) = direct_faber_sum_with_stats(inst);
    let (gf, terms) = gf_faber_value_with_terms(inst);
    CheckReport::from_rationals("proposition", inst.params(), &direct, &gf)
        .with_fact("direct_vanishes", direct.is_zero())
        .with_fact("gf_vanishes", gf.is_zero())
        .with_metric("ordered_partitions", stats.partitions)
        .with_metric("partition_composition_pairs", stats.partition_composition_pairs)
        .with_metric("series_terms", terms)
        .with_elapsed(start.elapsed())
}

/// `S` against `(T(v,y) - T(v,-y)) / 2` built from `A = P(v (1+y)^2)`.
///
/// Taking `A` without the `v^{-1}` prefactor is the same as feeding `x_l v` in
/// place of `x_l`, i.e. `S(x) = B(v x)` where `B` is the odd part of `T`.
pub fn t_s_consistency_check(inst: &FaberInstance) -> Result<CheckReport, IdentityError> {
    let start = Instant::now();
    let s = build_s(inst);
    let spec = PolySpec::faber(&inst.a);
    let policy = spec.policy();
    let a = spec.evaluate(&policy, 1, 0)?;
    let t = build_t_explicit(&a, policy.nilpotency())?;
    let odd = (&t - &t.subst_y_negate()).scale(&Rational::new(BigInt::one(), BigInt::from(2)));
    Ok(CheckReport::from_series("consistency", inst.params(), &s, &odd)
        .with_metric("series_terms", s.len() as u64)
        .with_elapsed(start.elapsed()))
}

fn subset_indices(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Both sides of `sum_{I_1 ⊔ ... ⊔ I_k} prod F(I_j) = [x_1...x_n] (sum_I F(I) x_I)^k`.
///
/// `f` receives each block as a sorted list of 1-based indices.
pub fn partition_identity_sides(n: usize, k: usize, f: impl Fn(&[usize]) -> i64) -> (Rational, Rational) {
    let lhs: BigInt = ordered_set_partitions(n, k)
        .map(|p| p.blocks().iter().map(|b| BigInt::from(f(b))).product::<BigInt>())
        .sum();

    let policy = Arc::new(TruncationPolicy::square_zero(n));
    let terms = (1..1usize << n).map(|mask| {
        let eps: Vec<u32> = (0..n).map(|i| (mask >> i & 1) as u32).collect();
        (Exponent::new(&eps, 0, 0), Rational::from_integer(BigInt::from(f(&subset_indices(mask, n)))))
    });
    let x = Series::from_terms(&policy, terms);
    let rhs = x.pow(k as u32).coeff(&Exponent::new(&vec![1; n], 0, 0));
    (Rational::from_integer(lhs), rhs)
}

/// Both sides of `sum_{|I|=r} x_I v^{a_I} (1 ± y)^{2 a_I} ≡ P(v (1 ± y)^2)^r / r!`
/// modulo `x_l^2`.
pub fn congruence_identity_sides(a: &[usize], r: usize, sign: i32) -> (Series, Series) {
    let n = a.len();
    let spec = PolySpec::faber(a);
    let policy = spec.policy();
    let mut lhs = Series::zero(&policy);
    for mask in 0..1usize << n {
        if mask.count_ones() as usize != r {
            continue;
        }
        let eps: Vec<u32> = (0..n).map(|i| (mask >> i & 1) as u32).collect();
        let a_sum: usize = subset_indices(mask, n).iter().map(|&l| a[l - 1]).sum();
        let term = &Series::monomial(&policy, Rational::one(), &eps, a_sum as i32, 0)
            * &Series::one_plus_signed_y_pow(&policy, sign, 2 * a_sum as u32);
        lhs = &lhs + &term;
    }
    let p = spec.evaluate(&policy, sign, 0).expect("faber generators fit the policy");
    let rhs = p.pow(r as u32).scale(&Rational::new(BigInt::one(), factorial(r)));
    (lhs, rhs)
}

/// `((1/y) d/dy)^{m-1} y^{2d-1} = odd_falling_product(d, m) y^{2d+1-2m}`.
pub fn derivative_identity_holds(d: usize, m: usize) -> bool {
    let policy = Arc::new(TruncationPolicy::generic(0, 0));
    let mut lhs = Series::monomial(&policy, Rational::one(), &[], 0, 2 * d as i32 - 1);
    for _ in 1..m {
        lhs = lhs.dy_operator();
    }
    let rhs = Series::monomial(
        &policy,
        Rational::from_integer(odd_falling_product(d, m)),
        &[],
        0,
        2 * d as i32 + 1 - 2 * m as i32,
    );
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::LaurentPoly;

    #[test]
    fn instance_validation() {
        assert!(FaberInstance::new(2, vec![3, 0]).is_ok());
        assert!(FaberInstance::new(2, vec![2, 0]).is_err());
        assert!(FaberInstance::new(1, vec![1, 0]).is_err());
        assert!(FaberInstance::new(2, vec![2]).is_err());
    }

    #[test]
    fn a_vector_counts() {
        assert_eq!(a_vectors(2, 2).count(), 4);
        assert_eq!(a_vectors(3, 4).count(), 120);
        assert_eq!(a_vectors(1, 2).count(), 0);
        assert!(a_vectors(3, 3).all(|i| FaberInstance::new(i.g(), i.a().to_vec()).is_ok()));
    }

    #[test]
    fn small_instances_vanish() {
        for a in [vec![3, 0], vec![2, 1], vec![0, 3]] {
            let inst = FaberInstance::new(2, a).unwrap();
            assert!(direct_faber_sum(&inst).is_zero());
            assert!(gf_faber_value(&inst).is_zero());
        }
        let inst = FaberInstance::new(3, vec![5, 0]).unwrap();
        assert!(proposition_check(&inst).is_pass());
    }

    #[test]
    fn weights_match_binomial_form() {
        for g in 2..=5 {
            for k in 1..=6 {
                let w = Rational::from_integer(block_weight(g, k));
                let alt = rational_binomial(&Rational::from_integer(BigInt::from(2 - 2 * g as i64)), k)
                    * Rational::from_integer(factorial(2 * g - 3));
                assert_eq!(w, alt);
            }
        }
    }

    #[test]
    fn s_structure() {
        let inst = FaberInstance::new(2, vec![2, 1]).unwrap();
        let s = build_s(&inst);
        assert_eq!(s.leading_part(), Series::y(s.policy()));
        // x_1-linear slice: v^2 ((1+y)^5 + (1-y)^5) / (2y) = v^2 (1 + 10 y^2 + 5 y^4) / y
        let slice = s.slice(&[1, 0]).unwrap();
        let mut expected = LaurentPoly::new();
        for (c, y) in [(1, -1), (10, 1), (5, 3)] {
            expected.add_term(2, y, Rational::from_integer(BigInt::from(c)));
        }
        assert_eq!(slice, &expected);
        for eps in s.slice_by_eps().keys() {
            assert!(eps.iter().all(|&e| e <= 1));
        }
    }

    #[test]
    fn consistency_small() {
        for a in [vec![2, 1], vec![3, 0]] {
            let inst = FaberInstance::new(2, a).unwrap();
            let r = t_s_consistency_check(&inst).unwrap();
            assert!(r.is_pass(), "{:?}", r.mismatches);
        }
        let inst = FaberInstance::new(2, vec![1, 1, 2]).unwrap();
        assert!(t_s_consistency_check(&inst).unwrap().is_pass());
    }

    #[test]
    fn derivative_identity() {
        for d in 0..=10 {
            for m in 1..=10 {
                assert!(derivative_identity_holds(d, m), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn partition_identity_constant_f() {
        // F = 1 turns both sides into k! S(n, k).
        let (lhs, rhs) = partition_identity_sides(4, 2, |_| 1);
        assert_eq!(lhs, Rational::from_integer(BigInt::from(14)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn congruence_identity_small() {
        for r in 0..=3 {
            for sign in [1, -1] {
                let (lhs, rhs) = congruence_identity_sides(&[2, 0, 1], r, sign);
                assert_eq!(lhs, rhs, "r={r} sign={sign}");
            }
        }
    }
}
