//! Exact sparse series in `v`, `y` and a finite set of nilpotent generators.
//!
//! A [`Series`] is Laurent in `v` and `y` and polynomial in the generators
//! `gen_0, gen_1, ...`, with every term whose generator exponents break the
//! attached [`TruncationPolicy`] discarded. Terms are grouped by their
//! generator monomial, so each slice is a finite Laurent polynomial in `(v, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::combinatorics::rational_binomial;
use crate::Rational;

/// Exponent vector of the nilpotent generators.
pub type EpsMonomial = SmallVec<[u32; 8]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series carry different truncation policies")]
    PolicyMismatch,
    #[error("expected an infinitesimal series but found a term of generator degree 0")]
    NotInfinitesimal,
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("substituted series must have a single monomial of generator degree 0")]
    NonMonomialLeadingPart,
}

/// Full exponent of a term: generator powers, then `v`, then `y`.
///
/// The derived ordering is the canonical report order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub eps: EpsMonomial,
    pub v: i32,
    pub y: i32,
}

impl Exponent {
    pub fn new(eps: &[u32], v: i32, y: i32) -> Self {
        Exponent { eps: eps.into(), v, y }
    }
}

/// Degree truncation on the generators.
///
/// A term survives only if its total generator degree is at most `total_cap`
/// and each generator's exponent is at most its own cap. A per-generator cap of
/// one makes that generator square-zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncationPolicy {
    total_cap: u32,
    per_generator_cap: Vec<u32>,
}

impl TruncationPolicy {
    pub fn new(total_cap: u32, per_generator_cap: Vec<u32>) -> Self {
        TruncationPolicy { total_cap, per_generator_cap }
    }

    /// `generators` independent generators, truncated at total degree `total_cap`.
    pub fn generic(generators: usize, total_cap: u32) -> Self {
        Self::new(total_cap, vec![total_cap; generators])
    }

    /// `generators` square-zero generators.
    pub fn square_zero(generators: usize) -> Self {
        Self::new(generators as u32, vec![1; generators])
    }

    pub fn generators(&self) -> usize {
        self.per_generator_cap.len()
    }

    pub fn total_cap(&self) -> u32 {
        self.total_cap
    }

    pub fn per_generator_cap(&self) -> &[u32] {
        &self.per_generator_cap
    }

    /// Smallest `J` such that every product of `J + 1` infinitesimals vanishes.
    pub fn nilpotency(&self) -> u32 {
        self.total_cap.min(self.per_generator_cap.iter().sum())
    }

    pub fn admits(&self, eps: &[u32]) -> bool {
        eps.len() == self.per_generator_cap.len()
            && eps.iter().zip(&self.per_generator_cap).all(|(e, cap)| e <= cap)
            && eps.iter().sum::<u32>() <= self.total_cap
    }

    pub fn zero_monomial(&self) -> EpsMonomial {
        SmallVec::from_elem(0, self.generators())
    }

    fn combine(&self, a: &[u32], b: &[u32]) -> Option<EpsMonomial> {
        let mut total = 0;
        let mut out = EpsMonomial::with_capacity(a.len());
        for ((x, y), cap) in a.iter().zip(b).zip(&self.per_generator_cap) {
            let e = x + y;
            if e > *cap {
                return None;
            }
            total += e;
            out.push(e);
        }
        (total <= self.total_cap).then_some(out)
    }
}

pub fn eps_degree(eps: &[u32]) -> u32 {
    eps.iter().sum()
}

/// Renders a generator monomial as `gen_0^1 * gen_3^2`, or `1` when trivial.
pub fn format_eps(eps: &[u32]) -> String {
    let factors: Vec<String> = eps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, e)| format!("gen_{i}^{e}"))
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" * ")
    }
}

/// Finite Laurent polynomial in `(v, y)` with exact coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl LaurentPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: i32, y: i32) -> Rational {
        self.terms.get(&(v, y)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `((v_pow, y_pow), coefficient)` in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, v: i32, y: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((v, y)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add_assign_ref(&mut self, other: &LaurentPoly) {
        for (&(v, y), c) in &other.terms {
            self.add_term(v, y, c.clone());
        }
    }

    fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (&(av, ay), ac) in &a.terms {
            for (&(bv, by), bc) in &b.terms {
                self.add_term(av + bv, ay + by, ac * bc);
            }
        }
    }

    fn map_terms(&self, mut f: impl FnMut(i32, i32, &Rational) -> Option<(i32, i32, Rational)>) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        for (&(v, y), c) in &self.terms {
            if let Some((v, y, c)) = f(v, y, c) {
                out.add_term(v, y, c);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(v, y), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} * v^{v} * y^{y}")?;
        }
        Ok(())
    }
}

/// Sparse truncated series; immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    policy: Arc<TruncationPolicy>,
    slices: BTreeMap<EpsMonomial, LaurentPoly>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Series {
    pub fn zero(policy: &Arc<TruncationPolicy>) -> Self {
        Series { policy: Arc::clone(policy), slices: BTreeMap::new() }
    }

    pub fn constant(policy: &Arc<TruncationPolicy>, c: Rational) -> Self {
        let eps = policy.zero_monomial();
        Self::monomial(policy, c, &eps, 0, 0)
    }

    pub fn one(policy: &Arc<TruncationPolicy>) -> Self {
        Self::constant(policy, Rational::one())
    }

    /// `c * gen^eps * v^v * y^y`; empty when `eps` violates the policy.
    pub fn monomial(policy: &Arc<TruncationPolicy>, c: Rational, eps: &[u32], v: i32, y: i32) -> Self {
        let mut out = Self::zero(policy);
        if policy.admits(eps) && !c.is_zero() {
            let mut slice = LaurentPoly::new();
            slice.add_term(v, y, c);
            out.slices.insert(eps.into(), slice);
        }
        out
    }

    pub fn y(policy: &Arc<TruncationPolicy>) -> Self {
        let eps = policy.zero_monomial();
        Self::monomial(policy, Rational::one(), &eps, 0, 1)
    }

    pub fn v(policy: &Arc<TruncationPolicy>) -> Self {
        let eps = policy.zero_monomial();
        Self::monomial(policy, Rational::one(), &eps, 1, 0)
    }

    pub fn generator(policy: &Arc<TruncationPolicy>, index: usize) -> Result<Self, SeriesError> {
        let count = policy.generators();
        if index >= count {
            return Err(SeriesError::GeneratorOutOfRange { index, count });
        }
        let mut eps = policy.zero_monomial();
        eps[index] = 1;
        Ok(Self::monomial(policy, Rational::one(), &eps, 0, 0))
    }

    /// Builds a series from raw terms, summing repeats and dropping inadmissible exponents.
    pub fn from_terms(policy: &Arc<TruncationPolicy>, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut out = Self::zero(policy);
        for (e, c) in terms {
            if policy.admits(&e.eps) {
                out.slices.entry(e.eps).or_default().add_term(e.v, e.y, c);
            }
        }
        out.prune();
        out
    }

    /// `(1 + y)^k` for `k >= 0`, or `(1 - y)^k` when `sign` is negative.
    pub fn one_plus_signed_y_pow(policy: &Arc<TruncationPolicy>, sign: i32, k: u32) -> Self {
        let eps = policy.zero_monomial();
        let mut slice = LaurentPoly::new();
        let mut c = BigInt::one();
        for j in 0..=k {
            let signed = if sign < 0 && j % 2 == 1 { -c.clone() } else { c.clone() };
            slice.add_term(0, j as i32, Rational::from_integer(signed));
            c = c * (k - j) / (j + 1);
        }
        let mut out = Self::zero(policy);
        out.slices.insert(eps, slice);
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.slices.retain(|_, s| !s.is_zero());
    }

    fn with_slices(&self, slices: BTreeMap<EpsMonomial, LaurentPoly>) -> Self {
        let mut out = Series { policy: Arc::clone(&self.policy), slices };
        out.prune();
        out
    }

    pub fn policy(&self) -> &Arc<TruncationPolicy> {
        &self.policy
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.slices.values().map(LaurentPoly::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Iterates every term in canonical order (generator monomial, then `v`, then `y`).
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> {
        self.slices.iter().flat_map(|(eps, slice)| {
            slice.iter().map(move |(&(v, y), c)| (Exponent { eps: eps.clone(), v, y }, c))
        })
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.slices
            .get(&e.eps)
            .map(|s| s.coeff(e.v, e.y))
            .unwrap_or_else(Rational::zero)
    }

    pub fn slice(&self, eps: &[u32]) -> Option<&LaurentPoly> {
        self.slices.get(eps)
    }

    pub fn slice_by_eps(&self) -> BTreeMap<EpsMonomial, LaurentPoly> {
        self.slices.clone()
    }

    /// Reassembles a series from slices, the inverse of [`Series::slice_by_eps`].
    pub fn from_slices(policy: &Arc<TruncationPolicy>, slices: BTreeMap<EpsMonomial, LaurentPoly>) -> Self {
        let mut out = Self::zero(policy);
        for (eps, slice) in slices {
            if policy.admits(&eps) {
                out.slices.entry(eps).or_default().add_assign_ref(&slice);
            }
        }
        out.prune();
        out
    }

    /// True when no term has generator degree zero.
    pub fn is_infinitesimal(&self) -> bool {
        self.slices.keys().all(|eps| eps_degree(eps) > 0)
    }

    /// Terms of generator degree zero.
    pub fn leading_part(&self) -> Series {
        let zero = self.policy.zero_monomial();
        let slices = self.slices.get(&zero).map(|s| BTreeMap::from([(zero, s.clone())])).unwrap_or_default();
        self.with_slices(slices)
    }

    /// Terms whose generator degree is at most `degree`.
    pub fn truncate_degree(&self, degree: u32) -> Series {
        let slices = self
            .slices
            .iter()
            .filter(|(eps, _)| eps_degree(eps) <= degree)
            .map(|(e, s)| (e.clone(), s.clone()))
            .collect();
        self.with_slices(slices)
    }

    /// Re-expresses the series under another policy with the same generators, dropping
    /// terms the new policy forbids.
    pub fn restrict_to(&self, policy: &Arc<TruncationPolicy>) -> Result<Series, SeriesError> {
        if policy.generators() != self.policy.generators() {
            return Err(SeriesError::PolicyMismatch);
        }
        Ok(Self::from_slices(policy, self.slices.clone()))
    }

    fn check_policy(&self, other: &Series) -> Result<(), SeriesError> {
        if Arc::ptr_eq(&self.policy, &other.policy) || self.policy == other.policy {
            Ok(())
        } else {
            Err(SeriesError::PolicyMismatch)
        }
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_policy(other)?;
        let mut slices = self.slices.clone();
        for (eps, s) in &other.slices {
            slices.entry(eps.clone()).or_default().add_assign_ref(s);
        }
        Ok(self.with_slices(slices))
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_policy(other)?;
        let mut slices: BTreeMap<EpsMonomial, LaurentPoly> = BTreeMap::new();
        for (ea, sa) in &self.slices {
            for (eb, sb) in &other.slices {
                if let Some(eps) = self.policy.combine(ea, eb) {
                    slices.entry(eps).or_default().add_product(sa, sb);
                }
            }
        }
        Ok(self.with_slices(slices))
    }

    fn neg_ref(&self) -> Series {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Self::zero(&self.policy);
        }
        let slices = self
            .slices
            .iter()
            .map(|(e, s)| (e.clone(), s.map_terms(|v, y, x| Some((v, y, x * c)))))
            .collect();
        self.with_slices(slices)
    }

    /// Multiplies by `v^dv * y^dy`.
    pub fn shift(&self, dv: i32, dy: i32) -> Series {
        let slices = self
            .slices
            .iter()
            .map(|(e, s)| (e.clone(), s.map_terms(|v, y, x| Some((v + dv, y + dy, x.clone())))))
            .collect();
        self.with_slices(slices)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Self::one(&self.policy);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `(1 + u)^s` for infinitesimal `u = self`, expanded by the binomial series.
    ///
    /// The expansion stops at the policy's nilpotency index, past which every
    /// power of `u` truncates to zero, so the result is exact.
    pub fn one_plus_pow(&self, s: &Rational) -> Result<Series, SeriesError> {
        if !self.is_infinitesimal() {
            return Err(SeriesError::NotInfinitesimal);
        }
        let mut result = Self::one(&self.policy);
        let mut power = Self::one(&self.policy);
        for j in 1..=self.policy.nilpotency() as usize {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            let c = rational_binomial(s, j);
            result = &result + &power.scale(&c);
        }
        Ok(result)
    }

    /// One application of `(1/y) d/dy`.
    pub fn dy_operator(&self) -> Series {
        let slices = self
            .slices
            .iter()
            .map(|(e, s)| (e.clone(), s.map_terms(|v, y, c| (y != 0).then(|| (v, y - 2, c * int(y as i64))))))
            .collect();
        self.with_slices(slices)
    }

    /// The image under `y -> -y`.
    pub fn subst_y_negate(&self) -> Series {
        let slices = self
            .slices
            .iter()
            .map(|(e, s)| (e.clone(), s.map_terms(|v, y, c| Some((v, y, if y % 2 == 0 { c.clone() } else { -c })))))
            .collect();
        self.with_slices(slices)
    }

    /// Substitutes the series `w` for `y`.
    ///
    /// `w` must be a single monomial `m` plus infinitesimal terms; each power
    /// `w^b` (any integer `b`) is then `m^b (1 + (w - m)/m)^b`.
    pub fn substitute_y(&self, w: &Series) -> Result<Series, SeriesError> {
        self.check_policy(w)?;
        let lead = w.leading_part();
        let mut lead_terms = lead.terms();
        let Some((lead_exp, lead_coeff)) = lead_terms.next() else {
            return Err(SeriesError::NonMonomialLeadingPart);
        };
        if lead_terms.next().is_some() {
            return Err(SeriesError::NonMonomialLeadingPart);
        }
        let lead_exp = lead_exp.clone();
        let lead_coeff = lead_coeff.clone();

        let mut by_y_power: BTreeMap<i32, BTreeMap<EpsMonomial, LaurentPoly>> = BTreeMap::new();
        for (eps, slice) in &self.slices {
            for (&(v, y), c) in slice.iter() {
                by_y_power
                    .entry(y)
                    .or_default()
                    .entry(eps.clone())
                    .or_default()
                    .add_term(v, 0, c.clone());
            }
        }

        // w^b for b >= 0 by repeated multiplication; w^{-1} = m^{-1} (1 + delta)^{-1}
        // with delta = (w - m) / m, then its powers for b < 0.
        let mut result = Self::zero(&self.policy);
        let min_power = by_y_power.keys().next().copied().unwrap_or(0);
        if min_power < 0 {
            let inv = lead_coeff.recip();
            let delta = (w - &lead).scale(&inv).shift(-lead_exp.v, -lead_exp.y);
            let w_inv = delta
                .one_plus_pow(&-Rational::one())?
                .scale(&inv)
                .shift(-lead_exp.v, -lead_exp.y);
            let mut w_pow = Self::one(&self.policy);
            for b in (min_power..0).rev() {
                w_pow = &w_pow * &w_inv;
                if let Some(slices) = by_y_power.get(&b) {
                    result = &result + &(&Self::from_slices(&self.policy, slices.clone()) * &w_pow);
                }
            }
        }
        let mut w_pow = Self::one(&self.policy);
        let mut current = 0;
        for (&b, slices) in by_y_power.range(0..) {
            while current < b {
                w_pow = &w_pow * w;
                current += 1;
            }
            result = &result + &(&Self::from_slices(&self.policy, slices.clone()) * &w_pow);
        }
        Ok(result)
    }

    /// Coefficient of `v^v * y^y` as a series in the generators alone.
    pub fn coefficient_series(&self, v: i32, y: i32) -> Series {
        let slices = self
            .slices
            .iter()
            .filter_map(|(e, s)| {
                let c = s.coeff(v, y);
                (!c.is_zero()).then(|| {
                    let mut slice = LaurentPoly::new();
                    slice.add_term(0, 0, c);
                    (e.clone(), slice)
                })
            })
            .collect();
        self.with_slices(slices)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slices.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} * v^{} * y^{}", e.v, e.y)?;
            for (i, p) in e.eps.iter().enumerate().filter(|(_, &p)| p > 0) {
                write!(f, " * gen_{i}^{p}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched policies; use the `checked_*` methods when
// the operands may come from different contexts.

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.checked_add(rhs).expect("series policies must match")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.checked_sub(rhs).expect("series policies must match")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.checked_mul(rhs).expect("series policies must match")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn generic(gens: usize, cap: u32) -> Arc<TruncationPolicy> {
        Arc::new(TruncationPolicy::generic(gens, cap))
    }

    fn mono(p: &Arc<TruncationPolicy>, c: i64, eps: &[u32], v: i32, y: i32) -> Series {
        Series::monomial(p, int(c), eps, v, y)
    }

    #[test]
    fn addition_examples() {
        let p = generic(2, 2);
        let y = Series::y(&p);
        assert_eq!(&y + &Series::zero(&p), y);
        assert!((&y + &-&y).is_zero());
        let c0 = mono(&p, 1, &[1, 0], -1, 0);
        assert_eq!(&c0 + &c0, mono(&p, 2, &[1, 0], -1, 0));
    }

    #[test]
    fn policy_mismatch_is_an_error() {
        let a = Series::y(&generic(2, 2));
        let b = Series::y(&generic(2, 3));
        assert_eq!(a.checked_add(&b), Err(SeriesError::PolicyMismatch));
        assert_eq!(a.checked_mul(&b), Err(SeriesError::PolicyMismatch));
        let c = Series::y(&generic(3, 2));
        assert_eq!(a.checked_add(&c), Err(SeriesError::PolicyMismatch));
    }

    #[test]
    fn multiplication_examples() {
        let sq = Arc::new(TruncationPolicy::square_zero(2));
        let x1 = Series::generator(&sq, 0).unwrap();
        assert!((&x1 * &x1).is_zero());

        let p = generic(1, 1);
        let a = &mono(&p, 1, &[0], 0, 1) + &mono(&p, 1, &[0], 0, -1);
        let b = &mono(&p, 1, &[0], 0, 1) - &mono(&p, 1, &[0], 0, -1);
        assert_eq!(&a * &b, &mono(&p, 1, &[0], 0, 2) - &mono(&p, 1, &[0], 0, -2));

        let p = generic(3, 2);
        let c1c2 = mono(&p, 1, &[0, 1, 1], 0, 0);
        let c0 = mono(&p, 1, &[1, 0, 0], 0, 0);
        assert!((&c1c2 * &c0).is_zero());
        assert!(Series::generator(&p, 3).is_err());
    }

    #[test]
    fn inadmissible_monomials_are_dropped() {
        let p = generic(2, 1);
        assert!(mono(&p, 1, &[1, 1], 0, 0).is_zero());
        assert!(mono(&p, 0, &[0, 0], 0, 0).is_zero());
    }

    #[test]
    fn one_plus_pow_examples() {
        let p = generic(1, 2);
        assert_eq!(Series::zero(&p).one_plus_pow(&q(-7, 3)).unwrap(), Series::one(&p));

        let u = mono(&p, 1, &[1], 0, 1);
        let expected = &(&Series::one(&p) - &u) + &mono(&p, 1, &[2], 0, 2);
        assert_eq!(u.one_plus_pow(&q(-1, 1)).unwrap(), expected);

        let u = mono(&p, 1, &[1], 0, 0);
        let expected = Series::from_terms(
            &p,
            [
                (Exponent::new(&[0], 0, 0), q(1, 1)),
                (Exponent::new(&[1], 0, 0), q(1, 2)),
                (Exponent::new(&[2], 0, 0), q(-1, 8)),
            ],
        );
        assert_eq!(u.one_plus_pow(&q(1, 2)).unwrap(), expected);

        assert_eq!(Series::y(&p).one_plus_pow(&q(1, 2)), Err(SeriesError::NotInfinitesimal));
    }

    #[test]
    fn dy_operator_examples() {
        let p = generic(1, 1);
        assert_eq!(mono(&p, 1, &[0], 0, 2).dy_operator(), mono(&p, 2, &[0], 0, 0));
        assert_eq!(mono(&p, 1, &[0], 0, -1).dy_operator(), mono(&p, -1, &[0], 0, -3));
        assert!(mono(&p, 5, &[1], 3, 0).dy_operator().is_zero());
        for k in -5..=5 {
            assert_eq!(mono(&p, 1, &[0], 0, 2 * k).dy_operator(), mono(&p, 2 * k as i64, &[0], 0, 2 * k - 2));
        }
    }

    #[test]
    fn y_negation_examples() {
        let p = generic(1, 1);
        let y = Series::y(&p);
        assert_eq!(y.subst_y_negate(), -&y);
        let y2 = mono(&p, 1, &[0], 0, 2);
        assert_eq!(y2.subst_y_negate(), y2);
        let f = &(&y + &y2) + &mono(&p, 3, &[1], -2, -3);
        assert_eq!(f.subst_y_negate().subst_y_negate(), f);
    }

    #[test]
    fn coefficient_extraction() {
        let p = generic(2, 2);
        assert_eq!(Series::y(&p).coeff(&Exponent::new(&[0, 0], 0, 1)), q(1, 1));
        assert_eq!(Series::zero(&p).coeff(&Exponent::new(&[0, 0], 3, 1)), q(0, 1));
        let f = mono(&p, 2, &[1, 0], -1, 0);
        assert_eq!(f.coeff(&Exponent::new(&[1, 0], -1, 0)), q(2, 1));
        assert_eq!(f.coeff(&Exponent::new(&[0, 1], -1, 0)), q(0, 1));
    }

    #[test]
    fn slicing() {
        let p = generic(1, 1);
        let f = &Series::y(&p) + &mono(&p, 1, &[1], 1, 0);
        let slices = f.slice_by_eps();
        assert_eq!(slices.len(), 2);
        assert_eq!(slices[&EpsMonomial::from_slice(&[0])].to_string(), "1 * v^0 * y^1");
        assert_eq!(slices[&EpsMonomial::from_slice(&[1])].to_string(), "1 * v^1 * y^0");
        assert_eq!(Series::from_slices(&p, slices), f);
        assert!(Series::zero(&p).slice_by_eps().is_empty());
    }

    #[test]
    fn substitution_into_y() {
        let p = generic(1, 3);
        // f(y) = y^2 + y^-1 evaluated at w = y + c
        let f = &mono(&p, 1, &[0], 0, 2) + &mono(&p, 1, &[0], 0, -1);
        let c = mono(&p, 1, &[1], 0, 0);
        let w = &Series::y(&p) + &c;
        let got = f.substitute_y(&w).unwrap();
        // (y+c)^2 + 1/y - c/y^2 + c^2/y^3 - c^3/y^4
        let expected = Series::from_terms(
            &p,
            [
                (Exponent::new(&[0], 0, 2), q(1, 1)),
                (Exponent::new(&[1], 0, 1), q(2, 1)),
                (Exponent::new(&[2], 0, 0), q(1, 1)),
                (Exponent::new(&[0], 0, -1), q(1, 1)),
                (Exponent::new(&[1], 0, -2), q(-1, 1)),
                (Exponent::new(&[2], 0, -3), q(1, 1)),
                (Exponent::new(&[3], 0, -4), q(-1, 1)),
            ],
        );
        assert_eq!(got, expected);
        assert_eq!(f.substitute_y(&c), Err(SeriesError::NonMonomialLeadingPart));
    }

    #[test]
    fn rendering() {
        let p = generic(2, 2);
        let f = &mono(&p, -3, &[0, 1], 2, -1) + &Series::monomial(&p, q(1, 5760), &[0, 0], 0, 1);
        assert_eq!(f.to_string(), "1/5760 * v^0 * y^1 + -3 * v^2 * y^-1 * gen_1^1");
        assert_eq!(Series::zero(&p).to_string(), "0");
        assert_eq!(format_eps(&[0, 2, 1]), "gen_1^2 * gen_2^1");
    }

    #[test]
    fn binomial_powers_of_one_plus_y() {
        let p = generic(1, 1);
        let direct = (&Series::one(&p) - &Series::y(&p)).pow(5);
        assert_eq!(Series::one_plus_signed_y_pow(&p, -1, 5), direct);
        assert_eq!(Series::one_plus_signed_y_pow(&p, 1, 0), Series::one(&p));
    }
}
