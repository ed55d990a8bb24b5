//! The two coefficient identities for negative powers of `T`-derived series.
//!
//! Both extract `[v^{N-1} y^{-2}] B^{-N}` with the full generator dependence and
//! compare it with a closed form that is linear in `c_N`:
//!
//! * odd part, `B = (T(v,y) - T(v,-y)) / 2`:
//!   `-(2N+1)! / ((N-1)! (N+1)!) c_N` for even `N > 0`, zero otherwise;
//! * shifted mean, `B = (T(v,y) + y) / 2`: `-(N/4) C(2N+2, N+1) c_N` for `N >= 1`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use super::lagrange::build_t_explicit;
use super::polyspec::{build_a, PolySpec};
use super::IdentityError;
use crate::combinatorics::{binomial, factorial};
use crate::report::{params, CheckReport};
use crate::series::Series;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    /// `B = (T(v,y) - T(v,-y)) / 2`.
    OddPart,
    /// `B = (T(v,y) + y) / 2`.
    ShiftedMean,
}

impl TheoremKind {
    fn name(self) -> &'static str {
        match self {
            TheoremKind::OddPart => "theorem1",
            TheoremKind::ShiftedMean => "theorem2",
        }
    }
}

/// Closed-form factor multiplying `c_N` for the odd-part identity.
pub fn theorem1_expected_factor(n: usize) -> Rational {
    if n == 0 || n % 2 == 1 {
        return Rational::zero();
    }
    let value = factorial(2 * n + 1) / (factorial(n - 1) * factorial(n + 1));
    Rational::from_integer(-value)
}

/// Closed-form factor multiplying `c_N` for the shifted-mean identity.
pub fn theorem2_expected_factor(n: usize) -> Rational {
    let c = binomial(2 * n as i64 + 2, n as i64 + 1).expect("nonnegative");
    -Rational::new(BigInt::from(n) * c, BigInt::from(4))
}

/// `[v^{N-1} y^{-2}] B^{-N}` as a series in `c_0, ..., c_{max_power}`.
pub fn theorem_coefficient(kind: TheoremKind, n: usize, max_power: u32, degree_cap: u32) -> Result<Series, IdentityError> {
    let spec = PolySpec::generic(max_power, degree_cap);
    let policy = spec.policy();
    let a = build_a(&spec);
    let t = build_t_explicit(&a, degree_cap)?;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let base = match kind {
        TheoremKind::OddPart => (&t - &t.subst_y_negate()).scale(&half),
        TheoremKind::ShiftedMean => (&t + &Series::y(&policy)).scale(&half),
    };
    // B = y (1 + u), so B^{-N} = y^{-N} (1 + u)^{-N}
    let u = &base.shift(0, -1) - &Series::one(&policy);
    let power = u
        .one_plus_pow(&Rational::from_integer(-BigInt::from(n)))?
        .shift(0, -(n as i32));
    Ok(power.coefficient_series(n as i32 - 1, -2))
}

fn theorem_check(kind: TheoremKind, n: usize, max_power: u32, degree_cap: u32) -> Result<CheckReport, IdentityError> {
    if (max_power as usize) < n {
        return Err(IdentityError::Precondition(format!("need max power >= N = {n}, got {max_power}")));
    }
    if degree_cap < 2 {
        return Err(IdentityError::Precondition(format!("degree cap must be >= 2, got {degree_cap}")));
    }
    if kind == TheoremKind::ShiftedMean && n == 0 {
        return Err(IdentityError::Precondition("N must be >= 1".into()));
    }
    let start = Instant::now();
    let spec = PolySpec::generic(max_power, degree_cap);
    let policy = spec.policy();
    let computed = theorem_coefficient(kind, n, max_power, degree_cap)?;
    let factor = match kind {
        TheoremKind::OddPart => theorem1_expected_factor(n),
        TheoremKind::ShiftedMean => theorem2_expected_factor(n),
    };
    let expected = Series::generator(&policy, n)?.scale(&factor);
    let p = params([
        ("N", n.into()),
        ("max_power", (max_power as usize).into()),
        ("degree", (degree_cap as usize).into()),
    ]);
    let mut report = CheckReport::from_series(kind.name(), p, &expected, &computed)
        .with_metric("coefficient_terms", computed.len() as u64);
    if kind == TheoremKind::OddPart {
        report = report.with_fact("vanishes", computed.is_zero());
    }
    Ok(report.with_elapsed(start.elapsed()))
}

pub fn theorem1_check(n: usize, max_power: u32, degree_cap: u32) -> Result<CheckReport, IdentityError> {
    theorem_check(TheoremKind::OddPart, n, max_power, degree_cap)
}

pub fn theorem2_check(n: usize, max_power: u32, degree_cap: u32) -> Result<CheckReport, IdentityError> {
    theorem_check(TheoremKind::ShiftedMean, n, max_power, degree_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn closed_forms() {
        assert_eq!(theorem1_expected_factor(2), q(-20, 1));
        assert_eq!(theorem1_expected_factor(4), q(-504, 1));
        assert_eq!(theorem1_expected_factor(3), q(0, 1));
        assert_eq!(theorem1_expected_factor(0), q(0, 1));
        assert_eq!(theorem2_expected_factor(1), q(-3, 2));
        assert_eq!(theorem2_expected_factor(2), q(-10, 1));
        assert_eq!(theorem2_expected_factor(3), q(-105, 2));
    }

    #[test]
    fn odd_part_small() {
        let r = theorem1_check(2, 3, 2).unwrap();
        assert!(r.is_pass(), "{:#?}", r.mismatches);
        let r = theorem1_check(3, 4, 2).unwrap();
        assert!(r.is_pass(), "{:#?}", r.mismatches);
        assert_eq!(r.fact("vanishes"), Some(true));
    }

    #[test]
    fn shifted_mean_small() {
        let r = theorem2_check(1, 2, 2).unwrap();
        assert!(r.is_pass(), "{:#?}", r.mismatches);
    }

    #[test]
    fn odd_part_base_is_odd_in_y() {
        let spec = PolySpec::generic(3, 2);
        let t = build_t_explicit(&build_a(&spec), 2).unwrap();
        let base = &t - &t.subst_y_negate();
        assert_eq!(base.subst_y_negate(), -&base);
    }

    #[test]
    fn preconditions() {
        assert!(theorem1_check(3, 2, 3).is_err());
        assert!(theorem1_check(2, 3, 1).is_err());
        assert!(theorem2_check(0, 1, 2).is_err());
    }
}
