//! The Lagrange-inversion lemma: the explicit derivative sum defining `T`
//! against `w + A(w)` where `w^2 = y^2 + 2 A(w)`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use super::polyspec::PolySpec;
use super::IdentityError;
use crate::combinatorics::factorial;
use crate::report::{params, CheckReport};
use crate::series::{Series, TruncationPolicy};
use crate::Rational;

/// `T = y + sum_{r=1}^{D} (1/r!) ((1/y) d/dy)^{r-1} ((1+y)/y * A^r)`.
pub fn build_t_explicit(a: &Series, degree_cap: u32) -> Result<Series, IdentityError> {
    if !a.is_infinitesimal() {
        return Err(crate::series::SeriesError::NotInfinitesimal.into());
    }
    let policy = a.policy();
    let one_plus_y_over_y = &Series::one(policy) + &Series::y(policy).shift(0, -2);
    let mut t = Series::y(policy);
    let mut power = a.clone();
    for r in 1..=degree_cap as usize {
        if power.is_zero() {
            break;
        }
        let mut term = &one_plus_y_over_y * &power;
        for _ in 1..r {
            term = term.dy_operator();
        }
        let inv_fact = Rational::new(BigInt::one(), factorial(r));
        t = &t + &term.scale(&inv_fact);
        power = &power * a;
    }
    Ok(t)
}

/// Solves `w^2 = y^2 + 2 A(v, w)` for the branch `w = sign*y + O(eps)`.
///
/// Iterates `w <- sign*y * (1 + 2 A(v, w) / y^2)^{1/2}` from `w = sign*y`. Each
/// step fixes one more generator degree, so after `D` steps the next iterate
/// must reproduce the current one.
pub fn solve_w(a: &Series, sign: i32, degree_cap: u32) -> Result<Series, IdentityError> {
    if !a.is_infinitesimal() {
        return Err(crate::series::SeriesError::NotInfinitesimal.into());
    }
    if sign != 1 && sign != -1 {
        return Err(IdentityError::Precondition(format!("branch sign must be +1 or -1, got {sign}")));
    }
    let policy = a.policy();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let two = Rational::from_integer(BigInt::from(2));
    let sign = Rational::from_integer(BigInt::from(sign));
    let step = |a: &Series, w: &Series| -> Result<Series, IdentityError> {
        let lead = Series::y(a.policy()).scale(&sign);
        let u = a.substitute_y(w)?.scale(&two).shift(0, -2);
        Ok(&lead * &u.one_plus_pow(&half)?)
    };
    // The k-th iterate is already exact through generator degree k, so the
    // early steps run under a tighter total-degree cap.
    let mut w = Series::y(policy).scale(&sign);
    for k in 1..=degree_cap {
        let cap = k.min(policy.total_cap());
        let stage = Arc::new(TruncationPolicy::new(cap, policy.per_generator_cap().to_vec()));
        let a_k = a.restrict_to(&stage)?;
        w = step(&a_k, &w.restrict_to(&stage)?)?;
    }
    let w = w.restrict_to(policy)?;
    if step(a, &w)? != w {
        return Err(IdentityError::SolverDidNotConverge { iterations: degree_cap + 1 });
    }
    Ok(w)
}

/// `w^2 - 2 A(v, w) - y^2`, which vanishes for the solver's output.
pub fn solve_w_residual(a: &Series, w: &Series) -> Result<Series, IdentityError> {
    let policy = a.policy();
    let two = Rational::from_integer(BigInt::from(2));
    let a_at_w = a.substitute_y(w)?;
    Ok(&(&(w * w) - &a_at_w.scale(&two)) - &Series::y(policy).pow(2))
}

/// `w + A(v, w)`.
pub fn lagrange_rhs(a: &Series, w: &Series) -> Result<Series, IdentityError> {
    Ok(w + &a.substitute_y(w)?)
}

/// Compares the explicit sum for `T` with `w + A(w)`.
///
/// Solver failure is recorded as a failing report rather than an error.
pub fn lemma_check(a: &Series, degree_cap: u32) -> Result<CheckReport, IdentityError> {
    let start = Instant::now();
    let lhs = build_t_explicit(a, degree_cap)?;
    let p = params([
        ("degree", (degree_cap as usize).into()),
        ("A_terms", a.len().into()),
    ]);
    let report = match solve_w(a, 1, degree_cap) {
        Ok(w) => {
            let rhs = lagrange_rhs(a, &w)?;
            let residual = solve_w_residual(a, &w)?;
            CheckReport::from_series("lemma", p, &lhs, &rhs)
                .with_fact("solver_converged", true)
                .with_fact("residual_zero", residual.is_zero())
                .with_metric("t_terms", lhs.len() as u64)
                .with_metric("w_terms", w.len() as u64)
        }
        Err(IdentityError::SolverDidNotConverge { .. }) => {
            let nothing = Series::zero(a.policy());
            CheckReport::from_series("lemma", p, &lhs, &nothing)
                .with_fact("solver_converged", false)
        }
        Err(e) => return Err(e),
    };
    Ok(report.with_elapsed(start.elapsed()))
}

/// A random generic-mode `P` with powers in `0..=max_power` and small nonzero
/// integer multipliers, as used by the lemma trials.
pub fn random_lemma_spec<R: Rng>(rng: &mut R, max_power: u32, degree_cap: u32) -> PolySpec {
    loop {
        let mut powers: Vec<(u32, Rational)> = Vec::new();
        for a in 0..=max_power {
            if !rng.gen_bool(0.6) {
                continue;
            }
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3i64..=3);
            }
            powers.push((a, Rational::from_integer(BigInt::from(c))));
        }
        if !powers.is_empty() {
            return PolySpec::generic_with_coefficients(&powers, degree_cap).expect("powers are distinct");
        }
    }
}
