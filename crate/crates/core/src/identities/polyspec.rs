use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::IdentityError;
use crate::series::{Series, TruncationPolicy};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyMode {
    /// One generator `c_a` per power, truncated at total degree `degree_cap`.
    Generic { degree_cap: u32 },
    /// Square-zero generators `x_1, ..., x_n`, one per term.
    Faber,
}

/// `coeff * gen_generator * X^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTerm {
    pub power: u32,
    pub generator: usize,
    pub coeff: Rational,
}

/// A polynomial `P(X) = sum coeff * gen * X^power` whose coefficients are formal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpec {
    mode: PolyMode,
    generators: usize,
    terms: Vec<PolyTerm>,
}

impl PolySpec {
    /// `P(X) = c_0 + c_1 X + ... + c_max X^max` with `gen_a = c_a`.
    pub fn generic(max_power: u32, degree_cap: u32) -> Self {
        let terms = (0..=max_power)
            .map(|a| PolyTerm { power: a, generator: a as usize, coeff: Rational::one() })
            .collect();
        PolySpec { mode: PolyMode::Generic { degree_cap }, generators: max_power as usize + 1, terms }
    }

    /// Generic mode with explicit scalar multipliers; the `i`-th entry gets generator `i`.
    pub fn generic_with_coefficients(powers: &[(u32, Rational)], degree_cap: u32) -> Result<Self, IdentityError> {
        let distinct: BTreeSet<u32> = powers.iter().map(|(a, _)| *a).collect();
        if distinct.len() != powers.len() {
            return Err(IdentityError::InvalidSpec("generic mode needs distinct powers".into()));
        }
        let terms = powers
            .iter()
            .enumerate()
            .map(|(i, (a, c))| PolyTerm { power: *a, generator: i, coeff: c.clone() })
            .collect();
        Ok(PolySpec { mode: PolyMode::Generic { degree_cap }, generators: powers.len(), terms })
    }

    /// `P(X) = x_1 X^{a_1} + ... + x_n X^{a_n}` with square-zero `x_l`.
    pub fn faber(a: &[usize]) -> Self {
        let terms = a
            .iter()
            .enumerate()
            .map(|(l, &power)| PolyTerm { power: power as u32, generator: l, coeff: Rational::one() })
            .collect();
        PolySpec { mode: PolyMode::Faber, generators: a.len(), terms }
    }

    pub fn mode(&self) -> PolyMode {
        self.mode
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn max_power(&self) -> u32 {
        self.terms.iter().map(|t| t.power).max().unwrap_or(0)
    }

    pub fn policy(&self) -> Arc<TruncationPolicy> {
        Arc::new(match self.mode {
            PolyMode::Generic { degree_cap } => TruncationPolicy::generic(self.generators, degree_cap),
            PolyMode::Faber => TruncationPolicy::square_zero(self.generators),
        })
    }

    /// `v^v_shift * P(v (1 + sign*y)^2)` expanded, under `policy`.
    pub fn evaluate(&self, policy: &Arc<TruncationPolicy>, sign: i32, v_shift: i32) -> Result<Series, IdentityError> {
        let mut out = Series::zero(policy);
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let gen = Series::generator(policy, t.generator)?;
            let factor = Series::one_plus_signed_y_pow(policy, sign, 2 * t.power).shift(t.power as i32 + v_shift, 0);
            out = &out + &(&gen * &factor).scale(&t.coeff);
        }
        Ok(out)
    }
}

/// `A(v, y) = v^{-1} P(v (1 + y)^2)`.
pub fn build_a(spec: &PolySpec) -> Series {
    spec.evaluate(&spec.policy(), 1, -1).expect("spec generators lie inside its own policy")
}
