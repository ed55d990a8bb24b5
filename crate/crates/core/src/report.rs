//! Structured pass/fail records for single identity instances.

use std::collections::BTreeSet;
use std::time::Duration;

use serde::Serialize;

use crate::series::{format_eps, EpsMonomial, LaurentPoly, Series};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<&[usize]> for ParamValue {
    fn from(v: &[usize]) -> Self {
        ParamValue::List(v.iter().map(|&x| x as i64).collect())
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::List(vs) => {
                let parts: Vec<String> = vs.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            ParamValue::Text(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// One generator monomial whose slices disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub monomial: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub params: Vec<(String, ParamValue)>,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub mismatches: Vec<Mismatch>,
    /// Named side facts recorded alongside the main comparison.
    pub facts: Vec<(String, bool)>,
    /// Work counters (enumerated items, series sizes).
    pub metrics: Vec<(String, u64)>,
    pub elapsed: Duration,
}

pub fn series_mismatches(expected: &Series, computed: &Series) -> Vec<Mismatch> {
    let exp = expected.slice_by_eps();
    let got = computed.slice_by_eps();
    let keys: BTreeSet<&EpsMonomial> = exp.keys().chain(got.keys()).collect();
    let empty = LaurentPoly::new();
    keys.into_iter()
        .filter_map(|eps| {
            let e = exp.get(eps).unwrap_or(&empty);
            let c = got.get(eps).unwrap_or(&empty);
            (e != c).then(|| Mismatch {
                monomial: format_eps(eps),
                expected: e.to_string(),
                computed: c.to_string(),
            })
        })
        .collect()
}

impl CheckReport {
    fn new(check: &str, params: Vec<(String, ParamValue)>, expected: String, computed: String, mismatches: Vec<Mismatch>) -> Self {
        let status = if mismatches.is_empty() && expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            check: check.to_string(),
            params,
            status,
            expected,
            computed,
            mismatches,
            facts: Vec::new(),
            metrics: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Compares two series slice by slice.
    pub fn from_series(check: &str, params: Vec<(String, ParamValue)>, expected: &Series, computed: &Series) -> Self {
        let mismatches = series_mismatches(expected, computed);
        Self::new(check, params, expected.to_string(), computed.to_string(), mismatches)
    }

    pub fn from_rationals(check: &str, params: Vec<(String, ParamValue)>, expected: &Rational, computed: &Rational) -> Self {
        let mismatches = if expected == computed {
            Vec::new()
        } else {
            vec![Mismatch {
                monomial: "1".to_string(),
                expected: expected.to_string(),
                computed: computed.to_string(),
            }]
        };
        Self::new(check, params, expected.to_string(), computed.to_string(), mismatches)
    }

    /// A failing record for a check that could not be evaluated.
    pub fn error(check: &str, params: Vec<(String, ParamValue)>, message: &str) -> Self {
        let mismatch = Mismatch {
            monomial: "1".to_string(),
            expected: "evaluation".to_string(),
            computed: format!("error: {message}"),
        };
        Self::new(check, params, "evaluation".to_string(), format!("error: {message}"), vec![mismatch])
    }

    pub fn with_fact(mut self, name: &str, holds: bool) -> Self {
        self.facts.push((name.to_string(), holds));
        self
    }

    pub fn with_metric(mut self, name: &str, value: u64) -> Self {
        self.metrics.push((name.to_string(), value));
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    /// Test hook: perturbs the computed side by one unit so the report fails.
    pub fn with_injected_fault(mut self) -> Self {
        let perturbed = format!("{} + 1", self.computed);
        self.mismatches.push(Mismatch {
            monomial: "1".to_string(),
            expected: self.expected.clone(),
            computed: perturbed.clone(),
        });
        self.computed = perturbed;
        self.status = Status::Fail;
        self
    }

    pub fn param(&self, name: &str) -> Option<&ParamValue> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn fact(&self, name: &str) -> Option<bool> {
        self.facts.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn is_pass(&self) -> bool {
        self.status.is_pass()
    }
}

pub fn params<const K: usize>(items: [(&str, ParamValue); K]) -> Vec<(String, ParamValue)> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncationPolicy;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use std::sync::Arc;

    #[test]
    fn rational_reports() {
        let a = Rational::new(BigInt::from(1), BigInt::from(5760));
        let ok = CheckReport::from_rationals("constants", params([("g", 2i64.into())]), &a, &a);
        assert!(ok.is_pass());
        assert!(ok.mismatches.is_empty());
        assert_eq!(ok.computed, "1/5760");

        let b = Rational::from_integer(BigInt::from(1));
        let bad = CheckReport::from_rationals("constants", Vec::new(), &a, &b);
        assert_eq!(bad.status, Status::Fail);
        assert_eq!(bad.mismatches.len(), 1);
    }

    #[test]
    fn series_reports_pinpoint_slices() {
        let p = Arc::new(TruncationPolicy::generic(2, 2));
        let y = Series::y(&p);
        let c1 = Series::generator(&p, 1).unwrap();
        let perturbed = &y + &c1;
        let report = CheckReport::from_series("t", Vec::new(), &y, &perturbed);
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.mismatches.len(), 1);
        assert_eq!(report.mismatches[0].monomial, "gen_1^1");
        assert_eq!(report.mismatches[0].expected, "0");
    }

    #[test]
    fn injected_fault_fails() {
        let z = Rational::zero();
        let r = CheckReport::from_rationals("faber", Vec::new(), &z, &z).with_injected_fault();
        assert!(!r.is_pass());
        assert!(!r.mismatches.is_empty());
    }
}
