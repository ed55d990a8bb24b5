//! Exact verification engine for the generating-series identities behind
//! Faber's intersection number conjecture.
//!
//! * [`combinatorics`]: set partitions, compositions, binomials, Bernoulli numbers.
//! * [`series`]: truncated sparse series over exact rationals.
//! * [`identities`]: the series builders, the brute-force sum and the checks.
//! * [`report`]: structured pass/fail records.

pub mod combinatorics;
pub mod identities;
pub mod report;
pub mod series;

/// The only scalar type used anywhere: an exact, always-normalized rational.
pub type Rational = num_rational::BigRational;

pub use report::{CheckReport, Mismatch, ParamValue, Status};
pub use series::{Exponent, LaurentPoly, Series, SeriesError, TruncationPolicy};
