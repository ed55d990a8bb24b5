//! Series builders and verification routines for the individual identities.

mod faber;
mod lagrange;
mod polyspec;
mod theorems;

pub use faber::{
    a_vectors, build_s, congruence_identity_sides, derivative_identity_holds, direct_faber_sum,
    direct_faber_sum_with_stats, faber_sum_check, gf_faber_value, partition_identity_sides,
    proposition_check, t_s_consistency_check, DirectSumStats, FaberInstance,
};
pub use lagrange::{
    build_t_explicit, lagrange_rhs, lemma_check, random_lemma_spec, solve_w, solve_w_residual,
};
pub use polyspec::{build_a, PolyMode, PolySpec, PolyTerm};
pub use theorems::{
    theorem1_check, theorem1_expected_factor, theorem2_check, theorem2_expected_factor,
    theorem_coefficient, TheoremKind,
};

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("invalid Faber instance: {0}")]
    InvalidInstance(String),
    #[error("invalid polynomial spec: {0}")]
    InvalidSpec(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("fixed-point iteration did not settle after {iterations} steps")]
    SolverDidNotConverge { iterations: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}
