//! Local intersection multiplicities at the origin and pullbacks by map germs.
//!
//! [`local_mult`] decides `i_0(P, Q)` exactly whenever it can certify that
//! the resultant localizes to the origin; see [`MultReport`] for how a result
//! was obtained.

mod curve;
mod mult;
mod sampler;
mod sequence;

use thiserror::Error;

use crate::monomial::MonomialError;
use crate::series::SeriesError;

pub use curve::{graph_poly, parse_generators, split_top_level, MapGerm, PlaneCurve};
pub use mult::{local_mult, local_mult_curves, Method, MultReport, Multiplicity, MAX_DRAWS};
pub use sampler::{GenericSampler, DEFAULT_RANGE};
pub use sequence::{generic_member, mu_sequence, pullback, samuel_via_generic, MuSequence, DEFAULT_TERM_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error("degenerate input: zero polynomial")]
    DegenerateInput,
    #[error("{0} does not vanish at the origin")]
    NotThroughOrigin(String),
    #[error("map is not finite: {0}")]
    NotFinite(String),
    #[error("{0}")]
    Syntax(String),
    #[error("term budget exceeded after step {completed}: {terms} terms > {budget}")]
    BudgetExceeded { completed: usize, terms: usize, budget: usize },
    #[error("generic trials disagree: {values:?}")]
    GenericityFailure { values: Vec<String> },
    #[error("coefficient vector has length {got}, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}
