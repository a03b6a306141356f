//! Valuative dynamics at desk scale: monomial valuations and attraction
//! rates, recursion detection for multiplicity sequences, and the
//! intersection theory of a chain of point blowups.

mod chart;
mod recursion;
mod roots;
mod valuation;

use thiserror::Error;

pub use chart::{intersection_matrix, random_chart, skewness, Axis, ExceptionalLattice, ProximityChart};
pub use recursion::{detect_recursion, ratio_bounds_check, RecurrenceModel, RatioBoundsReport};
pub use roots::{largest_real_root, RootBracket};
pub use valuation::{attraction_rate, c_infinity, c_sequence, val_eval, CInfinity, MonomialValuation, Rate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValdynError {
    #[error("valuation of the zero polynomial")]
    ZeroPolynomial,
    #[error("weights must be positive with minimum 1, got ({0}, {1})")]
    InvalidWeights(String, String),
    #[error("term budget exceeded after n = {completed}")]
    BudgetExceeded { completed: usize },
    #[error("no integral recursion of order <= {max_order} found")]
    NoRecurrenceFound { max_order: usize },
    #[error("sequence of length {len} is too short for order {max_order} with holdout {holdout}")]
    InsufficientData { len: usize, max_order: usize, holdout: usize },
    #[error("malformed proximity chart: {0}")]
    MalformedChart(String),
    #[error("intersection matrix is not negative definite (leading minor {0})")]
    NotNegativeDefinite(usize),
    #[error("characteristic polynomial has no real root")]
    NoRealRoot,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
