//! The curve family `C_s`, indexed by binary sequences, and its checks.
//!
//! Each `s` gives a formal curve `x + g_s(y)` whose coefficients follow a
//! recursion coupling `s` to its shift. Two curves meet at the origin with
//! multiplicity `(4^{m+1} + 2) / 3`, where `m` is the first index at which the
//! sequences differ.

mod bitseq;
mod checks;
mod growth;
mod pool;
mod table;
mod growth_pair;

pub use bitseq::{first_difference, first_difference_exact, BitSeq, Blocks, FirstDiff, ParseBitSeqError, Tail};
pub use checks::{
    bound_value, curve, first_coefficient_difference, inverse_square_sum_range, inverse_square_sum_check, mult_coeffwise, mult_formula,
    shift_recursion_check, verify_bound, verify_bound_with, verify_functoriality, BoundReport, Mult, SeriesMismatch,
};
pub use growth::{GrowthSpec, DEFAULT_BIT_BUDGET};
pub use pool::sequence_pool;
pub use table::CoeffTable;
pub use growth_pair::{build_growth_pair, mu_shifted, MuValue, GrowthPair, Witness};

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("sequences agree on every index below the horizon {horizon}")]
    UndeterminedDifference { horizon: u64 },
    #[error("{what} exceeds the budget of {budget_bits} bits")]
    BudgetExceeded { what: String, budget_bits: u64 },
    #[error("growth table has no entry for n = {n}")]
    TableExhausted { n: BigUint },
    #[error("invalid growth spec {0}")]
    GrowthParse(String),
}
