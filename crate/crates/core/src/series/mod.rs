//! Truncated power series, bivariate polynomials, resultants and gcds.

mod bipoly;
mod coeff;
mod gcd;
mod parse;
mod resultant;
mod upoly;
mod useries;

pub use bipoly::{BiPoly, PolyOrder};
pub use coeff::Coeff;
pub use gcd::bipoly_gcd;
pub use parse::parse_bipoly;
pub use resultant::{resultant_order_y, resultant_x, resultant_x_int};
pub use upoly::{UPoly, XPoly};
pub use useries::{SeriesOrder, USeries, KARATSUBA_TRUNC};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("zero polynomial has no resultant")]
    ZeroPolynomial,
    #[error("term budget exceeded: {terms} terms > {budget}")]
    BudgetExceeded { terms: usize, budget: usize },
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}
