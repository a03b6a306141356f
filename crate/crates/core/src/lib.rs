//! Exact computations for the superattracting family and its intersection
//! multiplicities.

pub mod arith;
pub mod cantor;
pub mod cli;
pub mod intersect;
pub mod monomial;
pub mod series;
pub mod valdyn;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/intersections.md")]
    mod intersections {}
    #[doc = include_str!("../../../book/src/monomial.md")]
    mod monomial {}
    #[doc = include_str!("../../../book/src/valuations.md")]
    mod valuations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
