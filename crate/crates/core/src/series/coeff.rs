use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::arith::{Dyadic, Rational};

/// Exact coefficient ring for truncated series.
pub trait Coeff: Clone + PartialEq + Zero + One + Debug + Display + Send + Sync {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_rational(&self) -> Rational;
    fn to_json(&self) -> serde_json::Value;
}

impl Coeff for Dyadic {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_rational(&self) -> Rational {
        Dyadic::to_rational(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("dyadic serializes")
    }
}

impl Coeff for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}
