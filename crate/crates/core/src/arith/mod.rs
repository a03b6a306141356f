//! Exact integer, dyadic and rational arithmetic.
//!
//! Integers and rationals are the `num` big-number types; [`Dyadic`] is the
//! ring `Z[1/2]` in which every curve coefficient lives.

mod digits;
mod dyadic;

pub use digits::{decimal_digits, formula_decimal_digits};
pub use dyadic::{Dyadic, ParseDyadicError};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// `|a| <= q`, decided by integer cross-multiplication.
///
/// Panics if `q` is negative.
pub fn dyadic_abs_leq_rational(a: &Dyadic, q: &Rational) -> bool {
    assert!(!q.is_negative(), "bound must be nonnegative");
    // |n| / 2^k <= p / d   <=>   |n| * d <= p * 2^k
    let lhs = a.numer().abs() * q.denom();
    let rhs = q.numer() << a.exp2();
    lhs <= rhs
}

/// Builds the rational `n / d` from machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a rational base.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// True when the rational has denominator 1.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Exact `(4^(m+1) + 2) / 3`.
pub fn bouquet_formula(m: u64) -> Integer {
    let four_pow: BigInt = BigInt::one() << (2 * (m + 1));
    (four_pow + 2u32) / 3u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn abs_leq_base_case_equality() {
        let half = Dyadic::from_parts(BigInt::from(-1), 1);
        let bound = ratio(1, 20) * ratio(10, 1);
        assert!(dyadic_abs_leq_rational(&half, &bound));
        let eighth = Dyadic::from_parts(BigInt::from(-1), 3);
        assert!(dyadic_abs_leq_rational(&eighth, &(ratio(1, 20) * ratio(100, 4))));
        assert!(dyadic_abs_leq_rational(&Dyadic::one(), &ratio(1, 1)));
        assert!(!dyadic_abs_leq_rational(&Dyadic::one(), &ratio(99, 100)));
    }

    #[test]
    fn formula_values() {
        let got: Vec<Integer> = (0..6).map(bouquet_formula).collect();
        let want: Vec<Integer> = [2, 6, 22, 86, 342, 1366].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn integer_decimal_round_trip() {
        for s in ["0", "-1", "123456789012345678901234567890", "-98765432109876543210"] {
            let v: Integer = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("-0".parse::<Integer>().unwrap(), Integer::zero());
    }
}
