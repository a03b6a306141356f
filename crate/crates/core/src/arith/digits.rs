use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bouquet_formula;

/// Number of decimal digits of `|n|` (1 for zero).
pub fn decimal_digits(n: &BigInt) -> u64 {
    n.abs().to_string().len() as u64
}

// Beyond this exponent the formula value is not materialized.
const MATERIALIZE_LIMIT: u64 = 20_000;

/// Decimal digit count of `(4^(m+1) + 2) / 3`, exact for every `m`.
///
/// Small exponents are evaluated directly. Large ones use interval bounds on
/// `log10` computed in fixed point, refined until the floor is certain.
pub fn formula_decimal_digits(m: &BigUint) -> BigUint {
    match m.to_u64() {
        Some(small) if small <= MATERIALIZE_LIMIT => BigUint::from(decimal_digits(&bouquet_formula(small))),
        _ => digits_by_logarithm(m),
    }
}

/// Fixed-point lower bound and upper bound of `2 atanh(1/k)` at scale `2^prec`.
fn two_atanh_inv(k: u32, prec: u64) -> (BigInt, BigInt) {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power: BigInt = (BigInt::one() << prec) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut odd = 1u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(odd);
        power /= &k2;
        odd += 2;
        terms += 1;
    }
    // each term floors away less than one unit, the tail is below two units
    let lo = &sum << 1u32;
    let hi = (sum + BigInt::from(terms + 2)) << 1u32;
    (lo, hi)
}

fn digits_by_logarithm(m: &BigUint) -> BigUint {
    let m1 = BigInt::from(m.clone()) + 1u32;
    let mut prec = m.bits() + 96;
    loop {
        let (ln2_lo, ln2_hi) = two_atanh_inv(3, prec);
        let (l32_lo, l32_hi) = two_atanh_inv(5, prec);
        let (l54_lo, l54_hi) = two_atanh_inv(9, prec);
        let ln3_lo = &ln2_lo + &l32_lo;
        let ln3_hi = &ln2_hi + &l32_hi;
        let ln10_lo = &ln2_lo * 3u32 + &l54_lo;
        let ln10_hi = &ln2_hi * 3u32 + &l54_hi;
        // log10(mu) = ((m+1) ln 4 - ln 3 + ln(1 + 2 / 4^(m+1))) / ln 10;
        // the last logarithm is far below one unit at this precision.
        let num_lo = &m1 * (&ln2_lo << 1u32) - &ln3_hi;
        let num_hi = &m1 * (&ln2_hi << 1u32) - &ln3_lo + 1u32;
        let floor_lo = num_lo.div_floor(&ln10_hi);
        let floor_hi = num_hi.div_floor(&ln10_lo);
        if floor_lo == floor_hi {
            return (floor_lo + 1u32).to_biguint().expect("positive digit count");
        }
        prec *= 2;
    }
}
