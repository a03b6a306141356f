use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::Rational;

/// An exact rational `numer / 2^exp2`.
///
/// Always normalized: the numerator is odd, or it is zero and the exponent is
/// zero. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    numer: BigInt,
    exp2: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseDyadicError {
    #[error("empty dyadic literal")]
    Empty,
    #[error("invalid integer in dyadic literal: {0:?}")]
    BadInteger(String),
    #[error("denominator {0} is not a power of two")]
    NotDyadic(String),
}

impl Dyadic {
    /// `numer / 2^exp2`, normalized.
    pub fn from_parts(numer: BigInt, exp2: u32) -> Self {
        let mut d = Dyadic { numer, exp2 };
        d.normalize();
        d
    }

    pub fn from_integer(n: BigInt) -> Self {
        Dyadic { numer: n, exp2: 0 }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn exp2(&self) -> u32 {
        self.exp2
    }

    fn normalize(&mut self) {
        if self.numer.is_zero() {
            self.exp2 = 0;
            return;
        }
        if self.exp2 == 0 {
            return;
        }
        let tz = self.numer.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exp2 as u64) as u32;
        if shift > 0 {
            self.numer >>= shift;
            self.exp2 -= shift;
        }
    }

    /// Numerator brought to the common exponent `exp`, which must be at least
    /// `self.exp2`.
    fn numer_at(&self, exp: u32) -> BigInt {
        &self.numer << (exp - self.exp2)
    }

    /// `sign * self / 2`, with `sign` either `1` or `-1`.
    ///
    /// This is the only division the coefficient recursion ever performs,
    /// since the leading coefficient is always `+1` or `-1`.
    pub fn halve(&self, sign: i8) -> Dyadic {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        if self.numer.is_zero() {
            return Dyadic::zero();
        }
        let numer = if sign < 0 { -&self.numer } else { self.numer.clone() };
        // numer is odd whenever exp2 > 0, and halving keeps it odd.
        if self.exp2 == 0 && numer.is_even() {
            Dyadic::from_parts(numer >> 1u32, 0)
        } else {
            Dyadic { numer, exp2: self.exp2 + 1 }
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { numer: self.numer.abs(), exp2: self.exp2 }
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numer.clone(), BigInt::one() << self.exp2)
    }

    /// `Some` when the rational has a power-of-two denominator.
    pub fn from_rational(q: &Rational) -> Option<Dyadic> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::from_parts(q.numer().clone(), tz as u32))
    }

    /// Renders as `numer/2^k` (or just `numer` when `k = 0`).
    pub fn to_pow2_string(&self) -> String {
        if self.exp2 == 0 {
            self.numer.to_string()
        } else {
            format!("{}/2^{}", self.numer, self.exp2)
        }
    }

    /// Exact finite decimal expansion, e.g. `57/256` renders as `0.22265625`.
    pub fn to_decimal_string(&self) -> String {
        if self.exp2 == 0 {
            return self.numer.to_string();
        }
        // n / 2^k = n * 5^k / 10^k
        let scaled = self.numer.abs() * num_traits::pow(BigInt::from(5u32), self.exp2 as usize);
        let digits = scaled.to_string();
        let k = self.exp2 as usize;
        let (int_part, frac_part) = if digits.len() > k {
            let split = digits.len() - k;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{}{}", "0".repeat(k - digits.len()), digits))
        };
        let sign = if self.numer.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic { numer: BigInt::zero(), exp2: 0 }
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic { numer: BigInt::one(), exp2: 0 }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_integer(BigInt::from(v))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.exp2 == rhs.exp2 {
            return Dyadic::from_parts(&self.numer + &rhs.numer, self.exp2);
        }
        let e = self.exp2.max(rhs.exp2);
        // Different exponents: the sum keeps the larger one and stays odd.
        Dyadic { numer: self.numer_at(e) + rhs.numer_at(e), exp2: e }
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        if self.exp2 == rhs.exp2 {
            return Dyadic::from_parts(&self.numer - &rhs.numer, self.exp2);
        }
        let e = self.exp2.max(rhs.exp2);
        Dyadic { numer: self.numer_at(e) - rhs.numer_at(e), exp2: e }
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::from_parts(&self.numer * &rhs.numer, self.exp2 + rhs.exp2)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { numer: -&self.numer, exp2: self.exp2 }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { numer: -self.numer, exp2: self.exp2 }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp2.max(other.exp2);
        self.numer_at(e).cmp(&other.numer_at(e))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp2 == 0 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, BigInt::one() << self.exp2)
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, ParseDyadicError> {
    s.trim().parse::<BigInt>().map_err(|_| ParseDyadicError::BadInteger(s.to_string()))
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Accepts `n`, `n/d` with `d` a power of two, `n/2^k`, and finite
    /// decimals such as `-0.375`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseDyadicError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_int(n)?;
            let d = d.trim();
            if let Some(k) = d.strip_prefix("2^") {
                let k: u32 = k.parse().map_err(|_| ParseDyadicError::BadInteger(k.to_string()))?;
                return Ok(Dyadic::from_parts(numer, k));
            }
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(ParseDyadicError::NotDyadic(d.to_string()));
            }
            let q = Rational::new(numer, denom);
            return Dyadic::from_rational(&q).ok_or_else(|| ParseDyadicError::NotDyadic(d.to_string()));
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let digits = format!("{}{}", int_part.trim().trim_start_matches(['-', '+']), frac);
            let magnitude = parse_int(if digits.is_empty() { "0" } else { &digits })?;
            let numer = if negative { -magnitude } else { magnitude };
            let denom = num_traits::pow(BigInt::from(10u32), frac.len());
            let q = Rational::new(numer, denom);
            return Dyadic::from_rational(&q).ok_or_else(|| ParseDyadicError::NotDyadic(s.to_string()));
        }
        Ok(Dyadic::from_integer(parse_int(s)?))
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    num: String,
    exp2: u32,
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DyadicRepr { num: self.numer.to_string(), exp2: self.exp2 }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DyadicRepr::deserialize(deserializer)?;
        let numer: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
        Ok(Dyadic::from_parts(numer, repr.exp2))
    }
}
