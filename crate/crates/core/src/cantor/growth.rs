use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::CantorError;

/// Integer-valued growth functions `nu: N -> Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthSpec {
    /// `b^n`
    Pow(BigUint),
    /// `n!`
    Factorial,
    /// `b^b^...^b` with `n` levels; `tower(0) = 1`.
    Tower(BigUint),
    /// The constant `c`.
    Const(BigInt),
    /// `nu(n)` is entry `n` of an explicit list.
    Table(Vec<BigInt>),
}

/// Default ceiling on the size of an evaluated value, in bits.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 22;

impl GrowthSpec {
    /// `nu(n)`, refusing values above `bit_budget` bits.
    pub fn eval(&self, n: &BigUint, bit_budget: u64) -> Result<BigInt, CantorError> {
        let over = || CantorError::BudgetExceeded { what: format!("{self} at n = {n}"), budget_bits: bit_budget };
        match self {
            GrowthSpec::Const(c) => Ok(c.clone()),
            GrowthSpec::Table(v) => {
                let i = n.to_usize().filter(|&i| i < v.len()).ok_or(CantorError::TableExhausted { n: n.clone() })?;
                Ok(v[i].clone())
            }
            GrowthSpec::Pow(b) => {
                if b.is_zero() || b.is_one() {
                    return Ok(BigInt::from(if n.is_zero() || b.is_one() { 1 } else { 0 }));
                }
                let e = n.to_u64().filter(|&e| e.saturating_mul(b.bits()) <= bit_budget).ok_or_else(over)?;
                Ok(BigInt::from(num_traits::pow(b.clone(), e as usize)))
            }
            GrowthSpec::Factorial => {
                let k = n.to_u64().filter(|&k| k.saturating_mul(64 - k.leading_zeros() as u64) <= bit_budget).ok_or_else(over)?;
                Ok(BigInt::from((1..=k).fold(BigUint::one(), |acc, i| acc * i)))
            }
            GrowthSpec::Tower(b) => {
                let levels = n.to_u64().ok_or_else(over)?;
                let mut v = BigUint::one();
                for _ in 0..levels {
                    if b.is_one() || b.is_zero() {
                        v = if b.is_zero() && !v.is_zero() { BigUint::zero() } else { BigUint::one() };
                        continue;
                    }
                    let e = v.to_u64().filter(|&e| e.saturating_mul(b.bits()) <= bit_budget).ok_or_else(over)?;
                    v = num_traits::pow(b.clone(), e as usize);
                }
                Ok(BigInt::from(v))
            }
        }
    }
}

impl FromStr for GrowthSpec {
    type Err = CantorError;

    /// `pow:b`, `factorial`, `tower:b`, `const:c`, or `table:<path>` with one
    /// integer per line.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| CantorError::GrowthParse(format!("{src:?}: {m}"));
        let (name, arg) = match src.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (src, None),
        };
        let base = |a: Option<&str>| -> Result<BigUint, CantorError> {
            a.ok_or_else(|| bad("missing base"))?.trim().parse().map_err(|_| bad("base must be a nonnegative integer"))
        };
        match name {
            "pow" => Ok(GrowthSpec::Pow(base(arg)?)),
            "tower" => Ok(GrowthSpec::Tower(base(arg)?)),
            "factorial" if arg.is_none() => Ok(GrowthSpec::Factorial),
            "const" => {
                let c = arg.ok_or_else(|| bad("missing value"))?.trim().parse().map_err(|_| bad("value must be an integer"))?;
                Ok(GrowthSpec::Const(c))
            }
            "table" => {
                let path = arg.ok_or_else(|| bad("missing path"))?;
                let text = std::fs::read_to_string(path).map_err(|e| bad(&format!("cannot read table: {e}")))?;
                let values: Result<Vec<BigInt>, _> =
                    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::parse::<BigInt>).collect();
                let values = values.map_err(|_| bad("table lines must be integers"))?;
                if values.is_empty() {
                    return Err(bad("table is empty"));
                }
                Ok(GrowthSpec::Table(values))
            }
            _ => Err(bad("expected pow:b, factorial, tower:b, const:c or table:<path>")),
        }
    }
}

impl fmt::Display for GrowthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthSpec::Pow(b) => write!(f, "pow:{b}"),
            GrowthSpec::Factorial => write!(f, "factorial"),
            GrowthSpec::Tower(b) => write!(f, "tower:{b}"),
            GrowthSpec::Const(c) => write!(f, "const:{c}"),
            GrowthSpec::Table(v) => write!(f, "table[{}]", v.len()),
        }
    }
}
