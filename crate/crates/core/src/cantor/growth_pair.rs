use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use super::bitseq::{first_difference_exact, BitSeq, Tail};
use super::growth::GrowthSpec;
use super::CantorError;
use crate::arith::{bouquet_formula, formula_decimal_digits};

// Values with exponent beyond this are described, not materialized.
const MATERIALIZE_LIMIT: u64 = 1 << 20;

/// `mu = C_s . C_t = (4^{M+1} + 2) / 3`, kept symbolic in `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuValue {
    Finite { m: BigUint },
    Infinite,
}

impl MuValue {
    pub fn m(&self) -> Option<&BigUint> {
        match self {
            MuValue::Finite { m } => Some(m),
            MuValue::Infinite => None,
        }
    }

    /// The exact integer, when `M` is small enough to write it out.
    pub fn value(&self) -> Option<BigInt> {
        let m = self.m()?.to_u64().filter(|&m| m <= MATERIALIZE_LIMIT)?;
        Some(bouquet_formula(m))
    }

    /// Number of decimal digits, exact for any `M`.
    pub fn digits(&self) -> Option<BigUint> {
        self.m().map(formula_decimal_digits)
    }

    /// `mu > nu`, decided without writing out huge values.
    pub fn exceeds(&self, nu: &BigInt) -> bool {
        let Some(m) = self.m() else {
            return true;
        };
        if !nu.is_positive() {
            return true;
        }
        // mu > 4^M >= 2^bits(nu) > nu once M >= bits(nu)
        let bits = nu.bits();
        if m >= &BigUint::from(bits) {
            return true;
        }
        bouquet_formula(m.to_u64().unwrap()) > *nu
    }
}

/// `mu(n) = C_s . C_{sigma^n t}` via the closed formula.
pub fn mu_shifted(s: &BitSeq, t: &BitSeq, n: &BigUint) -> MuValue {
    match first_difference_exact(s, &t.shift_by(n)) {
        Some(m) => MuValue::Finite { m },
        None => MuValue::Infinite,
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub n: BigUint,
    pub m: BigUint,
    pub nu: BigInt,
    pub mu: MuValue,
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n.to_string(),
            "M": self.m.to_string(),
            "nu": self.nu.to_string(),
            "mu_digits": self.mu.digits().map(|d| d.to_string()),
            "mu_exceeds_nu": self.mu.exceeds(&self.nu),
        })
    }
}

#[derive(Clone, Debug)]
pub struct GrowthPair {
    pub s: BitSeq,
    pub t: BitSeq,
    pub witnesses: Vec<Witness>,
    /// `M(s, sigma^n t)` is certified finite for every `n` up to here.
    pub horizon: BigUint,
    /// Largest `M(s, sigma^n t)` for `n <= horizon`.
    pub max_m: BigUint,
}

/// `s = 0^infinity` and `t` made of zero-blocks of lengths `L_k = nu(n_k) + 1`
/// starting at `n_1 = 0`, `n_{k+1} = n_k + L_k + 1`, each followed by a one,
/// the last block repeating forever.
pub fn build_growth_pair(nu: &GrowthSpec, k: usize, bit_budget: u64) -> Result<GrowthPair, CantorError> {
    assert!(k >= 1, "need at least one witness");
    let mut starts = Vec::with_capacity(k);
    let mut lengths = Vec::with_capacity(k);
    let mut nus = Vec::with_capacity(k);
    let mut n = BigUint::zero();
    for _ in 0..k {
        let v = nu.eval(&n, bit_budget)?;
        let len = (&v + 1u32).to_biguint().unwrap_or_default();
        starts.push(n.clone());
        n = &n + &len + 1u32;
        lengths.push(len);
        nus.push(v);
    }
    let s = BitSeq::zeros();
    let t = BitSeq::blocks(&[], lengths.clone());
    let mut witnesses = Vec::with_capacity(k);
    for ((n, _), v) in starts.iter().zip(&lengths).zip(nus) {
        let mu = mu_shifted(&s, &t, n);
        let m = mu.m().cloned().expect("blocks end in a one");
        witnesses.push(Witness { n: n.clone(), m, nu: v, mu });
    }
    let horizon = starts.last().unwrap().clone();
    // every block is followed by a one and the last block repeats, so each
    // shift of t reaches a one after at most max L_k zeros
    assert!(infinitely_many_ones(&t));
    let max_m = lengths.iter().max().unwrap().clone();
    Ok(GrowthPair { s, t, witnesses, horizon, max_m })
}

fn infinitely_many_ones(s: &BitSeq) -> bool {
    !matches!(s.tail(), Tail::Zeros)
}
