use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::json;

use super::recursion::{detect_recursion, RecurrenceModel};
use super::roots::{largest_real_root, RootBracket};
use super::ValdynError;
use crate::arith::Rational;
use crate::intersect::MapGerm;
use crate::series::{BiPoly, SeriesError};

/// The monomial valuation with `nu(x) = s`, `nu(y) = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    s: Rational,
    t: Rational,
}

impl MonomialValuation {
    /// Normalized weights: both positive, the smaller equal to 1.
    pub fn new(s: Rational, t: Rational) -> Result<Self, ValdynError> {
        if !s.is_positive() || !t.is_positive() || s.clone().min(t.clone()) != Rational::one() {
            return Err(ValdynError::InvalidWeights(s.to_string(), t.to_string()));
        }
        Ok(MonomialValuation { s, t })
    }

    /// Positive weights without normalization, as produced by pushforwards.
    pub fn weights(s: Rational, t: Rational) -> Result<Self, ValdynError> {
        if !s.is_positive() || !t.is_positive() {
            return Err(ValdynError::InvalidWeights(s.to_string(), t.to_string()));
        }
        Ok(MonomialValuation { s, t })
    }

    /// The order of vanishing at the origin.
    pub fn ord() -> Self {
        MonomialValuation { s: Rational::one(), t: Rational::one() }
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// `P -> nu(P o F)`, monomial when `F` is.
    pub fn pushforward(&self, f: &MapGerm) -> Result<MonomialValuation, ValdynError> {
        let (f1, f2) = f.components();
        MonomialValuation::weights(val_eval(self, f1)?, val_eval(self, f2)?)
    }
}

/// `min (s i + t j)` over the support of `P`.
pub fn val_eval(nu: &MonomialValuation, p: &BiPoly) -> Result<Rational, ValdynError> {
    p.terms()
        .map(|(i, j, _)| &nu.s * Rational::from_integer(i.into()) + &nu.t * Rational::from_integer(j.into()))
        .min()
        .ok_or(ValdynError::ZeroPolynomial)
}

/// `c(F, nu) = min(nu(x o F), nu(y o F))`.
pub fn attraction_rate(f: &MapGerm, nu: &MonomialValuation) -> Rational {
    let (f1, f2) = f.components();
    let a = val_eval(nu, f1).expect("map components are nonzero");
    let b = val_eval(nu, f2).expect("map components are nonzero");
    a.min(b)
}

/// `c(F^n, nu)` for `n = 1..=n_max`.
pub fn c_sequence(f: &MapGerm, nu: &MonomialValuation, n_max: usize, budget: usize) -> Result<Vec<Rational>, ValdynError> {
    let mut out = Vec::with_capacity(n_max);
    let mut iterate = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            iterate = f.compose(&iterate, budget).map_err(|e| match e {
                crate::intersect::IntersectError::Series(SeriesError::BudgetExceeded { .. }) => {
                    ValdynError::BudgetExceeded { completed: n - 1 }
                }
                other => ValdynError::Precondition(other.to_string()),
            })?;
        }
        out.push(attraction_rate(&iterate, nu));
    }
    Ok(out)
}

/// `c_inf` as the dominant root of the recursion satisfied by `c(f^n, ord)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rate {
    Exact(Rational),
    /// Irrational: a root of `char_poly` inside `(lo, hi]`.
    Bracketed { lo: Rational, hi: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInfinity {
    pub sequence: Vec<BigInt>,
    pub recursion: RecurrenceModel,
    pub rate: Rate,
}

impl CInfinity {
    pub fn exact(&self) -> Option<&Rational> {
        match &self.rate {
            Rate::Exact(r) => Some(r),
            Rate::Bracketed { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rate = match &self.rate {
            Rate::Exact(r) => json!({"exact": r.to_string()}),
            Rate::Bracketed { lo, hi } => json!({
                "lo": lo.to_string(),
                "hi": hi.to_string(),
                "approx": approx(lo, hi),
            }),
        };
        json!({
            "sequence": self.sequence.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "recursion": self.recursion.to_json(),
            "c_inf": rate,
        })
    }
}

/// Human-facing midpoint of a bracket; approximate.
fn approx(lo: &Rational, hi: &Rational) -> String {
    let mid = (lo + hi) / Rational::from_integer(2.into());
    let scaled = (mid * Rational::from_integer(BigInt::from(10u64).pow(9))).round().to_integer();
    let digits = scaled.abs().to_string();
    let padded = format!("{digits:0>10}");
    let (int, frac) = padded.split_at(padded.len() - 9);
    format!("~{}{int}.{frac}", if scaled.is_negative() { "-" } else { "" })
}

/// Bits of precision for irrational brackets.
const BRACKET_BITS: u32 = 40;

pub fn c_infinity(f: &MapGerm, n_max: usize, budget: usize) -> Result<CInfinity, ValdynError> {
    if n_max < 3 {
        return Err(ValdynError::Precondition(format!("n_max = {n_max} < 3")));
    }
    let seq: Vec<BigInt> = c_sequence(f, &MonomialValuation::ord(), n_max, budget)?
        .into_iter()
        .map(|c| c.to_integer())
        .collect();
    let holdout = 1;
    let recursion = detect_recursion(&seq, (n_max - holdout) / 2, holdout)?;
    let rate = match largest_real_root(&recursion.char_poly(), BRACKET_BITS) {
        Some(RootBracket::Exact(r)) => Rate::Exact(r),
        Some(RootBracket::Interval { lo, hi }) => Rate::Bracketed { lo, hi },
        None => return Err(ValdynError::NoRealRoot),
    };
    Ok(CInfinity { sequence: seq, recursion, rate })
}
