use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::ValdynError;
use crate::arith::{rational_pow, Rational};

/// `lead * mu(n+k) = c_1 mu(n+k-1) + ... + c_k mu(n)` for every `n >= onset`.
///
/// `lead` is 1 whenever the recursion has integer coefficients; otherwise it
/// is the least common denominator of the rational solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceModel {
    pub order: usize,
    pub lead: BigInt,
    pub coeffs: Vec<BigInt>,
    pub onset: usize,
}

impl RecurrenceModel {
    /// Characteristic polynomial `lead t^k - c_1 t^{k-1} - ... - c_k`,
    /// ascending coefficients.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let mut p: Vec<BigInt> = self.coeffs.iter().rev().map(|c| -c).collect();
        p.push(self.lead.clone());
        p
    }

    pub fn char_poly_string(&self) -> String {
        let p = self.char_poly();
        let mut out = String::new();
        for (k, c) in p.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
                if !var.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&var);
        }
        out
    }

    pub fn holds_at(&self, seq: &[BigInt], n: usize) -> bool {
        let k = self.order;
        let rhs: BigInt = (1..=k).map(|i| &self.coeffs[i - 1] * &seq[n + k - i]).sum();
        &self.lead * &seq[n + k] == rhs
    }

    /// Extends `seq` by `extra` predicted terms.
    pub fn extend(&self, seq: &[BigInt], extra: usize) -> Option<Vec<BigInt>> {
        let mut out = seq.to_vec();
        let k = self.order;
        for _ in 0..extra {
            let n = out.len();
            let rhs: BigInt = (1..=k).map(|i| &self.coeffs[i - 1] * &out[n - i]).sum();
            let (q, r) = rhs.div_rem(&self.lead);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order": self.order,
            "lead": self.lead.to_string(),
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "onset": self.onset,
            "char_poly": self.char_poly_string(),
        })
    }
}

impl fmt::Display for RecurrenceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {} from n = {}, characteristic polynomial {}", self.order, self.onset, self.char_poly_string())
    }
}

/// Minimal-order linear recursion for `seq`.
///
/// For each order `k` the Hankel system at successive onsets is solved
/// exactly over the rationals using only the first `len - holdout` terms;
/// the first solution that reproduces the whole sequence wins.
pub fn detect_recursion(seq: &[BigInt], max_order: usize, holdout: usize) -> Result<RecurrenceModel, ValdynError> {
    let len = seq.len();
    if max_order == 0 || len < 2 * max_order + holdout {
        return Err(ValdynError::InsufficientData { len, max_order, holdout });
    }
    if seq.iter().all(Zero::is_zero) {
        return Ok(RecurrenceModel { order: 1, lead: BigInt::one(), coeffs: vec![BigInt::zero()], onset: 0 });
    }
    let train = len - holdout;
    for k in 1..=max_order {
        for n0 in 0..=(train - 2 * k) {
            let Some(c) = solve_hankel(seq, n0, k) else { continue };
            let lead = c.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let coeffs: Vec<BigInt> = c.iter().map(|q| (q * Rational::from_integer(lead.clone())).to_integer()).collect();
            let mut model = RecurrenceModel { order: k, lead, coeffs, onset: n0 };
            if !(n0..len - k).all(|n| model.holds_at(seq, n)) {
                continue;
            }
            while model.onset > 0 && model.holds_at(seq, model.onset - 1) {
                model.onset -= 1;
            }
            return Ok(model);
        }
    }
    Err(ValdynError::NoRecurrenceFound { max_order })
}

#[allow(clippy::needless_range_loop)]
fn solve_hankel(seq: &[BigInt], n0: usize, k: usize) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = (0..k)
        .map(|r| {
            let mut row: Vec<Rational> =
                (1..=k).map(|i| Rational::from_integer(seq[n0 + r + k - i].clone())).collect();
            row.push(Rational::from_integer(seq[n0 + r + k].clone()));
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=k {
                    let sub = &f * &a[col][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[k].clone()).collect())
}

/// Outcome of checking `A_1 c^n <= mu(n) <= A_2 c^n` on a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioBoundsReport {
    pub recursion: Option<RecurrenceModel>,
    /// Least and greatest `mu(n) / c^n` for `n` from the onset on.
    pub a1: Rational,
    pub a2: Rational,
    pub pass: bool,
}

impl RatioBoundsReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "recursion": self.recursion.as_ref().map(RecurrenceModel::to_json),
            "A1": self.a1.to_string(),
            "A2": self.a2.to_string(),
            "pass": self.pass,
        })
    }
}

/// Passes when `mu` eventually satisfies a recursion and the ratios
/// `mu(n) / c^n` after its onset stay strictly positive.
pub fn ratio_bounds_check(mu: &[BigInt], c_inf: &Rational, max_order: usize) -> Result<RatioBoundsReport, ValdynError> {
    if mu.is_empty() {
        return Err(ValdynError::Precondition("empty sequence".into()));
    }
    if *c_inf <= Rational::one() {
        return Err(ValdynError::Precondition(format!("c_inf = {c_inf} must exceed 1")));
    }
    let holdout = 1;
    let order = max_order.min(mu.len().saturating_sub(holdout) / 2);
    let recursion = if order == 0 { None } else { detect_recursion(mu, order, holdout).ok() };
    let start = recursion.as_ref().map_or(0, |r| r.onset);
    let ratios: Vec<Rational> = mu[start..]
        .iter()
        .enumerate()
        .map(|(i, m)| Rational::from_integer(m.clone()) / rational_pow(c_inf, (start + i) as u32))
        .collect();
    let a1 = ratios.iter().min().cloned().unwrap_or_else(Rational::zero);
    let a2 = ratios.iter().max().cloned().unwrap_or_else(Rational::zero);
    let pass = recursion.is_some() && a1.is_positive();
    Ok(RatioBoundsReport { recursion, a1, a2, pass })
}
