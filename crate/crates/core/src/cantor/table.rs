use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bitseq::BitSeq;
use crate::arith::Dyadic;

/// Memoized curve coefficients, one row per distinct shifted sequence.
///
/// Rows hold the scaled integers `b_n = 4^n a_n`. The recursion
///
/// ```text
/// a_0 = (-1)^{s_0}
/// a_{n+1} = -(1 / 2a_0) (sum_{i+j=n+1, i,j>=1} a_i a_j + [4 | n] a^{sigma s}_{n/4})
/// ```
///
/// becomes `b_{n+1} = -a_0 (sum b_i b_j + [n = 4k] 2^{6k+2} b^{sigma s}_k) / 2`,
/// with every division exact.
#[derive(Default)]
pub struct CoeffTable {
    rows: RwLock<HashMap<BitSeq, Arc<Vec<BigInt>>>>,
}

impl Clone for CoeffTable {
    fn clone(&self) -> Self {
        CoeffTable { rows: RwLock::new(self.rows.read().unwrap().clone()) }
    }
}

/// Number of entries of the shifted row needed for `len` entries of a row.
fn dependency_len(len: usize) -> usize {
    if len < 2 {
        0
    } else {
        (len - 2) / 4 + 1
    }
}

impl CoeffTable {
    pub fn new() -> Self {
        CoeffTable::default()
    }

    /// Scaled row of `s` with at least `len` entries.
    pub fn scaled_row(&self, s: &BitSeq, len: usize) -> Arc<Vec<BigInt>> {
        self.ensure(s, len);
        self.rows.read().unwrap()[s].clone()
    }

    /// Makes rows long enough, filling the deepest shift first.
    pub fn ensure(&self, s: &BitSeq, len: usize) {
        let mut chain = vec![(s.clone(), len)];
        loop {
            let (last, l) = chain.last().unwrap();
            let d = dependency_len(*l);
            if d == 0 {
                break;
            }
            chain.push((last.shift(), d));
        }
        for i in (0..chain.len()).rev() {
            let (key, l) = &chain[i];
            let dep = chain.get(i + 1).map(|(k, _)| k);
            self.extend_row(key, dep, (*l).max(1));
        }
    }

    fn extend_row(&self, key: &BitSeq, dep: Option<&BitSeq>, len: usize) {
        let current = self.rows.read().unwrap().get(key).cloned();
        if current.as_ref().is_some_and(|r| r.len() >= len) {
            return;
        }
        let mut row: Vec<BigInt> = current.map(|r| (*r).clone()).unwrap_or_default();
        if row.is_empty() {
            row.push(if key.first_bit() { -BigInt::one() } else { BigInt::one() });
        }
        let sigma_row = dep.map(|d| self.rows.read().unwrap()[d].clone());
        let negative_a0 = row[0].is_negative();
        while row.len() < len {
            let idx = row.len();
            let n = idx - 1;
            let mut acc = symmetric_convolution(&row, idx);
            if n.is_multiple_of(4) {
                let k = n / 4;
                let sig = &sigma_row.as_ref().expect("shifted row available")[k];
                acc += sig << (6 * k + 2);
            }
            debug_assert!((&acc % 2u32).is_zero());
            let half = acc >> 1u32;
            row.push(if negative_a0 { half } else { -half });
        }
        self.rows.write().unwrap().insert(key.clone(), Arc::new(row));
    }

    /// Exact coefficient `a_n` of the curve indexed by `s`.
    pub fn coeff(&self, s: &BitSeq, n: usize) -> Dyadic {
        let row = self.scaled_row(s, n + 1);
        Dyadic::from_parts(row[n].clone(), 2 * n as u32)
    }

    /// Coefficients `a_0 .. a_{len-1}`.
    pub fn coeffs(&self, s: &BitSeq, len: usize) -> Vec<Dyadic> {
        let row = self.scaled_row(s, len);
        row[..len].iter().enumerate().map(|(n, b)| Dyadic::from_parts(b.clone(), 2 * n as u32)).collect()
    }

    /// Re-derives every stored entry of the row for `s` from the recursion;
    /// returns the first index that does not satisfy it.
    pub fn replay(&self, s: &BitSeq) -> Result<(), usize> {
        let rows = self.rows.read().unwrap();
        let Some(row) = rows.get(s) else {
            return Ok(());
        };
        let expected_a0 = if s.first_bit() { -BigInt::one() } else { BigInt::one() };
        if row[0] != expected_a0 {
            return Err(0);
        }
        let sigma = rows.get(&s.shift());
        for idx in 1..row.len() {
            let n = idx - 1;
            let mut acc = symmetric_convolution(row, idx);
            if n % 4 == 0 {
                let k = n / 4;
                match sigma.and_then(|r| r.get(k)) {
                    Some(b) => acc += b << (6 * k + 2),
                    None => return Err(idx),
                }
            }
            // b_idx * 2 * a_0 + acc = 0
            let lhs: BigInt = &row[idx] * 2 * &row[0] + acc;
            if !lhs.is_zero() {
                return Err(idx);
            }
        }
        Ok(())
    }

    /// Copy of the table with `a_n^s` replaced by `a_n^s + delta`.
    ///
    /// Entries already stored are kept as they are, so the copy violates the
    /// recursion from index `n` on; it exists to exercise failure paths.
    pub fn perturbed(&self, s: &BitSeq, n: usize, delta: &Dyadic) -> CoeffTable {
        self.ensure(s, n + 1);
        let copy = self.clone();
        {
            let mut rows = copy.rows.write().unwrap();
            let row = rows.get_mut(s).unwrap();
            let mut r = (**row).clone();
            let scaled = delta.to_rational() * crate::arith::Rational::from_integer(BigInt::one() << (2 * n));
            assert!(scaled.is_integer(), "perturbation must be a multiple of 4^-n");
            r[n] += scaled.to_integer();
            *row = Arc::new(r);
        }
        copy
    }
}

/// `sum_{i=1}^{idx-1} b_i b_{idx-i}`, using the symmetry of the terms.
fn symmetric_convolution(row: &[BigInt], idx: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut i = 1;
    while 2 * i < idx {
        acc += &row[i] * &row[idx - i];
        i += 1;
    }
    acc <<= 1u32;
    if idx.is_multiple_of(2) && idx >= 2 {
        let m = &row[idx / 2];
        acc += m * m;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    // Straightforward rational evaluation of the recursion, with no scaling
    // and no memoization.
    fn oracle(s: &BitSeq, len: usize) -> Vec<Rational> {
        let a0 = if s.first_bit() { -Rational::one() } else { Rational::one() };
        let mut a = vec![a0.clone()];
        let sig = if len > 1 { oracle(&s.shift(), (len - 2) / 4 + 1) } else { Vec::new() };
        for n in 0..len.saturating_sub(1) {
            let mut sum = Rational::zero();
            for i in 1..=n {
                sum += &a[i] * &a[n + 1 - i];
            }
            if n % 4 == 0 {
                sum += &sig[n / 4];
            }
            a.push(-sum / (Rational::from_integer(2.into()) * &a0));
        }
        a
    }

    #[test]
    fn first_coefficients_of_zero_sequence() {
        let t = CoeffTable::new();
        let z = BitSeq::zeros();
        let got: Vec<String> = t.coeffs(&z, 6).iter().map(|d| d.to_string()).collect();
        assert_eq!(got, ["1", "-1/2", "-1/8", "-1/16", "-5/128", "57/256"]);
        assert_eq!(t.coeff(&"1".parse().unwrap(), 0), Dyadic::from(-1));
    }

    #[test]
    fn matches_rational_oracle() {
        let t = CoeffTable::new();
        for lit in ["0", "1", ":(01)", "0110:(10)", "1:1...", "001:[1,3]"] {
            let s: BitSeq = lit.parse().unwrap();
            let fast = t.coeffs(&s, 120);
            let slow = oracle(&s, 120);
            for (n, (f, o)) in fast.iter().zip(&slow).enumerate() {
                assert_eq!(&f.to_rational(), o, "{lit} n = {n}");
            }
            assert_eq!(t.replay(&s), Ok(()));
        }
    }

    #[test]
    fn rows_extend_incrementally() {
        let t = CoeffTable::new();
        let s: BitSeq = "0110:(10)".parse().unwrap();
        let short = t.coeffs(&s, 30);
        let long = t.coeffs(&s, 200);
        assert_eq!(&long[..30], &short[..]);
        assert_eq!(t.replay(&s), Ok(()));
    }

    #[test]
    fn replay_detects_perturbation() {
        let t = CoeffTable::new();
        let s = BitSeq::zeros();
        t.ensure(&s, 40);
        let bad = t.perturbed(&s, 17, &"1/2".parse().unwrap());
        assert_eq!(bad.replay(&s), Err(17));
    }
}
