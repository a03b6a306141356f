use std::fmt;

use num_traits::{One, Signed};
use serde_json::json;

use super::coeff::Coeff;

/// Order of vanishing of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOrder {
    /// Index of the first nonzero coefficient.
    Exact(usize),
    /// Every known coefficient vanishes; the true order is at least this.
    AtLeast(usize),
}

impl SeriesOrder {
    /// The exact order, or the known lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            SeriesOrder::Exact(k) | SeriesOrder::AtLeast(k) => k,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            SeriesOrder::Exact(k) => Some(k),
            SeriesOrder::AtLeast(_) => None,
        }
    }
}

/// A power series in `y` known exactly below the truncation order.
///
/// The coefficient of `y^k` is stored for every `k < trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries<T> {
    coeffs: Vec<T>,
}

/// Truncation order at which [`USeries::mul`] switches to Karatsuba.
pub const KARATSUBA_TRUNC: usize = 4096;
const KARATSUBA_BASE: usize = 32;

impl<T: Coeff> USeries<T> {
    /// Series with the given coefficients; the truncation order is their count.
    pub fn new(coeffs: Vec<T>) -> Self {
        USeries { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        USeries { coeffs: vec![T::zero(); trunc] }
    }

    /// Builds a series from sparse `(exponent, coefficient)` pairs; exponents at
    /// or above `trunc` are dropped.
    pub fn from_terms(trunc: usize, terms: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in terms {
            if k < trunc {
                s.coeffs[k] = s.coeffs[k].add_ref(&c);
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `y^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn set_coeff(&mut self, k: usize, c: T) {
        self.coeffs[k] = c;
    }

    pub fn ord(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => SeriesOrder::Exact(k),
            None => SeriesOrder::AtLeast(self.trunc()),
        }
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        USeries { coeffs: self.coeffs[..trunc.min(self.trunc())].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        USeries { coeffs: (0..n).map(|k| self.coeffs[k].add_ref(&other.coeffs[k])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        USeries { coeffs: (0..n).map(|k| self.coeffs[k].sub_ref(&other.coeffs[k])).collect() }
    }

    pub fn neg(&self) -> Self {
        USeries { coeffs: self.coeffs.iter().map(Coeff::neg_ref).collect() }
    }

    /// Truncation order of the product: `min(N1 + o2, N2 + o1)`.
    ///
    /// Every coefficient below it is determined by the known data.
    pub fn product_trunc(&self, other: &Self) -> usize {
        let o1 = self.ord().lower_bound();
        let o2 = other.ord().lower_bound();
        (self.trunc() + o2).min(other.trunc() + o1)
    }

    /// Exact truncated product. Uses Karatsuba once the result reaches
    /// [`KARATSUBA_TRUNC`]; both paths produce identical coefficients.
    pub fn mul(&self, other: &Self) -> Self {
        if self.product_trunc(other) >= KARATSUBA_TRUNC {
            self.mul_karatsuba(other)
        } else {
            self.mul_schoolbook(other)
        }
    }

    pub fn mul_schoolbook(&self, other: &Self) -> Self {
        let t = self.product_trunc(other);
        let mut out = vec![T::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate().take(t) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        USeries { coeffs: out }
    }

    pub fn mul_karatsuba(&self, other: &Self) -> Self {
        let t = self.product_trunc(other);
        let a = &self.coeffs[..self.trunc().min(t)];
        let b = &other.coeffs[..other.trunc().min(t)];
        let mut full = karatsuba(a, b);
        full.resize(t.max(full.len()), T::zero());
        full.truncate(t);
        USeries { coeffs: full }
    }

    /// `a(y^k)`, with truncation order `k * trunc`.
    pub fn compose_monomial(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        let mut out = vec![T::zero(); k * self.trunc()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[k * i] = c.clone();
        }
        USeries { coeffs: out }
    }

    /// JSON as `{"trunc": N, "terms": [{"index", "coefficient"}, ...]}` with
    /// nonzero terms in increasing order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!({"index": k, "coefficient": c.to_json()}))
            .collect();
        json!({"trunc": self.trunc(), "terms": terms})
    }
}

fn add_into<T: Coeff>(acc: &mut [T], src: &[T]) {
    for (a, s) in acc.iter_mut().zip(src) {
        if !s.is_zero() {
            *a = a.add_ref(s);
        }
    }
}

fn schoolbook_full<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
    }
    out
}

/// Full product of two coefficient slices.
fn karatsuba<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.len() < KARATSUBA_BASE || b.len() < KARATSUBA_BASE {
        return schoolbook_full(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced: split only the longer operand.
        let (long, short, swap) = if a.len() >= b.len() { (a, b, false) } else { (b, a, true) };
        let (l0, l1) = long.split_at(half);
        let p0 = if swap { karatsuba(short, l0) } else { karatsuba(l0, short) };
        let p1 = if swap { karatsuba(short, l1) } else { karatsuba(l1, short) };
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        add_into(&mut out, &p0);
        add_into(&mut out[half..], &p1);
        return out;
    }
    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    let sa = sum_halves(a0, a1);
    let sb = sum_halves(b0, b1);
    let mut z1 = karatsuba(&sa, &sb);
    for (k, v) in z0.iter().enumerate() {
        z1[k] = z1[k].sub_ref(v);
    }
    for (k, v) in z2.iter().enumerate() {
        z1[k] = z1[k].sub_ref(v);
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0);
    add_into(&mut out[half..], &z1);
    add_into(&mut out[2 * half..], &z2);
    out
}

fn sum_halves<T: Coeff>(lo: &[T], hi: &[T]) -> Vec<T> {
    let n = lo.len().max(hi.len());
    (0..n)
        .map(|k| match (lo.get(k), hi.get(k)) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

impl<T: Coeff> fmt::Display for USeries<T> {
    /// `y^2 - 1/2*y^6 + O(y^8)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = c.to_rational();
            let negative = q.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mag = q.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{mag}*y")?,
                (_, true) => write!(f, "y^{k}")?,
                (_, false) => write!(f, "{mag}*y^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(y^{})", self.trunc())
    }
}
