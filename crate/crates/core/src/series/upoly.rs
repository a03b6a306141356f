//! Dense univariate polynomials with integer coefficients, and polynomials in
//! `x` whose coefficients are themselves integer polynomials in `y`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// `c_0 + c_1 t + ... + c_d t^d` over the integers; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        UPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<UPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(UPoly::new(out))
    }

    /// Exact division in `Z[t]`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::new(quot))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c).expect("content divides")
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) a mod d`.
    pub fn prem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("nonzero divisor");
        let mut r = self.clone();
        let lead = d.lead();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lead();
            let shifted = UPoly::monomial(top, rd - dd).mul(d);
            r = r.scale(&lead).sub(&shifted);
        }
        r
    }

    /// Gcd in `Z[t]`, primitive with positive leading coefficient times the
    /// gcd of contents.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    fn normalized(&self) -> UPoly {
        if self.lead().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

/// Polynomial in `x` with coefficients in `Z[y]`: `sum_i c_i(y) x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: Vec<UPoly>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> UPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    fn coeff(&self, k: usize) -> UPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        XPoly::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn mul_upoly(&self, c: &UPoly) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    fn shift_mul(&self, c: &UPoly, k: usize) -> XPoly {
        let mut v = vec![UPoly::zero(); k];
        v.extend(self.coeffs.iter().map(|x| x.mul(c)));
        XPoly::new(v)
    }

    /// Gcd in `Z[y]` of all coefficients, normalized.
    pub fn content(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    pub fn div_upoly(&self, c: &UPoly) -> Option<XPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.div_exact(c)?);
        }
        Some(XPoly::new(out))
    }

    /// Primitive part with respect to `x`, with positive leading integer.
    pub fn primitive(&self) -> XPoly {
        if self.is_zero() {
            return XPoly::default();
        }
        let c = self.content();
        let mut p = self.div_upoly(&c).expect("content divides");
        if p.lead().lead().is_negative() {
            p = XPoly::new(p.coeffs.iter().map(UPoly::neg).collect());
        }
        p
    }

    pub fn prem(&self, d: &XPoly) -> XPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.lead();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lead();
            r = r.mul_upoly(&lead).sub(&d.shift_mul(&top, rd - dd));
        }
        r
    }

    /// Gcd in `Z[y][x]` by primitive remainder sequences.
    pub fn gcd(&self, o: &XPoly) -> XPoly {
        if self.is_zero() {
            return o.primitive_times_content();
        }
        if o.is_zero() {
            return self.primitive_times_content();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().mul_upoly(&c)
    }

    fn primitive_times_content(&self) -> XPoly {
        self.primitive().mul_upoly(&self.content())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = up(&[-1, 0, 1]); // t^2 - 1
        let b = up(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(up(&[-1, 1])));
        assert_eq!(a.div_exact(&up(&[2, 1])), None);
        assert_eq!(a.gcd(&up(&[2, 2])), up(&[1, 1]));
        assert_eq!(up(&[0, 6]).gcd(&up(&[0, 0, 4])), up(&[0, 2]));
        assert_eq!(up(&[3]).gcd(&UPoly::zero()), up(&[3]));
        assert_eq!(up(&[1, 2, 3]).order(), Some(0));
        assert_eq!(up(&[0, 0, 3]).order(), Some(2));
    }

    #[test]
    fn xpoly_gcd_finds_common_factor() {
        // (x + y)(x - 1) and (x + y)(x + 2y)
        let xp = |rows: &[&[i64]]| XPoly::new(rows.iter().map(|r| up(r)).collect());
        let a = xp(&[&[0, -1], &[-1, 1], &[1]]);
        let b = xp(&[&[0, 0, 2], &[0, 3], &[1]]);
        assert_eq!(a.gcd(&b), xp(&[&[0, 1], &[1]]));
    }
}
