use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::upoly::{UPoly, XPoly};
use super::SeriesError;
use crate::arith::Rational;

/// Lowest total degree of a polynomial; the zero polynomial has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PolyOrder {
    Finite(u32),
    Infinite,
}

/// Sparse polynomial in `x, y` with rational coefficients.
///
/// Keys are exponent pairs `(i, j)` for the monomial `x^i y^j`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn x() -> Self {
        BiPoly::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// From `(i, j, coefficient)` triples; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, Rational::from_integer(BigInt::from(c)))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn order(&self) -> PolyOrder {
        self.terms.keys().map(|&(i, j)| i + j).min().map_or(PolyOrder::Infinite, PolyOrder::Finite)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                *acc.entry((i1 + i2, j1 + j2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }

    /// Product that fails once the result exceeds `budget` terms.
    pub fn mul_budget(&self, o: &BiPoly, budget: usize) -> Result<BiPoly, SeriesError> {
        let p = self.mul(o);
        check_budget(&p, budget)?;
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    ///
    /// Lexicographic leading-term reduction; with a single divisor the
    /// remainder vanishes exactly when `d` divides.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (&(di, dj), dc) = d.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&(ri, rj), rc)) = rem.terms.iter().next_back() {
            if ri < di || rj < dj {
                return None;
            }
            let q = BiPoly::monomial(rc / dc, ri - di, rj - dj);
            rem = rem.sub(&q.mul(d));
            quot = quot.add(&q);
        }
        Some(quot)
    }

    /// Substitutes `(x, y) -> (f1, f2)`.
    pub fn compose(&self, f1: &BiPoly, f2: &BiPoly) -> BiPoly {
        self.compose_budget(f1, f2, usize::MAX).expect("unbounded budget")
    }

    /// Substitution that refuses intermediate results above `budget` terms.
    pub fn compose_budget(&self, f1: &BiPoly, f2: &BiPoly, budget: usize) -> Result<BiPoly, SeriesError> {
        let Some(dx) = self.deg_x() else {
            return Ok(BiPoly::zero());
        };
        let dy = self.deg_y().unwrap_or(0);
        let mut pow2 = vec![BiPoly::one()];
        for _ in 0..dy {
            let next = pow2.last().unwrap().mul_budget(f2, budget)?;
            pow2.push(next);
        }
        // Horner in x: sum_i f1^i * p_i(f2)
        let mut acc = BiPoly::zero();
        for i in (0..=dx).rev() {
            acc = acc.mul_budget(f1, budget)?;
            for (&(ti, tj), c) in self.terms.range((i, 0)..=(i, u32::MAX)) {
                debug_assert_eq!(ti, i);
                acc = acc.add(&pow2[tj as usize].scale(c));
            }
            check_budget(&acc, budget)?;
        }
        Ok(acc)
    }

    pub fn deriv_x(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, j), c)| (i - 1, j, c * Rational::from_integer(i.into()))),
        )
    }

    pub fn deriv_y(&self) -> BiPoly {
        self.swap_xy().deriv_x().swap_xy()
    }

    /// `P(x, 0)` as a polynomial in `x`.
    pub fn restrict_y0(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().filter(|(&(_, j), _)| j == 0).map(|(&k, c)| (k, c.clone())).collect() }
    }

    pub fn swap_xy(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// `P(a x + b y, c x + d y)`.
    pub fn linear_change(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BiPoly {
        let r = |v: &BigInt| Rational::from_integer(v.clone());
        let f1 = BiPoly::from_terms([(1, 0, r(a)), (0, 1, r(b))]);
        let f2 = BiPoly::from_terms([(1, 0, r(c)), (0, 1, r(d))]);
        self.compose(&f1, &f2)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Integer polynomial `L * P` as an element of `Z[y][x]`, with `L` the
    /// denominator lcm.
    pub fn to_xpoly(&self) -> (XPoly, BigInt) {
        let l = self.denominator_lcm();
        let Some(dx) = self.deg_x() else {
            return (XPoly::default(), l);
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dx as usize + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[i as usize];
            if row.len() <= j as usize {
                row.resize(j as usize + 1, BigInt::zero());
            }
            row[j as usize] = (c * Rational::from_integer(l.clone())).to_integer();
        }
        (XPoly::new(rows.into_iter().map(UPoly::new).collect()), l)
    }

    pub fn from_xpoly(p: &XPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in p.coeffs().iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, Rational::from_integer(c.clone()));
            }
        }
        out
    }

    /// Polynomial in `y` alone, from a dense integer coefficient list.
    pub fn from_y_poly(p: &UPoly) -> BiPoly {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| (0, j as u32, Rational::from_integer(c.clone()))))
    }

    /// Integer-coefficient primitive form with positive leading coefficient
    /// (leading in lexicographic order on `(i, j)`).
    pub fn primitive_normalized(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let l = self.denominator_lcm();
        let scaled = self.scale(&Rational::from_integer(l));
        let g = scaled.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let mut p = scaled.scale(&Rational::new(BigInt::one(), g));
        if p.terms.values().next_back().unwrap().is_negative() {
            p = p.neg();
        }
        p
    }

    /// JSON as a list of `{"i", "j", "coefficient"}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> =
            self.terms.iter().map(|(&(i, j), c)| json!({"i": i, "j": j, "coefficient": c.to_string()})).collect();
        serde_json::Value::Array(terms)
    }
}

fn check_budget(p: &BiPoly, budget: usize) -> Result<(), SeriesError> {
    if p.num_terms() > budget {
        Err(SeriesError::BudgetExceeded { terms: p.num_terms(), budget })
    } else {
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{j}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiPoly {
    /// Graded order, lowest degree first: `x^2 - y^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if i == 0 && j == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    if mag.is_integer() {
                        write!(f, "{mag}*")?;
                    } else {
                        write!(f, "({mag})*")?;
                    }
                }
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{bipoly_gcd, resultant_x};
    use proptest::prelude::*;

    fn bp(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn quartic_map() -> (BiPoly, BiPoly) {
        (bp(&[(2, 0, 1), (0, 4, -1)]), bp(&[(0, 4, 1)]))
    }

    #[test]
    fn compose_examples() {
        let (f1, f2) = quartic_map();
        assert_eq!(BiPoly::x().compose(&f1, &f2), f1);
        let l = bp(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(l.compose(&BiPoly::x(), &BiPoly::y()), l);
        let (g1, g2) = (f1.compose(&f1, &f2), f2.compose(&f1, &f2));
        assert_eq!(BiPoly::x().compose(&g1, &g2), bp(&[(4, 0, 1), (2, 4, -2), (0, 8, 1), (0, 16, -1)]));
    }

    #[test]
    fn compose_budget_refuses_large_results() {
        let (f1, f2) = quartic_map();
        let p = bp(&[(6, 0, 1), (0, 6, 1)]);
        assert!(matches!(p.compose_budget(&f1, &f2, 5), Err(SeriesError::BudgetExceeded { .. })));
        assert!(p.compose_budget(&f1, &f2, 1000).is_ok());
    }

    #[test]
    fn orders_and_degrees() {
        let p = bp(&[(2, 0, 1), (0, 4, -1)]);
        assert_eq!(p.order(), PolyOrder::Finite(2));
        assert_eq!(BiPoly::zero().order(), PolyOrder::Infinite);
        assert!(PolyOrder::Finite(u32::MAX) < PolyOrder::Infinite);
        assert_eq!((p.degree(), p.deg_x(), p.deg_y()), (Some(4), Some(2), Some(4)));
        assert_eq!(p.restrict_y0(), bp(&[(2, 0, 1)]));
        assert_eq!(p.swap_xy(), bp(&[(0, 2, 1), (4, 0, -1)]));
    }

    #[test]
    fn exact_division() {
        let a = bp(&[(1, 0, 1), (0, 2, -1)]);
        let b = bp(&[(1, 0, 1), (0, 2, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&bp(&[(1, 0, 1), (0, 1, 1)])), None);
    }

    #[test]
    fn rendering() {
        let p = BiPoly::from_terms([(0, 6, Rational::new((-1).into(), 2.into())), (0, 2, Rational::one())]);
        assert_eq!(p.to_string(), "y^2 - (1/2)*y^6");
        assert_eq!(bp(&[(1, 0, 1), (0, 1, 1)]).to_string(), "x + y");
        let j = p.to_json();
        assert_eq!(j[1]["coefficient"], "-1/2");
        assert_eq!(j[1]["j"], 6);
    }

    fn small_poly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0..=max_deg, 0..=max_deg, -3i64..=3), 0..4)
            .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(i, j, c)| (i, j, Rational::from_integer(c.into())))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn compose_is_associative(p in small_poly(2), f1 in small_poly(2), f2 in small_poly(2), g1 in small_poly(1), g2 in small_poly(1)) {
            let h1 = f1.compose(&g1, &g2);
            let h2 = f2.compose(&g1, &g2);
            prop_assert_eq!(p.compose(&h1, &h2), p.compose(&f1, &f2).compose(&g1, &g2));
        }

        #[test]
        fn resultant_vanishes_iff_common_x_factor(a in small_poly(2), b in small_poly(2), c in small_poly(1)) {
            prop_assume!(!c.is_zero());
            let cube = BiPoly::monomial(Rational::one(), 3, 0);
            let p = a.add(&cube).mul(&c);
            let q = b.add(&cube).mul(&c);
            let r = resultant_x(&p, &q).unwrap();
            let g = bipoly_gcd(&p, &q);
            prop_assert_eq!(r.is_zero(), g.deg_x().unwrap_or(0) > 0);
        }

        #[test]
        fn xpoly_round_trip(p in small_poly(3)) {
            let (xp, l) = p.to_xpoly();
            prop_assert_eq!(BiPoly::from_xpoly(&xp), p.scale(&Rational::from_integer(l)));
        }
    }
}
