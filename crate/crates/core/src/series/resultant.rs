use num_bigint::BigInt;
use num_traits::One;

use super::bipoly::BiPoly;
use super::upoly::{UPoly, XPoly};
use super::SeriesError;
use crate::arith::Rational;

/// Resultant eliminating `x`, as a polynomial in `y` alone.
///
/// Coefficients are cleared to integers, the Sylvester determinant is taken
/// over `Z[y]` by Bareiss elimination, and the denominators are restored, so
/// the result is the exact resultant of the rational inputs.
pub fn resultant_x(p: &BiPoly, q: &BiPoly) -> Result<BiPoly, SeriesError> {
    if p.is_zero() || q.is_zero() {
        return Err(SeriesError::ZeroPolynomial);
    }
    let (pi, lp) = p.to_xpoly();
    let (qi, lq) = q.to_xpoly();
    let r = resultant_x_int(&pi, &qi)?;
    let dp = pi.degree().unwrap() as u32;
    let dq = qi.degree().unwrap() as u32;
    let denom = num_traits::pow(lp, dq as usize) * num_traits::pow(lq, dp as usize);
    Ok(BiPoly::from_y_poly(&r).scale(&Rational::new(BigInt::one(), denom)))
}

/// Resultant in `x` of two elements of `Z[y][x]`.
pub fn resultant_x_int(p: &XPoly, q: &XPoly) -> Result<UPoly, SeriesError> {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Err(SeriesError::ZeroPolynomial);
    };
    if m == 0 {
        return Ok(p.lead().pow(n));
    }
    if n == 0 {
        return Ok(q.lead().pow(m));
    }
    Ok(bareiss_det(sylvester(p, q)))
}

/// Sylvester matrix with rows of descending powers of `x`.
fn sylvester(p: &XPoly, q: &XPoly) -> Vec<Vec<UPoly>> {
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(p, m, n), (q, n, m)] {
        for r in 0..copies {
            let mut row = vec![UPoly::zero(); size];
            for k in 0..=deg {
                row[r + deg - k] = poly.coeffs()[k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free determinant over `Z[y]`; every division is exact.
fn bareiss_det(mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    let mut negate = false;
    let mut prev = UPoly::constant(BigInt::one());
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return UPoly::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Order in `y` of the resultant, `None` when it vanishes identically.
pub fn resultant_order_y(p: &BiPoly, q: &BiPoly) -> Result<Option<usize>, SeriesError> {
    let (pi, _) = p.to_xpoly();
    let (qi, _) = q.to_xpoly();
    let r = resultant_x_int(&pi, &qi)?;
    Ok(if r.is_zero() { None } else { r.order() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn y_only(r: &BiPoly) -> Vec<(u32, Rational)> {
        r.terms().map(|(i, j, c)| {
            assert_eq!(i, 0);
            (j, c.clone())
        })
        .collect()
    }

    #[test]
    fn small_resultants() {
        let x = bp(&[(1, 0, 1)]);
        let r = resultant_x(&x, &bp(&[(1, 0, 1), (0, 1, -1)])).unwrap();
        let t = y_only(&r);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].0, 1);
        assert!(t[0].1.is_one() || (-&t[0].1).is_one());

        let r = resultant_x(&bp(&[(2, 0, 1), (0, 3, -1)]), &x).unwrap();
        let t = y_only(&r);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].0, 3);

        let p = bp(&[(2, 0, 1), (1, 1, 3), (0, 5, -2)]);
        assert!(resultant_x(&p, &p).unwrap().is_zero());
        assert!(matches!(resultant_x(&p, &BiPoly::zero()), Err(SeriesError::ZeroPolynomial)));
    }

    #[test]
    fn rational_inputs_scale_correctly() {
        // Res_x(p, x - 1) is p(1, y) up to sign
        let p = BiPoly::from_terms([(1, 0, Rational::new(1.into(), 2.into())), (0, 1, Rational::from_integer((-1).into()))]);
        let q = bp(&[(1, 0, 1), (0, 0, -1)]);
        let r = resultant_x(&p, &q).unwrap();
        let expected = p.compose(&BiPoly::one(), &BiPoly::y());
        assert!(r == expected || r == expected.neg());
    }

    #[test]
    fn degree_zero_operand() {
        let p = bp(&[(0, 2, 1)]);
        let q = bp(&[(3, 0, 1), (0, 1, 1)]);
        let r = resultant_x(&p, &q).unwrap();
        assert_eq!(y_only(&r), vec![(6, Rational::one())]);
    }
}
