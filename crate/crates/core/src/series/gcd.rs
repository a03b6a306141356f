use super::bipoly::BiPoly;

/// Greatest common divisor over the rationals: integer coefficients,
/// primitive, positive leading coefficient. `gcd(0, 0) = 0`.
pub fn bipoly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.primitive_normalized();
    }
    if q.is_zero() {
        return p.primitive_normalized();
    }
    let (pi, _) = p.to_xpoly();
    let (qi, _) = q.to_xpoly();
    BiPoly::from_xpoly(&pi.gcd(&qi)).primitive_normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn examples() {
        let xy = bp(&[(1, 1, 1)]);
        let x_xy = bp(&[(2, 0, 1), (1, 1, 1)]);
        assert_eq!(bipoly_gcd(&xy, &x_xy), BiPoly::x());

        let p = bp(&[(2, 0, -4), (0, 3, 2)]);
        assert_eq!(bipoly_gcd(&p, &BiPoly::zero()), bp(&[(2, 0, 2), (0, 3, -1)]));

        let f1 = bp(&[(2, 0, 1), (0, 4, -1)]);
        let f2 = bp(&[(0, 4, 1)]);
        assert_eq!(bipoly_gcd(&f1, &f2), BiPoly::one());
    }

    #[test]
    fn common_factor_in_y_is_found() {
        // (y^2 + 1)(x - y) and (y^2 + 1)(x + 3)
        let c = bp(&[(0, 2, 1), (0, 0, 1)]);
        let a = c.mul(&bp(&[(1, 0, 1), (0, 1, -1)]));
        let b = c.mul(&bp(&[(1, 0, 1), (0, 0, 3)]));
        assert_eq!(bipoly_gcd(&a, &b), c);
    }
}
