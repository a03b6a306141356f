use num_bigint::BigInt;
use num_traits::{Zero, One};

use super::bipoly::BiPoly;
use super::SeriesError;
use crate::arith::Rational;

/// Parses a polynomial in `x` and `y`.
///
/// Grammar: sums and differences of products; factors are rational
/// constants (`3`, `1/2`, `0.25`), `x`, `y`, parenthesized expressions, and
/// powers `base^n` with a nonnegative integer exponent. Juxtaposition means
/// multiplication (`2x^2y`). Division is allowed only by a nonzero constant.
///
/// ```
/// use bouquet::series::parse_bipoly;
/// let p = parse_bipoly("x^2 - y^4").unwrap();
/// assert_eq!(p.to_string(), "x^2 - y^4");
/// ```
pub fn parse_bipoly(src: &str) -> Result<BiPoly, SeriesError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> SeriesError {
        SeriesError::Parse { pos: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<BiPoly, SeriesError> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, SeriesError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.power()?;
                    if d.num_terms() > 1 || d.coeff(0, 0).is_zero() || d.num_terms() == 0 {
                        return Err(SeriesError::Parse { pos: at, message: "division by a non-constant or zero".into() });
                    }
                    acc = acc.scale(&(Rational::one() / d.coeff(0, 0)));
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() || c == b'.' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BiPoly, SeriesError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: u32 = digits
            .parse()
            .map_err(|_| SeriesError::Parse { pos: start, message: "expected a nonnegative integer exponent".into() })?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BiPoly, SeriesError> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(BiPoly::constant(self.number()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Rational, SeriesError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_part = &self.src[start..self.pos];
        let mut frac_part: &[u8] = &[];
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            frac_part = &self.src[fs..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(SeriesError::Parse { pos: start, message: "malformed number".into() });
        }
        let mut digits = Vec::with_capacity(int_part.len() + frac_part.len());
        digits.extend_from_slice(int_part);
        digits.extend_from_slice(frac_part);
        let n = BigInt::parse_bytes(&digits, 10).unwrap_or_else(BigInt::zero);
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Rational::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let p = parse_bipoly("x^2 - y^4").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[(2, 0, 1), (0, 4, -1)]));
        let q = parse_bipoly("(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(q, BiPoly::from_int_terms(&[(2, 0, 1), (0, 2, 1)]));
        let r = parse_bipoly("-1/2 y^6 + 0.25x").unwrap();
        assert_eq!(r.coeff(0, 6), Rational::new((-1).into(), 2.into()));
        assert_eq!(r.coeff(1, 0), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_bipoly("2x^2y").unwrap(), BiPoly::from_int_terms(&[(2, 1, 2)]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_bipoly("x + z") {
            Err(SeriesError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_bipoly("x/y"), Err(SeriesError::Parse { pos: 2, .. })));
        assert!(matches!(parse_bipoly("(x"), Err(SeriesError::Parse { .. })));
        assert!(matches!(parse_bipoly(""), Err(SeriesError::Parse { pos: 0, .. })));
        assert!(matches!(parse_bipoly("x^-1"), Err(SeriesError::Parse { pos: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2 - y^4", "x + y", "x^4 - 2*x^2*y^4 + y^8 - y^16", "3 + (1/2)*x*y"] {
            let p = parse_bipoly(s).unwrap();
            assert_eq!(parse_bipoly(&p.to_string()).unwrap(), p, "{s}");
        }
    }
}
