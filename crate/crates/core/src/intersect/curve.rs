use std::fmt;

use num_traits::Zero;

use super::IntersectError;
use crate::arith::Dyadic;
use crate::series::{bipoly_gcd, parse_bipoly, resultant_x, BiPoly, USeries};

/// A plane curve through the origin, given by its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    poly: BiPoly,
    reduced: bool,
}

impl PlaneCurve {
    pub fn new(poly: BiPoly) -> Result<Self, IntersectError> {
        if poly.is_zero() {
            return Err(IntersectError::DegenerateInput);
        }
        if !poly.constant_term().is_zero() {
            return Err(IntersectError::NotThroughOrigin(poly.to_string()));
        }
        Ok(PlaneCurve { poly, reduced: false })
    }

    pub fn parse(src: &str) -> Result<Self, IntersectError> {
        PlaneCurve::new(parse_bipoly(src)?)
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Squarefree, primitive defining polynomial: `P / gcd(P, P_x, P_y)`.
    pub fn reduced(&self) -> PlaneCurve {
        let g = bipoly_gcd(&self.poly, &bipoly_gcd(&self.poly.deriv_x(), &self.poly.deriv_y()));
        let p = self.poly.div_exact(&g).expect("gcd divides").primitive_normalized();
        PlaneCurve { poly: p, reduced: true }
    }
}

/// The graph `x - g(y) = 0` of a truncated series.
pub fn graph_poly(g: &USeries<Dyadic>) -> BiPoly {
    let mut p = BiPoly::x();
    for (k, c) in g.coeffs().iter().enumerate() {
        p.add_term(0, k as u32, -c.to_rational());
    }
    p
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = 0}}", self.poly)
    }
}

/// A polynomial map germ `(x, y) -> (f1, f2)` fixing the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    f1: BiPoly,
    f2: BiPoly,
}

impl MapGerm {
    /// Validates `f(0) = 0` and the finiteness certificate: coprime
    /// components whose resultant in `x` is not identically zero.
    pub fn new(f1: BiPoly, f2: BiPoly) -> Result<Self, IntersectError> {
        if f1.is_zero() || f2.is_zero() {
            return Err(IntersectError::NotFinite("a component is identically zero".into()));
        }
        for f in [&f1, &f2] {
            if !f.constant_term().is_zero() {
                return Err(IntersectError::NotThroughOrigin(f.to_string()));
            }
        }
        let g = bipoly_gcd(&f1, &f2);
        if g.degree() != Some(0) {
            return Err(IntersectError::NotFinite(format!("components share the factor {g}")));
        }
        // a component free of x is its own resultant power
        let r = resultant_x(&f1, &f2).map_err(|_| IntersectError::DegenerateInput)?;
        if r.is_zero() {
            return Err(IntersectError::NotFinite("resultant vanishes identically".into()));
        }
        Ok(MapGerm { f1, f2 })
    }

    pub fn identity() -> Self {
        MapGerm { f1: BiPoly::x(), f2: BiPoly::y() }
    }

    /// `(x^2 - y^4, y^4)`.
    pub fn quartic_example() -> Self {
        MapGerm::new(BiPoly::from_int_terms(&[(2, 0, 1), (0, 4, -1)]), BiPoly::from_int_terms(&[(0, 4, 1)]))
            .expect("finite map")
    }

    /// Parses `(f1, f2)`.
    pub fn parse(src: &str) -> Result<Self, IntersectError> {
        let inner = src.trim();
        let inner = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(inner);
        let parts = split_top_level(inner);
        if parts.len() != 2 {
            return Err(IntersectError::Syntax(format!("a map needs two components, got {}", parts.len())));
        }
        MapGerm::new(parse_bipoly(parts[0])?, parse_bipoly(parts[1])?)
    }

    pub fn components(&self) -> (&BiPoly, &BiPoly) {
        (&self.f1, &self.f2)
    }

    /// `self o other`, refusing results above `budget` terms.
    pub fn compose(&self, other: &MapGerm, budget: usize) -> Result<MapGerm, IntersectError> {
        let f1 = self.f1.compose_budget(&other.f1, &other.f2, budget)?;
        let f2 = self.f2.compose_budget(&other.f1, &other.f2, budget)?;
        Ok(MapGerm { f1, f2 })
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// Splits on commas outside parentheses.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(src[start..].trim());
    parts
}

/// Parses a comma-separated list of polynomials such as `x^2, y^3`.
pub fn parse_generators(src: &str) -> Result<Vec<BiPoly>, IntersectError> {
    let inner = src.trim();
    let inner = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(inner);
    split_top_level(inner).into_iter().map(|p| parse_bipoly(p).map_err(IntersectError::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_validation() {
        let f = MapGerm::parse("(x^2 - y^4, y^4)").unwrap();
        assert_eq!(f, MapGerm::quartic_example());
        assert!(matches!(MapGerm::parse("(x*y, x*(x+y))"), Err(IntersectError::NotFinite(_))));
        assert!(matches!(MapGerm::parse("(x + 1, y)"), Err(IntersectError::NotThroughOrigin(_))));
        assert!(matches!(MapGerm::parse("(x)"), Err(IntersectError::Syntax(_))));
        assert!(MapGerm::parse("(y^2, x^3)").is_ok());
    }

    #[test]
    fn reduction_removes_repeated_factors() {
        let c = PlaneCurve::parse("(x - y^2)^2 * (x + y)").unwrap();
        let r = c.reduced();
        assert!(r.is_reduced());
        assert_eq!(r.poly(), &parse_bipoly("(x - y^2) * (x + y)").unwrap().primitive_normalized());
    }

    #[test]
    fn generator_lists() {
        let g = parse_generators("x^2, (x + y)^2, y^3").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(parse_generators("(x, y)").unwrap(), vec![BiPoly::x(), BiPoly::y()]);
    }
}
