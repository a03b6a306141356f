use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GenericSampler, IntersectError, PlaneCurve};
use crate::arith::Rational;
use crate::series::{bipoly_gcd, resultant_order_y, BiPoly, PolyOrder};

/// Random coordinate changes tried before giving up on a certificate.
pub const MAX_DRAWS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(v) => Some(v),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(v) => write!(f, "{v}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

/// How a multiplicity was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// A curve misses the origin.
    Unit,
    /// Common component through the origin.
    CommonComponent,
    /// One curve is a graph over an axis; the other is restricted to it.
    Graph,
    /// Resultant order with a localization certificate, after `draws`
    /// random coordinate changes.
    Resultant { draws: usize },
    /// No certificate within [`MAX_DRAWS`] draws; the minimum resultant
    /// order seen, an upper bound.
    Uncertified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultReport {
    pub value: Multiplicity,
    pub method: Method,
}

impl MultReport {
    pub fn certified(&self) -> bool {
        self.method != Method::Uncertified
    }

    fn exact(value: Multiplicity, method: Method) -> Self {
        MultReport { value, method }
    }
}

/// Local intersection multiplicity `i_0(P, Q)` of the curves `P = 0`, `Q = 0`.
///
/// ```
/// use bouquet::intersect::{local_mult, GenericSampler, Multiplicity};
/// use bouquet::series::parse_bipoly;
/// let mut s = GenericSampler::new(1);
/// let p = parse_bipoly("y - x^2").unwrap();
/// let r = local_mult(&p, &parse_bipoly("y").unwrap(), &mut s).unwrap();
/// assert_eq!(r.value, Multiplicity::Finite(2));
/// ```
pub fn local_mult(p: &BiPoly, q: &BiPoly, sampler: &mut GenericSampler) -> Result<MultReport, IntersectError> {
    if p.is_zero() || q.is_zero() {
        return Err(IntersectError::DegenerateInput);
    }
    if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
        return Ok(MultReport::exact(Multiplicity::Finite(0), Method::Unit));
    }
    let (ps, qs) = (p.swap_xy(), q.swap_xy());
    for (a, b) in [(p, q), (q, p), (&ps, &qs), (&qs, &ps)] {
        if let Some(v) = graph_mult(a, b) {
            let method = if v == Multiplicity::Infinite { Method::CommonComponent } else { Method::Graph };
            return Ok(MultReport::exact(v, method));
        }
    }

    let g = bipoly_gcd(p, q);
    let (p, q) = if g.degree() == Some(0) {
        (p.clone(), q.clone())
    } else if g.constant_term().is_zero() {
        return Ok(MultReport::exact(Multiplicity::Infinite, Method::CommonComponent));
    } else {
        (p.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides"))
    };

    if let Some(v) = certified_order(&p, &q).or_else(|| certified_order(&p.swap_xy(), &q.swap_xy())) {
        return Ok(MultReport::exact(v, Method::Resultant { draws: 0 }));
    }
    let mut seen = Vec::with_capacity(MAX_DRAWS);
    for draw in 1..=MAX_DRAWS {
        let (a, b) = (BigInt::from(sampler.draw()), BigInt::from(sampler.draw()));
        let top = BigInt::one() + &a * &b;
        let one = BigInt::one();
        let pa = p.linear_change(&top, &a, &b, &one);
        let qa = q.linear_change(&top, &a, &b, &one);
        if let Some(v) = certified_order(&pa, &qa) {
            return Ok(MultReport::exact(v, Method::Resultant { draws: draw }));
        }
        seen.push(order_of_resultant(&pa, &qa));
    }
    let value = seen.into_iter().min().expect("at least one draw");
    Ok(MultReport { value, method: Method::Uncertified })
}

/// [`local_mult`] on validated curves.
pub fn local_mult_curves(
    p: &PlaneCurve,
    q: &PlaneCurve,
    sampler: &mut GenericSampler,
) -> Result<MultReport, IntersectError> {
    local_mult(p.poly(), q.poly(), sampler)
}

/// `P = c x + p0(y)` with `c` constant: `i_0 = ord_y Q(-p0(y)/c, y)`.
fn graph_mult(p: &BiPoly, q: &BiPoly) -> Option<Multiplicity> {
    if p.deg_x() != Some(1) || p.terms().any(|(i, j, _)| i == 1 && j > 0) {
        return None;
    }
    let c = p.coeff(1, 0);
    let p0 = p.sub(&BiPoly::monomial(c.clone(), 1, 0));
    let root = p0.scale(&(-Rational::one() / c));
    Some(match q.compose(&root, &BiPoly::y()).order() {
        PolyOrder::Finite(k) => Multiplicity::Finite(k.into()),
        PolyOrder::Infinite => Multiplicity::Infinite,
    })
}

fn lc_x_is_constant(p: &BiPoly) -> bool {
    match p.deg_x() {
        Some(d) => p.terms().all(|(i, j, _)| i < d || j == 0),
        None => false,
    }
}

/// `ord_y Res_x(P, Q)` when it provably equals `i_0(P, Q)`: one leading
/// coefficient in `x` is a nonzero constant, so no intersection escapes to
/// infinity over `y = 0`, and `P(x, 0)`, `Q(x, 0)` share no root besides `0`.
fn certified_order(p: &BiPoly, q: &BiPoly) -> Option<Multiplicity> {
    if !lc_x_is_constant(p) && !lc_x_is_constant(q) {
        return None;
    }
    if bipoly_gcd(&p.restrict_y0(), &q.restrict_y0()).num_terms() != 1 {
        return None;
    }
    Some(order_of_resultant(p, q))
}

fn order_of_resultant(p: &BiPoly, q: &BiPoly) -> Multiplicity {
    match resultant_order_y(p, q).expect("nonzero inputs") {
        Some(k) => Multiplicity::Finite(k as u64),
        None => Multiplicity::Infinite,
    }
}
