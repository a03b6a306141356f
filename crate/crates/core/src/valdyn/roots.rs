use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// The largest real root of an integer polynomial: exact when rational,
/// otherwise an isolating interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootBracket {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

/// Coefficients in ascending order; `None` when there is no real root.
///
/// The interval is refined by bisection on a Sturm chain of the squarefree
/// part until its width is below `2^-precision_bits`.
pub fn largest_real_root(coeffs: &[BigInt], precision_bits: u32) -> Option<RootBracket> {
    let p = trim(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect());
    if p.len() < 2 {
        return None;
    }
    let sq = squarefree(&p);
    let chain = sturm_chain(&sq);
    let lead = p.last().unwrap().abs();
    let bound = Rational::one() + p[..p.len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap();
    let (mut lo, hi_bound) = (-bound.clone(), bound);
    if variations(&chain, &lo) == variations(&chain, &hi_bound) {
        return None;
    }
    let mut hi = hi_bound.clone();
    let eps = Rational::new(BigInt::one(), BigInt::one() << precision_bits);
    let two = Rational::from_integer(2.into());
    let top = variations(&chain, &hi_bound);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        if variations(&chain, &mid) > top {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // rational roots of an integer polynomial have denominators dividing
    // the leading coefficient
    let lead_int = coeffs.iter().rev().find(|c| !c.is_zero()).unwrap().abs();
    let mut q = BigInt::one();
    while q <= lead_int {
        if lead_int.is_multiple_of(&q) {
            let qr = Rational::from_integer(q.clone());
            let mut num = (&lo * &qr).ceil().to_integer();
            let last = (&hi * &qr).floor().to_integer();
            while num <= last {
                let cand = Rational::new(num.clone(), q.clone());
                if cand > lo && eval(&p, &cand).is_zero() && variations(&chain, &cand) == top {
                    return Some(RootBracket::Exact(cand));
                }
                num += 1;
            }
        }
        q += 1;
    }
    Some(RootBracket::Interval { lo, hi })
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn deriv(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect()
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![Rational::zero(); a.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        q[shift] = f;
        r.pop();
    }
    q
}

fn squarefree(p: &[Rational]) -> Vec<Rational> {
    let g = gcd(p, &deriv(p));
    if g.len() <= 1 {
        p.to_vec()
    } else {
        div(p, &g)
    }
}

fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![p.to_vec(), deriv(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

// sign changes with zeros dropped, which counts roots in half-open (a, b]
fn variations(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<bool> =
        chain.iter().map(|p| eval(p, x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn rational_roots_are_exact() {
        assert_eq!(largest_real_root(&ints(&[-2, 1]), 30), Some(RootBracket::Exact(Rational::from_integer(2.into()))));
        // (t - 1)^2 (t + 3)
        assert_eq!(largest_real_root(&ints(&[3, -5, 1, 1]), 30), Some(RootBracket::Exact(Rational::one())));
        // 2t - 3
        assert_eq!(largest_real_root(&ints(&[-3, 2]), 30), Some(RootBracket::Exact(Rational::new(3.into(), 2.into()))));
        assert_eq!(largest_real_root(&ints(&[1, 0, 1]), 30), None);
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        let Some(RootBracket::Interval { lo, hi }) = largest_real_root(&ints(&[-6, 0, 1]), 40) else { panic!() };
        let six = Rational::from_integer(6.into());
        assert!(&lo * &lo < six && &hi * &hi > six);
        assert!(&hi - &lo <= Rational::new(1.into(), BigInt::one() << 40));
        // t^2 - t - 1
        let Some(RootBracket::Interval { lo, hi }) = largest_real_root(&ints(&[-1, -1, 1]), 20) else { panic!() };
        assert!(lo > Rational::new(161.into(), 100.into()) && hi < Rational::new(162.into(), 100.into()));
    }
}
