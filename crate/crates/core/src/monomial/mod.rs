//! Monomial ideals in two variables and their Samuel and mixed multiplicities.

mod staircase;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::Rational;

pub use staircase::Staircase;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("ideal is not primary to the maximal ideal: no pure {0} generator")]
    NotPrimary(char),
    #[error("second differences of the colength did not stabilize on [{lo}, {hi}]")]
    NotStabilized { lo: u64, hi: u64 },
    #[error("polarization gave the non-integer {0}")]
    NonIntegralPolarization(Rational),
}

/// An `m`-primary monomial ideal of `k[x, y]`, stored as its minimal
/// generators `(i, j)` for `x^i y^j`, sorted by increasing `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal2 {
    gens: Vec<(u64, u64)>,
}

impl MonomialIdeal2 {
    pub fn minimalize(gens: &[(u64, u64)]) -> Result<Self, MonomialError> {
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        // after sorting by (i, j), a generator survives iff its j is below
        // every j seen so far
        let mut min: Vec<(u64, u64)> = Vec::new();
        for (i, j) in sorted {
            if min.last().is_none_or(|&(_, lj)| j < lj) {
                min.push((i, j));
            }
        }
        if min.first().is_none_or(|&(i, _)| i != 0) {
            return Err(MonomialError::NotPrimary('y'));
        }
        if min.last().is_none_or(|&(_, j)| j != 0) {
            return Err(MonomialError::NotPrimary('x'));
        }
        Ok(MonomialIdeal2 { gens: min })
    }

    /// The maximal ideal `(x, y)`.
    pub fn maximal() -> Self {
        MonomialIdeal2 { gens: vec![(0, 1), (1, 0)] }
    }

    /// `m^k`.
    pub fn maximal_power(k: u64) -> Self {
        assert!(k >= 1);
        MonomialIdeal2 { gens: (0..=k).map(|i| (i, k - i)).collect() }
    }

    /// Parses `x^2, x*y, y^3`; every generator must be a single monomial.
    pub fn parse(src: &str) -> Result<Self, String> {
        let mut exps = Vec::new();
        for part in crate::intersect::split_top_level(src.trim().trim_start_matches('(').trim_end_matches(')')) {
            let p = crate::series::parse_bipoly(part).map_err(|e| format!("{part}: {e}"))?;
            if p.num_terms() != 1 {
                return Err(format!("{part}: not a monomial"));
            }
            let (i, j, _) = p.terms().next().unwrap();
            exps.push((u64::from(i), u64::from(j)));
        }
        MonomialIdeal2::minimalize(&exps).map_err(|e| e.to_string())
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.gens
    }

    /// `x^i y^j` belongs to the ideal.
    pub fn contains(&self, i: u64, j: u64) -> bool {
        self.gens.iter().any(|&(a, b)| a <= i && b <= j)
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal2) -> bool {
        self.gens.iter().all(|&(i, j)| other.contains(i, j))
    }

    pub fn staircase(&self) -> Staircase {
        Staircase::of(&self.gens)
    }

    /// `e(I) = 2 * covolume`.
    pub fn samuel(&self) -> u64 {
        self.staircase().doubled_covolume()
    }

    /// Number of monomials outside `I`.
    pub fn colength(&self) -> u64 {
        self.gens.windows(2).map(|w| w[1].0 * (w[0].1 - w[1].1)).sum()
    }

    /// Number of monomials outside `I^n`.
    ///
    /// `h[u]` is the least `v` with `x^u y^v` in `I^k`, built up one factor
    /// at a time.
    pub fn colength_power(&self, n: u64) -> u64 {
        assert!(n >= 1);
        let width = (n * self.x_pure()) as usize;
        let mut h = vec![0u64; width + 1];
        for _ in 0..n {
            let mut next = vec![u64::MAX; width + 1];
            for (u, slot) in next.iter_mut().enumerate() {
                for &(a, b) in &self.gens {
                    if a as usize <= u {
                        *slot = (*slot).min(b + h[u - a as usize]);
                    }
                }
            }
            h = next;
        }
        h[..width].iter().sum()
    }

    /// `e(I)` from exact second differences of `n -> colength(I^n)` on
    /// `[n_lo, n_hi]`; the last two differences must agree.
    pub fn hilbert_samuel_fit(&self, n_lo: u64, n_hi: u64) -> Result<u64, MonomialError> {
        let lo = n_lo.max(1);
        if n_hi < lo + 3 {
            return Err(MonomialError::NotStabilized { lo: n_lo, hi: n_hi });
        }
        let ell: Vec<i128> = (lo..=n_hi).map(|n| self.colength_power(n) as i128).collect();
        let second: Vec<i128> = ell.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect();
        let k = second.len();
        if second[k - 1] != second[k - 2] || second[k - 1] <= 0 {
            return Err(MonomialError::NotStabilized { lo: n_lo, hi: n_hi });
        }
        Ok(second[k - 1] as u64)
    }

    pub fn product(&self, other: &MonomialIdeal2) -> MonomialIdeal2 {
        let sums: Vec<(u64, u64)> =
            self.gens.iter().flat_map(|&(a, b)| other.gens.iter().map(move |&(c, d)| (a + c, b + d))).collect();
        MonomialIdeal2::minimalize(&sums).expect("product of primary ideals is primary")
    }

    pub fn power(&self, n: u64) -> MonomialIdeal2 {
        assert!(n >= 1);
        (1..n).fold(self.clone(), |acc, _| acc.product(self))
    }

    /// `e(I; J) = (e(IJ) - e(I) - e(J)) / 2`.
    pub fn mixed(&self, other: &MonomialIdeal2) -> Result<u64, MonomialError> {
        let total = self.product(other).samuel() as i128 - self.samuel() as i128 - other.samuel() as i128;
        if total % 2 != 0 || total < 0 {
            return Err(MonomialError::NonIntegralPolarization(Rational::new(total.into(), 2.into())));
        }
        Ok((total / 2) as u64)
    }

    /// `e(I; J)^2 <= e(I) e(J)`.
    pub fn minkowski_check(&self, other: &MonomialIdeal2) -> Result<bool, MonomialError> {
        let m = self.mixed(other)? as u128;
        Ok(m * m <= self.samuel() as u128 * other.samuel() as u128)
    }

    /// Least `s` with `m^s ⊆ I`.
    pub fn containment_index(&self) -> u64 {
        (1..).find(|&s| (0..=s).all(|u| self.contains(u, s - u))).unwrap()
    }

    /// A seeded random `m`-primary ideal with exponents at most `max_exp`.
    pub fn random(seed: u64, max_exp: u64) -> MonomialIdeal2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_exp = max_exp.max(1);
        let mut exps = vec![(rng.gen_range(1..=max_exp), 0), (0, rng.gen_range(1..=max_exp))];
        for _ in 0..rng.gen_range(0..4) {
            exps.push((rng.gen_range(1..=max_exp), rng.gen_range(1..=max_exp)));
        }
        MonomialIdeal2::minimalize(&exps).expect("pure powers present")
    }

    fn x_pure(&self) -> u64 {
        self.gens.last().unwrap().0
    }
}

impl fmt::Display for MonomialIdeal2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |&(i, j): &(u64, u64)| -> String {
            let var = |v: char, e: u64| match e {
                0 => None,
                1 => Some(v.to_string()),
                _ => Some(format!("{v}^{e}")),
            };
            let parts: Vec<String> = [var('x', i), var('y', j)].into_iter().flatten().collect();
            parts.join("*")
        };
        let gens: Vec<String> = self.gens.iter().rev().map(mono).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `e(m^k)`, used for the growth chain `e(I^n) = n^2 e(I) <= n^2 r^2`.
pub fn samuel_of_maximal_power(k: u64) -> u64 {
    k * k
}

/// Exact covolume as a rational.
pub fn covolume(i: &MonomialIdeal2) -> Rational {
    Rational::new(i.samuel().into(), 2.into())
}

/// Checks `e(I^n) = n^2 e(I)` for `n = 1..=n_max`.
pub fn power_scaling_holds(i: &MonomialIdeal2, n_max: u64) -> bool {
    (1..=n_max).all(|n| i.power(n).samuel() == n * n * i.samuel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(g: &[(u64, u64)]) -> MonomialIdeal2 {
        MonomialIdeal2::minimalize(g).unwrap()
    }

    // monomials outside I^n, by enumeration of all n-fold generator sums
    fn brute_colength(i: &MonomialIdeal2, n: u64) -> u64 {
        let mut sums = vec![(0u64, 0u64)];
        for _ in 0..n {
            sums = sums.iter().flat_map(|&(a, b)| i.generators().iter().map(move |&(c, d)| (a + c, b + d))).collect();
        }
        let bound = n * i.generators().iter().map(|g| g.0.max(g.1)).max().unwrap();
        let mut count = 0;
        for u in 0..=bound {
            for v in 0..=bound {
                if !sums.iter().any(|&(a, b)| a <= u && b <= v) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn minimal_generators() {
        assert_eq!(ideal(&[(2, 0), (0, 3), (2, 1)]).generators(), &[(0, 3), (2, 0)]);
        assert_eq!(ideal(&[(1, 0), (0, 1)]), MonomialIdeal2::maximal());
        assert_eq!(ideal(&[(3, 0), (2, 1), (1, 3), (0, 4)]).generators().len(), 4);
        assert_eq!(MonomialIdeal2::minimalize(&[(2, 0), (1, 1)]), Err(MonomialError::NotPrimary('y')));
        assert_eq!(MonomialIdeal2::minimalize(&[(0, 2), (1, 1)]), Err(MonomialError::NotPrimary('x')));
        assert_eq!(MonomialIdeal2::parse("x^2, y^3, x^2*y").unwrap(), ideal(&[(2, 0), (0, 3)]));
        assert_eq!(ideal(&[(3, 0), (2, 1), (1, 3), (0, 4)]).to_string(), "(x^3, x^2*y, x*y^3, y^4)");
    }

    #[test]
    fn samuel_values() {
        let m = MonomialIdeal2::maximal();
        let ci = ideal(&[(2, 0), (0, 3)]);
        assert_eq!(m.samuel(), 1);
        assert_eq!(ci.samuel(), 6);
        assert_eq!(ci.colength(), 6);
        let prod = m.product(&ci);
        assert_eq!(prod, ideal(&[(3, 0), (2, 1), (1, 3), (0, 4)]));
        assert_eq!(prod.samuel(), 11);
        assert_eq!(covolume(&prod), Rational::new(11.into(), 2.into()));
        assert_eq!(m.product(&m), MonomialIdeal2::maximal_power(2));
    }

    #[test]
    fn colengths_of_powers() {
        let m = MonomialIdeal2::maximal();
        let ci = ideal(&[(2, 0), (0, 3)]);
        assert_eq!(m.colength_power(3), 6);
        assert_eq!(ci.colength_power(1), 6);
        assert_eq!(ci.colength_power(2), 18);
        assert_eq!(brute_colength(&ci, 2), 18);
        for seed in 0..10 {
            let i = MonomialIdeal2::random(seed, 5);
            for n in 1..=3 {
                assert_eq!(i.colength_power(n), brute_colength(&i, n), "{i} n = {n}");
            }
        }
    }

    #[test]
    fn hilbert_samuel_agrees_with_staircase() {
        assert_eq!(MonomialIdeal2::maximal().hilbert_samuel_fit(1, 4), Ok(1));
        assert_eq!(ideal(&[(2, 0), (0, 3)]).hilbert_samuel_fit(1, 5), Ok(6));
        assert!(matches!(MonomialIdeal2::maximal().hilbert_samuel_fit(3, 5), Err(MonomialError::NotStabilized { .. })));
        for seed in 0..20 {
            let i = MonomialIdeal2::random(seed, 6);
            assert_eq!(i.hilbert_samuel_fit(8, 14), Ok(i.samuel()), "{i}");
        }
    }

    #[test]
    fn mixed_and_minkowski() {
        let m = MonomialIdeal2::maximal();
        let ci = ideal(&[(2, 0), (0, 3)]);
        assert_eq!(m.mixed(&m), Ok(1));
        assert_eq!(m.mixed(&ci), Ok(2));
        assert_eq!(ci.mixed(&ci), Ok(ci.samuel()));
        assert_eq!(m.minkowski_check(&ci), Ok(true));
        let i = MonomialIdeal2::random(4, 6);
        assert_eq!(i.mixed(&i).unwrap().pow(2), i.samuel() * i.samuel());
    }

    #[test]
    fn containment() {
        assert_eq!(MonomialIdeal2::maximal().containment_index(), 1);
        assert_eq!(ideal(&[(2, 0), (0, 4)]).containment_index(), 5);
        for k in 1..6 {
            assert_eq!(MonomialIdeal2::maximal_power(k).containment_index(), k);
        }
    }

    #[test]
    fn growth_chain_for_maximal_powers() {
        for k in 1..5 {
            let i = MonomialIdeal2::maximal_power(k);
            assert_eq!(i.samuel(), samuel_of_maximal_power(k));
            assert!(power_scaling_holds(&i, 4));
            for n in 1..5 {
                assert!(i.power(n).samuel() <= n * n * k * k);
            }
        }
    }

    proptest! {
        #[test]
        fn polarization_identity(a in any::<u64>(), b in any::<u64>()) {
            let i = MonomialIdeal2::random(a, 7);
            let j = MonomialIdeal2::random(b, 7);
            let e = i.mixed(&j).unwrap();
            prop_assert_eq!(j.mixed(&i).unwrap(), e);
            prop_assert_eq!(i.product(&j).samuel(), i.samuel() + 2 * e + j.samuel());
            prop_assert!(i.minkowski_check(&j).unwrap());
            prop_assert_eq!(covolume(&i) * Rational::from_integer(2.into()), Rational::from_integer(i.samuel().into()));
        }

        #[test]
        fn monotone_under_inclusion(a in any::<u64>(), extra in (1u64..6, 1u64..6)) {
            let i = MonomialIdeal2::random(a, 7);
            let mut bigger: Vec<(u64, u64)> = i.generators().to_vec();
            bigger.push(extra);
            let j = MonomialIdeal2::minimalize(&bigger).unwrap();
            prop_assert!(i.is_subset_of(&j));
            prop_assert!(i.samuel() >= j.samuel());
            prop_assert!(i.colength() >= j.colength());
        }

        #[test]
        fn staircase_covolume_bound(a in any::<u64>()) {
            let i = MonomialIdeal2::random(a, 7);
            let half = Rational::new(1.into(), 2.into());
            prop_assert!(covolume(&i) >= half);
            prop_assert_eq!(covolume(&i) == half, i == MonomialIdeal2::maximal());
        }
    }
}
