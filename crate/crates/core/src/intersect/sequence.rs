use num_bigint::BigInt;

use super::{local_mult, GenericSampler, IntersectError, MapGerm, MultReport, Multiplicity, PlaneCurve};
use crate::arith::Rational;
use crate::monomial::MonomialIdeal2;
use crate::series::{BiPoly, SeriesError};

/// Default cap on the number of terms of any composed polynomial.
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

/// `{P o F = 0}`.
pub fn pullback(f: &MapGerm, c: &PlaneCurve, budget: usize) -> Result<PlaneCurve, IntersectError> {
    let (f1, f2) = f.components();
    PlaneCurve::new(c.poly().compose_budget(f1, f2, budget)?)
}

/// `z_1 psi_1 + ... + z_m psi_m`.
pub fn generic_member(generators: &[BiPoly], z: &[BigInt]) -> Result<BiPoly, IntersectError> {
    if generators.len() != z.len() {
        return Err(IntersectError::Arity { expected: generators.len(), got: z.len() });
    }
    Ok(generators
        .iter()
        .zip(z)
        .fold(BiPoly::zero(), |acc, (g, c)| acc.add(&g.scale(&Rational::from_integer(c.clone())))))
}

/// `mu(n) = i_0(f^{n*} D_z, D_w)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSequence {
    pub values: Vec<u64>,
    /// First `n` with a common component; the sequence stops before it.
    pub infinite_at: Option<usize>,
    /// Every value carries a localization certificate.
    pub certified: bool,
}

pub fn mu_sequence(
    f: &MapGerm,
    generators: &[BiPoly],
    z: &[BigInt],
    w: &[BigInt],
    n_max: usize,
    sampler: &mut GenericSampler,
    budget: usize,
) -> Result<MuSequence, IntersectError> {
    let dz = generic_member(generators, z)?;
    let dw = generic_member(generators, w)?;
    if dz.is_zero() || dw.is_zero() {
        return Err(IntersectError::DegenerateInput);
    }
    let over_budget = |completed: usize, e: SeriesError| match e {
        SeriesError::BudgetExceeded { terms, budget } => IntersectError::BudgetExceeded { completed, terms, budget },
        other => other.into(),
    };
    let mut out = MuSequence { values: Vec::with_capacity(n_max + 1), infinite_at: None, certified: true };
    let mut iterate = MapGerm::identity();
    for n in 0..=n_max {
        if n > 0 {
            let (f1, f2) = f.components();
            let (g1, g2) = iterate.components();
            let next1 = f1.compose_budget(g1, g2, budget).map_err(|e| over_budget(n - 1, e))?;
            let next2 = f2.compose_budget(g1, g2, budget).map_err(|e| over_budget(n - 1, e))?;
            iterate = MapGerm::new(next1, next2)?;
        }
        let (g1, g2) = iterate.components();
        let pulled = dz.compose_budget(g1, g2, budget).map_err(|e| over_budget(n.saturating_sub(1), e))?;
        let MultReport { value, method } = local_mult(&pulled, &dw, sampler)?;
        out.certified &= method != super::Method::Uncertified;
        match value {
            Multiplicity::Finite(v) => out.values.push(v),
            Multiplicity::Infinite => {
                out.infinite_at = Some(n);
                break;
            }
        }
    }
    Ok(out)
}

/// Samuel multiplicity of the ideal generated by `generators`, as the common
/// intersection number of `trials` pairs of generic members.
///
/// Monomial generators are first checked to define an `m`-primary ideal.
pub fn samuel_via_generic(
    generators: &[BiPoly],
    sampler: &mut GenericSampler,
    trials: usize,
) -> Result<u64, IntersectError> {
    if generators.iter().all(|g| g.num_terms() == 1) {
        let exps: Vec<(u64, u64)> = generators
            .iter()
            .flat_map(|g| g.terms().map(|(i, j, _)| (u64::from(i), u64::from(j))).collect::<Vec<_>>())
            .collect();
        MonomialIdeal2::minimalize(&exps)?;
    }
    let mut values = Vec::with_capacity(trials);
    for _ in 0..trials.max(1) {
        let z: Vec<BigInt> = sampler.draw_vector(generators.len()).into_iter().map(BigInt::from).collect();
        let w: Vec<BigInt> = sampler.draw_vector(generators.len()).into_iter().map(BigInt::from).collect();
        let r = local_mult(&generic_member(generators, &z)?, &generic_member(generators, &w)?, sampler)?;
        values.push(r.value);
    }
    match values[0] {
        Multiplicity::Finite(v) if values.iter().all(|x| *x == values[0]) => Ok(v),
        _ => Err(IntersectError::GenericityFailure { values: values.iter().map(|v| v.to_string()).collect() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::parse_generators;
    use crate::series::parse_bipoly;

    fn lines() -> Vec<BiPoly> {
        vec![BiPoly::x(), BiPoly::y()]
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn pullbacks() {
        let f = MapGerm::quartic_example();
        let axis = PlaneCurve::parse("x").unwrap();
        let once = pullback(&f, &axis, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(once.poly(), &parse_bipoly("x^2 - y^4").unwrap());
        let twice = pullback(&f, &once, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(twice.poly(), &parse_bipoly("x^4 - 2*x^2*y^4 + y^8 - y^16").unwrap());
        let c = PlaneCurve::parse("y^2 - x^3 + x*y").unwrap();
        assert_eq!(pullback(&MapGerm::identity(), &c, DEFAULT_TERM_BUDGET).unwrap(), c);
        assert!(matches!(pullback(&f, &once, 3), Err(IntersectError::Series(SeriesError::BudgetExceeded { .. }))));
    }

    #[test]
    fn doubling_for_the_model_map() {
        let mut s = GenericSampler::new(7);
        let z = s.draw_vector(2).into_iter().map(BigInt::from).collect::<Vec<_>>();
        let w = s.draw_vector(2).into_iter().map(BigInt::from).collect::<Vec<_>>();
        let mu = mu_sequence(&MapGerm::quartic_example(), &lines(), &z, &w, 5, &mut s, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(mu.values, vec![1, 2, 4, 8, 16, 32]);
        assert!(mu.certified);
        assert_eq!(mu.infinite_at, None);
    }

    #[test]
    fn identity_and_ideals() {
        let mut s = GenericSampler::new(3);
        let mu = mu_sequence(&MapGerm::identity(), &lines(), &ints(&[2, 3]), &ints(&[5, -1]), 4, &mut s, 1000).unwrap();
        assert_eq!(mu.values, vec![1; 5]);
        let gens = parse_generators("x^2, y^3").unwrap();
        let mu = mu_sequence(&MapGerm::quartic_example(), &gens, &ints(&[3, 7]), &ints(&[-2, 9]), 0, &mut s, 1000).unwrap();
        assert_eq!(mu.values, vec![6]);
    }

    #[test]
    fn common_component_truncates() {
        let mut s = GenericSampler::new(3);
        let mu = mu_sequence(&MapGerm::identity(), &lines(), &ints(&[1, 1]), &ints(&[2, 2]), 3, &mut s, 1000).unwrap();
        assert_eq!(mu.values, Vec::<u64>::new());
        assert_eq!(mu.infinite_at, Some(0));
    }

    #[test]
    fn budget_reports_progress() {
        let mut s = GenericSampler::new(3);
        let e = mu_sequence(&MapGerm::quartic_example(), &lines(), &ints(&[2, 3]), &ints(&[5, -1]), 8, &mut s, 200).unwrap_err();
        assert!(matches!(e, IntersectError::BudgetExceeded { completed, .. } if completed >= 2), "{e:?}");
    }

    #[test]
    fn samuel_by_generic_members() {
        let mut s = GenericSampler::new(21);
        for (gens, e) in [("x, y", 1), ("x^2, y^3", 6), ("x^2, x*y, y^2", 4), ("x^3, x^2*y, x*y^3, y^4", 11)] {
            assert_eq!(samuel_via_generic(&parse_generators(gens).unwrap(), &mut s, 3).unwrap(), e, "{gens}");
        }
        let not_primary = parse_generators("x^2, x*y").unwrap();
        assert!(matches!(samuel_via_generic(&not_primary, &mut s, 2), Err(IntersectError::Monomial(_))));
        // non-monomial generators are trusted
        assert_eq!(samuel_via_generic(&parse_generators("x^2 - y^3, y^2 + x*y").unwrap(), &mut s, 2).unwrap(), 4);
    }
}
