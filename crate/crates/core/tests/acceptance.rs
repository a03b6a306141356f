//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance`. The process exits nonzero when
//! any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rayon::prelude::*;

use bouquet::arith::{bouquet_formula, Dyadic, Rational};
use bouquet::cantor::{
    build_growth_pair, first_coefficient_difference, first_difference_exact, inverse_square_sum_range, mult_coeffwise,
    sequence_pool, verify_bound, verify_functoriality, BitSeq, CoeffTable, GrowthSpec, Mult, DEFAULT_BIT_BUDGET,
};
use bouquet::intersect::{
    local_mult, mu_sequence, parse_generators, samuel_via_generic, GenericSampler, MapGerm, Multiplicity,
    DEFAULT_TERM_BUDGET,
};
use bouquet::monomial::MonomialIdeal2;
use bouquet::series::{BiPoly, USeries};
use bouquet::valdyn::{
    c_infinity, detect_recursion, intersection_matrix, random_chart, ratio_bounds_check, Axis, ProximityChart,
    RecurrenceModel,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quartic_map() -> MapGerm {
    MapGerm::parse("(x^2 - y^4, y^4)").expect("finite map")
}

fn pool_pairs() -> Vec<(BitSeq, BitSeq)> {
    let pool = sequence_pool();
    let mut pairs = Vec::new();
    for (i, s) in pool.iter().enumerate() {
        for t in &pool[i + 1..] {
            pairs.push((s.clone(), t.clone()));
        }
    }
    pairs
}

fn formula_vs_coefficients() -> Outcome {
    let expected = [2u32, 6, 22, 86, 342, 1366];
    let table = CoeffTable::new();
    let small: Vec<(BitSeq, BitSeq, usize)> = pool_pairs()
        .into_iter()
        .filter_map(|(s, t)| {
            let m = first_difference_exact(&s, &t)?.to_usize()?;
            (m <= 5).then_some((s, t, m))
        })
        .collect();
    let mut seen = [false; 6];
    for &(_, _, m) in &small {
        seen[m] = true;
    }
    check(seen.iter().all(|&b| b), || format!("pool misses some m in 0..=5: {seen:?}"))?;
    let bad: Vec<String> = small
        .par_iter()
        .filter_map(|(s, t, m)| {
            let formula = bouquet_formula(*m as u64);
            let idx = first_coefficient_difference(*m as u32).to_usize().unwrap();
            let coeffwise = mult_coeffwise(&table, s, t, idx + 1);
            let ok = formula == BigInt::from(expected[*m]) && coeffwise == Mult::Finite(formula.clone());
            (!ok).then(|| format!("{s} . {t}: m = {m}, formula {formula}, coefficients {coeffwise:?}"))
        })
        .collect();
    check(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} pairs with m <= 5, values {expected:?}", small.len()))
}

fn functoriality() -> Outcome {
    let table = CoeffTable::new();
    let bad: Vec<String> = sequence_pool()
        .par_iter()
        .filter_map(|s| verify_functoriality(&table, s, 2000).err().map(|w| format!("{s}: y^{}", w.exponent)))
        .collect();
    check(bad.is_empty(), || bad.join("; "))?;
    Ok("20 sequences, N = 2000".into())
}

fn coefficient_bound() -> Outcome {
    let table = CoeffTable::new();
    let bad: Vec<String> = sequence_pool()
        .par_iter()
        .filter_map(|s| {
            let r = verify_bound(&table, s, 2000);
            (!r.holds || r.equality_at != vec![1]).then(|| format!("{s}: first failure {:?}, equality at {:?}", r.first_failure, r.equality_at))
        })
        .collect();
    check(bad.is_empty(), || bad.join("; "))?;
    Ok("20 sequences, N = 2000, equality only at n = 1".into())
}

fn inverse_square_sum() -> Outcome {
    inverse_square_sum_range(10_000).map_err(|n| format!("fails at n = {n}"))?;
    Ok("1 <= n <= 10000".into())
}

fn growth_demo() -> Outcome {
    let nu: GrowthSpec = "pow:10".parse().map_err(|e| format!("{e}"))?;
    let pair = build_growth_pair(&nu, 3, DEFAULT_BIT_BUDGET).map_err(|e| e.to_string())?;
    check(pair.witnesses.len() == 3, || format!("{} witnesses", pair.witnesses.len()))?;
    for w in &pair.witnesses {
        check(w.mu.exceeds(&w.nu), || format!("mu does not exceed nu at n = {}", w.n))?;
    }
    let horizon = pair.horizon.to_u64().ok_or("horizon too large to scan")?;
    for n in 0..=horizon {
        let shifted = pair.t.shift_by(&BigUint::from(n));
        check(first_difference_exact(&pair.s, &shifted).is_some(), || format!("M infinite at n = {n}"))?;
    }
    let ns: Vec<String> = pair.witnesses.iter().map(|w| w.n.to_string()).collect();
    Ok(format!("witnesses at n = {}, finite up to {horizon}", ns.join(", ")))
}

fn pipeline() -> Outcome {
    let f = quartic_map();
    let gens = parse_generators("x, y").map_err(|e| e.to_string())?;
    let mut sampler = GenericSampler::new(7);
    let z: Vec<BigInt> = sampler.draw_vector(2).into_iter().map(BigInt::from).collect();
    let w: Vec<BigInt> = sampler.draw_vector(2).into_iter().map(BigInt::from).collect();
    let mu = mu_sequence(&f, &gens, &z, &w, 5, &mut sampler, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
    check(mu.values == [1, 2, 4, 8, 16, 32] && mu.certified, || format!("mu = {:?}", mu.values))?;
    let ints: Vec<BigInt> = mu.values.iter().map(|&v| BigInt::from(v)).collect();
    let rec = detect_recursion(&ints, 2, 1).map_err(|e| e.to_string())?;
    check(rec.order == 1 && rec.lead.is_one() && rec.coeffs == [BigInt::from(2)], || format!("recursion {rec}"))?;
    let c = c_infinity(&f, 6, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
    let two = Rational::from_integer(BigInt::from(2));
    check(c.exact() == Some(&two), || "c_inf is not 2".into())?;
    let d = ratio_bounds_check(&ints, &two, 2).map_err(|e| e.to_string())?;
    check(d.pass && d.a1.is_one() && d.a2.is_one(), || format!("A1 = {}, A2 = {}", d.a1, d.a2))?;
    Ok("mu = 1..32, order 1 ratio 2, c_inf = 2, A1 = A2 = 1".into())
}

fn mixed_multiplicities() -> Outcome {
    let m = MonomialIdeal2::maximal();
    let ci = MonomialIdeal2::minimalize(&[(2, 0), (0, 3)]).map_err(|e| e.to_string())?;
    let prod = m.product(&ci);
    let got = (m.samuel(), ci.samuel(), prod.samuel(), m.mixed(&ci).map_err(|e| e.to_string())?);
    check(got == (1, 6, 11, 2), || format!("(e(m), e(I), e(mI), e(m;I)) = {got:?}"))?;
    check(m.minkowski_check(&ci) == Ok(true), || "Minkowski check failed".into())?;
    for seed in 0..20u64 {
        let ideal = MonomialIdeal2::random(seed, 6);
        let staircase = ideal.samuel();
        let fit = ideal.hilbert_samuel_fit(8, 14).map_err(|e| format!("{ideal}: {e}"))?;
        let gens: Vec<BiPoly> =
            ideal.generators().iter().map(|&(i, j)| BiPoly::monomial(Rational::one(), i as u32, j as u32)).collect();
        let generic = samuel_via_generic(&gens, &mut GenericSampler::new(seed), 3).map_err(|e| format!("{ideal}: {e}"))?;
        check(staircase == fit && fit == generic, || format!("{ideal}: {staircase} / {fit} / {generic}"))?;
    }
    Ok("1, 6, 11, 2; 4 <= 6; 20 random ideals agree".into())
}

fn blowup_lattice() -> Outcome {
    for seed in 0..50u64 {
        let chart = random_chart(seed, 2 + (seed % 7) as usize);
        intersection_matrix(&chart).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    let chain = ProximityChart::free_chain(2, Axis::X);
    let lattice = intersection_matrix(&chain).map_err(|e| e.to_string())?;
    let weights = (&lattice.ord_x[1], &lattice.ord_y[1]);
    check(weights == (&BigInt::from(1), &BigInt::from(2)), || format!("E_2 has weights {weights:?}"))?;
    let own = lattice.skewness(2, 2);
    let cross = lattice.skewness(1, 2);
    check(own == Rational::from_integer(BigInt::from(2)), || format!("alpha(E_2) = {own}"))?;
    check(cross.is_one(), || format!("alpha(E_1 ^ E_2) = {cross}"))?;
    Ok("50 charts negative definite; alpha = 2 and 1".into())
}

fn runner(seed: u8) -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (any::<i64>(), 0u32..40).prop_map(|(n, k)| Dyadic::from_parts(BigInt::from(n), k))
}

fn series() -> impl Strategy<Value = USeries<Rational>> {
    prop::collection::vec(-20i64..20, 1..12)
        .prop_map(|v| USeries::new(v.into_iter().map(|x| Rational::from_integer(BigInt::from(x))).collect()))
}

fn poly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -3i64..=3), 0..4)
        .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(i, j, c)| (i, j, Rational::from_integer(c.into())))))
}

fn curve() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -3i64..=3), 1..5).prop_filter_map("nonzero, through origin", |t| {
        let p = BiPoly::from_int_terms(&t.into_iter().filter(|&(i, j, _)| i + j > 0).collect::<Vec<_>>());
        (!p.is_zero()).then_some(p)
    })
}

fn law(name: &str, seed: u8, f: impl FnOnce(&mut TestRunner) -> Result<(), String>) -> Result<(), String> {
    f(&mut runner(seed)).map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    law("dyadic ring laws", 1, |r| {
        r.run(&(dyadic(), dyadic(), dyadic()), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).to_rational(), a.to_rational() * b.to_rational());
            prop_assert_eq!(a.to_string().parse::<Dyadic>().unwrap(), a);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    law("series ring laws", 2, |r| {
        r.run(&(series(), series(), series()), |(a, b, c)| {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            let left = a.mul(&b).mul(&c);
            let right = a.mul(&b.mul(&c));
            let t = left.trunc().min(right.trunc());
            prop_assert_eq!(left.truncate(t), right.truncate(t));
            let dist = a.mul(&b.add(&c));
            let split = a.mul(&b).add(&a.mul(&c));
            let t = dist.trunc().min(split.trunc());
            prop_assert_eq!(dist.truncate(t), split.truncate(t));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    law("polynomial composition", 3, |r| {
        r.run(&(poly(2), poly(2), poly(2), poly(1), poly(1)), |(p, f1, f2, g1, g2)| {
            let h1 = f1.compose(&g1, &g2);
            let h2 = f2.compose(&g1, &g2);
            prop_assert_eq!(p.compose(&h1, &h2), p.compose(&f1, &f2).compose(&g1, &g2));
            prop_assert_eq!(p.mul(&f1).compose(&g1, &g2), p.compose(&g1, &g2).mul(&f1.compose(&g1, &g2)));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    law("local_mult symmetry", 4, |r| {
        r.run(&(curve(), curve(), any::<u64>()), |(p, q, seed)| {
            let a = local_mult(&p, &q, &mut GenericSampler::new(seed)).unwrap();
            let b = local_mult(&q, &p, &mut GenericSampler::new(seed ^ 1)).unwrap();
            prop_assert!(a.certified() && b.certified());
            prop_assert_eq!(a.value, b.value);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    law("local_mult multiplicativity", 5, |r| {
        r.run(&(curve(), curve(), curve(), any::<u64>()), |(p, p2, q, seed)| {
            let mut s = GenericSampler::new(seed);
            let a = local_mult(&p, &q, &mut s).unwrap().value;
            let b = local_mult(&p2, &q, &mut s).unwrap().value;
            let ab = local_mult(&p.mul(&p2), &q, &mut s).unwrap().value;
            match (a.finite(), b.finite()) {
                (Some(a), Some(b)) => prop_assert_eq!(ab, Multiplicity::Finite(a + b)),
                _ => prop_assert_eq!(ab, Multiplicity::Infinite),
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    law("recursion holdout", 6, |r| {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let strategy = (prop::collection::vec(-5i64..=5, 1..4), prop::collection::vec(-20i64..=20, 3), 1usize..4);
        r.run(&strategy, |(coeffs, start, holdout)| {
            let k = coeffs.len();
            let truth = RecurrenceModel { order: k, lead: BigInt::one(), coeffs: ints(&coeffs), onset: 0 };
            let seq = truth.extend(&ints(&start[..k]), 2 * k + holdout + 2).unwrap();
            let m = detect_recursion(&seq, k, holdout).unwrap();
            prop_assert!(m.order <= k);
            prop_assert!((m.onset..seq.len() - m.order).all(|n| m.holds_at(&seq, n)));
            let cut = seq.len() - holdout;
            if m.onset + m.order <= cut {
                prop_assert_eq!(m.extend(&seq[..cut], holdout).unwrap(), seq);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    Ok("6 laws x 1000 cases".into())
}

fn main() {
    let minute = Duration::from_secs(60);
    let criteria = [
        Criterion { id: 1, name: "curve multiplicity formula vs coefficients", limit: minute, run: formula_vs_coefficients },
        Criterion { id: 2, name: "functoriality", limit: 2 * minute, run: functoriality },
        Criterion { id: 3, name: "coefficient bound", limit: minute, run: coefficient_bound },
        Criterion { id: 4, name: "inverse square sum inequality", limit: Duration::from_secs(30), run: inverse_square_sum },
        Criterion { id: 5, name: "arbitrary growth demo", limit: Duration::from_secs(10), run: growth_demo },
        Criterion { id: 6, name: "mu sequence pipeline", limit: 2 * minute, run: pipeline },
        Criterion { id: 7, name: "mixed multiplicities", limit: 2 * minute, run: mixed_multiplicities },
        Criterion { id: 8, name: "blowup linear algebra", limit: Duration::from_secs(10), run: blowup_lattice },
        Criterion { id: 9, name: "property suites", limit: 3 * minute, run: property_suites },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.1?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {} ({elapsed:.1?}): {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {} ({elapsed:.1?}): {detail}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
