use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use super::args::*;
use super::report::{CliError, Report, Status};
use crate::arith::{bouquet_formula, Rational};
use crate::cantor::{
    build_growth_pair, first_coefficient_difference, first_difference_exact, inverse_square_sum_range, mult_coeffwise,
    shift_recursion_check, sequence_pool, verify_bound, verify_functoriality, BitSeq, CantorError, CoeffTable,
    GrowthSpec, Mult,
};
use crate::intersect::{
    mu_sequence, parse_generators, samuel_via_generic, GenericSampler, IntersectError, MapGerm, MuSequence,
};
use crate::monomial::MonomialIdeal2;
use crate::series::SeriesError;
use crate::valdyn::{
    c_infinity, c_sequence, detect_recursion, intersection_matrix, ratio_bounds_check, MonomialValuation, ProximityChart,
    Rate, ValdynError,
};

pub(super) fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Curve(CurveCmd::Coeffs { seq, n }) => curve_coeffs(seq, *n),
        Command::Curve(CurveCmd::Mult { a, b, pool, max_coeffs }) => curve_mult(a.as_deref(), b.as_deref(), *pool, *max_coeffs),
        Command::Verify(v) => verify(v),
        Command::Arnold(a) => arnold(a),
        Command::MuSeq(m) => mu_seq(cli, m),
        Command::Samuel(s) => samuel(cli, s),
        Command::Mixed(m) => mixed(m),
        Command::CSeq(c) => c_seq(cli, c),
        Command::CInf(c) => c_inf(cli, c),
        Command::Skewness(s) => skewness(s),
        Command::Recursion(r) => recursion(r),
        Command::Pipeline(p) => pipeline(cli, p),
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_seq(src: &str) -> Result<BitSeq, CliError> {
    src.parse::<BitSeq>().map_err(|e| usage(format!("sequence {src:?}: {e}")))
}

fn parse_map(src: &str) -> Result<MapGerm, IntersectError> {
    MapGerm::parse(src)
}

fn intersect_error(e: IntersectError) -> CliError {
    match e {
        IntersectError::BudgetExceeded { .. } | IntersectError::Series(SeriesError::BudgetExceeded { .. }) => {
            CliError::Budget(e.to_string())
        }
        other => usage(other),
    }
}

fn valdyn_error(e: ValdynError) -> CliError {
    match e {
        ValdynError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => usage(other),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn curve_coeffs(seq: &str, n: usize) -> Result<Report, CliError> {
    let s = parse_seq(seq)?;
    let coeffs = CoeffTable::new().coeffs(&s, n);
    let mut csv = String::from("n,a_n\n");
    let mut lines = vec![format!("sequence {s}")];
    for (k, a) in coeffs.iter().enumerate() {
        let _ = writeln!(csv, "{k},{a}");
        lines.push(format!("a_{k} = {a}"));
    }
    let table: Vec<Value> = coeffs.iter().enumerate().map(|(k, a)| json!({"n": k, "a": a.to_string()})).collect();
    let report = Report::new("curve coeffs", Status::Pass, json!({"seq": s.to_string(), "coefficients": table}), lines);
    Ok(report.with_csv(csv, false))
}

struct PairRow {
    a: BitSeq,
    b: BitSeq,
    m: Option<BigUint>,
    formula: Option<BigInt>,
    coeffwise: Option<BigInt>,
}

impl PairRow {
    fn agrees(&self) -> bool {
        match (&self.formula, &self.coeffwise) {
            (Some(f), Some(c)) => f == c,
            _ => true,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "M": self.m.as_ref().map(ToString::to_string),
            "formula": self.formula.as_ref().map_or_else(|| "infinite (equal sequences)".to_string(), ToString::to_string),
            "coeffwise": self.coeffwise.as_ref().map(ToString::to_string),
        })
    }
}

fn pair_row(table: &CoeffTable, a: &BitSeq, b: &BitSeq, max_coeffs: usize) -> PairRow {
    let Some(m) = first_difference_exact(a, b) else {
        return PairRow { a: a.clone(), b: b.clone(), m: None, formula: None, coeffwise: None };
    };
    let formula = m.to_u64().map(bouquet_formula);
    let coeffwise = m.to_u32().map(first_coefficient_difference).and_then(|idx| idx.to_usize()).and_then(|idx| {
        (idx < max_coeffs).then(|| match mult_coeffwise(table, a, b, idx + 1) {
            Mult::Finite(v) => v,
            Mult::AtLeast(v) => -v,
        })
    });
    PairRow { a: a.clone(), b: b.clone(), m: Some(m), formula, coeffwise }
}

fn curve_mult(a: Option<&str>, b: Option<&str>, pool: bool, max_coeffs: usize) -> Result<Report, CliError> {
    let table = CoeffTable::new();
    let rows: Vec<PairRow> = if pool {
        let p = sequence_pool();
        p.iter()
            .enumerate()
            .flat_map(|(i, s)| p[i + 1..].iter().map(move |t| (s, t)))
            .map(|(s, t)| pair_row(&table, s, t, max_coeffs))
            .collect()
    } else {
        let (a, b) = (parse_seq(a.unwrap_or_default())?, parse_seq(b.unwrap_or_default())?);
        vec![pair_row(&table, &a, &b, max_coeffs)]
    };
    let ok = rows.iter().all(PairRow::agrees);
    let mut csv = String::from("a,b,M,formula,coeffwise\n");
    let mut lines = Vec::new();
    for r in &rows {
        let show = |v: &Option<BigInt>| v.as_ref().map_or_else(String::new, ToString::to_string);
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.a,
            r.b,
            r.m.as_ref().map_or_else(String::new, ToString::to_string),
            r.formula.as_ref().map_or_else(|| "infinite".into(), ToString::to_string),
            show(&r.coeffwise)
        );
        lines.push(match &r.formula {
            None => format!("{} . {} = infinite (equal sequences)", r.a, r.b),
            Some(f) => format!("{} . {} = {f} (M = {}, coefficientwise {})", r.a, r.b, r.m.as_ref().unwrap(), {
                let c = show(&r.coeffwise);
                if c.is_empty() { "skipped".to_string() } else { c }
            }),
        });
    }
    let body = if pool {
        json!({"pairs": rows.iter().map(PairRow::to_json).collect::<Vec<_>>()})
    } else {
        rows[0].to_json()
    };
    Ok(Report::new("curve mult", Status::from_bool(ok), body, lines).with_csv(csv, false))
}

fn verify(cmd: &VerifyCmd) -> Result<Report, CliError> {
    let table = CoeffTable::new();
    match cmd {
        VerifyCmd::Functoriality { seq, n } => {
            if *n < 8 {
                return Err(usage("functoriality needs n >= 8"));
            }
            let s = parse_seq(seq)?;
            let r = verify_functoriality(&table, &s, *n);
            let lines = match &r {
                Ok(()) => vec![format!("g_s^2 = y^4 - g_(sigma s)(y^4) below y^{n} for s = {s}")],
                Err(w) => vec![format!("mismatch at y^{}: {} vs {}", w.exponent, w.lhs, w.rhs)],
            };
            let witness = r.as_ref().err().map(|w| serde_json::to_value(w).expect("plain data"));
            Ok(Report::new("verify functoriality", Status::from_bool(r.is_ok()), json!({"seq": s.to_string(), "n": n, "witness": witness}), lines))
        }
        VerifyCmd::Bound { seq, n } => {
            let s = parse_seq(seq)?;
            let r = verify_bound(&table, &s, *n);
            let lines = vec![match r.first_failure {
                None => format!("|a_n| <= (1/20) 10^n / n^2 for 1 <= n < {n}; equality at {:?}", r.equality_at),
                Some(k) => format!("bound fails at n = {k}: a_n = {}", table.coeff(&s, k)),
            }];
            Ok(Report::new("verify bound", Status::from_bool(r.holds), json!({"seq": s.to_string(), "n": n, "report": r}), lines))
        }
        VerifyCmd::Lemma { n } => {
            let r = inverse_square_sum_range(*n);
            let lines = vec![match r {
                Ok(()) => format!("sum_k 1/(k^2 (n-k+1)^2) <= 20/(n+1)^2 for 1 <= n <= {n}"),
                Err(k) => format!("inequality fails at n = {k}"),
            }];
            Ok(Report::new("verify lemma", Status::from_bool(r.is_ok()), json!({"n": n, "first_failure": r.err()}), lines))
        }
        VerifyCmd::ShiftRecursion { a, b, horizon } => {
            let pairs: Vec<(BitSeq, BitSeq)> = match (a, b) {
                (Some(a), Some(b)) => vec![(parse_seq(a)?, parse_seq(b)?)],
                _ => {
                    let p = sequence_pool();
                    p.iter().enumerate().flat_map(|(i, s)| p[i + 1..].iter().map(move |t| (s.clone(), t.clone()))).collect()
                }
            };
            let mut failures = Vec::new();
            for (s, t) in &pairs {
                match shift_recursion_check(s, t, *horizon) {
                    Ok(true) => {}
                    Ok(false) => failures.push(json!({"a": s.to_string(), "b": t.to_string(), "reason": "recursion violated"})),
                    Err(CantorError::UndeterminedDifference { .. }) if s == t => {}
                    Err(e) => failures.push(json!({"a": s.to_string(), "b": t.to_string(), "reason": e.to_string()})),
                }
            }
            let lines = vec![format!("{} pairs checked, {} failures", pairs.len(), failures.len())];
            Ok(Report::new("verify shift-recursion", Status::from_bool(failures.is_empty()), json!({"pairs": pairs.len(), "failures": failures}), lines))
        }
    }
}

fn arnold(args: &ArnoldArgs) -> Result<Report, CliError> {
    let nu: GrowthSpec = args.nu.parse().map_err(|e: CantorError| usage(e))?;
    if args.witnesses == 0 {
        return Err(usage("need at least one witness"));
    }
    let pair = build_growth_pair(&nu, args.witnesses, args.bit_budget).map_err(|e| match e {
        CantorError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => usage(other),
    })?;
    let all = pair.witnesses.iter().all(|w| w.mu.exceeds(&w.nu));
    let mut lines = vec![format!("s = {}", pair.s), format!("t = {}", abbreviate(&pair.t.to_string()))];
    for w in &pair.witnesses {
        let digits = w.mu.digits().map_or_else(|| "infinite".into(), |d| abbreviate(&d.to_string()));
        let nu_digits = w.nu.to_string().len();
        let m = w.m.to_string();
        lines.push(format!("n = {}: M = {}, digits(mu) = {digits}, digits(nu) = {nu_digits}", w.n, abbreviate(&m)));
    }
    lines.push(format!("M(s, sigma^n t) finite for every n <= {}", pair.horizon));
    let body = json!({
        "nu": nu.to_string(),
        "s": pair.s.to_string(),
        "t": pair.t.to_string(),
        "witnesses": pair.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
        "horizon": pair.horizon.to_string(),
        "max_M": pair.max_m.to_string(),
        "all_exceed": all,
    });
    Ok(Report::new("arnold", Status::from_bool(all), body, lines))
}

fn abbreviate(s: &str) -> String {
    if s.len() <= 80 {
        s.to_string()
    } else {
        format!("{}...{} ({} digits)", &s[..12], &s[s.len() - 12..], s.len())
    }
}

fn draw_pair(sampler: &mut GenericSampler, len: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let z = sampler.draw_vector(len).into_iter().map(BigInt::from).collect();
    let w = sampler.draw_vector(len).into_iter().map(BigInt::from).collect();
    (z, w)
}

fn mu_seq(cli: &Cli, args: &MuSeqArgs) -> Result<Report, CliError> {
    let f = parse_map(&args.map).map_err(usage)?;
    let gens = parse_generators(&args.ideal).map_err(usage)?;
    let mut sampler = GenericSampler::new(cli.seed);
    let (z, w) = draw_pair(&mut sampler, gens.len());
    let mu = mu_sequence(&f, &gens, &z, &w, args.nmax, &mut sampler, cli.budget).map_err(intersect_error)?;
    let mut csv = String::from("n,mu\n");
    for (n, v) in mu.values.iter().enumerate() {
        let _ = writeln!(csv, "{n},{v}");
    }
    if let Some(n) = mu.infinite_at {
        let _ = writeln!(csv, "{n},infinite");
    }
    let lines = vec![format!("mu = {:?}", mu.values), format!("certified: {}", mu.certified)];
    Ok(Report::new("mu-seq", Status::Pass, mu_json(&f, &z, &w, &mu), lines).with_csv(csv, true))
}

fn mu_json(f: &MapGerm, z: &[BigInt], w: &[BigInt], mu: &MuSequence) -> Value {
    json!({
        "map": f.to_string(),
        "z": strings(z),
        "w": strings(w),
        "mu": strings(&mu.values),
        "infinite_at": mu.infinite_at,
        "certified": mu.certified,
    })
}

fn samuel(cli: &Cli, args: &SamuelArgs) -> Result<Report, CliError> {
    let gens = parse_generators(&args.ideal).map_err(usage)?;
    let mut sampler = GenericSampler::new(cli.seed);
    let generic = samuel_via_generic(&gens, &mut sampler, args.trials);
    let monomial = gens.iter().all(|g| g.num_terms() == 1).then(|| MonomialIdeal2::parse(&args.ideal)).transpose().map_err(usage)?;
    let generic = match generic {
        Ok(v) => Some(v),
        Err(IntersectError::GenericityFailure { values }) => {
            let body = json!({"ideal": args.ideal, "generic_trials": values});
            return Ok(Report::new("samuel", Status::Fail, body, vec![format!("generic trials disagree: {values:?}")]));
        }
        Err(e) => return Err(intersect_error(e)),
    };
    let (staircase, fit) = match &monomial {
        Some(i) => (Some(i.samuel()), i.hilbert_samuel_fit(8, 14).ok()),
        None => (None, None),
    };
    let values: Vec<u64> = [staircase, fit, generic].into_iter().flatten().collect();
    let ok = values.windows(2).all(|w| w[0] == w[1]) && (monomial.is_none() || fit.is_some());
    let body = json!({
        "ideal": monomial.as_ref().map_or_else(|| args.ideal.clone(), ToString::to_string),
        "e": values.first().map(ToString::to_string),
        "staircase": staircase.map(|v| v.to_string()),
        "hilbert_samuel": fit.map(|v| v.to_string()),
        "generic": generic.map(|v| v.to_string()),
    });
    let lines = vec![format!("e = {} (staircase {staircase:?}, Hilbert-Samuel {fit:?}, generic {generic:?})", values.first().copied().unwrap_or_default())];
    Ok(Report::new("samuel", Status::from_bool(ok), body, lines))
}

fn mixed(args: &MixedArgs) -> Result<Report, CliError> {
    let a = MonomialIdeal2::parse(&args.ideal_a).map_err(usage)?;
    let b = MonomialIdeal2::parse(&args.ideal_b).map_err(usage)?;
    let e = a.mixed(&b).map_err(usage)?;
    let ok = a.minkowski_check(&b).map_err(usage)?;
    let body = json!({
        "e_a": a.samuel().to_string(),
        "e_b": b.samuel().to_string(),
        "e_mixed": e.to_string(),
        "minkowski_ok": ok,
    });
    let lines = vec![format!("e(a) = {}, e(b) = {}, e(a; b) = {e}, {e}^2 <= {} * {}: {ok}", a.samuel(), b.samuel(), a.samuel(), b.samuel())];
    Ok(Report::new("mixed", Status::from_bool(ok), body, lines))
}

fn parse_weights(src: &str) -> Result<MonomialValuation, CliError> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(usage(format!("weights {src:?}: expected s,t")));
    }
    let q = |p: &str| p.parse::<Rational>().map_err(|_| usage(format!("weight {p:?} is not a rational")));
    MonomialValuation::new(q(parts[0])?, q(parts[1])?).map_err(usage)
}

fn c_seq(cli: &Cli, args: &CSeqArgs) -> Result<Report, CliError> {
    let f = parse_map(&args.map).map_err(usage)?;
    let nu = parse_weights(&args.nu)?;
    let seq = c_sequence(&f, &nu, args.nmax, cli.budget).map_err(valdyn_error)?;
    let mut csv = String::from("n,c\n");
    for (k, c) in seq.iter().enumerate() {
        let _ = writeln!(csv, "{},{c}", k + 1);
    }
    let body = json!({"map": f.to_string(), "nu": [nu.s().to_string(), nu.t().to_string()], "c": strings(&seq)});
    Ok(Report::new("c-seq", Status::Pass, body, vec![format!("c(f^n, nu) = {}", strings(&seq).join(", "))]).with_csv(csv, false))
}

fn c_inf(cli: &Cli, args: &CInfArgs) -> Result<Report, CliError> {
    let f = parse_map(&args.map).map_err(usage)?;
    match c_infinity(&f, args.nmax, cli.budget) {
        Ok(c) => {
            let line = match &c.rate {
                Rate::Exact(r) => format!("c_inf = {r}"),
                Rate::Bracketed { lo, hi } => {
                    format!("c_inf is the largest root of {} in ({lo}, {hi}]", c.recursion.char_poly_string())
                }
            };
            Ok(Report::new("c-inf", Status::Pass, c.to_json(), vec![line]))
        }
        Err(e @ ValdynError::NoRecurrenceFound { .. }) => {
            let body = json!({"map": f.to_string(), "c_inf": null, "note": e.to_string()});
            Ok(Report::new("c-inf", Status::Pass, body, vec![e.to_string()]))
        }
        Err(e) => Err(valdyn_error(e)),
    }
}

fn skewness(args: &SkewnessArgs) -> Result<Report, CliError> {
    let src = if args.chart.trim_start().starts_with('{') {
        args.chart.clone()
    } else {
        std::fs::read_to_string(&args.chart).map_err(|e| usage(format!("{}: {e}", args.chart)))?
    };
    let chart = ProximityChart::from_json(&src).map_err(usage)?;
    if !(1..=chart.points).contains(&args.i) || !(1..=chart.points).contains(&args.j) {
        return Err(usage(format!("indices must lie in 1..={}", chart.points)));
    }
    let lattice = intersection_matrix(&chart).map_err(usage)?;
    let alpha = lattice.skewness(args.i, args.j);
    let body = json!({"chart": chart.to_json(), "lattice": lattice.to_json(), "i": args.i, "j": args.j, "skewness": alpha.to_string()});
    Ok(Report::new("skewness", Status::Pass, body, vec![format!("alpha(E_{} ^ E_{}) = {alpha}", args.i, args.j)]))
}

fn parse_ints(src: &str) -> Result<Vec<BigInt>, CliError> {
    src.split(',').map(|p| p.trim().parse::<BigInt>().map_err(|_| usage(format!("{p:?} is not an integer")))).collect()
}

fn recursion(args: &RecursionArgs) -> Result<Report, CliError> {
    let seq = parse_ints(&args.seq)?;
    let order = args.max_order.min(seq.len().saturating_sub(args.holdout) / 2).max(1);
    match detect_recursion(&seq, order, args.holdout) {
        Ok(m) => Ok(Report::new("recursion", Status::Pass, m.to_json(), vec![m.to_string()])),
        Err(e @ ValdynError::NoRecurrenceFound { .. }) => {
            let body = json!({"seq": strings(&seq), "max_order": args.max_order, "holdout": args.holdout, "error": e.to_string()});
            Ok(Report::new("recursion", Status::Fail, body, vec![e.to_string()]))
        }
        Err(e) => Err(usage(e)),
    }
}

fn pipeline(cli: &Cli, args: &PipelineArgs) -> Result<Report, CliError> {
    let stage_fail = |stage: &str, e: String| {
        Report::new("pipeline", Status::Fail, json!({"stage": stage, "error": e}), vec![format!("stage {stage:?}: {e}")])
    };
    let f = match parse_map(&args.map) {
        Ok(f) => f,
        Err(e @ (IntersectError::NotFinite(_) | IntersectError::NotThroughOrigin(_))) => {
            return Ok(stage_fail("map validation", e.to_string()))
        }
        Err(e) => return Err(usage(format!("map validation: {e}"))),
    };
    let gens = parse_generators(&args.ideal).map_err(|e| usage(format!("ideal: {e}")))?;
    let mut sampler = GenericSampler::new(cli.seed);
    let (z, w) = draw_pair(&mut sampler, gens.len());
    let mu = mu_sequence(&f, &gens, &z, &w, args.nmax, &mut sampler, cli.budget).map_err(intersect_error)?;
    if let Some(n) = mu.infinite_at {
        return Ok(stage_fail("mu sequence", format!("infinite multiplicity at n = {n}")));
    }
    let mu_ints: Vec<BigInt> = mu.values.iter().map(|&v| BigInt::from(v)).collect();
    let holdout = 1;
    let order = args.max_order.min(mu_ints.len().saturating_sub(holdout) / 2);
    let rec = if order == 0 {
        Err(ValdynError::InsufficientData { len: mu_ints.len(), max_order: args.max_order, holdout })
    } else {
        detect_recursion(&mu_ints, order, holdout)
    };
    let rec = match rec {
        Ok(r) => r,
        Err(e) => return Ok(stage_fail("recursion", e.to_string())),
    };
    let c = match c_infinity(&f, args.nmax.max(3), cli.budget) {
        Ok(c) => c,
        Err(e @ ValdynError::BudgetExceeded { .. }) => return Err(CliError::Budget(e.to_string())),
        Err(e) => return Ok(stage_fail("c_inf", e.to_string())),
    };
    let (check, pass) = match c.exact() {
        Some(r) if *r > Rational::one() => {
            let report = ratio_bounds_check(&mu_ints, r, args.max_order).map_err(usage)?;
            let pass = report.pass;
            (report.to_json(), pass)
        }
        Some(_) => (json!({"trivial": true, "note": "c_inf = 1: mu is eventually constant"}), rec.order == 1 && rec.coeffs[0].is_one()),
        None => (json!({"skipped": true, "note": "c_inf is irrational; ratio bounds need an exact rate"}), true),
    };
    let lines = vec![
        format!("mu = {}", strings(&mu.values).join(", ")),
        format!("recursion: {rec}"),
        format!("c_inf: {}", c.exact().map_or_else(|| "irrational (see json)".into(), ToString::to_string)),
        format!("growth check: {}", if pass { "PASS" } else { "FAIL" }),
    ];
    let body = json!({
        "mu": mu_json(&f, &z, &w, &mu),
        "recursion": rec.to_json(),
        "c_inf": c.to_json(),
        "ratio_bounds": check,
    });
    Ok(Report::new("pipeline", Status::from_bool(pass && mu.certified), body, lines))
}
