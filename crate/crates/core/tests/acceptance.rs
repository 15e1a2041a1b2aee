//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails. Runtime limits are pinned below and
//! measured on the build profile in use.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use kurosh_core::rational::{frac, int};
use kurosh_core::{
    branch_relations, compose_at, enumerate_basis, euler_defect, free_dim_series, gs_criterion,
    parse_lincomb, parse_term, strong_construct, symmetrized_power, verify_construction,
    weak_construct, Budget, LinComb, Presentation, QuotientEngine, Rational, Signature, TreeTerm,
    TruncatedSeries, Verdict,
};

const LIMIT_1: Duration = Duration::from_secs(60);
const LIMIT_2: Duration = Duration::from_secs(120);
const LIMIT_6: Duration = Duration::from_secs(10);
const LIMIT_7: Duration = Duration::from_secs(300);
const LIMIT_8: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let e = start.elapsed();
    ensure(e < limit, format!("took {e:?}, limit {limit:?}"))?;
    Ok(format!("{:.2}s", e.as_secs_f64()))
}

fn fact(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn catalan(n: u64) -> BigInt {
    fact(2 * n) / (fact(n + 1) * fact(n))
}

fn m() -> Signature {
    Signature::new([("m", 2)]).unwrap()
}

fn ass() -> Presentation {
    Presentation::parse("[generators]\nm : 2\n[relations]\nm(m(1,2),3) - m(1,m(2,3))\n").unwrap()
}

fn comm() -> Presentation {
    Presentation::parse("[generators]\nm : 2\n[relations]\nm(1,2) - m(2,1)\n").unwrap()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let sig = m();
    let series = free_dim_series(&sig, 7);
    let budget = Budget::default();
    let expected = [1u64, 2, 12, 120, 1680, 30240, 665280];
    for n in 1..=7u64 {
        let count = enumerate_basis(&sig, n as usize, &budget)
            .map_err(|e| e.to_string())?
            .len();
        let formula = fact(n) * catalan(n - 1);
        ensure(
            BigInt::from(count) == formula,
            format!("n={n}: {count} trees vs {formula}"),
        )?;
        ensure(
            count as u64 == expected[n as usize - 1],
            format!("n={n}: {count}"),
        )?;
        let coeff = &series.coeffs()[n as usize] * Rational::from_integer(fact(n));
        ensure(
            coeff == Rational::from_integer(BigInt::from(count)),
            format!("n={n}: series {coeff}"),
        )?;
    }
    Ok(format!(
        "counts 1..7 = {expected:?}, {}",
        within(start, LIMIT_1)?
    ))
}

fn quotient_dims(
    pres: Presentation,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<usize>, String> {
    let mut engine = QuotientEngine::new(pres, Budget::default());
    range
        .map(|n| engine.quotient_dim(n).map_err(|e| e.to_string()))
        .collect()
}

fn c2() -> Outcome {
    let start = Instant::now();
    let dims = quotient_dims(ass(), 2..=5)?;
    ensure(dims == [2, 6, 24, 120], format!("dims {dims:?}"))?;
    Ok(format!("dims {dims:?}, {}", within(start, LIMIT_2)?))
}

fn c3() -> Outcome {
    let dims = quotient_dims(comm(), 2..=5)?;
    let double_factorial = |k: usize| (1..=k).rev().step_by(2).product::<usize>();
    let expected: Vec<usize> = (2..=5).map(|n| double_factorial(2 * n - 3)).collect();
    ensure(dims == expected, format!("dims {dims:?} vs {expected:?}"))?;
    Ok(format!("dims {dims:?}"))
}

fn c4() -> Outcome {
    let z2 = TruncatedSeries::from_ints(&[0, 0, 1]);
    let free = gs_criterion(&z2, &TruncatedSeries::zero(0), 12).map_err(|e| e.to_string())?;
    ensure(
        free.criterion_series.coeffs().iter().all(|c| c.is_one())
            && free.criterion_series.order() == 12,
        "free criterion is not all ones",
    )?;
    ensure(
        free.verdict == Verdict::NonNegativeUpToOrder,
        "free verdict",
    )?;
    let a = gs_criterion(&z2, &TruncatedSeries::from_ints(&[0, 0, 0, 1]), 12)
        .map_err(|e| e.to_string())?;
    ensure(
        a.verdict == Verdict::NegativeAt(3),
        format!("ass verdict {}", a.verdict),
    )?;
    // oracle: (1 - z + z^2)^{-1} = (1 + z) / (1 + z^3), period-6 pattern
    let pattern = [1, 1, 0, -1, -1, 0];
    for (n, c) in a.criterion_series.coeffs().iter().enumerate() {
        ensure(*c == int(pattern[n % 6]), format!("coefficient {n} is {c}"))?;
    }
    Ok("all ones / NegativeAt(3) to order 12".into())
}

fn c5() -> Outcome {
    let mut engine = QuotientEngine::new(ass(), Budget::default());
    let d = euler_defect(
        &mut engine,
        &TruncatedSeries::from_ints(&[0, 0, 1]),
        &TruncatedSeries::from_ints(&[0, 0, 0, 1]),
        6,
    )
    .map_err(|e| e.to_string())?;
    // z^4 / (1 - z)^3 = sum C(n-2, 2) z^n
    let oracle: Vec<i64> = (0..=6)
        .map(|n: i64| if n < 4 { 0 } else { (n - 2) * (n - 3) / 2 })
        .collect();
    ensure(
        d == TruncatedSeries::from_ints(&oracle),
        format!("defect {d}"),
    )?;
    ensure(
        d.first_negative_coefficient().is_none(),
        "negative coefficient",
    )?;
    Ok(format!("defect {d}"))
}

fn random_series(
    rng: &mut StdRng,
    order: usize,
    c0: Option<i64>,
    c1: Option<i64>,
) -> TruncatedSeries {
    let mut coeffs = Vec::new();
    for n in 0..=order {
        let fixed = match n {
            0 => c0,
            1 => c1,
            _ => None,
        };
        coeffs.push(match fixed {
            Some(v) => int(v),
            None => frac(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        });
    }
    TruncatedSeries::new(coeffs)
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(6);
    let order = 8;
    let one = TruncatedSeries::one(order);
    let z = TruncatedSeries::var(order);
    for i in 0..100 {
        let mut a = random_series(&mut rng, order, None, None);
        if a.coeffs()[0].is_zero() {
            a = a.add(&one);
        }
        let inv = a.reciprocal().map_err(|e| e.to_string())?;
        ensure(a.mul(&inv) == one, format!("sample {i}: a * a^-1 != 1"))?;
        let lead = loop {
            let v = rng.gen_range(-3..=3);
            if v != 0 {
                break v;
            }
        };
        let f = random_series(&mut rng, order, Some(0), Some(lead));
        let g = f.reversion().map_err(|e| e.to_string())?;
        ensure(
            f.compose(&g).unwrap() == z,
            format!("sample {i}: f(g) != z"),
        )?;
        ensure(
            g.compose(&f).unwrap() == z,
            format!("sample {i}: g(f) != z"),
        )?;
    }
    let geometric = TruncatedSeries::new(
        (0..=12)
            .map(|n| if n == 0 { int(0) } else { int(1) })
            .collect(),
    );
    let alternating = TruncatedSeries::new(
        (0..=12)
            .map(|n| {
                if n == 0 {
                    int(0)
                } else {
                    int(if n % 2 == 1 { 1 } else { -1 })
                }
            })
            .collect(),
    );
    ensure(
        geometric.reversion().unwrap() == alternating,
        "reversion of z/(1-z)",
    )?;
    Ok(format!(
        "100 samples at order {order}, {}",
        within(start, LIMIT_6)?
    ))
}

fn c7() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let cert = weak_construct(&m(), 3, 12, &budget).map_err(|e| e.to_string())?;
    let ts: Vec<usize> = cert.processed.iter().map(|p| p.relation_arity).collect();
    ensure(
        ts.len() == 3 && ts.windows(2).all(|w| w[0] < w[1]),
        format!("arities {ts:?}"),
    )?;
    ensure(
        cert.gs_report.criterion_series.order() == 12
            && cert
                .gs_report
                .criterion_series
                .first_negative_coefficient()
                .is_none(),
        "criterion has a negative coefficient",
    )?;
    let mut engine = QuotientEngine::new(cert.presentation.clone(), budget);
    for p in &cert.processed {
        let r = symmetrized_power(&LinComb::from_term(p.element.clone()), p.parameter, &budget)
            .map_err(|e| e.to_string())?;
        ensure(!r.is_zero(), "R_i is zero in the free operad")?;
        ensure(
            engine.reduce(&r).map_err(|e| e.to_string())?.is_zero(),
            "R_i does not reduce to 0",
        )?;
    }
    let ns: Vec<usize> = cert.processed.iter().map(|p| p.parameter).collect();
    Ok(format!(
        "t = {ts:?}, N = {ns:?}, {}",
        within(start, LIMIT_7)?
    ))
}

fn c8() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let sig = Signature::new([("a", 2), ("b", 2)]).unwrap();
    // order 4 forces d = 3, whose nilpotency bound 2^(d-1) + 1 = 5 fits in D = 6
    let cert = strong_construct(&sig, 1, 8, 4, &budget).map_err(|e| e.to_string())?;
    let report = verify_construction(&cert, 6, &[], &budget).map_err(|e| e.to_string())?;
    let summary: Vec<String> = report
        .clauses
        .iter()
        .map(|c| format!("({}) {}", c.clause, c.detail))
        .collect();
    ensure(
        report.clauses.len() == 3 && report.passed,
        summary.join("; "),
    )?;
    Ok(format!(
        "d = {}, {}; {}",
        cert.processed[0].parameter,
        summary.join("; "),
        within(start, LIMIT_8)?
    ))
}

fn c9() -> Outcome {
    let bin = Signature::new([("m", 2)]).unwrap();
    let ter = Signature::new([("t", 3)]).unwrap();
    let p2 = parse_term("m(1,2)", &bin).unwrap();
    let p3 = parse_term("t(1,2,3)", &ter).unwrap();
    for d in 1..=5u32 {
        let k = branch_relations(&p2, d as usize).len();
        ensure(k == 2usize.pow(d - 1), format!("binary d={d}: {k}"))?;
    }
    for d in 1..=3u32 {
        let k = branch_relations(&p3, d as usize).len();
        ensure(k == 3usize.pow(d - 1), format!("ternary d={d}: {k}"))?;
    }
    Ok("2^(d-1) for d=1..5, 3^(d-1) for d=1..3".into())
}

fn random_perm(rng: &mut StdRng, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let budget = Budget::default();
    let sig = m();
    let mut engines = [
        QuotientEngine::new(ass(), budget),
        QuotientEngine::new(comm(), budget),
    ];
    let mut contexts: Vec<Vec<TreeTerm>> = Vec::new();
    for n in 1..=3 {
        contexts.push(enumerate_basis(&sig, n, &budget).unwrap().terms);
    }
    for trial in 0..200 {
        let which = trial % 2;
        let engine = &mut engines[which];
        let r = engine.presentation().relations[0].clone();
        let r = r.permute(&random_perm(&mut rng, r.arity()));
        let ctx_arity = rng.gen_range(1..=3);
        let pool = &contexts[ctx_arity - 1];
        let t = LinComb::from_term(pool[rng.gen_range(0..pool.len())].clone());
        let outside = rng.gen_bool(0.5);
        let composed = if outside {
            let i = rng.gen_range(1..=t.arity());
            compose_at(&t, i, &r)
        } else {
            let i = rng.gen_range(1..=r.arity());
            compose_at(&r, i, &t)
        }
        .map_err(|e| e.to_string())?;
        let reduced = engine.reduce(&composed).map_err(|e| e.to_string())?;
        ensure(
            reduced.is_zero(),
            format!(
                "trial {trial}: {} reduces to {}",
                composed.render(&sig),
                reduced.render(&sig)
            ),
        )?;
    }
    // the suite must be able to see a non-member
    let outsider = parse_lincomb("m(m(1,2),3)", &sig).unwrap();
    ensure(
        !engines[0].reduce(&outsider).unwrap().is_zero(),
        "non-member reduced to zero",
    )?;
    Ok("200 triples reduce to 0".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, "free operad basis counts", c1),
        (2, "associative quotient dims", c2),
        (3, "commutative quotient dims", c3),
        (4, "gs criterion", c4),
        (5, "euler defect of ass", c5),
        (6, "series inverse laws", c6),
        (7, "weak construction", c7),
        (8, "strong construction", c8),
        (9, "branch relation counts", c9),
        (10, "ideal two-sidedness", c10),
    ];
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {id:>2} PASS {name}: {detail}"),
            Err(detail) => {
                println!("criterion {id:>2} FAIL {name}: {detail}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
