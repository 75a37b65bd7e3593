//! Acceptance run: one PASS/FAIL line per criterion, with its runtime.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use ore_algebra::arith::{Poly, RatFun, Rational};
use ore_algebra::closures::MPoly;
use ore_algebra::euclid::PrsStrategy;
use ore_algebra::guessing::{annihilates, guess, GuessOptions};
use ore_algebra::ore::{parse, Algebra, AlgebraSpec, OreAlgebra, OreKind, OrePoly, Series};
use ore_algebra::sequences::to_decimal;

use common::rat;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn op(s: &str, alg: &Algebra) -> OrePoly {
    parse(s, alg).unwrap()
}

fn commutation() -> Outcome {
    let x = |alg: &Algebra| OrePoly::var(alg);
    let g = |alg: &Algebra| OrePoly::gen(alg);
    let d = OreAlgebra::differential("x");
    ensure(g(&d).try_mul(&x(&d)).unwrap() == op("x*Dx + 1", &d), || "Dx*x".into())?;
    let s = OreAlgebra::shift("x");
    ensure(g(&s).try_mul(&x(&s)).unwrap() == op("(x+1)*Sx", &s), || "Sx*x".into())?;
    let q = AlgebraSpec::new("x", "Qx", OreKind::Q).q(rat(2)).build().unwrap();
    let expect = OrePoly::from_polys(&q, vec![Poly::zero(), Poly::from_i64s(&[0, 2])]);
    ensure(g(&q).try_mul(&x(&q)).unwrap() == expect, || "Qx*x".into())?;
    let c = AlgebraSpec::new("x", "X", OreKind::Custom)
        .custom(Poly::from_i64s(&[1, 1]).into(), Poly::from_i64s(&[1]).into())
        .build()
        .unwrap();
    let expect = OrePoly::from_polys(&c, vec![Poly::from_i64s(&[1]), Poly::from_i64s(&[1, 1])]);
    ensure(g(&c).try_mul(&x(&c)).unwrap() == expect, || "X*x".into())
}

fn euclid() -> Outcome {
    let alg = OreAlgebra::shift("n");
    for i in 0..100u64 {
        let g = OrePoly::random(&alg, 2, 2, 3 * i);
        let l1 = OrePoly::random(&alg, 7, 2, 3 * i + 1);
        let mut seed = 3 * i + 2;
        let l2 = loop {
            let l2 = OrePoly::random(&alg, 5, 2, seed);
            if l1.gcrd(&l2).unwrap().is_one() {
                break l2;
            }
            seed += 1 << 32;
        };
        let a = l1.try_mul(&g).unwrap();
        let b = l2.try_mul(&g).unwrap();
        let expect = g.normalize();
        for prs in PrsStrategy::ALL {
            ensure(a.gcrd_with(&b, prs).unwrap() == expect, || format!("pair {i}: gcrd with {prs:?}"))?;
        }
        let (h, s, t) = a.xgcrd(&b).unwrap();
        let bezout = s.try_mul(&a).unwrap().try_add(&t.try_mul(&b).unwrap()).unwrap();
        ensure(bezout == h, || format!("pair {i}: Bezout identity"))?;
        let l = a.lclm(&b).unwrap();
        ensure(l.order() == Some(9 + 7 - 2), || format!("pair {i}: lclm order"))?;
    }
    Ok(())
}

fn cassini() -> Outcome {
    let alg = OreAlgebra::shift("n");
    let fib = op("Sn^2 - Sn - 1", &alg);
    let y = MPoly::<Rational>::var;
    let p = &y(1).pow(2) - &(&y(0) * &y(2));
    let l = fib.annihilator_of_polynomial(&p).unwrap();
    let signs: Vec<Rational> = (0..20).map(|n| rat(if n % 2 == 0 { 1 } else { -1 })).collect();
    let zero = |m: &OrePoly| m.apply_sequence(&signs).unwrap().iter().all(|v| *v == rat(0));
    ensure(zero(&l), || format!("{l} does not annihilate (-1)^n"))?;
    let l1 = fib
        .annihilator_of_associate(&op("Sn", &alg))
        .unwrap()
        .symmetric_power(2)
        .unwrap();
    let l2 = fib
        .annihilator_of_associate(&op("Sn^2", &alg))
        .unwrap()
        .symmetric_product(&fib)
        .unwrap();
    let alt = l1.lclm(&l2).unwrap();
    ensure(alt.order() > l.order(), || format!("orders {:?} vs {:?}", alt.order(), l.order()))?;
    ensure(zero(&alt), || format!("{alt} does not annihilate (-1)^n"))
}

fn erf() -> Outcome {
    let alg = OreAlgebra::differential("x");
    let minus_x2: RatFun<Rational> = Poly::from_i64s(&[0, 0, -1]).into();
    let c = op("Dx - 1", &alg).annihilator_of_composition_d(&minus_x2).unwrap().normalize();
    ensure(c == op("Dx + 2*x", &alg), || format!("composition gave {c}"))?;
    let l = op("Dx + 2*x", &alg).annihilator_of_integral().unwrap();
    let sols = l.power_series_solutions(10).unwrap();
    let one = Series::new(vec![rat(1)], 10);
    let e = Series::new(
        vec![rat(0), rat(1), rat(0), ratio(-1, 3), rat(0), ratio(1, 10), rat(0), ratio(-1, 42), rat(0), ratio(1, 216)],
        10,
    );
    ensure(sols.len() == 2 && sols.contains(&one) && sols.contains(&e), || {
        format!("series {:?}", sols.iter().map(|s| s.render("x")).collect::<Vec<_>>())
    })
}

/// `e` from its continued fraction `[2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`,
/// to within `10^(-2 digits)`.
fn e_by_continued_fraction(digits: u32) -> Rational {
    let bound = BigInt::from(10).pow(digits);
    let (mut h0, mut h1) = (BigInt::one(), BigInt::from(2));
    let (mut k0, mut k1) = (BigInt::from(0), BigInt::one());
    let mut i = 1u64;
    while k1 < bound {
        let a = if i % 3 == 2 { BigInt::from(2 * (i + 1) / 3) } else { BigInt::one() };
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        i += 1;
    }
    Rational::new(h1, k1)
}

fn partial_sums() -> Outcome {
    let alg = OreAlgebra::shift("n");
    let l = op("(n+1)*Sn - 1", &alg).annihilator_of_sum().unwrap();
    let list = l.to_list(&[rat(1), rat(2)], 8).unwrap();
    let mut direct = Vec::new();
    let (mut s, mut f) = (rat(0), rat(1));
    for k in 0..8 {
        if k > 0 {
            f = f / rat(k);
        }
        s = s + &f;
        direct.push(s.clone());
    }
    ensure(list == direct, || format!("to_list {list:?}"))?;
    let n = 10_000;
    let b = l.forward_matrix_bsplit(n).unwrap();
    let v = b.apply(&[rat(1), rat(2)]);
    let long = l.to_list(&[rat(1), rat(2)], n + 2).unwrap();
    ensure(v == long[n..], || "bsplit differs from to_list".into())?;
    let approx = to_decimal(&v[0], 1000);
    let exact = to_decimal(&e_by_continued_fraction(2000), 1000);
    ensure(approx == exact, || format!("digits differ: {} vs {}", &approx[..20], &exact[..20]))
}

fn guessing() -> Outcome {
    let s = OreAlgebra::shift("n");
    let mut fib = vec![BigInt::from(0), BigInt::from(1)];
    while fib.len() < 11 {
        let k = fib.len();
        fib.push(&fib[k - 1] + &fib[k - 2]);
    }
    let data: Vec<Rational> = fib.into_iter().map(Rational::from_integer).collect();
    let l = guess(&data, &s, &GuessOptions::default()).map_err(|e| e.to_string())?;
    ensure(l.apply_sequence(&data).unwrap().iter().all(|v| *v == rat(0)), || format!("{l} fails on data"))?;
    ensure(l == op("Sn^2 - Sn - 1", &s), || format!("guessed {l}"))?;
    let d = OreAlgebra::differential("x");
    let m = guess(&data, &d, &GuessOptions::default()).map_err(|e| e.to_string())?;
    let f = RatFun::new(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[1, -1, -1]));
    let r = m.order().unwrap();
    let image = m.apply_series(&Series::from_ratfun(&f, 30 + r).unwrap()).unwrap();
    ensure(image.prec() >= 30 && image.is_zero(), || format!("{m} fails the series check"))?;

    let data: Vec<Rational> = (0..200u32)
        .map(|n| Rational::from_integer(BigInt::from(n + 1).pow(10) * BigInt::from(2).pow(n) + BigInt::from(3).pow(n)))
        .collect();
    let opts = GuessOptions { min_order: 3, max_degree: Some(5), ..Default::default() };
    let g = guess(&data, &s, &opts).map_err(|e| e.to_string())?;
    let oracle = op("(n+1)^10*Sn - 2*(n+2)^10", &s).lclm(&op("Sn - 3", &s)).unwrap();
    ensure(g.order() == Some(2), || format!("order {:?}", g.order()))?;
    ensure(g.degree().unwrap() > 5, || format!("degree {:?}", g.degree()))?;
    ensure(annihilates(&g, &data), || "guess fails on data".into())?;
    ensure(annihilates(&oracle, &data), || "oracle fails on data".into())?;
    ensure(g == oracle.normalize(), || format!("guess {g} differs from the lclm oracle"))
}

fn solvers() -> Outcome {
    let d = OreAlgebra::differential("x");
    let p = Poly::from_i64s(&[8, 3, 1]);
    let q = Poly::from_i64s(&[5, -7, 0, 1]);
    let first = |f: &Poly<Rational>| {
        OrePoly::from_polys(&d, vec![-f.derivative(), f.clone()])
    };
    let l = first(&p).lclm(&first(&q)).unwrap();
    let sols = l.polynomial_solutions(&[]).unwrap();
    ensure(sols.len() == 2 && sols.iter().all(|s| s.verify(&l, &[])), || "homogeneous tuples".into())?;
    let span: Vec<Vec<Rational>> = sols.iter().map(|s| (0..4).map(|i| s.g.num().coeff(i)).collect()).collect();
    let mut with_pq = span.clone();
    with_pq.push((0..4).map(|i| p.coeff(i)).collect());
    with_pq.push((0..4).map(|i| q.coeff(i)).collect());
    let rank = |m: &[Vec<Rational>]| ore_algebra::arith::linalg::rank(m, 4);
    ensure(rank(&span) == 2 && rank(&with_pq) == 2, || "solutions do not span p, q".into())?;

    let m = op("(2*x+3)*Dx^2 + (4*x+5)*Dx + (6*x+7)", &d);
    let rhs: Vec<RatFun<Rational>> = (0..4).map(|k| Poly::monomial(rat(1), k).into()).collect();
    let sols = m.polynomial_solutions(&rhs).unwrap();
    ensure(!sols.is_empty() && sols.iter().all(|s| s.verify(&m, &rhs)), || {
        format!("{} tuples, verification failed", sols.len())
    })
}

fn properties() -> Outcome {
    let mut failed = Vec::new();
    for suite in common::suites() {
        if let Err(e) = (suite.run)(100) {
            failed.push(format!("{}: {e}", suite.name));
        }
    }
    ensure(failed.is_empty(), || failed.join("; "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("commutation rules", commutation, Duration::from_secs(1)),
        ("euclidean suite, 100 pairs", euclid, Duration::from_secs(60)),
        ("Cassini identity", cassini, Duration::MAX),
        ("error function chain", erf, Duration::MAX),
        ("partial sums of 1/k! and 1000 digits of e", partial_sums, Duration::from_secs(30)),
        ("guessing", guessing, Duration::from_secs(120)),
        ("solver tuples", solvers, Duration::MAX),
        ("property suites, 100 cases each", properties, Duration::MAX),
    ];
    let mut out = std::io::stdout();
    let mut all = true;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let res = check();
        let took = t.elapsed();
        let res = res.and_then(|_| {
            ensure(took < limit, || format!("took {took:.2?}, limit {limit:.0?}"))
        });
        let line = match &res {
            Ok(()) => format!("PASS {} {name} ({took:.2?})", i + 1),
            Err(e) => format!("FAIL {} {name} ({took:.2?}): {e}", i + 1),
        };
        writeln!(out, "{line}").unwrap();
        all &= res.is_ok();
    }
    assert!(all, "some acceptance criteria failed");
}
