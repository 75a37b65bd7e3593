//! Randomized property suites shared by the property tests and the
//! acceptance run. Each suite runs a fixed number of cases from a
//! deterministic generator.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_algebra::arith::linalg;
use ore_algebra::arith::{Field, Poly, RatFun, Rational};
use ore_algebra::ore::{format, parse, Algebra, AlgebraSpec, OreAlgebra, OreKind, OrePoly, Series};

pub struct Suite {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "ring axioms", run: ring_axioms },
        Suite { name: "apply composition", run: apply_composition },
        Suite { name: "parse/format round trip", run: round_trip },
        Suite { name: "nullspace exactness", run: nullspace_exactness },
        Suite { name: "to_S/to_D duality", run: duality },
        Suite { name: "bsplit equals to_list", run: bsplit_matches_list },
        Suite { name: "solver degree bounds", run: solver_bounds },
    ]
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn p(cs: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(cs)
}

pub fn algebras() -> Vec<Algebra> {
    let mut out: Vec<Algebra> = [OreKind::D, OreKind::S, OreKind::T, OreKind::F]
        .into_iter()
        .map(|k| OreAlgebra::standard("x", k))
        .collect();
    out.push(AlgebraSpec::new("x", "Qx", OreKind::Q).q(rat(2)).build().unwrap());
    out.push(AlgebraSpec::new("x", "Jx", OreKind::J).q(rat(3)).build().unwrap());
    out.push(
        AlgebraSpec::new("x", "X", OreKind::Custom)
            .custom(p(&[1, 1]).into(), p(&[1]).into())
            .build()
            .unwrap(),
    );
    out.push(
        AlgebraSpec::new("x", "X", OreKind::Custom)
            .custom(p(&[0, 2]).into(), p(&[1, 0, 1]).into())
            .build()
            .unwrap(),
    );
    out
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Poly<Rational> {
    let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    p(&cs)
}

fn random_op(alg: &Algebra, rng: &mut ChaCha8Rng, order: usize, deg: usize) -> OrePoly<Rational> {
    OrePoly::random(alg, order, deg, rng.gen())
}

/// Shift operator whose leading coefficient `c (n + a_1) ... (n + a_k)`,
/// `a_i >= 1`, has no root at a nonnegative integer.
fn safe_recurrence(rng: &mut ChaCha8Rng, order: usize, deg: usize) -> OrePoly<Rational> {
    let alg = OreAlgebra::shift("n");
    let mut coeffs: Vec<Poly<Rational>> = (0..order).map(|_| random_poly(rng, deg, 5)).collect();
    let mut lead = p(&[*[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap()]);
    for _ in 0..rng.gen_range(0..=deg) {
        lead = &lead * &p(&[rng.gen_range(1..=4), 1]);
    }
    coeffs.push(lead);
    OrePoly::from_polys(&alg, coeffs)
}

fn ring_axioms(cases: u32) -> Result<(), String> {
    let algs = algebras();
    let strat = (0..algs.len(), any::<u64>(), 0..4usize, 0..4usize, 0..4usize);
    run(cases, strat, |(k, seed, ra, rb, rc)| {
        let alg = &algs[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_op(alg, &mut rng, ra, 2);
        let b = random_op(alg, &mut rng, rb, 2);
        let c = random_op(alg, &mut rng, rc, 1);
        let mul = |x: &OrePoly, y: &OrePoly| x.try_mul(y).unwrap();
        let add = |x: &OrePoly, y: &OrePoly| x.try_add(y).unwrap();
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&add(&a, &b), &c), add(&mul(&a, &c), &mul(&b, &c)));
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        let one = OrePoly::one(alg);
        prop_assert_eq!(mul(&a, &one), a.clone());
        prop_assert_eq!(mul(&one, &a), a.clone());
        prop_assert!(add(&a, &-&a).is_zero());
        Ok(())
    })
}

fn apply_composition(cases: u32) -> Result<(), String> {
    let algs: Vec<Algebra> = algebras().into_iter().filter(|a| a.kind() != OreKind::Custom).collect();
    let strat = (0..algs.len(), any::<u64>(), 0..3usize, 0..3usize);
    run(cases, strat, |(k, seed, ra, rb)| {
        let alg = &algs[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_op(alg, &mut rng, ra, 2);
        let b = random_op(alg, &mut rng, rb, 2);
        let ab = a.try_mul(&b).unwrap();
        let den = &p(&[rng.gen_range(1..=5), rng.gen_range(-3..=3)]) * &p(&[rng.gen_range(1..=5), 0, 1]);
        let f = RatFun::new(random_poly(&mut rng, 3, 6), den);
        let lhs = ab.apply_function(&f).unwrap();
        let rhs = a.apply_function(&b.apply_function(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        if alg.kind() == OreKind::S {
            let seq: Vec<Rational> = (0..20).map(|_| rat(rng.gen_range(-50..=50))).collect();
            let lhs = ab.apply_sequence(&seq).unwrap();
            let rhs = a.apply_sequence(&b.apply_sequence(&seq).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        if alg.kind() == OreKind::D {
            let s = Series::new((0..25).map(|_| rat(rng.gen_range(-50..=50))).collect(), 25);
            let lhs = ab.apply_series(&s).unwrap();
            let rhs = a.apply_series(&b.apply_series(&s).unwrap()).unwrap();
            let n = lhs.prec().min(rhs.prec());
            prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
        }
        Ok(())
    })
}

fn round_trip(cases: u32) -> Result<(), String> {
    let algs = algebras();
    let strat = (0..algs.len(), any::<u64>(), 0..5usize, 0..4usize, any::<bool>());
    run(cases, strat, |(k, seed, order, deg, fractional)| {
        let alg = &algs[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut l = random_op(alg, &mut rng, order, deg);
        if fractional {
            let d = RatFun::new(p(&[1]), p(&[rng.gen_range(1..=7), rng.gen_range(1..=3)]));
            l = l.over_fractions().lmul(&d).scale(&Rational::new(BigInt::from(1), BigInt::from(rng.gen_range(2..=9))));
        }
        let text = format(&l);
        let back = parse(&text, l.algebra()).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, l, "{}", text);
        Ok(())
    })
}

fn nullspace_exactness(cases: u32) -> Result<(), String> {
    let strat = (1..7usize, 1..7usize, any::<u64>());
    run(cases, strat, |(rows, cols, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| Rational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=2))))
                    .collect()
            })
            .collect();
        let ker = linalg::nullspace(&m, cols);
        for v in &ker {
            prop_assert!(linalg::mat_vec(&m, v).iter().all(Field::is_zero));
        }
        // independent count: Gauss-Jordan over the rationals
        let other = linalg::nullspace_over(&m, cols);
        prop_assert_eq!(ker.len(), other.len());
        let as_rows: Vec<Vec<Rational>> =
            ker.iter().map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
        prop_assert_eq!(linalg::rank(&as_rows, cols), ker.len());
        Ok(())
    })
}

fn duality(cases: u32) -> Result<(), String> {
    let strat = (any::<u64>(), 1..4usize, 0..3usize);
    run(cases, strat, |(seed, order, deg)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // differential operator -> recurrence of its series solutions
        let dalg = OreAlgebra::differential("x");
        let mut coeffs: Vec<Poly<Rational>> = (0..order).map(|_| random_poly(&mut rng, deg, 5)).collect();
        let mut lead = random_poly(&mut rng, deg, 5);
        if lead.coeff(0) == rat(0) {
            lead = &lead + &p(&[1]);
        }
        coeffs.push(lead);
        let l = OrePoly::from_polys(&dalg, coeffs);
        let rec = l.to_s("n").unwrap();
        let sols = l.power_series_solutions(16).unwrap();
        prop_assert_eq!(sols.len(), order);
        for s in &sols {
            let seq: Vec<Rational> = (0..16).map(|i| s.coeff(i)).collect();
            let out = rec.apply_sequence(&seq).unwrap();
            prop_assert!(out.iter().all(Field::is_zero), "{} on {:?}", rec, seq);
        }
        // recurrence -> differential operator of the generating function
        let r = safe_recurrence(&mut rng, order, deg);
        let init: Vec<Rational> = (0..order).map(|_| rat(rng.gen_range(-9..=9))).collect();
        let terms = r.to_list(&init, 30).unwrap();
        let m = r.to_d("x").unwrap();
        let out = m.apply_series(&Series::new(terms, 30)).unwrap();
        prop_assert!(out.prec() > 0);
        prop_assert!(out.is_zero(), "{} from {}", m, r);
        Ok(())
    })
}

fn bsplit_matches_list(cases: u32) -> Result<(), String> {
    let strat = (any::<u64>(), 1..4usize, 0..3usize, 0..60usize);
    run(cases, strat, |(seed, order, deg, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = safe_recurrence(&mut rng, order, deg);
        let init: Vec<Rational> = (0..order)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))))
            .collect();
        let list = r.to_list(&init, n + order).unwrap();
        let b = r.forward_matrix_bsplit(n).unwrap();
        prop_assert_eq!(b.apply(&init), list[n..].to_vec());
        Ok(())
    })
}

/// Polynomial solver against a planted solution: `p` must lie in the
/// returned solution space of `L(g) = c L(p)`.
fn solver_bounds(cases: u32) -> Result<(), String> {
    let strat = (any::<u64>(), 1..3usize, 0..3usize, 0..6usize, any::<bool>());
    run(cases, strat, |(seed, order, deg, pdeg, shift)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = if shift { OreAlgebra::shift("x") } else { OreAlgebra::differential("x") };
        let l = random_op(&alg, &mut rng, order, deg);
        let planted = random_poly(&mut rng, pdeg, 9);
        let rhs = l.apply_function(&planted.clone().into()).unwrap();
        let sols = l.polynomial_solutions(&[rhs.clone()]).unwrap();
        for s in &sols {
            prop_assert!(s.verify(&l, &[rhs.clone()]));
        }
        // coordinates (g coefficients..., c) of every tuple and of (p, 1)
        let width = sols
            .iter()
            .filter_map(|s| s.g.num().degree())
            .chain(planted.degree())
            .max()
            .unwrap_or(0)
            + 2;
        let row = |g: &Poly<Rational>, c: &Rational| {
            let mut v: Vec<Rational> = (0..width - 1).map(|i| g.coeff(i)).collect();
            v.push(c.clone());
            v
        };
        let mut m: Vec<Vec<Rational>> = sols.iter().map(|s| row(s.g.num(), &s.c[0])).collect();
        let base = linalg::rank(&m, width);
        prop_assert_eq!(base, sols.len());
        m.push(row(&planted, &rat(1)));
        prop_assert_eq!(linalg::rank(&m, width), base, "{} with {:?}", l, planted);
        Ok(())
    })
}
