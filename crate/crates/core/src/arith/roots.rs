//! Integer roots, resultants and interpolation for rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{ConstField, Field, Rational};
use super::poly::Poly;

/// Resultant of two polynomials over a field.
pub fn resultant<K: ConstField>(a: &Poly<K>, b: &Poly<K>) -> K {
    if a.is_zero() || b.is_zero() {
        return K::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = K::one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            let lc = b.lc().unwrap().clone();
            for _ in 0..m {
                acc = acc.times(&lc);
            }
            return acc;
        }
        let r = a.rem(&b);
        let Some(dr) = r.degree() else {
            return K::zero();
        };
        if (m * n) % 2 == 1 {
            acc = acc.negated();
        }
        let lc = b.lc().unwrap().clone();
        for _ in 0..(m - dr) {
            acc = acc.times(&lc);
        }
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), <Rational as Field>::one()]);
        p = &(&p * &lin) + &Poly::constant(coef[i].clone());
    }
    p
}

/// `Res_n(a(n), b(n + h))` as a polynomial in `h`.
pub fn shift_resultant(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    let npts = da * db + 1;
    let xs: Vec<Rational> = (0..npts).map(|h| Rational::from_integer(BigInt::from(h))).collect();
    let ys: Vec<Rational> = xs.iter().map(|h| resultant(a, &b.shift(h))).collect();
    interpolate(&xs, &ys)
}

/// Positive rescaling to integer coefficients (signs preserved).
fn positive_integer_coeffs(p: &Poly<Rational>) -> Vec<BigInt> {
    let den = p.denominator_lcm();
    p.coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect()
}

fn sign_at(p: &[BigInt], at: &BigInt) -> i8 {
    let v = Poly::eval_int(p, at);
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

struct Sturm {
    chain: Vec<Vec<BigInt>>,
}

impl Sturm {
    fn new(p: &Poly<Rational>) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Sturm {
            chain: chain
                .iter()
                .filter(|q| !q.is_zero())
                .map(positive_integer_coeffs)
                .collect(),
        }
    }

    fn variations(&self, at: &BigInt) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for q in &self.chain {
            let s = sign_at(q, at);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]`.
    fn count(&self, lo: &BigInt, hi: &BigInt) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// All distinct integer roots, in increasing order.
pub fn integer_roots(p: &Poly<Rational>) -> Vec<BigInt> {
    let mut roots = Vec::new();
    let Some(v) = p.valuation() else {
        return roots;
    };
    if v > 0 {
        roots.push(BigInt::zero());
    }
    let core = Poly::new(p.coeffs()[v..].to_vec());
    if core.is_constant() {
        return roots;
    }
    let sq = core.squarefree_part();
    let ints = positive_integer_coeffs(&sq);
    // Cauchy bound.
    let lc = ints.last().unwrap().abs();
    let maxc = ints[..ints.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound = maxc.div_ceil(&lc) + BigInt::one();
    let sturm = Sturm::new(&sq);
    let mut stack = vec![(-&bound - BigInt::one(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        if sturm.count(&lo, &hi) == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if Poly::eval_int(&ints, &hi).is_zero() && !hi.is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots.dedup();
    roots
}

pub fn nonnegative_integer_roots(p: &Poly<Rational>) -> Vec<BigInt> {
    integer_roots(p).into_iter().filter(|r| !r.is_negative()).collect()
}
