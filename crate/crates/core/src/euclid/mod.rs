//! Left division, greatest common right divisors and least common left
//! multiples.
//!
//! Everything runs over rational-function coefficients. Operators that
//! come back as canonical representatives (GCRD, LCLM) are normalized and
//! converted back to the algebra of the first argument.

mod intops;

use std::any::Any;
use std::str::FromStr;

use crate::arith::{ConstField, Poly, RatFun, Rational};
use crate::error::{OreError, Result};
use crate::ore::OrePoly;

/// Strategy for the remainder sequence of a GCRD computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PrsStrategy {
    /// Primitive remainder sequence: content removed after every step.
    Classic,
    /// Remainders over the fraction field made monic.
    Monic,
    /// Fraction-free, divided by the predicted common factor only.
    Subresultant,
    /// Accepted for compatibility; runs [`PrsStrategy::Subresultant`].
    #[default]
    Improved,
}

impl PrsStrategy {
    pub const ALL: [PrsStrategy; 4] = [
        PrsStrategy::Improved,
        PrsStrategy::Classic,
        PrsStrategy::Monic,
        PrsStrategy::Subresultant,
    ];
}

impl FromStr for PrsStrategy {
    type Err = OreError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "classic" => PrsStrategy::Classic,
            "monic" => PrsStrategy::Monic,
            "subresultant" => PrsStrategy::Subresultant,
            "improved" => PrsStrategy::Improved,
            _ => return Err(OreError::Domain(format!("unknown PRS strategy `{s}`"))),
        })
    }
}

/// Base-ring element `c` such that every `c * op` has polynomial
/// coefficients and the family is jointly content-free, with the sign (or
/// q-monic) convention fixed by the leading coefficient of the first
/// nonzero operator.
fn joint_normalizer<K: ConstField>(ops: &[&OrePoly<K>]) -> RatFun<K> {
    let mut den = Poly::one();
    for op in ops {
        for c in op.coeffs() {
            den = den.lcm(c.den());
        }
    }
    let mut polys = Vec::new();
    let mut g = Poly::zero();
    let mut lead = None;
    for op in ops {
        if lead.is_none() && !op.is_zero() {
            let c = op.lc().unwrap();
            let p = c.num() * &den.exact_div(c.den()).unwrap();
            lead = p.lc().cloned();
        }
        for c in op.coeffs() {
            if c.is_zero() {
                continue;
            }
            let p = c.num() * &den.exact_div(c.den()).expect("lcm of denominators");
            g = g.gcd(&p);
            polys.push(p);
        }
    }
    if g.is_zero() {
        return RatFun::one();
    }
    let mut vals = Vec::new();
    for p in &polys {
        let q = p.exact_div(&g).expect("gcd divides");
        vals.extend(q.coeffs().iter().filter(|v| !v.is_zero()).cloned());
    }
    let k = K::normalizing_factor(&vals, &lead.unwrap().over(g.lc().unwrap()));
    RatFun::new(den, g).scale(&k)
}

impl<K: ConstField> OrePoly<K> {
    /// Canonical representative under left multiplication by nonzero
    /// base-ring elements: polynomial coefficients without common content
    /// and a positive (over ℚ) or q-monic (over ℚ(q)) leading constant.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = joint_normalizer(&[self]);
        let out = self.lmul(&c);
        out.convert(self.algebra()).unwrap_or(out)
    }

    /// Left quotient and remainder: `self = q * b + r` with
    /// `order(r) < order(b)`, computed over rational-function coefficients.
    pub fn quo_rem(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(OreError::Domain("division by the zero operator".into()));
        }
        let a = self.over_fractions();
        let b = b.over_fractions();
        a.try_add(&b)?;
        let alg = a.algebra().clone();
        let n = b.order().unwrap();
        let mut r = a.clone();
        if r.ord() < n as isize {
            return Ok((OrePoly::zero(&alg), r));
        }
        let m = r.order().unwrap();
        let xb = powers_times(&b, m - n);
        let mut q = vec![RatFun::zero(); m - n + 1];
        let lcb = b.lc().unwrap().clone();
        while r.ord() >= n as isize {
            let k = r.order().unwrap() - n;
            let c = r.lc().unwrap() / &alg.sigma_pow(&lcb, k);
            q[k] = &q[k] + &c;
            let mut rc = (&r - &xb[k].lmul(&c)).into_coeffs();
            rc.truncate(k + n);
            r = OrePoly::new(&alg, rc)?;
        }
        Ok((OrePoly::new(&alg, q)?, r))
    }

    /// Fraction-free left pseudo-division: returns `(alpha, q, r)` with
    /// `alpha * self = q * b + r`, `alpha` a base-ring element.
    fn pseudo_quo_rem(&self, b: &Self) -> (RatFun<K>, Self, Self) {
        let alg = self.algebra().over_fractions();
        let n = b.order().unwrap();
        let mut r = self.over_fractions();
        let mut alpha = RatFun::one();
        let mut q = OrePoly::zero(&alg);
        if r.ord() < n as isize {
            return (alpha, q, r);
        }
        let xb = powers_times(b, r.order().unwrap() - n);
        let lcb = b.lc().unwrap().clone();
        while r.ord() >= n as isize {
            let k = r.order().unwrap() - n;
            let (l, s) = reduce_pair(r.lc().unwrap(), &alg.sigma_pow(&lcb, k));
            let mut rc = (&r.lmul(&s) - &xb[k].lmul(&l)).into_coeffs();
            rc.truncate(k + n);
            r = OrePoly::raw(&alg, rc);
            q = &q.lmul(&s) + &OrePoly::gen_pow(&alg, k).lmul(&l);
            alpha = &s * &alpha;
        }
        (alpha, q, r)
    }

    /// Greatest common right divisor with the default strategy.
    pub fn gcrd(&self, other: &Self) -> Result<Self> {
        self.gcrd_with(other, PrsStrategy::default())
    }

    pub fn gcrd_with(&self, other: &Self, prs: PrsStrategy) -> Result<Self> {
        self.try_add(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(OreError::Domain("gcrd of two zero operators".into()));
        }
        if let Some((tw, a, b)) = integral(self, other) {
            return Ok(back(intops::gcrd(&tw, a, b, prs)));
        }
        self.gcrd_generic(other, prs)
    }

    fn gcrd_generic(&self, other: &Self, prs: PrsStrategy) -> Result<Self> {
        let (mut a, mut b) = (self.normalize(), other.normalize());
        if a.ord() < b.ord() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut beta = RatFun::one();
        while !b.is_zero() {
            let r = match prs {
                PrsStrategy::Monic => {
                    let (_, r) = a.quo_rem(&b)?;
                    if r.is_zero() {
                        r
                    } else {
                        let inv = r.lc().unwrap().inv();
                        r.lmul(&inv)
                    }
                }
                PrsStrategy::Classic => a.pseudo_quo_rem(&b).2.normalize(),
                PrsStrategy::Subresultant | PrsStrategy::Improved => {
                    let (alpha, _, r) = a.pseudo_quo_rem(&b);
                    let r = divide_predicted(&r, &beta);
                    beta = alpha;
                    r
                }
            };
            a = b;
            b = r;
        }
        a.normalize().convert(self.algebra())
    }

    /// Extended remainder sequence. Returns the rows `(r_i, s_i, t_i)` with
    /// `r_i = s_i * self + t_i * other`, ending with the zero remainder.
    fn extended_prs(&self, other: &Self) -> Result<Vec<[Self; 3]>> {
        let alg = self.algebra().over_fractions();
        self.try_add(other)?;
        let one = OrePoly::one(&alg);
        let zero = OrePoly::zero(&alg);
        let mut rows = vec![
            [self.over_fractions(), one.clone(), zero.clone()],
            [other.over_fractions(), zero, one],
        ];
        if self.ord() < other.ord() {
            rows.swap(0, 1);
        }
        while !rows.last().unwrap()[0].is_zero() {
            let k = rows.len();
            let (prev, cur) = (&rows[k - 2], &rows[k - 1]);
            let (alpha, q, r) = prev[0].pseudo_quo_rem(&cur[0]);
            let s = &prev[1].lmul(&alpha) - &(&q * &cur[1]);
            let t = &prev[2].lmul(&alpha) - &(&q * &cur[2]);
            let c = joint_normalizer(&[&r, &s, &t]);
            rows.push([r.lmul(&c), s.lmul(&c), t.lmul(&c)]);
        }
        Ok(rows)
    }

    /// GCRD `g` with cofactors `(s, t)` such that `s * self + t * other = g`.
    pub fn xgcrd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(OreError::Domain("gcrd of two zero operators".into()));
        }
        self.try_add(other)?;
        if let Some((tw, a, b)) = integral(self, other) {
            if !a.is_zero() && !b.is_zero() {
                let (g, s, t) = intops::xgcrd(&tw, a, b);
                return Ok((back(g), back(s), back(t)));
            }
        }
        self.xgcrd_generic(other)
    }

    fn xgcrd_generic(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let rows = self.extended_prs(other)?;
        let [g, s, t] = &rows[rows.len() - 2];
        let c = joint_normalizer(&[g]);
        let g = g.lmul(&c);
        let g = g.convert(self.algebra()).unwrap_or(g);
        Ok((g, s.lmul(&c), t.lmul(&c)))
    }

    /// Least common left multiple, normalized.
    pub fn lclm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Err(OreError::Domain("lclm with the zero operator".into()));
        }
        self.try_add(other)?;
        if let Some((tw, a, b)) = integral(self, other) {
            return Ok(back(intops::xlclm(&tw, a, b, false).0));
        }
        Ok(self.xlclm(other)?.0)
    }

    /// LCLM `l` with left quotients `(u, v)` such that
    /// `l = u * self = v * other`.
    pub fn xlclm(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() || other.is_zero() {
            return Err(OreError::Domain("lclm with the zero operator".into()));
        }
        self.try_add(other)?;
        if let Some((tw, a, b)) = integral(self, other) {
            let (l, uv) = intops::xlclm(&tw, a, b, true);
            let (u, v) = uv.unwrap();
            return Ok((back(l), back(u), back(v)));
        }
        self.xlclm_generic(other)
    }

    fn xlclm_generic(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let rows = self.extended_prs(other)?;
        let [_, s, t] = rows.last().unwrap();
        let l = s * &self.over_fractions();
        let c = joint_normalizer(&[&l]);
        let l = l.lmul(&c);
        let l = l.convert(self.algebra()).unwrap_or(l);
        Ok((l, s.lmul(&c), -&t.lmul(&c)))
    }

    /// LCLM of several operators.
    pub fn lclm_all(ops: &[Self]) -> Result<Self> {
        let (first, rest) = ops
            .split_first()
            .ok_or_else(|| OreError::Domain("lclm of an empty list".into()))?;
        rest.iter().try_fold(first.normalize(), |acc, op| acc.lclm(op))
    }
}

/// The pair viewed over ℚ, when σ(x) and δ(x) have integer coefficients.
fn integral<'a, K: ConstField>(
    a: &'a OrePoly<K>,
    b: &'a OrePoly<K>,
) -> Option<(intops::Twist, &'a OrePoly<Rational>, &'a OrePoly<Rational>)> {
    let a = (a as &dyn Any).downcast_ref::<OrePoly<Rational>>()?;
    let b = (b as &dyn Any).downcast_ref::<OrePoly<Rational>>()?;
    Some((intops::Twist::of(a.algebra())?, a, b))
}

fn back<K: ConstField>(l: OrePoly<Rational>) -> OrePoly<K> {
    *(Box::new(l) as Box<dyn Any>).downcast::<OrePoly<K>>().unwrap()
}

/// `[b, X b, ..., X^upto b]`
fn powers_times<K: ConstField>(b: &OrePoly<K>, upto: usize) -> Vec<OrePoly<K>> {
    let mut v = Vec::with_capacity(upto + 1);
    v.push(b.clone());
    for k in 1..=upto {
        let next = v[k - 1].gen_mul();
        v.push(next);
    }
    v
}

/// `(l, s)` proportional to `(lc, b)` with the common polynomial factor
/// removed, so that `s * lc - l * b = 0`.
fn reduce_pair<K: ConstField>(lc: &RatFun<K>, b: &RatFun<K>) -> (RatFun<K>, RatFun<K>) {
    match (lc.as_poly(), b.as_poly()) {
        (Some(p), Some(q)) => {
            let g = p.gcd(q);
            (
                RatFun::from_poly(p.exact_div(&g).unwrap()),
                RatFun::from_poly(q.exact_div(&g).unwrap()),
            )
        }
        _ => (lc / b, RatFun::one()),
    }
}

/// Divides a pseudo-remainder by the part of `beta` that provably divides
/// its content.
fn divide_predicted<K: ConstField>(r: &OrePoly<K>, beta: &RatFun<K>) -> OrePoly<K> {
    let (Some(beta), Some(cs)) = (beta.as_poly(), r.poly_coeffs()) else {
        return r.normalize();
    };
    let content = cs.iter().fold(Poly::zero(), |g, c| g.gcd(c));
    let d = beta.gcd(&content);
    if d.is_zero() || d.is_constant() {
        return r.clone();
    }
    r.lmul(&RatFun::new(Poly::one(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, ratio};
    use crate::arith::Rational;
    use crate::ore::{parse, OreAlgebra};

    type Op = OrePoly<Rational>;

    fn d(s: &str) -> Op {
        parse(s, &OreAlgebra::differential("x")).unwrap()
    }

    fn s(s: &str) -> Op {
        parse(s, &OreAlgebra::shift("n")).unwrap()
    }

    #[test]
    fn quo_rem_examples() {
        let (q, r) = d("Dx^2").quo_rem(&d("Dx")).unwrap();
        assert_eq!((q, r.is_zero()), (d("Dx"), true));
        let (q, r) = s("Sn^2 - Sn - 1").quo_rem(&s("Sn - 1")).unwrap();
        assert_eq!(q, s("Sn"));
        assert_eq!(r, s("-1"));
        let b = s("(n+1)*Sn^2 + n");
        let (q, r) = b.quo_rem(&b).unwrap();
        assert!(q.is_one() && r.is_zero());
        assert!(b.quo_rem(&s("0")).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(d("(2*x+2)*Dx + 2").normalize(), d("(x+1)*Dx + 1"));
        assert!(d("0").normalize().is_zero());
        let f = OreAlgebra::shift("x").over_fractions();
        let l = parse("1/x*Sx - 1", &f).unwrap();
        assert_eq!(l.normalize(), parse("Sx - x", &f).unwrap());
        assert_eq!(d("-3*Dx + 6*x").normalize(), d("Dx - 2*x"));
    }

    #[test]
    fn xgcrd_of_coprime_first_order() {
        let (g, s_, t) = d("Dx - 1").xgcrd(&d("Dx + 1")).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&s_ * &d("Dx - 1")) + &(&t * &d("Dx + 1")), g);
        assert_eq!(s_.coeff(0), RatFun::constant(ratio(-1, 2)));
        assert_eq!(t.coeff(0), RatFun::constant(ratio(1, 2)));
    }

    #[test]
    fn gcrd_recovers_common_factor() {
        let alg = OreAlgebra::shift("n");
        let g = Op::random(&alg, 2, 2, 11);
        let l1 = &Op::random(&alg, 3, 2, 12) * &g;
        let l2 = &Op::random(&alg, 2, 2, 13) * &g;
        for prs in PrsStrategy::ALL {
            assert_eq!(l1.gcrd_with(&l2, prs).unwrap(), g.normalize(), "{prs:?}");
        }
        let (gg, s_, t) = l1.xgcrd(&l2).unwrap();
        assert_eq!(gg, g.normalize());
        assert_eq!(&(&s_ * &l1) + &(&t * &l2), gg);
        let (l, u, v) = l1.xlclm(&l2).unwrap();
        assert_eq!(l.order(), Some(5 + 4 - 2));
        assert_eq!(&u * &l1, l);
        assert_eq!(&v * &l2, l);
    }

    #[test]
    fn lclm_annihilates_both() {
        let l = d("Dx - 1").lclm(&d("x*Dx - 5")).unwrap();
        assert_eq!(l.order(), Some(2));
        let x5 = RatFun::from_poly(Poly::monomial(rat(1), 5));
        assert!(l.apply_function(&x5).unwrap().is_zero());
        assert_eq!(d("x*Dx + 3").lclm(&d("x*Dx + 3")).unwrap(), d("x*Dx + 3"));
        assert_eq!(d("Dx").gcrd(&d("0")).unwrap(), d("Dx"));
        assert!(d("x^2+1").gcrd(&d("Dx")).unwrap().is_one());
    }

    #[test]
    fn integer_path_matches_generic() {
        use crate::ore::{AlgebraSpec, OreKind};
        let mut algs: Vec<_> = [OreKind::D, OreKind::S, OreKind::T, OreKind::F]
            .into_iter()
            .map(|k| OreAlgebra::standard("x", k))
            .collect();
        for k in [OreKind::Q, OreKind::J] {
            algs.push(AlgebraSpec::new("x", "Jx", k).q(rat(3)).build().unwrap());
        }
        let x = Poly::x();
        algs.push(
            AlgebraSpec::new("x", "Xx", OreKind::Custom)
                .custom(
                    RatFun::from_poly(x.scale(&rat(2))),
                    RatFun::from_poly(&(&x * &x) + &Poly::one()),
                )
                .build()
                .unwrap(),
        );
        for (i, alg) in algs.iter().enumerate() {
            let seed = 100 * i as u64;
            let g = Op::random(alg, 1, 1, seed);
            let a = &Op::random(alg, 2, 1, seed + 1) * &g;
            let b = &Op::random(alg, 1, 2, seed + 2) * &g;
            for prs in PrsStrategy::ALL {
                assert_eq!(a.gcrd_with(&b, prs).unwrap(), a.gcrd_generic(&b, prs).unwrap(), "{alg} {prs:?}");
            }
            assert_eq!(a.xgcrd(&b).unwrap(), a.xgcrd_generic(&b).unwrap(), "{alg}");
            assert_eq!(b.xgcrd(&a).unwrap(), b.xgcrd_generic(&a).unwrap(), "{alg}");
            assert_eq!(a.xlclm(&b).unwrap(), a.xlclm_generic(&b).unwrap(), "{alg}");
            assert_eq!(b.lclm(&a).unwrap(), b.xlclm_generic(&a).unwrap().0, "{alg}");
        }
    }
}
