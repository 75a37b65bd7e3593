//! Conversions between differential, shift, difference and Euler operators,
//! and annihilators of integrals, sums, compositions and interlacings.

use num_traits::Signed;

use crate::arith::linalg::DependenceFinder;
use crate::arith::{ConstField, Poly, RatFun, Rational};
use crate::error::{OreError, Result};
use crate::ore::{Algebra, OreAlgebra, OreKind, OrePoly};

fn require<K: ConstField>(l: &OrePoly<K>, kinds: &[OreKind], what: &str) -> Result<()> {
    if kinds.contains(&l.algebra().kind()) {
        Ok(())
    } else {
        Err(OreError::Unsupported(format!(
            "{what} is not defined for {} operators",
            l.algebra().kind().prefix()
        )))
    }
}

fn nonzero<K: ConstField>(l: &OrePoly<K>) -> Result<()> {
    if l.is_zero() {
        Err(OreError::Domain("zero operator".into()))
    } else {
        Ok(())
    }
}

/// Polynomial coefficients of a normalized copy.
fn poly_coeffs<K: ConstField>(l: &OrePoly<K>) -> Vec<Poly<K>> {
    l.normalize().poly_coeffs().expect("normalized operators have polynomial coefficients")
}

/// Scales polynomial coefficients to be integral and jointly primitive
/// without removing polynomial content, which for recurrences could drop
/// the equations at its integer roots.
fn constant_primitive<K: ConstField>(alg: &Algebra<K>, cs: Vec<Poly<K>>) -> OrePoly<K> {
    let vals: Vec<K> = cs.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let lead = cs.iter().rev().find_map(|p| p.lc().cloned()).unwrap_or_else(K::one);
    let c = K::normalizing_factor(&vals, &lead);
    OrePoly::from_polys(alg, cs.iter().map(|p| p.scale(&c)).collect())
}

fn finish<K: ConstField>(l: OrePoly<K>, alg: &Algebra<K>) -> OrePoly<K> {
    let l = l.normalize();
    l.convert(alg).unwrap_or(l)
}

/// `p(op)` for a polynomial `p` with constant coefficients.
fn eval_at_op<K: ConstField>(p: &Poly<K>, op: &OrePoly<K>) -> OrePoly<K> {
    let alg = op.algebra();
    let mut acc = OrePoly::zero(alg);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * op) + &OrePoly::constant(alg, RatFun::constant(c.clone()));
    }
    acc
}

/// The falling factorial `k (k-1) ... (k-i+1)` as a polynomial in `k`.
fn falling<K: ConstField>(i: usize) -> Poly<K> {
    (0..i).fold(Poly::one(), |acc, m| &acc * &Poly::new(vec![K::from_i64(-(m as i64)), K::one()]))
}

/// `x^k` as a base-ring element.
fn xpow<K: ConstField>(k: usize) -> RatFun<K> {
    RatFun::from_poly(Poly::monomial(K::one(), k))
}

impl<K: ConstField> OrePoly<K> {
    /// Recurrence for the Taylor coefficients at the origin of the
    /// solutions of a differential operator, in the shift algebra over
    /// `var`.
    ///
    /// A term `x^j D^i` contributes `(n+m-j+i)(n+m-j+i-1)...(n+m-j+1) S^(i-j+m)`
    /// with `m = max(0, max(j - i))`. Every index this refers to is at
    /// least `n`, so the recurrence holds for all `n >= 0` when the
    /// coefficient sequence starts at `a_0`. Only constant factors are
    /// removed from the result.
    ///
    /// Difference operators are first rewritten with `F = S - 1`.
    pub fn to_s(&self, var: &str) -> Result<Self> {
        nonzero(self)?;
        if self.algebra().kind() == OreKind::F {
            return self.from_f();
        }
        self.to_s_shifted(var).map(|(l, _)| l)
    }

    /// [`OrePoly::to_s`] for D operators together with the shift `m`: the
    /// recurrence at `n` is the equation for the coefficient of `x^(n+m)`.
    pub(crate) fn to_s_shifted(&self, var: &str) -> Result<(Self, usize)> {
        nonzero(self)?;
        require(self, &[OreKind::D], "to_S")?;
        let target = OreAlgebra::builtin(var, OreKind::S);
        let cs = poly_coeffs(self);
        let m = cs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(j, _)| j as i64 - i as i64)
            })
            .max()
            .unwrap()
            .max(0);
        let mut out: Vec<Poly<K>> = Vec::new();
        for (i, p) in cs.iter().enumerate() {
            let ff = falling::<K>(i);
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = (i as i64 - j as i64 + m) as usize;
                let shift = K::from_i64(m - j as i64 + i as i64);
                let term = ff.shift(&shift).scale(c);
                if out.len() <= e {
                    out.resize(e + 1, Poly::zero());
                }
                out[e] = &out[e] + &term;
            }
        }
        Ok((constant_primitive(&target, out), m as usize))
    }

    /// Differential operator annihilating the generating function
    /// `sum a_n x^n` of every sequence annihilated by this shift operator
    /// for all `n >= 0`.
    ///
    /// With `r = order`, the operator `sum_k x^(r-k) p_k(T - k)`
    /// (`T = x Dx`) maps the generating function to a polynomial of degree
    /// below `d <= r`; `Dx^d` removes it. Euler operators are rewritten with
    /// `T = x Dx` instead.
    pub fn to_d(&self, var: &str) -> Result<Self> {
        nonzero(self)?;
        if self.algebra().kind() == OreKind::T {
            return self.from_t();
        }
        require(self, &[OreKind::S], "to_D")?;
        let target = OreAlgebra::builtin(var, OreKind::D);
        let cs = poly_coeffs(self);
        let r = cs.len() - 1;
        let theta = &OrePoly::var(&target) * &OrePoly::gen(&target);
        let mut m = OrePoly::zero(&target);
        for (k, p) in cs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let shifted = p.shift(&K::from_i64(-(k as i64)));
            m = &m + &eval_at_op(&shifted, &theta).lmul(&xpow(r - k));
        }
        // The coefficient of x^N, N < r, of the image is
        // sum_{k >= r-N} p_k(N - r) a_(N-r+k).
        let d = (0..r)
            .rev()
            .find(|&nn| {
                let at = K::from_i64(nn as i64 - r as i64);
                cs.iter().skip(r - nn).any(|p| !p.eval(&at).is_zero())
            })
            .map_or(0, |nn| nn + 1);
        let out = &OrePoly::gen_pow(&target, d) * &m;
        Ok(out.normalize())
    }

    /// Rewrites a shift operator with `S = F + 1`; a differential operator
    /// is first sent through [`OrePoly::to_s`].
    pub fn to_f(&self, var: &str) -> Result<Self> {
        nonzero(self)?;
        if self.algebra().kind() == OreKind::D {
            return self.to_s(var)?.to_f(var);
        }
        require(self, &[OreKind::S], "to_F")?;
        let alg = self.algebra().sibling(OreKind::F);
        let s = &OrePoly::gen(&alg) + &OrePoly::one(&alg);
        Ok(self.substitute_gen(&alg, &s))
    }

    /// Inverse of [`OrePoly::to_f`]: rewrites with `F = S - 1`.
    pub fn from_f(&self) -> Result<Self> {
        require(self, &[OreKind::F], "from_F")?;
        let alg = self.algebra().sibling(OreKind::S);
        let f = &OrePoly::gen(&alg) - &OrePoly::one(&alg);
        Ok(self.substitute_gen(&alg, &f))
    }

    /// Euler form: left-multiplies by the least `x^k` making every term
    /// `x^a (x^i D^i)` and writes `x^i D^i = T (T-1) ... (T-i+1)`. A shift
    /// operator is first sent through [`OrePoly::to_d`].
    pub fn to_t(&self, var: &str) -> Result<Self> {
        nonzero(self)?;
        if self.algebra().kind() == OreKind::S {
            return self.to_d(var)?.to_t(var);
        }
        require(self, &[OreKind::D], "to_T")?;
        let alg = self.algebra().sibling(OreKind::T);
        let cs = poly_coeffs(self);
        let k = cs
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.valuation().map(|v| i as i64 - v as i64))
            .max()
            .unwrap()
            .max(0) as usize;
        let t = OrePoly::gen(&alg);
        let mut out = OrePoly::zero(&alg);
        for (i, p) in cs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let ff = eval_at_op(&falling::<K>(i), &t);
            let c = RatFun::from_poly(p.shl(k).exact_div(&Poly::monomial(K::one(), i)).unwrap());
            out = &out + &ff.lmul(&c);
        }
        Ok(finish(out, &alg))
    }

    /// Inverse of [`OrePoly::to_t`]: rewrites with `T = x D`.
    pub fn from_t(&self) -> Result<Self> {
        require(self, &[OreKind::T], "from_T")?;
        let alg = self.algebra().sibling(OreKind::D);
        let theta = &OrePoly::var(&alg) * &OrePoly::gen(&alg);
        Ok(self.substitute_gen(&alg, &theta))
    }

    /// `sum c_i g^i` in `alg`, where `c_i` are the coefficients of `self`.
    fn substitute_gen(&self, alg: &Algebra<K>, g: &Self) -> Self {
        let mut acc = OrePoly::zero(alg);
        for c in self.coeffs().iter().rev() {
            acc = &(&acc * g) + &OrePoly::constant(alg, c.clone());
        }
        acc
    }

    /// Annihilator of the antiderivatives of the solutions: `normalize(L Dx)`.
    pub fn annihilator_of_integral(&self) -> Result<Self> {
        require(self, &[OreKind::D], "annihilator_of_integral")?;
        Ok((self * &OrePoly::gen(self.algebra())).normalize())
    }

    /// Annihilator of the partial sums `sum_(k<=n) f(k)` of the solutions:
    /// `normalize(σ(L) (Sn - 1))`.
    pub fn annihilator_of_sum(&self) -> Result<Self> {
        require(self, &[OreKind::S], "annihilator_of_sum")?;
        let alg = self.algebra();
        let s1 = &OrePoly::gen(alg) - &OrePoly::one(alg);
        Ok((&self.sigma_coeffs(1) * &s1).normalize())
    }

    /// Annihilator of `f(a(x))` for every solution `f`, where `a` is a
    /// nonconstant rational function.
    pub fn annihilator_of_composition_d(&self, a: &RatFun<K>) -> Result<Self> {
        require(self, &[OreKind::D], "annihilator_of_composition_d")?;
        if a.is_constant() {
            return Err(OreError::Domain("composition with a constant".into()));
        }
        nonzero(self)?;
        let r = self.order().unwrap();
        if r == 0 {
            return Ok(OrePoly::one(self.algebra()));
        }
        // Coordinates with respect to (D^i f)(a(x)), i < r.
        let lc = self.lc().unwrap();
        let last: Vec<RatFun<K>> = self.coeffs()[..r].iter().map(|c| (-(c / lc)).compose(a)).collect();
        let da = a.derivative();
        let step = |v: &[RatFun<K>]| -> Vec<RatFun<K>> {
            let mut out: Vec<RatFun<K>> = v.iter().map(|c| c.derivative()).collect();
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = c * &da;
                if i + 1 < r {
                    out[i + 1] = &out[i + 1] + &c;
                } else {
                    for (j, l) in last.iter().enumerate() {
                        out[j] = &out[j] + &(&c * l);
                    }
                }
            }
            out
        };
        let mut start = vec![RatFun::zero(); r];
        start[0] = RatFun::one();
        Ok(first_dependence(self.algebra(), start, step))
    }

    /// Annihilator of `f(floor(u n + v))` for every solution `f`, `u > 0`.
    pub fn annihilator_of_composition_s(&self, u: &Rational, v: &Rational) -> Result<Self> {
        require(self, &[OreKind::S], "annihilator_of_composition_s")?;
        if !u.is_positive() {
            return Err(OreError::Domain("composition needs u > 0".into()));
        }
        nonzero(self)?;
        let (p, q) = (u.numer().clone(), u.denom().clone());
        if q == 1.into() {
            return Ok(self.compose_integer(&p, &v.floor().to_integer()));
        }
        // n = q k + i gives floor(p k + (p i)/q + v) = p k + v_i.
        let qi: usize = q.to_string().parse().map_err(|_| OreError::Domain("denominator of u too large".into()))?;
        let parts: Vec<Self> = (0..qi)
            .map(|i| {
                let vi = (Rational::from_integer(&p * num_bigint::BigInt::from(i)) / Rational::from_integer(q.clone()) + v)
                    .floor()
                    .to_integer();
                self.compose_integer(&p, &vi)
            })
            .collect();
        annihilator_of_interlacing(&parts)
    }

    /// `f(p n + v)` for integers `p > 0`, `v`.
    fn compose_integer(&self, p: &num_bigint::BigInt, v: &num_bigint::BigInt) -> Self {
        let alg = self.algebra();
        let r = self.order().unwrap();
        if r == 0 {
            return OrePoly::one(alg);
        }
        let pu: usize = p.to_string().parse().expect("step fits in usize");
        let kp = K::from_bigint(p);
        let kv = K::from_bigint(v);
        let to_n = RatFun::from_poly(Poly::new(vec![kv, kp]));
        // f(m + k) = sum_j rho_kj(m) f(m + j), m = p n + v.
        let rho: Vec<Vec<RatFun<K>>> = (0..r)
            .map(|i| {
                let rem = OrePoly::gen_pow(alg, pu + i).over_fractions().quo_rem(self).unwrap().1;
                (0..r).map(|j| rem.coeff(j).compose(&to_n)).collect()
            })
            .collect();
        let step = |w: &[RatFun<K>]| -> Vec<RatFun<K>> {
            let mut out = vec![RatFun::zero(); r];
            for (i, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = alg.sigma(c);
                for (j, x) in rho[i].iter().enumerate() {
                    out[j] = &out[j] + &(&c * x);
                }
            }
            out
        };
        let mut start = vec![RatFun::zero(); r];
        start[0] = RatFun::one();
        first_dependence(alg, start, step)
    }
}

/// Annihilator of the sequence `h` with `h(k n + i) = f_i(n)`, where `f_i`
/// is any solution of `ops[i]`.
pub fn annihilator_of_interlacing<K: ConstField>(ops: &[OrePoly<K>]) -> Result<OrePoly<K>> {
    let first = ops.first().ok_or_else(|| OreError::Domain("nothing to interlace".into()))?;
    require(first, &[OreKind::S], "annihilator_of_interlacing")?;
    let alg = first.algebra();
    let k = ops.len();
    let kk = K::from_i64(k as i64);
    let mut parts = Vec::with_capacity(k);
    for (i, l) in ops.iter().enumerate() {
        if !alg.compatible(l.algebra()) {
            return Err(OreError::Conversion("interlaced operators live in different algebras".into()));
        }
        nonzero(l)?;
        // f_i(n) = h(k n + i): substitute n = (N - i)/k and S_n = S_N^k.
        let inner = RatFun::from_poly(Poly::new(vec![
            K::from_i64(-(i as i64)).times(&kk.inverse()),
            kk.inverse(),
        ]));
        let mut cs = vec![RatFun::zero(); k * l.order().unwrap() + 1];
        for (j, c) in l.coeffs().iter().enumerate() {
            cs[k * j] = c.compose(&inner);
        }
        parts.push(OrePoly::raw(alg, cs));
    }
    let mut acc = parts[0].normalize();
    for p in &parts[1..] {
        acc = acc.lclm(p)?;
    }
    Ok(finish(acc, alg))
}

/// First linear dependence over the rational functions among
/// `start, step(start), step(step(start)), ...`, as an operator.
fn first_dependence<K: ConstField>(
    alg: &Algebra<K>,
    start: Vec<RatFun<K>>,
    step: impl Fn(&[RatFun<K>]) -> Vec<RatFun<K>>,
) -> OrePoly<K> {
    let mut finder = DependenceFinder::new();
    let mut cur = start;
    loop {
        let next = step(&cur);
        if let Some(comb) = finder.push(cur) {
            return finish(OrePoly::raw(&alg.over_fractions(), comb), alg);
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::arith::field::{rat, ratio};
    use crate::ore::{parse, Series};

    type Op = OrePoly<Rational>;

    fn d(s: &str) -> Op {
        parse(s, &OreAlgebra::differential("x")).unwrap()
    }

    fn s(s: &str) -> Op {
        parse(s, &OreAlgebra::shift("n")).unwrap()
    }

    fn kills(l: &Op, seq: &[Rational]) -> bool {
        l.apply_sequence(seq).unwrap().iter().all(|t| Field::is_zero(t))
    }

    fn fib(n: usize) -> Vec<Rational> {
        let mut v = vec![rat(0), rat(1)];
        while v.len() < n {
            let k = v.len();
            v.push(&v[k - 1] + &v[k - 2]);
        }
        v
    }

    fn series(cs: Vec<Rational>) -> Series<Rational> {
        let n = cs.len();
        Series::new(cs, n)
    }

    fn kills_series(l: &Op, f: &[Rational]) -> bool {
        let out = l.apply_series(&series(f.to_vec())).unwrap();
        out.prec() > 0 && (0..out.prec()).all(|i| Field::is_zero(&out.coeff(i)))
    }

    #[test]
    fn to_s_examples() {
        assert_eq!(d("Dx^2 + 2*x*Dx").to_s("n").unwrap(), s("(n+2)*(n+1)*Sn^2 + 2*n"));
        assert_eq!(d("Dx").to_s("n").unwrap(), s("(n+1)*Sn"));
        assert_eq!(d("x*Dx - 5").to_s("n").unwrap(), s("n - 5"));
        assert_eq!(d("-2*x*Dx + 2").to_s("n").unwrap(), s("n - 1"));
        assert!(d("0").to_s("n").is_err());
        // exp(x^2): coefficients 1/k! at even places.
        let l = d("Dx - 2*x").to_s("n").unwrap();
        let mut a = vec![rat(0); 20];
        for k in 0..10 {
            a[2 * k] = rat(1) / (1..=k).fold(rat(1), |p, i| p * rat(i as i64));
        }
        assert!(kills(&l, &a));
    }

    #[test]
    fn to_d_examples() {
        assert_eq!(s("(n+1)*Sn - 1").to_d("x").unwrap(), d("Dx - 1"));
        let geo = s("Sn - 1").to_d("x").unwrap();
        let ones = vec![rat(1); 20];
        assert!(kills_series(&geo, &ones));
        let m = s("Sn^2 - Sn - 1").to_d("x").unwrap();
        let f = fib(30);
        assert!(kills_series(&m, &f));
    }

    #[test]
    fn difference_and_euler() {
        assert_eq!(s("Sn^2 - Sn - 1").to_f("n").unwrap(), parse("Fn^2 + Fn - 1", &OreAlgebra::standard("n", OreKind::F)).unwrap());
        let t = OreAlgebra::standard("x", OreKind::T);
        assert_eq!(d("x*Dx - 5").to_t("x").unwrap(), parse("Tx - 5", &t).unwrap());
        let l = d("x^2*Dx^2 + Dx + 1").to_t("x").unwrap();
        let back = l.from_t().unwrap();
        let (_, r) = back.quo_rem(&d("x^2*Dx^2 + Dx + 1")).unwrap();
        assert!(r.is_zero());
        let alg = OreAlgebra::shift("n");
        for seed in 0..5 {
            let l = Op::random(&alg, 3, 2, seed);
            assert_eq!(l.to_f("n").unwrap().from_f().unwrap(), l);
        }
        assert!(matches!(d("Dx").from_f(), Err(OreError::Unsupported(_))));
    }

    #[test]
    fn integral_and_sum() {
        assert_eq!(d("Dx + 2*x").annihilator_of_integral().unwrap(), d("Dx^2 + 2*x*Dx"));
        assert_eq!(d("Dx").annihilator_of_integral().unwrap(), d("Dx^2"));
        assert_eq!(s("(n+1)*Sn - 1").annihilator_of_sum().unwrap(), s("(n+2)*Sn^2 - (n+3)*Sn + 1"));
        let f = fib(25);
        let sums: Vec<Rational> = (0..22).map(|n| &f[n + 2] - rat(1)).collect();
        assert!(kills(&s("Sn^2 - Sn - 1").annihilator_of_sum().unwrap(), &sums));
        let lin: Vec<Rational> = (0..20).map(|n| rat(3 * (n + 1))).collect();
        assert!(kills(&s("Sn - 1").annihilator_of_sum().unwrap(), &lin));
    }

    #[test]
    fn compositions() {
        let gauss = d("Dx - 1").annihilator_of_composition_d(&RatFun::from_poly(Poly::from_i64s(&[0, 0, -1]))).unwrap();
        assert_eq!(gauss, d("Dx + 2*x"));
        let x = RatFun::from_poly(Poly::x());
        assert_eq!(d("(x+1)*Dx^2 - 3").annihilator_of_composition_d(&x).unwrap(), d("(x+1)*Dx^2 - 3"));
        let two_x = RatFun::from_poly(Poly::from_i64s(&[0, 2]));
        assert_eq!(d("Dx^2 + 1").annihilator_of_composition_d(&two_x).unwrap(), d("Dx^2 + 4"));
        assert!(d("Dx").annihilator_of_composition_d(&RatFun::constant(rat(2))).is_err());
        let inv = RatFun::new(Poly::one(), Poly::x());
        let l = d("Dx - 1").annihilator_of_composition_d(&inv).unwrap();
        assert_eq!(l, d("x^2*Dx + 1"));

        let fb = s("Sn^2 - Sn - 1");
        let f = fib(60);
        assert_eq!(fb.annihilator_of_composition_s(&rat(2), &rat(0)).unwrap(), s("Sn^2 - 3*Sn + 1"));
        assert_eq!(fb.annihilator_of_composition_s(&rat(1), &rat(0)).unwrap(), fb);
        let l = fb.annihilator_of_composition_s(&rat(1), &rat(5)).unwrap();
        assert!(kills(&l, &f[5..25]));
        let half = fb.annihilator_of_composition_s(&ratio(3, 2), &ratio(1, 3)).unwrap();
        // floor(3n/2 + 1/3) = floor(3n/2)
        let g: Vec<Rational> = (0..30).map(|n| f[3 * n / 2].clone()).collect();
        assert!(kills(&half, &g));
        assert!(fb.annihilator_of_composition_s(&rat(0), &rat(0)).is_err());
    }

    #[test]
    fn interlacing() {
        let one = s("Sn - 1");
        let l = annihilator_of_interlacing(&[one.clone(), one]).unwrap();
        let cd: Vec<Rational> = (0..20).map(|i| if i % 2 == 0 { rat(3) } else { rat(-7) }).collect();
        assert!(kills(&l, &cd));
        assert_eq!(l, s("Sn^2 - 1"));
        let fb = s("Sn^2 - Sn - 1");
        let f = fib(20);
        let twice: Vec<Rational> = (0..40).map(|i| f[i / 2].clone()).collect();
        assert!(kills(&annihilator_of_interlacing(&[fb.clone(), fb.clone()]).unwrap(), &twice));
        let zeros: Vec<Rational> = (0..40).map(|i| if i % 2 == 0 { f[i / 2].clone() } else { rat(0) }).collect();
        assert!(kills(&annihilator_of_interlacing(&[fb, s("Sn")]).unwrap(), &zeros));
    }
}
