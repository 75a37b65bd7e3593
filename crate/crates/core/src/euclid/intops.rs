//! Remainder sequences over `Z[x][X]` for algebras whose σ(x) and δ(x) are
//! integer polynomials. Mathematically identical to the generic code path,
//! but all arithmetic stays in big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PrsStrategy;
use crate::arith::intpoly::{self, trim};
use crate::arith::{Poly, RatFun, Rational};
use crate::ore::{Algebra, OreKind, OrePoly};

type IP = Vec<BigInt>;
type Op = Vec<IP>;

fn add(a: &IP, b: &IP) -> IP {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn sub(a: &IP, b: &IP) -> IP {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn mul(a: &IP, b: &IP) -> IP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn scale(a: &IP, c: &BigInt) -> IP {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn div_scalar(a: &IP, c: &BigInt) -> IP {
    a.iter().map(|x| x / c).collect()
}

/// Gcd in `Z[x]` with positive leading coefficient.
fn gcd(a: &IP, b: &IP) -> IP {
    if a.is_empty() {
        return intpoly::primitive(b).iter().map(|x| x * intpoly::content(b)).collect();
    }
    if b.is_empty() {
        return gcd(b, a);
    }
    let c = intpoly::content(a).gcd(&intpoly::content(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (pa, pb) = (intpoly::primitive(a), intpoly::primitive(b));
    let g = intpoly::heuristic_gcd(&pa, &pb).unwrap_or_else(|| {
        let g = Poly::from_bigints(&pa).gcd(&Poly::from_bigints(&pb));
        intpoly::primitive(&g.integer_primitive().0)
    });
    scale(&g, &c)
}

fn div_exact(a: &IP, b: &IP) -> IP {
    intpoly::div_exact(a, b).expect("exact division")
}

fn trim_op(mut v: Op) -> Op {
    while v.last().is_some_and(|c| c.is_empty()) {
        v.pop();
    }
    v
}

/// σ and δ on `Z[x]`.
pub(super) struct Twist {
    kind: OreKind,
    sigma: IP,
    delta: IP,
    q: BigInt,
}

impl Twist {
    pub(super) fn of(alg: &Algebra) -> Option<Twist> {
        let int_poly = |f: &RatFun<Rational>| -> Option<IP> {
            let p = f.as_poly()?;
            p.coeffs()
                .iter()
                .map(|c| c.is_integer().then(|| c.to_integer()))
                .collect()
        };
        let sigma = int_poly(alg.sigma_image())?;
        let delta = int_poly(alg.delta_image())?;
        let q = match alg.q() {
            Some(q) if q.is_integer() => q.to_integer(),
            Some(_) => return None,
            None => BigInt::one(),
        };
        Some(Twist {
            kind: alg.kind(),
            sigma,
            delta,
            q,
        })
    }

    fn sigma(&self, p: &IP) -> IP {
        match self.kind {
            OreKind::D | OreKind::T => p.clone(),
            OreKind::S | OreKind::F => {
                let mut a = p.clone();
                let n = a.len();
                for i in 0..n {
                    for j in (i..n.saturating_sub(1)).rev() {
                        let t = a[j + 1].clone();
                        a[j] += t;
                    }
                }
                a
            }
            OreKind::Q | OreKind::J => {
                let mut pw = BigInt::one();
                let mut out = Vec::with_capacity(p.len());
                for c in p {
                    out.push(c * &pw);
                    pw *= &self.q;
                }
                trim(out)
            }
            OreKind::Custom => {
                let mut acc: IP = Vec::new();
                for c in p.iter().rev() {
                    acc = add(&mul(&acc, &self.sigma), &vec![c.clone()]);
                }
                acc
            }
        }
    }

    fn delta(&self, p: &IP) -> IP {
        if p.len() <= 1 {
            return Vec::new();
        }
        match self.kind {
            OreKind::S | OreKind::Q => Vec::new(),
            OreKind::D => trim(
                p.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| c * BigInt::from(i))
                    .collect(),
            ),
            OreKind::T => trim(
                p.iter()
                    .enumerate()
                    .map(|(i, c)| c * BigInt::from(i))
                    .collect(),
            ),
            OreKind::F => sub(&self.sigma(p), p),
            OreKind::J => {
                // (p(qx) - p(x)) / ((q - 1) x); coefficient i becomes
                // (1 + q + ... + q^(i-1)) c_i at x^(i-1).
                let mut out = Vec::with_capacity(p.len() - 1);
                let mut bracket = BigInt::zero();
                let mut pw = BigInt::one();
                for c in p.iter().skip(1) {
                    bracket += &pw;
                    pw *= &self.q;
                    out.push(c * &bracket);
                }
                trim(out)
            }
            OreKind::Custom => {
                let mut acc: IP = Vec::new();
                let mut dpow: IP = Vec::new();
                let mut xpow: IP = vec![BigInt::one()];
                for (n, c) in p.iter().enumerate() {
                    if n > 0 {
                        dpow = add(&mul(&self.delta, &xpow), &mul(&self.sigma, &dpow));
                        xpow = mul(&xpow, &vec![BigInt::zero(), BigInt::one()]);
                    }
                    if !c.is_zero() {
                        acc = add(&acc, &scale(&dpow, c));
                    }
                }
                acc
            }
        }
    }

    /// `X * a`
    fn gen_mul(&self, a: &Op) -> Op {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out: Op = vec![Vec::new(); a.len() + 1];
        for (k, c) in a.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            out[k + 1] = add(&out[k + 1], &self.sigma(c));
            let d = self.delta(c);
            if !d.is_empty() {
                out[k] = add(&out[k], &d);
            }
        }
        trim_op(out)
    }

    fn mul(&self, a: &Op, b: &Op) -> Op {
        let mut acc: Op = Vec::new();
        let mut power = b.clone();
        for (i, c) in a.iter().enumerate() {
            if i > 0 {
                power = self.gen_mul(&power);
            }
            if c.is_empty() {
                continue;
            }
            if acc.len() < power.len() {
                acc.resize(power.len(), Vec::new());
            }
            for (j, p) in power.iter().enumerate() {
                acc[j] = add(&acc[j], &mul(c, p));
            }
        }
        trim_op(acc)
    }

    /// `alpha * a = q * b + r`, fraction-free.
    fn pseudo_quo_rem(&self, a: &Op, b: &Op, want_q: bool) -> (IP, Op, Op) {
        let n = b.len() - 1;
        let mut r = a.clone();
        let mut alpha = vec![BigInt::one()];
        let mut q: Op = Vec::new();
        if r.len() <= n {
            return (alpha, q, r);
        }
        let mut xb = vec![b.clone()];
        for k in 1..r.len() - n {
            let next = self.gen_mul(&xb[k - 1]);
            xb.push(next);
        }
        let lcb = b.last().unwrap();
        let mut lcb_pows = vec![lcb.clone()];
        while r.len() > n {
            let k = r.len() - 1 - n;
            while lcb_pows.len() <= k {
                let next = self.sigma(lcb_pows.last().unwrap());
                lcb_pows.push(next);
            }
            let (l, s) = reduce_pair(r.last().unwrap(), &lcb_pows[k]);
            let mut nr: Op = r.iter().map(|c| mul(&s, c)).collect();
            for (j, c) in xb[k].iter().enumerate() {
                nr[j] = sub(&nr[j], &mul(&l, c));
            }
            nr.truncate(k + n);
            r = trim_op(nr);
            if want_q {
                let mut nq: Op = q.iter().map(|c| mul(&s, c)).collect();
                if nq.len() <= k {
                    nq.resize(k + 1, Vec::new());
                }
                nq[k] = add(&nq[k], &l);
                q = trim_op(nq);
            }
            alpha = mul(&s, &alpha);
        }
        (alpha, q, r)
    }
}

fn reduce_pair(lc: &IP, b: &IP) -> (IP, IP) {
    let g = gcd(lc, b);
    (div_exact(lc, &g), div_exact(b, &g))
}

fn op_content(ops: &[&Op]) -> IP {
    let mut g: IP = Vec::new();
    for op in ops {
        for c in op.iter() {
            g = gcd(&g, c);
            if g.len() == 1 && g[0].is_one() {
                return g;
            }
        }
    }
    g
}

fn div_op(a: &Op, g: &IP) -> Op {
    if g.len() == 1 {
        return a.iter().map(|c| div_scalar(c, &g[0])).collect();
    }
    a.iter().map(|c| div_exact(c, g)).collect()
}

/// Primitive part with positive leading constant.
fn primitive(a: &Op) -> Op {
    if a.is_empty() {
        return Vec::new();
    }
    let mut g = op_content(&[a]);
    if a.last().unwrap().last().unwrap().is_negative() {
        g = scale(&g, &-BigInt::one());
    }
    div_op(a, &g)
}

fn to_int(l: &OrePoly<Rational>) -> Op {
    l.normalize()
        .coeffs()
        .iter()
        .map(|c| c.num().coeffs().iter().map(|v| v.to_integer()).collect())
        .collect()
}

fn from_int(alg: &Algebra, a: &Op) -> OrePoly<Rational> {
    OrePoly::from_polys(alg, a.iter().map(|c| Poly::from_bigints(c)).collect())
}

fn ratfun_of(p: &IP) -> RatFun<Rational> {
    RatFun::from_poly(Poly::from_bigints(p))
}

pub(super) fn gcrd(tw: &Twist, a: &OrePoly<Rational>, b: &OrePoly<Rational>, prs: PrsStrategy) -> OrePoly<Rational> {
    let (mut x, mut y) = (to_int(a), to_int(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let mut beta: IP = vec![BigInt::one()];
    while !y.is_empty() {
        let r = match prs {
            // Remainders are kept as primitive numerators; the monic remainder
            // is that numerator divided by its leading coefficient.
            PrsStrategy::Classic | PrsStrategy::Monic => primitive(&tw.pseudo_quo_rem(&x, &y, false).2),
            PrsStrategy::Subresultant | PrsStrategy::Improved => {
                let (alpha, _, r) = tw.pseudo_quo_rem(&x, &y, false);
                let d = gcd(&beta, &op_content(&[&r]));
                beta = alpha;
                if d.is_empty() {
                    r
                } else {
                    div_op(&r, &d)
                }
            }
        };
        x = y;
        y = r;
    }
    from_int(a.algebra(), &primitive(&x))
}

/// Rows `(r_i, s_i, t_i)` of the extended sequence up to the first zero
/// remainder.
fn extended(tw: &Twist, a: &Op, b: &Op, want_t: bool) -> Vec<[Op; 3]> {
    let one: Op = vec![vec![BigInt::one()]];
    let mut rows = vec![[a.clone(), one.clone(), Vec::new()], [b.clone(), Vec::new(), one]];
    if a.len() < b.len() {
        rows.swap(0, 1);
    }
    while !rows.last().unwrap()[0].is_empty() {
        let k = rows.len();
        let (prev, cur) = (&rows[k - 2], &rows[k - 1]);
        let (alpha, q, r) = tw.pseudo_quo_rem(&prev[0], &cur[0], true);
        let comb = |p: &Op, c: &Op| -> Op {
            let left: Op = p.iter().map(|v| mul(&alpha, v)).collect();
            let right = tw.mul(&q, c);
            let n = left.len().max(right.len());
            trim_op((0..n)
                .map(|i| sub(left.get(i).unwrap_or(&Vec::new()), right.get(i).unwrap_or(&Vec::new())))
                .collect())
        };
        let s = comb(&prev[1], &cur[1]);
        let t = if want_t { comb(&prev[2], &cur[2]) } else { Vec::new() };
        let g = op_content(&[&r, &s, &t]);
        let row = if g.is_empty() || (g.len() == 1 && g[0].is_one()) {
            [r, s, t]
        } else {
            [div_op(&r, &g), div_op(&s, &g), div_op(&t, &g)]
        };
        rows.push(row);
    }
    rows
}

pub(super) fn xgcrd(
    tw: &Twist,
    a: &OrePoly<Rational>,
    b: &OrePoly<Rational>,
) -> (OrePoly<Rational>, OrePoly<Rational>, OrePoly<Rational>) {
    // The inputs are normalized first; undo that scaling in the cofactors.
    let ca = normalizer(a);
    let cb = normalizer(b);
    let rows = extended(tw, &to_int(a), &to_int(b), true);
    let [g, s, t] = &rows[rows.len() - 2];
    let mut c = op_content(&[g]);
    if g.last().unwrap().last().unwrap().is_negative() {
        c = scale(&c, &-BigInt::one());
    }
    let inv = ratfun_of(&c).inv();
    let alg = a.algebra();
    (
        from_int(alg, &div_op(g, &c)),
        from_int(alg, s).rmul(&ca).lmul(&inv),
        from_int(alg, t).rmul(&cb).lmul(&inv),
    )
}

pub(super) fn xlclm(
    tw: &Twist,
    a: &OrePoly<Rational>,
    b: &OrePoly<Rational>,
    want_quotients: bool,
) -> (OrePoly<Rational>, Option<(OrePoly<Rational>, OrePoly<Rational>)>) {
    let ia = to_int(a);
    let rows = extended(tw, &ia, &to_int(b), want_quotients);
    let [_, s, t] = rows.last().unwrap();
    let l = tw.mul(s, &ia);
    let mut c = op_content(&[&l]);
    if l.last().unwrap().last().unwrap().is_negative() {
        c = scale(&c, &-BigInt::one());
    }
    let alg = a.algebra();
    let lop = from_int(alg, &div_op(&l, &c));
    if !want_quotients {
        return (lop, None);
    }
    let inv = ratfun_of(&c).inv();
    let u = from_int(alg, s).rmul(&normalizer(a)).lmul(&inv);
    let v = (-from_int(alg, t)).rmul(&normalizer(b)).lmul(&inv);
    (lop, Some((u, v)))
}

/// The base-ring element `c` with `normalize(l) = c * l`.
fn normalizer(l: &OrePoly<Rational>) -> RatFun<Rational> {
    let n = l.normalize();
    n.lc().unwrap() / l.lc().unwrap()
}
