//! Terms of P-recursive sequences, by unrolling and by binary splitting of
//! companion matrix products.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use std::collections::VecDeque;

use crate::arith::field::{int_gcd, rational_from_parts};
use crate::arith::{Poly, RatFun, Rational};
use crate::error::{OreError, Result};
use crate::ore::{OreKind, OrePoly};

/// `P` and `Q` with `(P / Q) (c_0, ..., c_(r-1))^T = (c_n, ..., c_(n+r-1))^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsplitResult {
    pub p: Vec<Vec<BigInt>>,
    pub q: BigInt,
}

impl BsplitResult {
    pub fn identity(r: usize) -> Self {
        BsplitResult {
            p: (0..r)
                .map(|i| (0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect(),
            q: BigInt::one(),
        }
    }

    /// `(P / Q) v`
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.p
            .iter()
            .map(|row| {
                let s = row
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + Rational::from_integer(a.clone()) * b);
                rational_from_parts(s.numer().clone(), s.denom() * &self.q)
            })
            .collect()
    }

    /// `self` after `first`, i.e. the product `self.p * first.p`.
    pub fn compose(&self, first: &BsplitResult) -> BsplitResult {
        BsplitResult {
            p: mat_mul(&self.p, &first.p),
            q: &self.q * &first.q,
        }
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Recurrence coefficients `p_0, ..., p_r` with integer coefficients.
fn integer_recurrence(l: &OrePoly<Rational>) -> Result<Vec<Vec<BigInt>>> {
    if l.algebra().kind() != OreKind::S {
        return Err(OreError::Unsupported("sequence terms need an S operator".into()));
    }
    if l.is_zero() {
        return Err(OreError::Domain("terms of the zero operator".into()));
    }
    let den = l.coeffs().iter().fold(Poly::one(), |acc, c| acc.lcm(c.den()));
    let polys: Vec<Poly<Rational>> = l
        .coeffs()
        .iter()
        .map(|c| (c * &RatFun::from_poly(den.clone())).as_poly().unwrap().clone())
        .collect();
    let scale = polys.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
    let s = Rational::from_integer(scale);
    Ok(polys
        .iter()
        .map(|p| p.scale(&s).coeffs().iter().map(|c| c.to_integer()).collect())
        .collect())
}

fn coprime(n: BigInt, d: BigInt) -> Rational {
    if d.is_negative() {
        Rational::new_raw(-n, -d)
    } else {
        Rational::new_raw(n, d)
    }
}

fn eval(p: &[BigInt], at: &BigInt) -> BigInt {
    Poly::<Rational>::eval_int(p, at)
}

impl OrePoly<Rational> {
    /// The first `n` terms of the sequence with the given initial values,
    /// extended by the recurrence `sum p_k(m) c_(m+k) = 0`.
    pub fn to_list(&self, initial: &[Rational], n: usize) -> Result<Vec<Rational>> {
        let ps = integer_recurrence(self)?;
        let r = ps.len() - 1;
        if initial.len() < r {
            return Err(OreError::Domain(format!(
                "{r} initial values needed, {} given",
                initial.len()
            )));
        }
        let mut out: Vec<Rational> = initial.iter().take(n).cloned().collect();
        if out.len() == n {
            return Ok(out);
        }
        // Window c_(m..m+r) = nums / den.
        let start = &initial[initial.len() - r..];
        let mut den = start.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut nums: VecDeque<BigInt> = start.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        while out.len() < n {
            let m = out.len() - r;
            let at = BigInt::from(m);
            let lead = eval(&ps[r], &at);
            if lead.is_zero() {
                return Err(OreError::SingularIndex { index: m as i64 });
            }
            let s = (0..r).fold(BigInt::zero(), |acc, k| acc + eval(&ps[k], &at) * &nums[k]);
            nums.pop_front();
            for v in nums.iter_mut() {
                *v *= &lead;
            }
            den *= &lead;
            let s = -s;
            let g0 = int_gcd(&s, &den);
            let term = if g0.is_one() {
                coprime(s.clone(), den.clone())
            } else {
                coprime(&s / &g0, &den / &g0)
            };
            nums.push_back(s);
            let g = nums.iter().fold(g0, |g, v| if g.is_one() { g } else { int_gcd(&g, v) });
            if !g.is_one() {
                for v in nums.iter_mut() {
                    *v /= &g;
                }
                den /= &g;
            }
            out.push(term);
        }
        Ok(out)
    }

    /// Companion matrix product for the steps `0..n`.
    pub fn forward_matrix_bsplit(&self, n: usize) -> Result<BsplitResult> {
        self.forward_matrix_range(0, n)
    }

    /// Companion matrix product for the steps `start..end`: maps
    /// `(c_start, ...)` to `(c_end, ...)`.
    pub fn forward_matrix_range(&self, start: usize, end: usize) -> Result<BsplitResult> {
        let ps = integer_recurrence(self)?;
        let r = ps.len() - 1;
        if let Some(k) = (start..end).find(|&k| eval(&ps[r], &BigInt::from(k)).is_zero()) {
            return Err(OreError::SingularIndex { index: k as i64 });
        }
        if end <= start {
            return Ok(BsplitResult::identity(r));
        }
        Ok(product(&ps, start, end))
    }
}

/// Scaled companion matrix `A(k) = M(k) / p_r(k)`.
fn companion(ps: &[Vec<BigInt>], k: usize) -> BsplitResult {
    let r = ps.len() - 1;
    let at = BigInt::from(k);
    let lead = eval(&ps[r], &at);
    let mut p = vec![vec![BigInt::zero(); r]; r];
    for i in 0..r.saturating_sub(1) {
        p[i][i + 1] = lead.clone();
    }
    if r > 0 {
        for j in 0..r {
            p[r - 1][j] = -eval(&ps[j], &at);
        }
    }
    BsplitResult { p, q: lead }
}

fn product(ps: &[Vec<BigInt>], a: usize, b: usize) -> BsplitResult {
    match b - a {
        1 => companion(ps, a),
        len => {
            let mid = a + len / 2;
            let (lo, hi) = if len > 256 {
                rayon::join(|| product(ps, a, mid), || product(ps, mid, b))
            } else {
                (product(ps, a, mid), product(ps, mid, b))
            };
            hi.compose(&lo)
        }
    }
}

/// Decimal expansion of `x` rounded to `digits` places after the point,
/// ties away from zero.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let num = x.numer() * &scale;
    let den = x.denom();
    let (q, r) = num.abs().div_rem(den);
    let q = if (&r * 2) >= *den { q + 1 } else { q };
    let s = q.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if x.numer().sign() == Sign::Minus && q_nonzero(&s) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn q_nonzero(s: &str) -> bool {
    s.bytes().any(|b| b != b'0')
}
