//! Helpers for integer polynomials stored as coefficient vectors, lowest
//! degree first, without trailing zeros.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content-free with positive leading coefficient.
pub fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let g = content(p);
    if g.is_zero() {
        return Vec::new();
    }
    let g = if p.last().unwrap().is_negative() { -g } else { g };
    p.iter().map(|c| c / &g).collect()
}

pub fn eval(p: &[BigInt], at: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * at + c;
    }
    acc
}

/// Exact quotient `a / b` over the integers, or `None` if `b` does not
/// divide `a` in `Z[x]`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let bd = b.len().checked_sub(1)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= bd {
        return None;
    }
    let lb = &b[bd];
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - bd];
    for k in (0..quo.len()).rev() {
        let top = &rem[k + bd];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quo[k] = c;
    }
    rem.iter().all(|c| c.is_zero()).then(|| trim(quo))
}

fn max_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Symmetric `xi`-adic digits of `h`.
fn reconstruct(mut h: BigInt, xi: &BigInt) -> Vec<BigInt> {
    let half = xi >> 1;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut d = h.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        h = (h - &d) / xi;
        out.push(d);
    }
    out
}

/// Gcd of two nonzero primitive integer polynomials by evaluation at a
/// large integer, or `None` if the heuristic gives up.
pub fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let ha = eval(a, &xi);
        let hb = eval(b, &xi);
        if !ha.is_zero() && !hb.is_zero() {
            let h = ha.gcd(&hb);
            let g = primitive(&reconstruct(h, &xi));
            if !g.is_empty() && div_exact(a, &g).is_some() && div_exact(b, &g).is_some() {
                return Some(g);
            }
        }
        xi = (&xi * BigInt::from(73794)) / BigInt::from(27011) + 1;
        if xi.sign() == Sign::Minus {
            return None;
        }
    }
    None
}
