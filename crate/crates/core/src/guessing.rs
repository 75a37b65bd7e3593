//! Guessing recurrences and differential equations from finitely many terms.
//!
//! Candidate points `(r, d)` are tested with a rank computation modulo two
//! word-size primes; only the final operator is computed exactly and then
//! checked against every data window.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::linalg;
use crate::arith::{Field, Poly, Rational};
use crate::error::{NoRelationCause, OreError, Result};
use crate::ore::{Algebra, OreKind, OrePoly};

/// Search controls. `None` stands for infinity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GuessOptions {
    pub path: Option<Vec<(usize, usize)>>,
    pub min_order: usize,
    pub max_order: Option<usize>,
    pub min_degree: usize,
    pub max_degree: Option<usize>,
    pub ensure: usize,
    pub cut: Option<usize>,
}

impl GuessOptions {
    fn check(&self) -> Result<()> {
        if let Some(c) = self.cut {
            if c == 0 || self.ensure > c {
                return Err(OreError::Domain("need 0 <= ensure <= cut and cut > 0".into()));
            }
        }
        Ok(())
    }

    fn in_bounds(&self, r: usize, d: usize) -> bool {
        r >= self.min_order
            && d >= self.min_degree
            && self.max_order.is_none_or(|m| r <= m)
            && self.max_degree.is_none_or(|m| d <= m)
    }
}

/// A successful guess with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Guess {
    pub operator: OrePoly<Rational>,
    /// Path point at which evidence was first found.
    pub found_at: (usize, usize),
    /// `(order, degree)` of the system the operator was read off.
    pub point: (usize, usize),
    /// Equations minus unknowns over all data windows at `point`; the
    /// confidence proxy.
    pub margin: i64,
}

fn required(r: usize, d: usize) -> usize {
    (r + 1) * (d + 2)
}

fn terms_used(n: usize, r: usize, d: usize, cut: Option<usize>) -> usize {
    match cut {
        Some(c) => n.min(required(r, d) + c),
        None => n,
    }
}

fn max_degree_for(n: usize, ensure: usize, r: usize) -> Option<usize> {
    let avail = n.checked_sub(ensure)? / (r + 1);
    avail.checked_sub(2)
}

fn check_kind(alg: &Algebra) -> Result<OreKind> {
    match alg.kind() {
        k @ (OreKind::S | OreKind::D) => Ok(k),
        _ => Err(OreError::Unsupported("guessing needs an S or D algebra".into())),
    }
}

/// The linear system at `(r, d)` over the first `terms` data entries.
/// Unknown `c_ij` (coefficient of `x^j X^i`) sits in column `i (d + 1) + j`.
struct System<'a> {
    data: &'a [Rational],
    kind: OreKind,
    r: usize,
    d: usize,
    terms: usize,
}

impl System<'_> {
    fn cols(&self) -> usize {
        (self.r + 1) * (self.d + 1)
    }

    fn rows(&self) -> usize {
        self.terms.saturating_sub(self.r)
    }

    fn row(&self, m: usize) -> Vec<Rational> {
        let mut out = vec![<Rational as Field>::zero(); self.cols()];
        for i in 0..=self.r {
            for j in 0..=self.d {
                out[i * (self.d + 1) + j] = match self.kind {
                    OreKind::S => {
                        let mut v = self.data[m + i].clone();
                        for _ in 0..j {
                            v *= Rational::from_integer(BigInt::from(m));
                        }
                        v
                    }
                    _ => {
                        if m < j {
                            continue;
                        }
                        let k = m - j + i;
                        let mut v = self.data[k].clone();
                        for t in 0..i {
                            v *= Rational::from_integer(BigInt::from(k - t));
                        }
                        v
                    }
                };
            }
        }
        out
    }

    fn row_mod(&self, data: &[u64], p: u64, m: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.cols()];
        for i in 0..=self.r {
            for j in 0..=self.d {
                out[i * (self.d + 1) + j] = match self.kind {
                    OreKind::S => mulmod(data[m + i], powmod(m as u64 % p, j as u64, p), p),
                    _ => {
                        if m < j {
                            continue;
                        }
                        let k = m - j + i;
                        (0..i).fold(data[k], |acc, t| mulmod(acc, (k - t) as u64 % p, p))
                    }
                };
            }
        }
        out
    }
}

const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn reduce(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64()?;
    let den = x.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mulmod(num, powmod(den, p - 2, p), p))
}

/// Rank modulo `p` and the indices of a maximal independent set of rows.
/// Stops once the rank reaches the number of columns.
fn rank_mod(sys: &System, data: &[u64], p: u64) -> (usize, Vec<usize>) {
    let cols = sys.cols();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for m in 0..sys.rows() {
        let mut row = sys.row_mod(data, p, m);
        for (pc, b) in &basis {
            let f = row[*pc];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(b) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let inv = powmod(row[pc], p - 2, p);
            for x in row.iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            basis.push((pc, row));
            chosen.push(m);
            if basis.len() == cols {
                break;
            }
        }
    }
    (basis.len(), chosen)
}

struct Modular {
    reduced: Vec<(u64, Vec<u64>)>,
}

impl Modular {
    fn new(data: &[Rational]) -> Self {
        let reduced = PRIMES
            .iter()
            .filter_map(|&p| {
                let v: Option<Vec<u64>> = data.iter().map(|x| reduce(x, p)).collect();
                v.map(|v| (p, v))
            })
            .collect();
        Modular { reduced }
    }

    /// Whether a nonzero kernel exists at this system, according to every
    /// usable prime; exact when no prime is usable.
    fn has_kernel(&self, sys: &System) -> bool {
        if self.reduced.is_empty() {
            return !exact_kernel(sys, None).is_empty();
        }
        self.reduced
            .iter()
            .all(|(p, v)| rank_mod(sys, v, *p).0 < sys.cols())
    }

    fn pivot_rows(&self, sys: &System) -> Option<Vec<usize>> {
        self.reduced.first().map(|(p, v)| rank_mod(sys, v, *p).1)
    }
}

/// Exact kernel. With `rows` given, the kernel of those rows is computed
/// and accepted if it satisfies every row.
fn exact_kernel(sys: &System, rows: Option<Vec<usize>>) -> Vec<Vec<BigInt>> {
    let cols = sys.cols();
    let all = || (0..sys.rows()).map(|m| sys.row(m)).collect::<Vec<_>>();
    if let Some(rows) = rows {
        let sub: Vec<Vec<Rational>> = rows.iter().map(|&m| sys.row(m)).collect();
        let ker = linalg::nullspace(&sub, cols);
        let full = all();
        if ker.iter().all(|v| linalg::mat_vec(&full, v).iter().all(Field::is_zero)) {
            return ker;
        }
        return linalg::nullspace(&full, cols);
    }
    linalg::nullspace(&all(), cols)
}

fn to_operator(alg: &Algebra, v: &[BigInt], r: usize, d: usize) -> OrePoly<Rational> {
    let polys = (0..=r)
        .map(|i| Poly::from_bigints(&v[i * (d + 1)..(i + 1) * (d + 1)]))
        .collect();
    OrePoly::from_polys(alg, polys).normalize()
}

fn bitsize(l: &OrePoly<Rational>) -> u64 {
    l.coeffs()
        .iter()
        .flat_map(|c| c.num().coeffs().iter().chain(c.den().coeffs()))
        .map(|x| x.numer().bits() + x.denom().bits())
        .sum()
}

/// Whether `l` annihilates every window of the data.
pub fn annihilates(l: &OrePoly<Rational>, data: &[Rational]) -> bool {
    let Some(r) = l.order() else { return true };
    let Some(polys) = l.poly_coeffs() else { return false };
    let d = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (r + 1) * (d + 1)];
    let den = polys.iter().fold(BigInt::from(1), |acc, p| acc.lcm(&p.denominator_lcm()));
    for (i, p) in polys.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            v[i * (d + 1) + j] = (c * Rational::from_integer(den.clone())).to_integer();
        }
    }
    let sys = System { data, kind: l.algebra().kind(), r, d, terms: data.len() };
    let rows: Vec<Vec<Rational>> = (0..sys.rows()).map(|m| sys.row(m)).collect();
    linalg::mat_vec(&rows, &v).iter().all(Field::is_zero)
}

/// Operators of order `r` and degree `d` matching the data, one per kernel
/// basis vector, normalized. Empty when there is none.
pub fn guess_raw(
    data: &[Rational],
    alg: &Algebra,
    r: usize,
    d: usize,
    ensure: usize,
    cut: Option<usize>,
) -> Result<Vec<OrePoly<Rational>>> {
    let kind = check_kind(alg)?;
    let n = data.len();
    if required(r, d) + ensure > n {
        return Err(OreError::Domain(format!(
            "order {r} and degree {d} need {} terms, {n} given",
            required(r, d) + ensure
        )));
    }
    let sys = System { data, kind, r, d, terms: terms_used(n, r, d, cut) };
    let rows = Modular::new(data).pivot_rows(&sys);
    Ok(exact_kernel(&sys, rows)
        .iter()
        .map(|v| to_operator(alg, v, r, d))
        .collect())
}

fn default_path(n: usize, opts: &GuessOptions) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut r = 1usize;
    loop {
        let rr = r.max(opts.min_order);
        let rr = opts.max_order.map_or(rr, |m| rr.min(m));
        if out.last().is_some_and(|&(p, _)| p >= rr) {
            break;
        }
        let Some(d) = max_degree_for(n, opts.ensure, rr) else { break };
        let d = opts.max_degree.map_or(d, |m| d.min(m));
        if d >= opts.min_degree {
            out.push((rr, d));
        } else if opts.max_degree.is_none() {
            break;
        }
        r *= 2;
    }
    out
}

/// The smallest-order operator that the data reveals, searched along the
/// path of `opts`.
pub fn guess(data: &[Rational], alg: &Algebra, opts: &GuessOptions) -> Result<OrePoly<Rational>> {
    guess_report(data, alg, opts).map(|g| g.operator)
}

pub fn guess_report(data: &[Rational], alg: &Algebra, opts: &GuessOptions) -> Result<Guess> {
    let kind = check_kind(alg)?;
    opts.check()?;
    let n = data.len();
    if n == 0 {
        return Err(OreError::Domain("no data".into()));
    }
    if data.iter().all(Field::is_zero) {
        return Err(OreError::NoRelation(NoRelationCause::DegenerateData));
    }
    let path: Vec<(usize, usize)> = opts
        .path
        .clone()
        .unwrap_or_else(|| default_path(n, opts))
        .into_iter()
        .filter(|&(r, d)| opts.in_bounds(r, d) && required(r, d) + opts.ensure <= n)
        .collect();
    if path.is_empty() {
        return Err(OreError::NoRelation(NoRelationCause::NoAdmissiblePoint));
    }
    let modular = Modular::new(data);
    let system = |r, d| System { data, kind, r, d, terms: terms_used(n, r, d, opts.cut) };
    let succeeds = |r: usize, d: usize| modular.has_kernel(&system(r, d));
    let at_max = |r: usize| max_degree_for(n, opts.ensure, r).is_some_and(|d| succeeds(r, d));
    for &(ri, di) in &path {
        if !succeeds(ri, di) {
            continue;
        }
        let (mut lo, mut hi) = (0, ri);
        if !at_max(hi) {
            lo = ri;
            hi = ri;
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            if at_max(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let r = hi;
        let top = max_degree_for(n, opts.ensure, r).unwrap_or(di).max(di);
        let (mut a, mut b) = (0, top);
        while a < b {
            let mid = (a + b) / 2;
            if succeeds(r, mid) {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        for d in a..=top {
            let sys = system(r, d);
            let ker = exact_kernel(&sys, modular.pivot_rows(&sys));
            let best = ker
                .iter()
                .map(|v| to_operator(alg, v, r, d))
                .filter(|l| annihilates(l, data))
                .min_by_key(|l| (l.degree().unwrap_or(0), bitsize(l)));
            if let Some(operator) = best {
                let margin = (n - r) as i64 - ((r + 1) * (d + 1)) as i64;
                return Ok(Guess { operator, found_at: (ri, di), point: (r, d), margin });
            }
        }
    }
    Err(OreError::NoRelation(NoRelationCause::NothingFound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use crate::ore::{parse, OreAlgebra};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn fib(n: usize) -> Vec<Rational> {
        let mut v = vec![BigInt::from(0), BigInt::from(1)];
        while v.len() < n {
            let k = v.len();
            v.push(&v[k - 1] + &v[k - 2]);
        }
        v.into_iter().take(n).map(Rational::from_integer).collect()
    }

    #[test]
    fn fibonacci_recurrence() {
        let alg = OreAlgebra::shift("n");
        let data = fib(11);
        let l = guess(&data, &alg, &GuessOptions::default()).unwrap();
        assert_eq!(l, parse("Sn^2 - Sn - 1", &alg).unwrap());
        let raw = guess_raw(&data, &alg, 2, 0, 0, None).unwrap();
        assert_eq!(raw, vec![l]);
    }

    #[test]
    fn fibonacci_differential() {
        let alg = OreAlgebra::differential("x");
        let data = fib(11);
        let m = guess(&data, &alg, &GuessOptions::default()).unwrap();
        assert_eq!(m.order(), Some(1));
        let long = fib(40);
        assert!(annihilates(&m, &long));
    }

    #[test]
    fn admissibility() {
        let alg = OreAlgebra::shift("n");
        let data = fib(12);
        assert!(guess_raw(&data, &alg, 2, 2, 0, None).is_ok());
        assert!(guess_raw(&data, &alg, 2, 2, 1, None).is_err());
        assert!(guess_raw(&data, &alg, 3, 1, 0, None).is_ok());
        assert!(guess_raw(&data, &alg, 1, 5, 0, None).is_err());
    }

    #[test]
    fn geometric_and_failures() {
        let alg = OreAlgebra::shift("n");
        let data: Vec<Rational> = (0..10).map(|k| rat(1 << k)).collect();
        assert_eq!(
            guess_raw(&data, &alg, 1, 0, 0, None).unwrap(),
            vec![parse("Sn - 2", &alg).unwrap()]
        );
        assert!(matches!(
            guess(&ints(&[0, 0, 0, 0, 0]), &alg, &GuessOptions::default()),
            Err(OreError::NoRelation(NoRelationCause::DegenerateData))
        ));
        assert!(matches!(
            guess(&ints(&[1, 2]), &alg, &GuessOptions::default()),
            Err(OreError::NoRelation(NoRelationCause::NoAdmissiblePoint))
        ));
        let noise = ints(&[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4]);
        let opts = GuessOptions { max_order: Some(2), ..Default::default() };
        assert!(matches!(
            guess(&noise, &alg, &opts),
            Err(OreError::NoRelation(NoRelationCause::NothingFound))
        ));
    }

    #[test]
    fn cut_and_holdout() {
        let alg = OreAlgebra::shift("n");
        let data = fib(30);
        let opts = GuessOptions { cut: Some(2), ensure: 1, ..Default::default() };
        let g = guess_report(&data, &alg, &opts).unwrap();
        assert_eq!(g.operator, parse("Sn^2 - Sn - 1", &alg).unwrap());
        assert!(annihilates(&g.operator, &data));
        assert_eq!(g.margin, 28 - 3);
        let bad = GuessOptions { cut: Some(1), ensure: 2, ..Default::default() };
        assert!(guess(&data, &alg, &bad).is_err());
    }
}
