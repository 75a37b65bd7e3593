//! Polynomial, rational and power series solutions of differential and
//! recurrence operators over the rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::roots::{interpolate, nonnegative_integer_roots, resultant, shift_resultant};
use crate::arith::field::rat;
use crate::arith::{Field, Poly, RatFun, Rational};
use crate::error::{OreError, Result};
use crate::ore::{OreKind, OrePoly, Series};

/// A solution `g` of `L(g) = c_1 f_1 + ... + c_r f_r` for the right-hand
/// sides `f_i` of the call. `c` is empty for homogeneous calls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTuple {
    pub g: RatFun<Rational>,
    pub c: Vec<Rational>,
}

impl SolutionTuple {
    /// Checks `L(g) = sum c_i f_i` exactly.
    pub fn verify(&self, l: &OrePoly<Rational>, rhs: &[RatFun<Rational>]) -> bool {
        let Ok(lhs) = l.apply_function(&self.g) else {
            return false;
        };
        let sum = rhs
            .iter()
            .zip(&self.c)
            .fold(RatFun::zero(), |acc, (f, c)| &acc + &f.scale(c));
        lhs == sum
    }
}

fn falling(d: &Poly<Rational>, i: usize) -> Poly<Rational> {
    (0..i).fold(Poly::one(), |acc, m| &acc * &(d - &Poly::constant(rat(m as i64))))
}

fn to_usize(b: &BigInt) -> usize {
    b.to_usize().expect("bound fits in usize")
}

fn check_kind(l: &OrePoly<Rational>) -> Result<()> {
    match l.algebra().kind() {
        OreKind::D | OreKind::S => Ok(()),
        k => Err(OreError::Unsupported(format!("solving {} operators", k.prefix()))),
    }
}

fn polys_of(rhs: &[RatFun<Rational>]) -> Result<Vec<Poly<Rational>>> {
    rhs.iter()
        .map(|f| {
            f.as_poly()
                .cloned()
                .ok_or_else(|| OreError::Domain("right-hand sides must be polynomials".into()))
        })
        .collect()
}

/// Scaling that clears the coefficient denominators of `l`.
fn clearing_factor(l: &OrePoly<Rational>) -> RatFun<Rational> {
    l.normalize().lc().unwrap() / l.lc().unwrap()
}

/// Upper bound on the degree of polynomial solutions `g` of
/// `l(g) = f` with `deg f <= rhs_deg`, or `None` when only `g = 0` is
/// possible.
///
/// In the basis `D` (differential) or `F = S - 1` (recurrence) every
/// generator power lowers degrees by exactly its exponent, so for
/// `L = sum b_j X^j` and `b = max(deg b_j - j)`, `L(x^d)` has degree
/// `d + b` with leading coefficient `sum lc(b_j) d(d-1)...(d-j+1)` over the
/// `j` attaining `b`.
fn degree_bound(l: &OrePoly<Rational>, rhs_deg: Option<usize>) -> Option<usize> {
    let lowering = match l.algebra().kind() {
        OreKind::S => l.to_f(l.algebra().base_var()).unwrap(),
        _ => l.clone(),
    };
    let cs: Vec<Poly<Rational>> = lowering.poly_coeffs().expect("polynomial coefficients");
    let b = cs
        .iter()
        .enumerate()
        .filter_map(|(j, p)| p.degree().map(|e| e as i64 - j as i64))
        .max()?;
    let d = Poly::x();
    let mut lead = Poly::zero();
    for (j, p) in cs.iter().enumerate() {
        if p.degree().is_some_and(|e| e as i64 - j as i64 == b) {
            lead = &lead + &falling(&d, j).scale(p.lc().unwrap());
        }
    }
    let root = nonnegative_integer_roots(&lead).last().map(to_usize);
    let from_rhs = rhs_deg.and_then(|m| usize::try_from(m as i64 - b).ok());
    match (root, from_rhs) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Puts a basis of `(g, c)` vectors into reduced echelon form with pivots
/// taken from the highest `g` coefficient down, then the `c` slots, and
/// sorts it by degree of `g` and then by `c`.
fn canonical_basis(mut rows: Vec<Vec<Rational>>, ng: usize) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..ng).rev().chain(ng..ncols).collect();
    let mut prow = 0;
    for &col in &order {
        let Some(p) = (prow..rows.len()).find(|&i| !Field::is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(prow, p);
        let inv = rows[prow][col].inverse();
        for x in rows[prow].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != prow && !Field::is_zero(&rows[i][col]) {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let t = &f * &rows[prow][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        prow += 1;
    }
    rows.truncate(prow);
    let deg = |r: &Vec<Rational>| (0..ng).rev().find(|&i| !Field::is_zero(&r[i]));
    rows.sort_by(|a, b| match deg(a).cmp(&deg(b)) {
        Ordering::Equal => a[ng..].cmp(&b[ng..]),
        o => o,
    });
    rows
}

/// Polynomial solutions of an operator with polynomial coefficients.
fn poly_solutions_raw(l: &OrePoly<Rational>, rhs: &[Poly<Rational>]) -> Vec<(Poly<Rational>, Vec<Rational>)> {
    let rhs_deg = rhs.iter().filter_map(|f| f.degree()).max();
    let bound = degree_bound(l, rhs_deg);
    let ng = bound.map_or(0, |b| b + 1);
    let images: Vec<Poly<Rational>> = (0..ng)
        .map(|k| {
            let xk = RatFun::from_poly(Poly::monomial(rat(1), k));
            l.apply_function(&xk).unwrap().as_poly().unwrap().clone()
        })
        .collect();
    let nrows = images
        .iter()
        .chain(rhs)
        .filter_map(|p| p.degree())
        .max()
        .map_or(0, |d| d + 1);
    let ncols = ng + rhs.len();
    let mut m = vec![vec![rat(0); ncols]; nrows];
    for (k, p) in images.iter().enumerate() {
        for (i, c) in p.coeffs().iter().enumerate() {
            m[i][k] = c.clone();
        }
    }
    for (k, f) in rhs.iter().enumerate() {
        for (i, c) in f.coeffs().iter().enumerate() {
            m[i][ng + k] = -c;
        }
    }
    let ns = if nrows == 0 {
        (0..ncols)
            .map(|j| (0..ncols).map(|i| if i == j { rat(1) } else { rat(0) }).collect())
            .collect()
    } else {
        crate::arith::linalg::nullspace_over(&m, ncols)
    };
    canonical_basis(ns, ng)
        .into_iter()
        .map(|v| (Poly::new(v[..ng].to_vec()), v[ng..].to_vec()))
        .collect()
}

/// Squarefree pieces of `q` on whose roots every polynomial of `polys` has
/// constant multiplicity.
fn constant_valuation_pieces(q: &Poly<Rational>, polys: &[Poly<Rational>]) -> Vec<Poly<Rational>> {
    fn split(p: Poly<Rational>, a: &Poly<Rational>, out: &mut Vec<Poly<Rational>>) {
        if p.is_constant() {
            return;
        }
        let g = p.gcd(a);
        if g.is_constant() {
            out.push(p);
            return;
        }
        let rest = p.exact_div(&g).unwrap();
        if !rest.is_constant() {
            out.push(rest);
        }
        split(g.clone(), &a.exact_div(&g).unwrap(), out);
    }
    let mut pieces = vec![q.clone()];
    for a in polys.iter().filter(|a| !a.is_zero()) {
        let mut next = Vec::new();
        for p in pieces {
            split(p, a, &mut next);
        }
        pieces = next;
    }
    pieces
}

/// Bound on the pole order of rational solutions at the roots of a
/// squarefree piece `p` of the leading coefficient of a differential
/// operator, from the local indicial polynomial.
fn pole_order_bound(cs: &[Poly<Rational>], p: &Poly<Rational>) -> usize {
    let r = cs.len() - 1;
    let dp = p.derivative();
    let vals: Vec<Option<usize>> = cs.iter().map(|a| (!a.is_zero()).then(|| a.multiplicity(p))).collect();
    let s = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| v as i64 - i as i64))
        .min()
        .unwrap();
    // Leading local coefficients (a_i / (x - α)^v_i)(α) as residues mod p.
    let lead: Vec<(usize, Poly<Rational>)> = vals
        .iter()
        .enumerate()
        .filter(|(i, v)| v.is_some_and(|v| v as i64 - *i as i64 == s))
        .map(|(i, v)| {
            let v = v.unwrap();
            let mut c = cs[i].clone();
            for _ in 0..v {
                c = c.exact_div(p).unwrap();
            }
            for _ in 0..v {
                c = (&c * &dp).rem(p);
            }
            (i, c.rem(p))
        })
        .collect();
    let npts = r * p.degree().unwrap() + 1;
    let ms: Vec<Rational> = (0..npts).map(|m| rat(m as i64)).collect();
    let ys: Vec<Rational> = ms
        .iter()
        .map(|m| {
            let mpoly = Poly::constant(-m);
            let ind = lead.iter().fold(Poly::zero(), |acc, (i, c)| {
                &acc + &c.scale(&falling(&mpoly, *i).coeff(0))
            });
            resultant(p, &ind.rem(p))
        })
        .collect();
    let res = interpolate(&ms, &ys);
    let root = nonnegative_integer_roots(&res).last().map(to_usize).unwrap_or(0);
    root.max(s.max(0) as usize)
}

/// Universal denominator for rational solutions.
fn denominator_bound(l: &OrePoly<Rational>) -> Poly<Rational> {
    let cs = l.poly_coeffs().unwrap();
    let r = cs.len() - 1;
    match l.algebra().kind() {
        OreKind::D => {
            let q = cs[r].squarefree_part();
            if q.is_constant() {
                return Poly::one();
            }
            constant_valuation_pieces(&q, &cs)
                .into_iter()
                .fold(Poly::one(), |acc, p| {
                    let k = pole_order_bound(&cs, &p);
                    (0..k).fold(acc, |acc, _| &acc * &p)
                })
        }
        _ => {
            // Abramov: A(n) = a_r(n - r), B(n) = a_0(n).
            let trailing = cs.iter().position(|c| !c.is_zero()).unwrap();
            let mut a = cs[r].shift(&rat(-(r as i64)));
            let mut b = cs[trailing].shift(&rat(-(trailing as i64)));
            let h_max = nonnegative_integer_roots(&shift_resultant(&a, &b)).last().map(to_usize);
            let mut u = Poly::one();
            let Some(h_max) = h_max else {
                return u;
            };
            for h in (0..=h_max).rev() {
                let hh = rat(h as i64);
                let p = a.gcd(&b.shift(&hh));
                if p.is_constant() {
                    continue;
                }
                a = a.exact_div(&p).unwrap();
                b = b.exact_div(&p.shift(&-&hh)).unwrap();
                for i in 0..=h {
                    u = &u * &p.shift(&rat(-(i as i64)));
                }
            }
            u
        }
    }
}

impl OrePoly<Rational> {
    /// A basis of the polynomial solutions `(g, c)` of
    /// `L(g) = c_1 f_1 + ... + c_r f_r`, ordered by degree of `g` and then
    /// by `c`. Pure relations among the `f_i` appear with `g = 0`.
    pub fn polynomial_solutions(&self, rhs: &[RatFun<Rational>]) -> Result<Vec<SolutionTuple>> {
        check_kind(self)?;
        if self.is_zero() {
            return Err(OreError::Domain("solutions of the zero operator".into()));
        }
        let c = clearing_factor(self);
        let l = self.lmul(&c);
        let f: Vec<Poly<Rational>> = polys_of(rhs)?
            .iter()
            .map(|p| (&RatFun::from_poly(p.clone()) * &c).as_poly().cloned())
            .collect::<Option<_>>()
            .ok_or_else(|| OreError::Domain("right-hand sides must be polynomials".into()))?;
        Ok(poly_solutions_raw(&l, &f)
            .into_iter()
            .map(|(g, c)| SolutionTuple {
                g: RatFun::from_poly(g),
                c,
            })
            .collect())
    }

    /// A basis of the rational solutions `(g, c)` of
    /// `L(g) = c_1 f_1 + ... + c_r f_r` with polynomial `f_i`.
    pub fn rational_solutions(&self, rhs: &[RatFun<Rational>]) -> Result<Vec<SolutionTuple>> {
        check_kind(self)?;
        if self.is_zero() {
            return Err(OreError::Domain("solutions of the zero operator".into()));
        }
        polys_of(rhs)?;
        let c = clearing_factor(self);
        let l = self.lmul(&c);
        let u = denominator_bound(&l);
        let inv_u = RatFun::new(Poly::one(), u.clone());
        let lu = l.rmul(&inv_u);
        let c2 = clearing_factor(&lu);
        let lu = lu.lmul(&c2);
        let scale = &c * &c2;
        let f: Vec<Poly<Rational>> = rhs
            .iter()
            .map(|p| (p * &scale).as_poly().cloned().expect("clearing factor is polynomial"))
            .collect();
        Ok(poly_solutions_raw(&lu, &f)
            .into_iter()
            .map(|(y, c)| SolutionTuple {
                g: RatFun::new(y, u.clone()),
                c,
            })
            .collect())
    }

    /// Linearly independent power series solutions at the origin, truncated
    /// to `n` terms and ordered by valuation. Solutions that are not power
    /// series are not represented.
    pub fn power_series_solutions(&self, n: usize) -> Result<Vec<Series<Rational>>> {
        if self.algebra().kind() != OreKind::D {
            return Err(OreError::Unsupported("power series solutions need a D operator".into()));
        }
        if self.is_zero() {
            return Err(OreError::Domain("solutions of the zero operator".into()));
        }
        let (rec, shift) = self.to_s_shifted("n")?;
        let ps = rec.poly_coeffs().unwrap();
        let r = ps.len() - 1;
        // Indices whose coefficient is not forced by the recurrence.
        let last_free = nonnegative_integer_roots(&ps[r])
            .last()
            .map(|k| to_usize(k) + r)
            .unwrap_or(0)
            .max(r.saturating_sub(1));
        let m = n.max(last_free + 1);
        // Equations at n = -shift, ..., m - r - 1; indices below zero
        // refer to vanishing coefficients.
        let neq = (m + shift).saturating_sub(r);
        let mut mat = vec![vec![rat(0); m]; neq];
        for (e, row) in mat.iter_mut().enumerate() {
            let at = e as i64 - shift as i64;
            for (k, p) in ps.iter().enumerate() {
                if at + k as i64 >= 0 {
                    row[(at + k as i64) as usize] = p.eval(&rat(at));
                }
            }
        }
        let basis = if neq == 0 {
            (0..m)
                .map(|j| (0..m).map(|i| if i == j { rat(1) } else { rat(0) }).collect())
                .collect()
        } else {
            crate::arith::linalg::nullspace_over(&mat, m)
        };
        // Independent truncations with pivots at the lowest index.
        let mut rows: Vec<Vec<Rational>> = basis.into_iter().map(|v| v[..n].to_vec()).collect();
        let mut prow = 0;
        for col in 0..n {
            let Some(p) = (prow..rows.len()).find(|&i| !Field::is_zero(&rows[i][col])) else {
                continue;
            };
            rows.swap(prow, p);
            let inv = rows[prow][col].inverse();
            for x in rows[prow].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i != prow && !Field::is_zero(&rows[i][col]) {
                    let f = rows[i][col].clone();
                    for j in 0..n {
                        let t = &f * &rows[prow][j];
                        rows[i][j] = &rows[i][j] - &t;
                    }
                }
            }
            prow += 1;
        }
        rows.truncate(prow);
        Ok(rows.into_iter().map(|v| Series::new(v, n)).collect())
    }
}
