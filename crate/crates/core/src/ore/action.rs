//! Operators acting on rational functions, truncated series and sequences.

use std::fmt;

use super::algebra::OreKind;
use super::operator::OrePoly;
use crate::arith::{ConstField, Poly, RatFun};
use crate::error::{OreError, Result};

/// `Σ coeffs[i] x^i + O(x^prec)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<K> {
    coeffs: Vec<K>,
    prec: usize,
}

impl<K: ConstField> Series<K> {
    pub fn new(mut coeffs: Vec<K>, prec: usize) -> Self {
        coeffs.truncate(prec);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Series { coeffs, prec }
    }

    /// Expansion of a rational function whose denominator does not vanish
    /// at the origin.
    pub fn from_ratfun(f: &RatFun<K>, prec: usize) -> Result<Self> {
        let den = f.den().coeffs();
        let d0 = den[0].clone();
        if d0.is_zero() {
            return Err(OreError::Domain(
                "rational function has a pole at the origin".into(),
            ));
        }
        let inv0 = d0.inverse();
        let mut out: Vec<K> = Vec::with_capacity(prec);
        for n in 0..prec {
            let mut s = f.num().coeff(n);
            for k in 1..den.len().min(n + 1) {
                s = s.minus(&den[k].times(&out[n - k]));
            }
            out.push(s.times(&inv0));
        }
        Ok(Series::new(out, prec))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> K {
        self.coeffs.get(n).cloned().unwrap_or_else(K::zero)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// True if every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Series::new(self.coeffs.clone(), prec.min(self.prec))
    }

    fn mul_ratfun(&self, a: &RatFun<K>) -> Result<Self> {
        let e = Series::from_ratfun(a, self.prec)?;
        let mut out = vec![K::zero(); self.prec];
        for (i, u) in e.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in self.coeffs.iter().enumerate() {
                if i + j >= self.prec {
                    break;
                }
                out[i + j] = out[i + j].plus(&u.times(v));
            }
        }
        Ok(Series::new(out, self.prec))
    }

    fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let out = (0..prec).map(|n| self.coeff(n).plus(&other.coeff(n))).collect();
        Series::new(out, prec)
    }

    pub fn render(&self, var: &str) -> String {
        let p = Poly::new(self.coeffs.clone());
        let head = if p.is_zero() {
            String::new()
        } else {
            format!("{} + ", p.render(var))
        };
        format!("{head}O({var}^{})", self.prec)
    }
}

impl<K: ConstField> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Something an operator can act on.
#[derive(Clone, Debug, PartialEq)]
pub enum Operand<K: ConstField> {
    Function(RatFun<K>),
    Series(Series<K>),
    Sequence(Vec<K>),
}

impl<K: ConstField> OrePoly<K> {
    fn gen_on_function(&self, f: &RatFun<K>) -> Result<RatFun<K>> {
        let alg = self.algebra();
        Ok(match alg.kind() {
            OreKind::D => f.derivative(),
            OreKind::T => &RatFun::x() * &f.derivative(),
            OreKind::S | OreKind::Q => alg.sigma(f),
            OreKind::F | OreKind::J => alg.delta(f),
            OreKind::Custom => return Err(OreError::UnsupportedAction(alg.to_string())),
        })
    }

    fn gen_on_series(&self, s: &Series<K>) -> Result<Series<K>> {
        let alg = self.algebra();
        let n = s.coeffs.len();
        Ok(match alg.kind() {
            OreKind::D => {
                let c = (1..n.max(1))
                    .map(|k| s.coeffs[k].times(&K::from_i64(k as i64)))
                    .collect();
                Series::new(c, s.prec.saturating_sub(1))
            }
            OreKind::T => {
                let c = (0..n)
                    .map(|k| s.coeffs[k].times(&K::from_i64(k as i64)))
                    .collect();
                Series::new(c, s.prec)
            }
            OreKind::Q | OreKind::J => {
                let q = alg.q().unwrap();
                let mut qk = K::one();
                let mut c = Vec::with_capacity(n);
                for v in &s.coeffs {
                    c.push(v.times(&qk));
                    qk = qk.times(q);
                }
                if alg.kind() == OreKind::Q {
                    Series::new(c, s.prec)
                } else {
                    // (f(qx) - f(x)) / ((q - 1) x)
                    let qm1 = q.minus(&K::one());
                    let c = (1..n.max(1))
                        .map(|k| c[k].minus(&s.coeffs[k]).over(&qm1))
                        .collect();
                    Series::new(c, s.prec.saturating_sub(1))
                }
            }
            OreKind::S | OreKind::F => {
                return Err(OreError::UnsupportedAction(format!(
                    "{} on truncated power series",
                    alg.gen_name()
                )))
            }
            OreKind::Custom => return Err(OreError::UnsupportedAction(alg.to_string())),
        })
    }

    fn gen_on_sequence(&self, s: &[K]) -> Result<Vec<K>> {
        let alg = self.algebra();
        match alg.kind() {
            OreKind::S => Ok(s[1.min(s.len())..].to_vec()),
            OreKind::F => Ok(s.windows(2).map(|w| w[1].minus(&w[0])).collect()),
            _ => Err(OreError::UnsupportedAction(format!(
                "{} on sequences",
                alg.gen_name()
            ))),
        }
    }

    /// `L(f)` for a rational function `f`.
    pub fn apply_function(&self, f: &RatFun<K>) -> Result<RatFun<K>> {
        let mut acc = RatFun::zero();
        let mut cur = f.clone();
        for (i, a) in self.coeffs().iter().enumerate() {
            if i > 0 {
                cur = self.gen_on_function(&cur)?;
            }
            if !a.is_zero() {
                acc = &acc + &(a * &cur);
            }
        }
        Ok(acc)
    }

    /// `L(f)` for a truncated power series; the result carries the
    /// precision that is actually known.
    pub fn apply_series(&self, f: &Series<K>) -> Result<Series<K>> {
        let mut acc: Option<Series<K>> = None;
        let mut cur = f.clone();
        for (i, a) in self.coeffs().iter().enumerate() {
            if i > 0 {
                cur = self.gen_on_series(&cur)?;
            }
            let term = if a.is_zero() {
                Series::new(Vec::new(), cur.prec)
            } else {
                cur.mul_ratfun(a)?
            };
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        Ok(acc.unwrap_or_else(|| Series::new(Vec::new(), f.prec)))
    }

    /// `L` applied termwise to a sequence indexed from 0: for `N` terms and
    /// order `r` this returns the `N - r` values at `n = 0, ..., N - r - 1`.
    pub fn apply_sequence(&self, s: &[K]) -> Result<Vec<K>> {
        let r = self.order().unwrap_or(0);
        if s.len() < r {
            return Err(OreError::InsufficientData(format!(
                "{} terms for an operator of order {r}",
                s.len()
            )));
        }
        let len = s.len() - r;
        let mut out = vec![K::zero(); len];
        let mut cur = s.to_vec();
        for (i, a) in self.coeffs().iter().enumerate() {
            if i > 0 {
                cur = self.gen_on_sequence(&cur)?;
            } else if !matches!(self.algebra().kind(), OreKind::S | OreKind::F) {
                return Err(OreError::UnsupportedAction(format!(
                    "{} on sequences",
                    self.algebra().gen_name()
                )));
            }
            if a.is_zero() {
                continue;
            }
            for (n, o) in out.iter_mut().enumerate() {
                let v = a.eval(&K::from_i64(n as i64)).ok_or_else(|| {
                    OreError::Domain(format!("coefficient has a pole at {n}"))
                })?;
                *o = o.plus(&v.times(&cur[n]));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, f: &Operand<K>) -> Result<Operand<K>> {
        Ok(match f {
            Operand::Function(g) => Operand::Function(self.apply_function(g)?),
            Operand::Series(g) => Operand::Series(self.apply_series(g)?),
            Operand::Sequence(g) => Operand::Sequence(self.apply_sequence(g)?),
        })
    }
}
