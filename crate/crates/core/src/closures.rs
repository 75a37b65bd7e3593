//! Closure properties: annihilators of products, powers, operator images
//! and polynomial expressions in solutions.
//!
//! The object in question is written as a polynomial in the values
//! `y_i = X^i f` (`i < order`), with rational-function coefficients. Applying
//! the generator maps such a polynomial to another one of the same degree,
//! and the first linear dependence among its iterates gives the
//! annihilator.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::linalg::DependenceFinder;
use crate::arith::{ConstField, RatFun};
use crate::error::{OreError, Result};
use crate::ore::{Algebra, OreKind, OrePoly};

/// Polynomial in variables `y_0, y_1, ...` with rational-function
/// coefficients. Exponent vectors carry no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<K: ConstField> {
    terms: BTreeMap<Vec<u32>, RatFun<K>>,
}

fn trim_exp(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl<K: ConstField> MPoly<K> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: RatFun<K>) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(RatFun::one())
    }

    /// The variable `y_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, RatFun::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &RatFun<K>)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Number of variables actually referenced.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: RatFun<K>) {
        if c.is_zero() {
            return;
        }
        let e = trim_exp(e);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &RatFun<K>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    fn map_coeffs(&self, f: impl Fn(&RatFun<K>) -> RatFun<K>) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Substitutes `images[i]` for `y_i`.
    pub fn substitute(&self, images: &[MPoly<K>]) -> Self {
        let mut powers: HashMap<(usize, u32), MPoly<K>> = HashMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = powers.entry((i, k)).or_insert_with(|| images[i].pow(k));
                t = &t * &*p;
            }
            out = &out + &t;
        }
        out
    }

    /// Partial derivative with respect to `y_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.scale(&K::from_i64(k as i64)));
        }
        out
    }
}

impl<K: ConstField> Add for &MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<K: ConstField> Sub for &MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, rhs: &MPoly<K>) -> MPoly<K> {
        self + &(-rhs)
    }
}

impl<K: ConstField> Neg for &MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        self.map_coeffs(|c| -c)
    }
}

impl<K: ConstField> Mul for &MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let n = e1.len().max(e2.len());
                let e = (0..n)
                    .map(|i| e1.get(i).unwrap_or(&0) + e2.get(i).unwrap_or(&0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl<K: ConstField> std::fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("y{i}") } else { format!("y{i}^{k}") })
                    .collect();
                format!("({})*{}", c.render("x"), mono.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// How the generator acts on products.
#[derive(Clone, Copy)]
enum Action {
    /// `X(fg) = X(f) X(g)`
    Automorphism,
    /// `X(fg) = X(f) g + f X(g)`
    Derivation,
}

fn action_of<K: ConstField>(alg: &Algebra<K>) -> Result<Action> {
    match alg.kind() {
        OreKind::S | OreKind::Q => Ok(Action::Automorphism),
        OreKind::D | OreKind::T => Ok(Action::Derivation),
        k => Err(OreError::Unsupported(format!(
            "closure properties for {} operators",
            k.prefix()
        ))),
    }
}

/// The images `X y_i` for a block of variables belonging to one operator.
fn companion<K: ConstField>(l: &OrePoly<K>, offset: usize) -> Vec<MPoly<K>> {
    let r = l.order().unwrap();
    let lc = l.lc().unwrap();
    (0..r)
        .map(|i| {
            if i + 1 < r {
                MPoly::var(offset + i + 1)
            } else {
                let mut p = MPoly::zero();
                for (j, c) in l.coeffs()[..r].iter().enumerate() {
                    p = &p + &MPoly::var(offset + j).scale(&-(c / lc));
                }
                p
            }
        })
        .collect()
}

struct Iteration<K: ConstField> {
    alg: Algebra<K>,
    action: Action,
    images: Vec<MPoly<K>>,
}

impl<K: ConstField> Iteration<K> {
    fn new(ops: &[&OrePoly<K>]) -> Result<Self> {
        let alg = ops[0].algebra().clone();
        let action = action_of(&alg)?;
        let mut images = Vec::new();
        for l in ops {
            ops[0].try_add(l)?;
            if l.is_zero() {
                return Err(OreError::Domain("closure of the zero operator".into()));
            }
            let off = images.len();
            images.extend(companion(l, off));
        }
        Ok(Iteration { alg, action, images })
    }

    fn step(&self, p: &MPoly<K>) -> MPoly<K> {
        match self.action {
            Action::Automorphism => p.map_coeffs(|c| self.alg.sigma(c)).substitute(&self.images),
            Action::Derivation => {
                let mut out = p.map_coeffs(|c| self.alg.delta(c));
                for (i, img) in self.images.iter().enumerate() {
                    let d = p.partial(i);
                    if !d.is_zero() {
                        out = &out + &(&d * img);
                    }
                }
                out
            }
        }
    }

    /// Minimal operator annihilating the object `p`.
    fn annihilator(&self, p: &MPoly<K>) -> OrePoly<K> {
        // An order-zero operator only has the zero solution.
        if p.is_zero() || p.nvars() > self.images.len() {
            return OrePoly::one(&self.alg);
        }
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut finder = DependenceFinder::new();
        let mut cur = p.clone();
        loop {
            let mut v: Vec<RatFun<K>> = vec![RatFun::zero(); index.len()];
            for (e, c) in cur.terms() {
                let n = index.len();
                let k = *index.entry(e.to_vec()).or_insert(n);
                if k >= v.len() {
                    v.resize(k + 1, RatFun::zero());
                }
                v[k] = c.clone();
            }
            if let Some(comb) = finder.push(v) {
                let alg = self.alg.over_fractions();
                let op = OrePoly::raw(&alg, comb).normalize();
                return op.convert(&self.alg).unwrap_or(op);
            }
            cur = self.step(&cur);
        }
    }
}

/// Rewrites `y_k`, `k >= order(l)`, through the relation `l(f) = 0`.
fn reduce_vars<K: ConstField>(l: &OrePoly<K>, p: &MPoly<K>) -> MPoly<K> {
    let r = l.order().unwrap();
    let n = p.nvars();
    if n <= r {
        return p.clone();
    }
    let images: Vec<MPoly<K>> = (0..n)
        .map(|k| {
            if k < r {
                return MPoly::var(k);
            }
            let rem = OrePoly::gen_pow(l.algebra(), k).over_fractions().quo_rem(l).unwrap().1;
            rem.coeffs()
                .iter()
                .enumerate()
                .fold(MPoly::zero(), |acc, (i, c)| &acc + &MPoly::var(i).scale(c))
        })
        .collect();
    p.substitute(&images)
}

impl<K: ConstField> OrePoly<K> {
    /// Annihilator of `f * g` for all solutions `f` of `self` and `g` of
    /// `other`.
    pub fn symmetric_product(&self, other: &Self) -> Result<Self> {
        let it = Iteration::new(&[self, other])?;
        let r = self.order().unwrap();
        if r == 0 || other.order() == Some(0) {
            return Ok(OrePoly::one(self.algebra()));
        }
        Ok(it.annihilator(&(&MPoly::var(0) * &MPoly::var(r))))
    }

    /// Annihilator of `f^n` for all solutions `f` of `self`.
    pub fn symmetric_power(&self, n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(OreError::Domain(format!("symmetric power needs n >= 1, got {n}")));
        }
        let it = Iteration::new(&[self])?;
        Ok(it.annihilator(&MPoly::var(0).pow(n as u32)))
    }

    /// Annihilator of `m(f)` for all solutions `f` of `self`.
    pub fn annihilator_of_associate(&self, m: &Self) -> Result<Self> {
        let it = Iteration::new(&[self])?;
        self.try_add(m)?;
        let rem = m.quo_rem(self)?.1;
        let p = rem
            .coeffs()
            .iter()
            .enumerate()
            .fold(MPoly::zero(), |acc, (i, c)| &acc + &MPoly::var(i).scale(c));
        Ok(it.annihilator(&p))
    }

    /// Annihilator of `p(f, X f, X^2 f, ...)` for all solutions `f` of
    /// `self`, where `y_i` in `p` stands for `X^i f`.
    pub fn annihilator_of_polynomial(&self, p: &MPoly<K>) -> Result<Self> {
        let it = Iteration::new(&[self])?;
        if p.is_zero() {
            return Err(OreError::Domain("annihilator of the zero polynomial".into()));
        }
        Ok(it.annihilator(&reduce_vars(self, p)))
    }
}
