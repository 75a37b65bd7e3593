//! Dense univariate polynomials over a constant field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{ConstField, Field, Rational};
use crate::error::OreError;

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all and `degree()` returns `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: ConstField> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| K::from_i64(c)).collect())
    }

    /// `c * x^k`
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.inverse()),
        }
    }

    pub fn eval(&self, at: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(at).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&K::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self(inner)`, by Horner's rule.
    pub fn compose(&self, inner: &Poly<K>) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &K) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Taylor shift by repeated synthetic division.
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = a[j + 1].times(c);
                a[j] = a[j].plus(&t);
            }
        }
        Poly::new(a)
    }

    /// `self(c * x)`.
    pub fn scale_var(&self, c: &K) -> Self {
        let mut pow = K::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.times(&pow));
            pow = pow.times(c);
        }
        Poly::new(out)
    }

    pub fn divrem(&self, b: &Poly<K>) -> Result<(Poly<K>, Poly<K>), OreError> {
        let Some(bd) = b.degree() else {
            return Err(OreError::Domain("polynomial division by zero".into()));
        };
        let inv = b.lc().unwrap().inverse();
        let mut rem = self.coeffs.clone();
        if rem.len() <= bd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quo = vec![K::zero(); rem.len() - bd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + bd].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(bj));
            }
            quo[k] = c;
        }
        rem.truncate(bd);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, b: &Poly<K>) -> Poly<K> {
        self.divrem(b).expect("nonzero divisor").1
    }

    /// Quotient if `b` divides `self` exactly.
    pub fn exact_div(&self, b: &Poly<K>) -> Option<Poly<K>> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly<K>) -> Poly<K> {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if let Some(g) = K::fast_gcd(self, other) {
            return g;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly<K>) -> Poly<K> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Multiplicity of `p` as a factor of `self` (for nonconstant `p`).
    pub fn multiplicity(&self, p: &Poly<K>) -> usize {
        assert!(!p.is_constant());
        let mut k = 0;
        let mut a = self.clone();
        while !a.is_zero() {
            match a.exact_div(p) {
                Some(q) => {
                    a = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Yun's squarefree decomposition: pairs `(f_i, i)` with monic,
    /// squarefree, pairwise coprime `f_i` and `monic(self) = prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<K>, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Poly<K> {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Poly::one(), |acc, (f, _)| &acc * &f)
    }

    /// Text in the given variable, e.g. `5*x^2+3*x-7`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = render_term(c, var, i);
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

fn render_term<K: ConstField>(c: &K, var: &str, i: usize) -> String {
    let mono = match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    };
    if i == 0 {
        return if c.is_atomic() {
            c.render()
        } else {
            format!("({})", c.render())
        };
    }
    if c.is_one() {
        mono
    } else if c.negated().is_one() {
        format!("-{mono}")
    } else if c.is_atomic() {
        format!("{}*{mono}", c.render())
    } else {
        format!("({})*{mono}", c.render())
    }
}

impl Poly<Rational> {
    /// Integer coefficients with content one and positive leading
    /// coefficient, plus the rational factor `f` with `self = f * result`.
    pub fn integer_primitive(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), <Rational as Field>::one());
        }
        let c = Rational::normalizing_factor(&self.coeffs, self.lc().unwrap());
        let ints = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &c;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        (ints, c.recip())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Poly::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Content-free integer polynomial evaluated at an integer.
    pub fn eval_int(coeffs: &[BigInt], at: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Common denominator of all coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl<K: ConstField> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<K: ConstField> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<K: ConstField> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect())
    }
}

impl<K: ConstField> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect())
    }
}

impl<K: ConstField> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }
}

impl<K: ConstField> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: ConstField> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: Poly<K>) -> Poly<K> {
                (&self).$m(&rhs)
            }
        }
        impl<K: ConstField> $tr<&Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: &Poly<K>) -> Poly<K> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: ConstField> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}
