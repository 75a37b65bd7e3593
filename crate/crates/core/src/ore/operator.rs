//! Elements of an Ore algebra and their arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{Algebra, CoeffDomain};
use crate::arith::{ConstField, Poly, RatFun, Rational};
use crate::error::{OreError, Result};

/// `Σ coeffs[i] X^i` in a fixed algebra. Coefficients are stored as
/// rational functions; in a polynomial-domain algebra they are all
/// polynomials.
#[derive(Clone)]
pub struct OrePoly<K: ConstField = Rational> {
    alg: Algebra<K>,
    coeffs: Vec<RatFun<K>>,
}

fn trim<K: ConstField>(mut v: Vec<RatFun<K>>) -> Vec<RatFun<K>> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl<K: ConstField> OrePoly<K> {
    /// Operator from coefficients, lowest power first. Trailing zeros are
    /// stripped. Fails if a coefficient is not in the algebra's base ring.
    pub fn new(alg: &Algebra<K>, coeffs: Vec<RatFun<K>>) -> Result<Self> {
        if alg.domain() == CoeffDomain::Poly && coeffs.iter().any(|c| !c.is_polynomial()) {
            return Err(OreError::Conversion(
                "coefficient is not a polynomial".into(),
            ));
        }
        Ok(OrePoly {
            alg: alg.clone(),
            coeffs: trim(coeffs),
        })
    }

    /// Like [`OrePoly::new`], moving to rational-function coefficients if
    /// needed.
    pub(crate) fn raw(alg: &Algebra<K>, coeffs: Vec<RatFun<K>>) -> Self {
        let coeffs = trim(coeffs);
        let alg = if alg.domain() == CoeffDomain::Poly && coeffs.iter().any(|c| !c.is_polynomial())
        {
            alg.over_fractions()
        } else {
            alg.clone()
        };
        OrePoly { alg, coeffs }
    }

    pub fn from_coeff_list(alg: &Algebra<K>, coeffs: Vec<RatFun<K>>) -> Result<Self> {
        Self::new(alg, coeffs)
    }

    pub fn from_polys(alg: &Algebra<K>, coeffs: Vec<Poly<K>>) -> Self {
        Self::raw(alg, coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn zero(alg: &Algebra<K>) -> Self {
        OrePoly {
            alg: alg.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(alg: &Algebra<K>) -> Self {
        Self::constant(alg, RatFun::one())
    }

    pub fn constant(alg: &Algebra<K>, c: RatFun<K>) -> Self {
        Self::raw(alg, vec![c])
    }

    /// The generator `X`.
    pub fn gen(alg: &Algebra<K>) -> Self {
        Self::gen_pow(alg, 1)
    }

    pub fn gen_pow(alg: &Algebra<K>, k: usize) -> Self {
        let mut c = vec![RatFun::zero(); k + 1];
        c[k] = RatFun::one();
        Self::raw(alg, c)
    }

    /// The base variable as an order-zero operator.
    pub fn var(alg: &Algebra<K>) -> Self {
        Self::constant(alg, RatFun::x())
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[RatFun<K>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RatFun<K>> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun<K> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == RatFun::one()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order with `-1` for the zero operator.
    pub fn ord(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Largest numerator or denominator degree among the coefficients.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.num().deg().max(c.den().deg()) as usize)
            .max()
    }

    pub fn lc(&self) -> Option<&RatFun<K>> {
        self.coeffs.last()
    }

    pub fn has_polynomial_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// Coefficients as polynomials, if they all are.
    pub fn poly_coeffs(&self) -> Option<Vec<Poly<K>>> {
        self.coeffs.iter().map(|c| c.as_poly().cloned()).collect()
    }

    /// The same operator in `target`.
    pub fn convert(&self, target: &Algebra<K>) -> Result<Self> {
        if !self.alg.compatible(target) {
            return Err(OreError::Conversion(format!(
                "cannot convert from {} to {}",
                self.alg, target
            )));
        }
        Self::new(target, self.coeffs.clone())
    }

    /// The same operator over rational-function coefficients.
    pub fn over_fractions(&self) -> Self {
        OrePoly {
            alg: self.alg.over_fractions(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub(crate) fn with_coeffs(&self, coeffs: Vec<RatFun<K>>) -> Self {
        Self::raw(&self.alg, coeffs)
    }

    fn common_algebra(&self, other: &Self) -> Result<Algebra<K>> {
        if !self.alg.compatible(&other.alg) {
            return Err(OreError::Conversion(format!(
                "incompatible algebras {} and {}",
                self.alg, other.alg
            )));
        }
        Ok(if other.alg.domain() == CoeffDomain::RatFun {
            self.alg.over_fractions()
        } else {
            self.alg.clone()
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let alg = self.common_algebra(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Self::raw(&alg, c))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Left multiplication by a base-ring element.
    pub fn lmul(&self, c: &RatFun<K>) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        self.with_coeffs(self.coeffs.iter().map(|a| c * a).collect())
    }

    /// Multiplication by a constant.
    pub fn scale(&self, c: &K) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `X · self`, rewriting `X a = σ(a) X + δ(a)`.
    pub fn gen_mul(&self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut out = vec![RatFun::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out[k + 1] = &out[k + 1] + &self.alg.sigma(a);
            let d = self.alg.delta(a);
            if !d.is_zero() {
                out[k] = &out[k] + &d;
            }
        }
        self.with_coeffs(out)
    }

    /// `self · c` for a base-ring element `c`.
    pub fn rmul(&self, c: &RatFun<K>) -> Self {
        self.mul(&Self::constant(&self.alg, c.clone()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let alg = self.common_algebra(other)?;
        let mut acc: Vec<RatFun<K>> = Vec::new();
        let mut power = OrePoly {
            alg: alg.clone(),
            coeffs: other.coeffs.clone(),
        };
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.gen_mul();
            }
            if a.is_zero() {
                continue;
            }
            if acc.len() < power.coeffs.len() {
                acc.resize(power.coeffs.len(), RatFun::zero());
            }
            for (j, b) in power.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[j] = &acc[j] + &(a * b);
                }
            }
        }
        Ok(Self::raw(&alg, acc))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `σ^k` to every coefficient.
    pub fn sigma_coeffs(&self, k: usize) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| self.alg.sigma_pow(c, k)).collect())
    }

    /// Substitutes `x ↦ x + s` in every coefficient.
    pub fn shift_coeffs(&self, s: &K) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c.shift(s)).collect())
    }
}

impl OrePoly<Rational> {
    /// A random operator of exactly the given order whose coefficients are
    /// polynomials of degree at most `degree` with integer coefficients drawn
    /// uniformly from `[-9, 9]` by a ChaCha8 generator seeded with `seed`.
    /// The leading coefficient is redrawn until nonzero.
    pub fn random(alg: &Algebra, order: usize, degree: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            let cs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
            Poly::from_i64s(&cs)
        };
        let mut coeffs: Vec<Poly<Rational>> = (0..order).map(|_| draw(&mut rng)).collect();
        let lead = loop {
            let p = draw(&mut rng);
            if !p.is_zero() {
                break p;
            }
        };
        coeffs.push(lead);
        Self::from_polys(alg, coeffs)
    }
}

impl<K: ConstField> PartialEq for OrePoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.compatible(&other.alg) && self.coeffs == other.coeffs
    }
}

impl<K: ConstField> Eq for OrePoly<K> {}

impl<K: ConstField> Neg for &OrePoly<K> {
    type Output = OrePoly<K>;
    fn neg(self) -> OrePoly<K> {
        OrePoly {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<K: ConstField> Neg for OrePoly<K> {
    type Output = OrePoly<K>;
    fn neg(self) -> OrePoly<K> {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        /// Panics if the algebras are incompatible; see the `try_` methods.
        impl<K: ConstField> $tr for &OrePoly<K> {
            type Output = OrePoly<K>;
            fn $m(self, rhs: &OrePoly<K>) -> OrePoly<K> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<K: ConstField> $tr for OrePoly<K> {
            type Output = OrePoly<K>;
            fn $m(self, rhs: OrePoly<K>) -> OrePoly<K> {
                (&self).$m(&rhs)
            }
        }
        impl<K: ConstField> $tr<&OrePoly<K>> for OrePoly<K> {
            type Output = OrePoly<K>;
            fn $m(self, rhs: &OrePoly<K>) -> OrePoly<K> {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
