//! Reduced fractions of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::field::{ConstField, Field, Rational};
use super::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun<K> {
    num: Poly<K>,
    den: Poly<K>,
}

/// Rational functions in the parameter `q`; the constant field of
/// q-algebras with a symbolic `q`.
pub type QFun = RatFun<Rational>;

impl<K: ConstField> RatFun<K> {
    /// Panics if `den` is zero.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.is_constant() {
            let inv = den.lc().unwrap().inverse();
            return RatFun {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = den.lc().unwrap().inverse();
        if !inv.is_one() {
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The polynomial, if the denominator is one.
    pub fn as_poly(&self) -> Option<&Poly<K>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<K> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, at: &K) -> Option<K> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at).over(&d))
        }
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return RatFun::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &RatFun<K>) -> Self {
        if inner.is_polynomial() {
            let p = &inner.num;
            return if self.den.is_one() {
                RatFun::from_poly(self.num.compose(p))
            } else {
                RatFun::new(self.num.compose(p), self.den.compose(p))
            };
        }
        // Homogenize: p(a/b) = P(a, b) / b^deg p.
        let a = &inner.num;
        let b = &inner.den;
        let dn = self.num.deg().max(0) as usize;
        let dd = self.den.deg().max(0) as usize;
        let m = dn.max(dd);
        let homog = |p: &Poly<K>| {
            let mut acc = Poly::zero();
            let mut apow = Poly::one();
            let bpows: Vec<Poly<K>> = {
                let mut v = vec![Poly::one()];
                for _ in 0..m {
                    let next = v.last().unwrap() * b;
                    v.push(next);
                }
                v
            };
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&apow * &bpows[m - i]).scale(c);
                }
                apow = &apow * a;
            }
            acc
        };
        RatFun::new(homog(&self.num), homog(&self.den))
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &K) -> Self {
        RatFun {
            num: self.num.shift(c),
            den: self.den.shift(c),
        }
    }

    /// `self(c * x)`.
    pub fn scale_var(&self, c: &K) -> Self {
        RatFun::new(self.num.scale_var(c), self.den.scale_var(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatFun::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// Text in the given variable.
    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let wrap = |p: &Poly<K>| {
            let s = p.render(var);
            if p.term_count() > 1 || s.contains('*') || s.contains('/') || s.contains('(') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    /// Degree of numerator plus degree of denominator.
    pub fn total_degree(&self) -> usize {
        self.num.deg().max(0) as usize + self.den.deg().max(0) as usize
    }
}

impl<K: ConstField> Field for RatFun<K> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

impl ConstField for QFun {
    fn from_bigint(n: &BigInt) -> Self {
        RatFun::constant(Rational::from_integer(n.clone()))
    }
    fn from_rational(r: &Rational) -> Self {
        RatFun::constant(r.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        self.constant_value()
    }
    fn q_symbol() -> Option<Self> {
        Some(RatFun::x())
    }
    fn render(&self) -> String {
        RatFun::render(self, "q")
    }
    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1
    }
    fn is_negative(&self) -> bool {
        RatFun::render(self, "q").starts_with('-')
    }
    fn normalizing_factor(vals: &[Self], lead: &Self) -> Self {
        let mut den = Poly::<Rational>::one();
        let mut num = Poly::<Rational>::zero();
        for v in vals.iter().filter(|v| !v.is_zero()) {
            den = den.lcm(&v.den);
            num = num.gcd(&v.num);
        }
        if num.is_zero() {
            return RatFun::one();
        }
        // c * v now has polynomial entries in q with monic gcd 1.
        let c = RatFun::new(den, num);
        let led = &c * lead;
        let lc = led.num.lc().unwrap().clone();
        c.scale(&lc.recip())
    }
    fn bit_size(&self) -> u64 {
        self.num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(|c| c.bit_size())
            .sum()
    }
}

impl<K: ConstField> fmt::Debug for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<K: ConstField> fmt::Display for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<K: ConstField> Add for &RatFun<K> {
    type Output = RatFun<K>;
    fn add(self, rhs: &RatFun<K>) -> RatFun<K> {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFun::from_poly(&self.num + &rhs.num);
            }
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RatFun::new(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFun::new(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.exact_div(&g).unwrap();
        let b = self.den.exact_div(&g).unwrap();
        RatFun::new(
            &(&self.num * &a) + &(&rhs.num * &b),
            &self.den * &a,
        )
    }
}

impl<K: ConstField> Sub for &RatFun<K> {
    type Output = RatFun<K>;
    fn sub(self, rhs: &RatFun<K>) -> RatFun<K> {
        self + &(-rhs)
    }
}

impl<K: ConstField> Mul for &RatFun<K> {
    type Output = RatFun<K>;
    fn mul(self, rhs: &RatFun<K>) -> RatFun<K> {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.lc().unwrap().inverse();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl<K: ConstField> Div for &RatFun<K> {
    type Output = RatFun<K>;
    fn div(self, rhs: &RatFun<K>) -> RatFun<K> {
        self * &rhs.inv()
    }
}

impl<K: ConstField> Neg for &RatFun<K> {
    type Output = RatFun<K>;
    fn neg(self) -> RatFun<K> {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: ConstField> $tr for RatFun<K> {
            type Output = RatFun<K>;
            fn $m(self, rhs: RatFun<K>) -> RatFun<K> {
                (&self).$m(&rhs)
            }
        }
        impl<K: ConstField> $tr<&RatFun<K>> for RatFun<K> {
            type Output = RatFun<K>;
            fn $m(self, rhs: &RatFun<K>) -> RatFun<K> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<K: ConstField> Neg for RatFun<K> {
    type Output = RatFun<K>;
    fn neg(self) -> RatFun<K> {
        -&self
    }
}

impl<K: ConstField> From<Poly<K>> for RatFun<K> {
    fn from(p: Poly<K>) -> Self {
        RatFun::from_poly(p)
    }
}

impl RatFun<Rational> {
    /// Monic least common multiple of the denominators.
    pub fn lcm_of_denominators<'a>(items: impl IntoIterator<Item = &'a RatFun<Rational>>) -> Poly<Rational> {
        items
            .into_iter()
            .fold(Poly::one(), |acc, r| acc.lcm(&r.den))
    }
}
