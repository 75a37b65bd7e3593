//! Field abstractions shared by the polynomial, rational-function and
//! linear-algebra code.
//!
//! `Field` is the minimal interface needed by elimination routines. The
//! richer `ConstField` describes a constant field of a base ring: either the
//! rationals, or the rational functions in a parameter `q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::poly::Poly;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;
    fn over(&self, other: &Self) -> Self {
        self.times(&other.inverse())
    }
}

/// A field of constants: fixed by every σ and annihilated by every δ.
pub trait ConstField: Field + Eq {
    fn from_bigint(n: &BigInt) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self;
    /// The value as a plain rational, if it is one.
    fn to_rational(&self) -> Option<Rational>;
    /// The symbolic parameter `q`, for fields that contain one.
    fn q_symbol() -> Option<Self> {
        None
    }
    /// Textual form, using `q` for the parameter where relevant.
    fn render(&self) -> String;
    /// True when `render` yields a single (possibly signed) factor that can
    /// be juxtaposed with `*` without parentheses.
    fn is_atomic(&self) -> bool;
    /// True when the rendered form starts with a minus sign.
    fn is_negative(&self) -> bool;
    /// A nonzero factor `c` such that the values `c*v` are integral,
    /// jointly primitive, and `c*lead` carries the canonical sign
    /// (positive for rationals, monic in `q` for rational functions).
    fn normalizing_factor(vals: &[Self], lead: &Self) -> Self;
    /// Size measure used for tie-breaking (bits of numerators and
    /// denominators).
    fn bit_size(&self) -> u64;
    /// Monic gcd of two nonconstant polynomials by a specialised method,
    /// or `None` to use the Euclidean algorithm.
    fn fast_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
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
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn over(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
}

impl ConstField for Rational {
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_atomic(&self) -> bool {
        true
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn normalizing_factor(vals: &[Self], lead: &Self) -> Self {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for v in vals.iter().filter(|v| !Zero::is_zero(*v)) {
            den = den.lcm(v.denom());
            num = num.gcd(v.numer());
        }
        if num.is_zero() {
            return One::one();
        }
        let c = Rational::new(den, num);
        if Signed::is_negative(&(lead * &c)) {
            -c
        } else {
            c
        }
    }
    fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn fast_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        let (ia, _) = a.integer_primitive();
        let (ib, _) = b.integer_primitive();
        let g = intpoly::heuristic_gcd(&ia, &ib)?;
        Some(Poly::from_bigints(&g).monic())
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

const FAST_GCD_LIMBS: usize = 16;

/// Nonnegative gcd of two integers; large operands go through a
/// subquadratic gcd.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use malachite_base::num::arithmetic::traits::Gcd;
    use malachite_nz::natural::Natural;
    let (big, small) = if a.magnitude() >= b.magnitude() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    if small.magnitude().bits() < 64 * FAST_GCD_LIMBS as u64 {
        return small.gcd(&(big % small));
    }
    let nat = |x: &BigInt| Natural::from_limbs_asc(&x.magnitude().to_u64_digits());
    let g = nat(a).gcd(nat(b));
    let digits: Vec<u32> = g
        .to_limbs_asc()
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigInt::from(num_bigint::BigUint::from_slice(&digits))
}

/// `num / den` reduced with [`int_gcd`].
pub fn rational_from_parts(num: BigInt, den: BigInt) -> Rational {
    assert!(!den.is_zero(), "zero denominator");
    let g = int_gcd(&num, &den);
    let (mut n, mut d) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Rational::new_raw(n, d)
}
