//! Exact arithmetic: rationals, dense polynomials, rational functions and
//! linear algebra.

pub mod field;
pub mod intpoly;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod roots;

pub use field::{ConstField, Field, Rational};
pub use poly::Poly;
pub use ratfun::{QFun, RatFun};
