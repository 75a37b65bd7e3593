//! Univariate Ore algebras over exact rationals.

pub mod arith;
pub mod closures;
pub mod error;
pub mod transforms;
pub mod euclid;
pub mod guessing;
pub mod ore;
pub mod sequences;
pub mod solvers;

pub use error::{OreError, Result};
