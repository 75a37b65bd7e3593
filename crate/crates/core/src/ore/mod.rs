//! Ore algebras and their elements.

mod action;
mod algebra;
mod format;
mod operator;
mod parse;

pub use action::{Operand, Series};
pub use algebra::{Algebra, AlgebraSpec, CoeffDomain, OreAlgebra, OreKind};
pub use format::format;
pub use operator::OrePoly;
pub use parse::parse;
