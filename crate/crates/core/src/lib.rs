//! Exact invariants for cosmetic surgery questions on genus-one knots.

pub mod arith;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod floer;
pub mod knots;
pub mod laurent;
pub mod lens;
pub mod relations;
pub mod torsion;

pub use error::{Error, Result};
pub use laurent::LaurentIntPoly;
